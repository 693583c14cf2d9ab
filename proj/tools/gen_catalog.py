#!/usr/bin/env python3
"""Writes data/catalog.json, the default survey catalog."""

import json
import pathlib

FIELDS = {
    "Q(i)": {"poly": [1, 0, 1], "disc": -4},
    "Q(w)": {"poly": [1, 1, 1], "disc": -3},
    "Q(sqrt-2)": {"poly": [2, 0, 1], "disc": -8},
    "Q(sqrt-5)": {"poly": [5, 0, 1], "disc": -20},
    "Q(sqrt-7)": {"poly": [2, 1, 1], "disc": -7},
    "Q(sqrt-11)": {"poly": [3, 1, 1], "disc": -11},
    "Q(zeta5)": {"poly": [1, 1, 1, 1, 1], "disc": 125},
    "Q(zeta8)": {"poly": [1, 0, 0, 0, 1], "disc": 256},
    "Q(zeta12)": {"poly": [1, 0, -1, 0, 1], "disc": 144},
    "Q(i,sqrt5)": {"poly": [1, 0, 3, 0, 1], "disc": 400},
    "Q(sqrt-2,sqrt5)": {
        "poly": [4, 0, 6, 0, 1],
        "basis": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1/2", "0"], ["0", "0", "0", "1/2"]],
        "disc": 1600,
    },
    "C13": {
        "poly": [13, 0, 13, 0, 1],
        "basis": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["5/6", "1/2", "1/6", "0"], ["1/2", "1/3", "0", "1/6"]],
        "disc": 2197,
    },
    "C16": {"poly": [2, 0, 4, 0, 1], "disc": 2048},
}


def simple(label, field, lattice="maximal", cm_type="upper"):
    return {"label": label, "kind": "simple", "field": field, "cm_type": cm_type, "lattice": lattice}


def factor(field, lattice="maximal"):
    return {"field": field, "cm_type": "upper", "lattice": lattice}


def product(label, a, b, closure=None):
    e = {"label": label, "kind": "product", "factors": [a, b]}
    if closure:
        e["galois_closure"] = closure
    return e


def hermitian(label, field, xi0, h):
    return {"label": label, "kind": "hermitian", "field": field, "cm_type": "upper", "xi0": xi0, "h": h}


def main():
    entries = []
    entries += [simple(f"gauss-f{f}", "Q(i)", f"order:{f}") for f in range(1, 51)]
    entries += [simple(f"eis-f{f}", "Q(w)", f"order:{f}") for f in range(1, 21)]
    entries += [simple(f"sqrt-2-f{f}", "Q(sqrt-2)", f"order:{f}") for f in range(1, 6)]
    entries += [simple(f"sqrt-7-f{f}", "Q(sqrt-7)", f"order:{f}") for f in range(1, 6)]
    entries += [simple(f"sqrt-11-f{f}", "Q(sqrt-11)", f"order:{f}") for f in range(1, 4)]
    entries.append(simple("sqrt-5-f1", "Q(sqrt-5)"))
    entries.append(simple("sqrt-5-p2", "Q(sqrt-5)", [["2", "0"], ["1", "1"]]))
    entries.append(simple("gauss-p2", "Q(i)", [["1", "1"], ["-1", "1"]]))

    # Z + f O_K is not Gorenstein for f > 1 in degree 4, so those rows
    # report none-found; O_F + f O_K orders are monogenic over O_F.
    for name, orders in [("zeta5", [1, 2, 3]), ("zeta8", [1, 2])]:
        field = f"Q({name})"
        for f in orders:
            entries.append(simple(f"{name}-f{f}", field, f"order:{f}"))
    for name, orders in [("zeta5", [2, 3, 4]), ("zeta8", [2, 3])]:
        for f in orders:
            entries.append(simple(f"{name}-real{f}", f"Q({name})", f"real:{f}"))
    entries.append(simple("zeta12-f1-t03", "Q(zeta12)", cm_type=[0, 3]))
    entries.append(simple("zeta12-real2-t03", "Q(zeta12)", "real:2", cm_type=[0, 3]))
    for label, field in [("qi-sqrt5", "Q(i,sqrt5)"), ("qs2-sqrt5", "Q(sqrt-2,sqrt5)"), ("c13", "C13"), ("c16", "C16")]:
        entries.append(simple(f"{label}-f1", field))
    entries.append(simple("qi-sqrt5-f1-t02", "Q(i,sqrt5)", cm_type=[0, 2]))
    entries.append(simple("c13-f1-t02", "C13", cm_type=[0, 2]))
    entries.append(simple("c13-real2", "C13", "real:2"))

    entries.append(product("prod-i-i", factor("Q(i)"), factor("Q(i)")))
    entries.append(product("prod-i-i2", factor("Q(i)"), factor("Q(i)", "order:2")))
    entries.append(product("prod-i3-i5", factor("Q(i)", "order:3"), factor("Q(i)", "order:5")))
    entries.append(product("prod-w-w", factor("Q(w)"), factor("Q(w)")))
    entries.append(product("prod-w-w2", factor("Q(w)"), factor("Q(w)", "order:2")))
    entries.append(product("prod-i-w", factor("Q(i)"), factor("Q(w)"), "Q(zeta12)"))
    entries.append(product("prod-i-s2", factor("Q(i)"), factor("Q(sqrt-2)"), "Q(zeta8)"))
    entries.append(product("prod-s2-s2", factor("Q(sqrt-2)"), factor("Q(sqrt-2)")))

    entries.append(hermitian("herm-i-1", "Q(i)", ["0", "1/2"], [[["2"], ["1"]], [["1"], ["1"]]]))
    entries.append(hermitian("herm-i-2", "Q(i)", ["0", "1/2"], [[["2"], ["0", "1"]], [["0", "-1"], ["1"]]]))
    entries.append(hermitian("herm-i-3", "Q(i)", ["0", "1/2"], [[["3"], ["1", "1"]], [["1", "-1"], ["1"]]]))
    entries.append(hermitian("herm-w-1", "Q(w)", ["1/3", "2/3"], [[["2"], ["1"]], [["1"], ["1"]]]))
    entries.append(hermitian("herm-w-2", "Q(w)", ["1/3", "2/3"], [[["2"], ["0", "1"]], [["-1", "-1"], ["1"]]]))
    entries.append(hermitian("herm-s2-1", "Q(sqrt-2)", ["0", "1/4"], [[["2"], ["1", "1"]], [["1", "-1"], ["2"]]]))
    entries.append(hermitian("herm-s2-2", "Q(sqrt-2)", ["0", "1/4"], [[["1"], ["0"]], [["0"], ["1"]]]))

    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "catalog.json"
    out.write_text(json.dumps({"fields": FIELDS, "entries": entries}, indent=1) + "\n")


if __name__ == "__main__":
    main()

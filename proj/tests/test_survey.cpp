#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "doctest.h"
#include "cmh/error.hpp"
#include "cmh/survey.hpp"
#include "cmh/verify.hpp"

using namespace cmh;

namespace {

const std::string kCatalog = CMH_SOURCE_DIR "/data/catalog.json";

const Catalog& shipped()
{
    static Catalog c = load_catalog(kCatalog);
    return c;
}

const char* kFields = R"J("fields": {
  "Q(i)": {"poly": [1, 0, 1], "disc": -4},
  "bad": {"poly": [1, 0, 1], "basis": [["1", "0"], ["1/2", "1/2"]], "disc": -1}
})J";

std::string catalog_text(const std::string& entries)
{
    return std::string("{") + kFields + ", \"entries\": [" + entries + "]}";
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ResultRow fake_row(long disc, long h)
{
    ResultRow r;
    r.label = "x";
    r.g = 1;
    r.disc_R = disc;
    r.e_R = 1;
    r.H = Real(h, 128);
    r.h_Z = Real(1L, 128);
    return r;
}

}  // namespace

TEST_CASE("load_catalog")
{
    Catalog empty = parse_catalog(catalog_text(""));
    CHECK(empty.entries.empty());
    CHECK(empty.rejects.empty());

    Catalog c = parse_catalog(catalog_text(R"J(
        {"label": "a", "field": "Q(i)", "lattice": "order:3"},
        {"label": "b", "field": "bad"},
        {"label": "a", "field": "Q(i)"},
        {"label": "c", "field": "Q(i)", "lattice": "order:x"},
        {"label": "d", "field": "Q(i)", "lattice": [["1", "0"], [0.5, "1"]]},
        {"label": "e", "field": "Q(i)", "xi": ["1", "0"]},
        {"label": "f", "field": "missing"},
        {"label": "g", "kind": "product", "factors": [{"field": "Q(i)"}, {"field": "Q(i)", "lattice": "order:2"}]},
        {"label": "h", "kind": "hermitian", "field": "Q(i)", "xi0": ["0", "1/2"], "h": [[["2"], ["1"]], [["1"], ["1"]]]},
        {"label": "i", "kind": "hermitian", "field": "Q(i)", "xi0": ["0", "1/2"], "h": [[["2"], ["1"]], [["0", "1"], ["1"]]]}
    )J"));
    std::set<std::string> labels;
    for (const auto& e : c.entries)
        labels.insert(e.label);
    CHECK(labels == std::set<std::string>{"a", "g", "h"});
    REQUIRE(c.rejects.size() == 7);
    CHECK(c.rejects[0].rfind("verify:b:", 0) == 0);
    CHECK(c.rejects[1].find("duplicate label") != std::string::npos);
    CHECK(c.rejects[2] == "parse: entries[3].lattice: bad conductor in \"order:x\"");
    CHECK(c.rejects[3].rfind("parse: entries[4].lattice[1][0]", 0) == 0);
    CHECK(c.rejects[4].rfind("verify:e:", 0) == 0);
    CHECK(c.rejects[5].rfind("verify:f:", 0) == 0);
    CHECK(c.rejects[6].rfind("verify:i:", 0) == 0);

    const CatalogEntry* a = find_entry(c, "a");
    REQUIRE(a);
    CHECK(a->factors[0].lattice == ZLattice::order_conductor(a->factors[0].field->base(), 3));

    CHECK(kind_of([] { parse_catalog("{\"entries\": [}"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_catalog("[]"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { load_catalog("/nonexistent/catalog.json"); }) == ErrorKind::Io);
}

TEST_CASE("shipped catalog verifies")
{
    const Catalog& c = shipped();
    CHECK(c.rejects.empty());
    CHECK(c.entries.size() >= 100);
    std::set<std::string> labels;
    for (const auto& e : c.entries)
        labels.insert(e.label);
    CHECK(labels.size() == c.entries.size());
    for (const char* l : {"gauss-f1", "gauss-f50", "eis-f1", "zeta5-f1", "zeta8-f1", "zeta12-f1-t03", "qi-sqrt5-f1",
                          "prod-i-w", "herm-s2-1"})
        CHECK(find_entry(c, l) != nullptr);
}

TEST_CASE("run_pipeline examples")
{
    const Catalog& c = shipped();
    ResultRow r1 = run_pipeline(*find_entry(c, "gauss-f1"));
    REQUIRE(r1.ok());
    CHECK(r1.disc_R == -4);
    CHECK(r1.H.contains(Rational(1)));
    const SiegelPoint& z = r1.reduction->z;
    REQUIRE(z.exact);
    CHECK(z.z(0, 0).re().contains(Rational(0)));
    CHECK(z.z(0, 0).im().contains(Rational(1)));

    for (long f : {2, 7, 30}) {
        ResultRow r = run_pipeline(*find_entry(c, "gauss-f" + std::to_string(f)));
        REQUIRE(r.ok());
        CHECK(r.H.contains(Rational(f)));
        CHECK(r.disc_R == -4 * f * f);
        CHECK(r.e_R == f);
    }

    ResultRow z5 = run_pipeline(*find_entry(c, "zeta5-f1"));
    REQUIRE(z5.ok());
    CHECK(z5.g == 2);
    CHECK(z5.reduction->report.reduced());
    CHECK(z5.degree_max <= 8);
    CHECK(z5.det_formula);
    CHECK(z5.im_posdef);

    CHECK(run_pipeline(*find_entry(c, "zeta5-f2")).status == "none-found");

    ResultRow p = run_pipeline(*find_entry(c, "prod-i-w"));
    REQUIRE(p.ok());
    CHECK(p.disc_R == 12);
    CHECK(p.H.contains(Rational(1)));

    ResultRow h = run_pipeline(*find_entry(c, "herm-w-2"));
    REQUIRE(h.ok());
    REQUIRE(h.hermitian_bound.has_value());
    CHECK(*h.hermitian_bound);

    // not principal: det H = 2
    Catalog bad = parse_catalog(catalog_text(
        R"J({"label": "np", "kind": "hermitian", "field": "Q(i)", "xi0": ["0", "1/2"], "h": [[["2"], ["0"]], [["0"], ["1"]]]})J"));
    REQUIRE(bad.entries.size() == 1);
    ResultRow np = run_pipeline(bad.entries[0]);
    CHECK(np.status == "error:not-unimodular");
    CHECK_FALSE(np.message.empty());
}

TEST_CASE("fit_exponent")
{
    std::vector<ResultRow> gauss;
    for (long f = 1; f <= 50; ++f)
        gauss.push_back(fake_row(-4 * f * f, f));
    FitReport g = fit_exponent(gauss);
    CHECK(g.slope >= 0.45);
    CHECK(g.slope <= 0.55);
    CHECK(g.samples == 50);
    CHECK(g.ceiling_check);

    CHECK(kind_of([] { fit_exponent({fake_row(-4, 1)}); }) == ErrorKind::InsufficientData);

    std::vector<ResultRow> flat;
    for (long d : {3, 4, 7, 8, 11, 16})
        flat.push_back(fake_row(-d, 1));
    FitReport fl = fit_exponent(flat);
    CHECK(std::abs(fl.slope) <= 0.05);

    std::vector<ResultRow> steep{fake_row(-3, 1), fake_row(-4, 1 << 30)};
    CHECK_FALSE(fit_exponent(steep, 10).ceiling_check);

    std::vector<ResultRow> mixed = gauss;
    mixed[3].status = "none-found";
    CHECK(fit_exponent(mixed).samples == 49);
}

TEST_CASE("emit")
{
    const std::string path = "test_survey_out.csv";
    emit({}, std::nullopt, path);
    CHECK(slurp(path) == std::string(kCsvHeader) + "\n");
    CHECK(std::string(kCsvHeader) == "label,g,disc_R,e_R,H,naive_H,h_Z,gamma_max,steps,ms,status");

    Catalog c = parse_catalog(catalog_text(R"J(
        {"label": "a", "field": "Q(i)", "lattice": "order:3"},
        {"label": "g", "kind": "product", "factors": [{"field": "Q(i)"}, {"field": "Q(i)", "lattice": "order:2"}]},
        {"label": "np", "kind": "hermitian", "field": "Q(i)", "xi0": ["0", "1/2"], "h": [[["2"], ["0"]], [["0"], ["1"]]]}
    )J"));
    PipelineOptions opt;
    opt.timings = false;
    std::vector<ResultRow> rows = run_survey(c, opt, 1);
    FitReport fit = fit_exponent(rows);
    std::string text = format_rows(rows, fit);
    CHECK(text.find("a,1,-36,3,3,9,3,1,0,0,ok\n") != std::string::npos);
    CHECK(text.find("np,,,,,,,,,,error:not-unimodular\n") != std::string::npos);
    CHECK(text.find("\n# fit") != std::string::npos);

    emit(rows, fit, path);
    const std::string first = slurp(path);
    emit(run_survey(c, opt, 3), fit_exponent(run_survey(c, opt, 2)), path);
    CHECK(slurp(path) == first);

    emit(rows, fit, path, "tsv");
    CHECK(slurp(path).rfind("label\tg\tdisc_R", 0) == 0);
    CHECK(kind_of([&] { emit(rows, fit, path, "xml"); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { emit(rows, fit, "/nonexistent/dir/out.csv"); }) == ErrorKind::Io);
    std::remove(path.c_str());
}

TEST_CASE("shipped survey")
{
    PipelineOptions opt;
    opt.timings = false;
    std::vector<ResultRow> rows = run_survey(shipped(), opt, 4);
    REQUIRE(rows.size() == shipped().entries.size());
    std::size_t ok = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].label == shipped().entries[i].label);
        const std::string& s = rows[i].status;
        CHECK((s == "ok" || s == "none-found"));
        ok += rows[i].ok();
    }
    CHECK(ok * 10 >= rows.size() * 9);
    FitReport fit = fit_exponent(rows);
    CHECK(fit.ceiling_check);
    CHECK(format_rows(rows, fit) == format_rows(run_survey(shipped(), opt, 1), fit));
}

TEST_CASE("verify_suite filtering")
{
    VerifyReport r = verify_suite({"gauss-oracle"}, 7, kCatalog);
    REQUIRE(r.suites.size() == 1);
    CHECK(r.suites[0].tag == "gauss-oracle");
    CHECK(r.passed());
    CHECK(r.seed == 7);
    CHECK(kind_of([] { verify_suite({"nope"}, 1, kCatalog); }) == ErrorKind::InvalidArgument);
    try {
        verify_suite({"nope"}, 1, kCatalog);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("det-formula") != std::string::npos);
    }
}

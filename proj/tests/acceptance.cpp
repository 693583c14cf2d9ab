// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cmh/error.hpp"
#include "cmh/survey.hpp"
#include "cmh/verify.hpp"
#include "oracles.hpp"

using namespace cmh;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

const Catalog& catalog()
{
    static Catalog c = load_catalog(CMH_SOURCE_DIR "/data/catalog.json");
    return c;
}

const std::vector<ResultRow>& survey_rows()
{
    static std::vector<ResultRow> rows = [] {
        PipelineOptions opt;
        opt.timings = false;
        return run_survey(catalog(), opt, 1);
    }();
    return rows;
}

bool upper_bound_at_most(const Real& x, double bound)
{
    return x.mid_double() + x.rad_double() <= bound;
}

Outcome gaussian_family()
{
    const auto t0 = Clock::now();
    std::vector<ResultRow> rows;
    std::size_t good = 0;
    std::string first;
    for (long f = 1; f <= 50; ++f) {
        const CatalogEntry* e = find_entry(catalog(), "gauss-f" + std::to_string(f));
        if (!e) {
            first = "missing gauss-f" + std::to_string(f);
            continue;
        }
        ResultRow r = run_pipeline(*e);
        bool ok = r.ok() && r.disc_R == -4 * f * f && r.reduction->report.reduced();
        if (ok) {
            // H = f exactly: the reduced entry is f i, minimal polynomial x^2 + f^2
            const SiegelPoint& z = r.reduction->z;
            ok = z.exact && r.H.contains(Rational(f)) && r.naive_H == f * f && r.degree_max == 2 &&
                 z.z(0, 0).re().contains(Rational(0)) && z.z(0, 0).im().contains(Rational(f)) &&
                 upper_bound_at_most(r.H - Real(f, 256), 1e-60) && upper_bound_at_most(Real(f, 256) - r.H, 1e-60);
        }
        good += ok;
        if (!ok && first.empty())
            first = "f = " + std::to_string(f) + ": " + r.status;
        rows.push_back(std::move(r));
    }
    double slope = 0;
    bool fit_ok = false;
    try {
        slope = fit_exponent(rows).slope;
        fit_ok = slope >= 0.45 && slope <= 0.55;
    } catch (const Error&) {
    }
    const double secs = seconds_since(t0);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu/50 with H = f and Disc(R) = -4f^2, slope %.4f, %.2f s", good, slope, secs);
    std::string d = buf;
    if (!first.empty())
        d += " (" + first + ")";
    return {good == 50 && fit_ok && secs < 60, d};
}

Outcome det_formula()
{
    std::size_t held = 0, none = 0, total = catalog().entries.size();
    std::string first;
    for (const auto& e : catalog().entries) {
        try {
            Construction c = construct(e, {});
            bool all = !c.det.empty();
            for (const auto& d : c.det)
                all = all && d.holds;
            held += all;
            if (!all && first.empty())
                first = e.label;
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::NoneFound)
                ++none;
            else if (first.empty())
                first = e.label + ": " + err.what();
        }
    }
    std::ostringstream d;
    d << held << "/" << total - none << " polarized entries satisfy det = |N(xi)| |Disc(O_K)| [O_K:I]^2 exactly; "
      << none << " entries have no principal polarization";
    if (!first.empty())
        d << " (" << first << ")";
    return {held == total - none && held > 0 && catalog().rejects.empty(), d.str()};
}

Outcome symplectic_normalization()
{
    std::mt19937_64 rng(3);
    const RationalMatrix j = standard_symplectic_form(2);
    std::size_t ok = 0;
    for (int k = 0; k < 100; ++k) {
        RationalMatrix gam = to_rational(oracle::random_unimodular(4, 10, rng));
        RationalMatrix gram = gam.transpose() * j * gam;
        try {
            SymplecticBasis sb = symplectic_basis(gram);
            RationalMatrix t = to_rational(sb.transform);
            ok += t * gram * t.transpose() == j && abs(determinant(sb.transform)) == 1;
        } catch (const Error&) {
        }
    }
    return {ok == 100, std::to_string(ok) + "/100 Gram matrices brought to J exactly"};
}

Outcome gauss_oracle()
{
    std::mt19937_64 rng(4);
    std::size_t ok = 0;
    for (int k = 0; k < 200; ++k) {
        RationalMatrix y = oracle::random_posdef2(50, rng);
        ok += gauss_reduce(y).y == oracle::gauss_bruteforce(y, 40);
    }
    return {ok == 200, std::to_string(ok) + "/200 match exhaustive minimization over |U_ij| <= 40"};
}

RoundTripStats& round_trip_corpus(double* secs = nullptr)
{
    static double elapsed = 0;
    static RoundTripStats stats = [] {
        const auto t0 = Clock::now();
        std::mt19937_64 rng(5);
        PrecisionContext ctx;
        std::vector<SiegelPoint> bases;
        for (int k = 0; k < 10; ++k)
            bases.push_back(random_interior_point(2, rng, ctx));
        RoundTripStats s = round_trip(bases, 100, 20, rng);
        elapsed = seconds_since(t0);
        return s;
    }();
    if (secs)
        *secs = elapsed;
    return stats;
}

Outcome round_trip_reduction()
{
    double secs = 0;
    const RoundTripStats& s = round_trip_corpus(&secs);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu/%zu recovered within 2^-40, %zu flagged, %zu silent mismatches, %.1f s",
                  s.recovered, s.cases, s.flagged, s.mismatched, secs);
    return {s.cases == 1000 && 100 * s.recovered >= 99 * s.cases && s.mismatched == 0 && secs < 300, buf};
}

Outcome riemann_relations()
{
    std::size_t checked = 0, ok = 0;
    std::string first;
    const double tol = std::ldexp(1.0, -128);
    for (const auto& e : catalog().entries) {
        Construction c;
        try {
            c = construct(e, PrecisionContext{256});
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::NoneFound && first.empty())
                first = e.label + ": " + err.what();
            continue;
        }
        ++checked;
        bool good = upper_bound_at_most(c.z.asymmetry, tol) && certified_positive_definite(c.z.imag_part());
        ok += good;
        if (!good && first.empty())
            first = e.label;
    }
    std::size_t deg = 0;
    bool zeta5 = false;
    for (const auto& r : survey_rows())
        if (r.label == "zeta5-f1" && r.ok()) {
            zeta5 = r.degree_max <= 8;
            deg = r.degree_max;
        }
    std::ostringstream d;
    d << ok << "/" << checked << " period matrices with |Z - Z^T| <= 2^-128 and Im Z > 0; zeta5 entry degree " << deg;
    if (!first.empty())
        d << " (" << first << ")";
    return {ok == checked && checked > 0 && zeta5 && first.empty(), d.str()};
}

Outcome polynomial_ceiling()
{
    const auto& rows = survey_rows();
    std::size_t ok_rows = 0, bad = 0;
    for (const auto& r : rows) {
        if (!r.ok())
            continue;
        ++ok_rows;
        const double lhs = log(r.H).mid_double(), rhs = 10 * std::log(std::abs(r.disc_R.get_d()));
        bad += lhs > rhs;
    }
    FitReport fit;
    try {
        fit = fit_exponent(rows, 10);
    } catch (const Error& e) {
        return {false, std::string("fit failed: ") + e.what()};
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%zu/%zu ok rows with H <= |Disc(R)|^10; fitted exponent %.4f, intercept %.4f, max residual %.4f",
                  ok_rows - bad, ok_rows, fit.slope, fit.intercept, fit.residual_max);
    return {bad == 0 && fit.ceiling_check && ok_rows > 0, buf};
}

Outcome imaginary_identity()
{
    std::mt19937_64 rng(8);
    PrecisionContext ctx{128};
    const double tol = std::ldexp(1.0, -80);
    std::size_t ok = 0;
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        SiegelPoint z = random_siegel_point(2, rng, ctx);
        SymplecticIntMatrix gamma = oracle::random_symplectic_word(2, 1 + k % 12, rng);
        Real r = imaginary_part_identity_check(gamma, z);
        const double v = r.mid_double() + r.rad_double();
        worst = std::max(worst, v);
        ok += v <= tol;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu/100 residuals <= 2^-80 at 128 bits (largest %.3g)", ok, worst);
    return {ok == 100, buf};
}

Outcome reduction_matrix_bound()
{
    const RoundTripStats& s = round_trip_corpus();
    if (!s.finite)
        return {false, "non-finite max |gamma_ij| or h(Z)"};
    try {
        FitReport f = fit_loglog(s.gamma_vs_h);
        char buf[200];
        std::snprintf(buf, sizeof buf, "kappa = %.4f from %zu cases (intercept %.4f, max residual %.4f)", f.slope,
                      f.samples, f.intercept, f.residual_max);
        return {std::isfinite(f.slope), buf};
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

Outcome hermitian_reduction()
{
    std::mt19937_64 rng(10);
    CaseCount c = hermitian_cases(25, rng, PrecisionContext{});
    std::string d = std::to_string(c.passed) + "/" + std::to_string(c.cases) +
                    " forms over Z[i] and Z[w] within the diagonal-dominance bound";
    if (!c.first_failure.empty())
        d += " (" + c.first_failure + ")";
    return {c.passed == 50 && c.cases == 50, d};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"gaussian-order family", gaussian_family},
        {"determinant formula", det_formula},
        {"symplectic normalization", symplectic_normalization},
        {"Gauss reduction oracle", gauss_oracle},
        {"round-trip reduction", round_trip_reduction},
        {"Riemann relations", riemann_relations},
        {"polynomial ceiling", polynomial_ceiling},
        {"imaginary part identity", imaginary_identity},
        {"reduction matrix bound", reduction_matrix_bound},
        {"Hermitian reduction", hermitian_reduction},
    };
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("crashed: ") + e.what()};
        }
        all = all && o.pass;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}

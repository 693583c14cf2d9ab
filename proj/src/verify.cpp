#include "cmh/verify.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "cmh/error.hpp"
#include "oracles.hpp"

namespace cmh {

namespace {

using Clock = std::chrono::steady_clock;

ComplexBall cb(const Rational& re, const Rational& im, const PrecisionContext& ctx)
{
    return ComplexBall(re, im, ctx.bits);
}

double max_abs_diff(const SiegelPoint& a, const SiegelPoint& b)
{
    double worst = 0;
    for (std::size_t i = 0; i < a.g; ++i)
        for (std::size_t j = 0; j < a.g; ++j) {
            Real d = (a.z(i, j) - b.z(i, j)).abs();
            worst = std::max(worst, d.mid_double() + d.rad_double());
        }
    return worst;
}

AlgebraicMatrix form2(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgebraicNumber& c,
                      const AlgebraicNumber& d)
{
    AlgebraicMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

AlgebraicMatrix random_gl2(const FieldPtr& K, std::mt19937_64& rng, int steps)
{
    std::uniform_int_distribution<long> e(-3, 3);
    auto one = AlgebraicNumber::from_rational(K, 1), zero = AlgebraicNumber::zero(K);
    AlgebraicMatrix g = form2(one, zero, zero, one);
    for (int s = 0; s < steps; ++s) {
        AlgebraicNumber a = AlgebraicNumber::from_integral(K, {Rational(e(rng)), Rational(e(rng))});
        g = (s % 2 ? form2(one, a, zero, one) : form2(one, zero, a, one)) * g;
    }
    return g;
}

Real widening(double eps, mpfr_prec_t prec)
{
    Mpfr mid(prec), rad(kRadiusPrecision);
    mpfr_set_zero(mid.get(), 1);
    mpfr_set_d(rad.get(), eps, MPFR_RNDU);
    return Real(mid, rad);
}

FieldPtr quadratic(const std::string& name, std::vector<Integer> poly, long disc)
{
    return verify_field({name, std::move(poly), RationalMatrix::identity(2), Integer(disc)});
}

std::string counts(std::size_t ok, std::size_t n)
{
    return std::to_string(ok) + "/" + std::to_string(n);
}

SuiteResult action_law(std::mt19937_64& rng)
{
    PrecisionContext ctx;
    std::size_t n = 0, ok = 0;
    for (std::size_t g : {1u, 2u})
        for (int t = 0; t < 100; ++t) {
            SiegelPoint z = random_siegel_point(g, rng, ctx);
            SymplecticIntMatrix a = oracle::random_symplectic_word(g, 6, rng);
            SymplecticIntMatrix b = oracle::random_symplectic_word(g, 6, rng);
            SiegelPoint lhs = sp_action(a * b, z), bz = sp_action(b, z), rhs = sp_action(a, bz);
            bool good = in_upper_half_space(lhs);
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j)
                    good = good && lhs.z(i, j).overlaps(rhs.z(i, j));
            good = good && cocycle(a * b, z).overlaps(cocycle(a, bz) * cocycle(b, z));
            ++n;
            ok += good;
        }
    return {"action-law", ok == n, counts(ok, n) + " (g = 1, 2) satisfy the group and cocycle laws"};
}

SuiteResult round_trip_suite(std::mt19937_64& rng)
{
    PrecisionContext ctx;
    std::vector<SiegelPoint> bases;
    for (int k = 0; k < 4; ++k)
        bases.push_back(random_interior_point(2, rng, ctx));
    bases.push_back(random_interior_point(1, rng, ctx));
    RoundTripStats s = round_trip(bases, 40, 20, rng);
    std::ostringstream d;
    d << s.recovered << "/" << s.cases << " recovered, " << s.flagged << " flagged, " << s.mismatched << " mismatched";
    return {"round-trip", s.mismatched == 0 && s.finite && 100 * s.recovered >= 99 * s.cases, d.str()};
}

SuiteResult det_formula_suite(const std::string& catalog_path)
{
    PrecisionContext ctx;
    Catalog cat = load_catalog(catalog_path, ctx);
    std::size_t held = 0, skipped = 0, failed = 0;
    std::string first;
    for (const auto& e : cat.entries) {
        try {
            Construction c = construct(e, ctx);
            held += c.det.size() == c.parts.size();
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::NoneFound) {
                ++skipped;
            } else {
                ++failed;
                if (first.empty())
                    first = e.label + ": " + err.what();
            }
        }
    }
    std::ostringstream d;
    d << held << " entries hold exactly, " << skipped << " without a principal polarization, " << failed
      << " failed, " << cat.rejects.size() << " rejected";
    if (!first.empty())
        d << " (" << first << ")";
    return {"det-formula", failed == 0 && cat.rejects.empty() && held > 0, d.str()};
}

SuiteResult gauss_suite(std::mt19937_64& rng)
{
    std::size_t ok = 0;
    const std::size_t n = 200;
    for (std::size_t t = 0; t < n; ++t) {
        RationalMatrix y = oracle::random_posdef2(50, rng);
        GaussReduced r = gauss_reduce(y);
        ok += r.y == oracle::gauss_bruteforce(y, 40) && is_gauss_reduced(r.y) &&
              to_rational(r.u) * y * to_rational(r.u).transpose() == r.y;
    }
    return {"gauss-oracle", ok == n, counts(ok, n) + " match exhaustive minimization"};
}

SuiteResult lll_suite(std::mt19937_64& rng)
{
    std::size_t ok = 0, n = 0;
    std::uniform_int_distribution<long> e(-20, 20);
    for (std::size_t dim = 2; dim <= 5; ++dim)
        for (int t = 0; t < 25; ++t) {
            RationalMatrix b(dim, dim);
            do {
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t j = 0; j < dim; ++j)
                        b(i, j) = e(rng);
            } while (determinant(b) == 0);
            RationalMatrix gram = b * b.transpose();
            LllResult r = lll_reduce_gram(gram);
            bool good = abs(determinant(r.transform)) == 1 &&
                        to_rational(r.transform) * gram * to_rational(r.transform).transpose() == r.gram;
            // b_1^2 <= 2^(n-1) lambda_1^2 against a box search on the reduced form
            Rational lambda = oracle::shortest_in_box(r.gram, dim <= 3 ? 4 : 2);
            good = good && r.gram(0, 0) <= Rational(Integer(1) << (dim - 1)) * lambda;
            // Gram-Schmidt size and Lovasz conditions, exactly
            std::vector<std::vector<Rational>> mu(dim, std::vector<Rational>(dim));
            std::vector<Rational> bstar(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    Rational s = r.gram(i, j);
                    for (std::size_t k = 0; k < j; ++k)
                        s -= mu[j][k] * mu[i][k] * bstar[k];
                    mu[i][j] = s / bstar[j];
                    good = good && 2 * abs(mu[i][j]) <= 1;
                }
                Rational s = r.gram(i, i);
                for (std::size_t k = 0; k < i; ++k)
                    s -= mu[i][k] * mu[i][k] * bstar[k];
                bstar[i] = s;
                if (i > 0)
                    good = good && bstar[i] >= (Rational(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * bstar[i - 1];
            }
            ++n;
            ok += good;
        }
    return {"lll-bound", ok == n, counts(ok, n) + " reduced bases satisfy the size, Lovasz and b1 bounds"};
}

SuiteResult hermitian_suite(std::mt19937_64& rng)
{
    CaseCount c = hermitian_cases(25, rng, PrecisionContext{});
    std::string d = counts(c.passed, c.cases) + " conjugated forms within the diagonal-dominance bound";
    if (!c.first_failure.empty())
        d += " (" + c.first_failure + ")";
    return {"hermitian", c.passed == c.cases, d};
}

SuiteResult heights_suite(const std::string& catalog_path)
{
    PrecisionContext ctx;
    std::size_t n = 0, ok = 0;
    std::string first;
    auto check = [&](bool cond, const std::string& what) {
        ++n;
        ok += cond;
        if (!cond && first.empty())
            first = what;
    };

    Catalog cat = load_catalog(catalog_path, ctx);
    for (const auto& e : cat.entries) {
        ResultRow row = run_pipeline(e, {});
        if (!row.ok())
            continue;
        check(row.degree_max <= 4 * row.g, e.label + ": entry degree above 4g");
        // numeric path: forget the exact entries and recognize them again
        const SiegelPoint& z = row.reduction->z;
        if (!z.exact || e.kind != CatalogEntry::Kind::Simple || row.g != 1)
            continue;
        SiegelPoint numeric = SiegelPoint::from_balls(z.z);
        Real cap(Rational(1) << 64, ctx.bits);
        try {
            SiegelPoint back = reconstruct_point(numeric, z.exact->field, cap, ctx);
            check(height_of_point(back, ctx).H.overlaps(row.H), e.label + ": numeric height differs");
        } catch (const Error& err) {
            check(false, e.label + ": " + err.what());
        }
    }

    // the same element of Q(i) viewed inside Q(zeta8)
    FieldPtr qi = quadratic("Q(i)", {1, 0, 1}, -4);
    FieldPtr z8 = verify_field({"Q(zeta8)", {1, 0, 0, 0, 1}, RationalMatrix::identity(4), Integer(256)});
    auto iota = field_embedding(*qi, 0, z8, ctx);
    check(iota.has_value(), "Q(i) does not embed in Q(zeta8)");
    if (iota)
        for (long a = -3; a <= 3; ++a)
            for (long b = 1; b <= 4; ++b) {
                AlgebraicNumber x(qi, {Rational(a, 2), Rational(b, 3)});
                AlgebraicNumber y(z8, row_times(x.coords(), *iota));
                check(weil_height(x, ctx).H.overlaps(weil_height(y, ctx).H), "height changes under embedding");
            }
    std::string d = counts(ok, n) + " height checks";
    if (!first.empty())
        d += " (" + first + ")";
    return {"heights", ok == n && n > 0, d};
}

}  // namespace

bool VerifyReport::passed() const
{
    for (const auto& s : suites)
        if (!s.passed)
            return false;
    return true;
}

const std::vector<std::string>& verify_tags()
{
    static const std::vector<std::string> tags{"action-law", "round-trip",  "det-formula", "gauss-oracle",
                                               "lll-bound",  "hermitian",   "heights"};
    return tags;
}

SiegelPoint random_siegel_point(std::size_t g, std::mt19937_64& rng, const PrecisionContext& ctx)
{
    std::uniform_int_distribution<long> e(-40, 40);
    Matrix<ComplexBall> z(g, g);
    if (g == 1) {
        z(0, 0) = cb(Rational(e(rng), 32), Rational(std::abs(e(rng)) + 1, 16), ctx);
        return SiegelPoint::from_balls(z);
    }
    for (;;) {
        Rational y11(std::abs(e(rng)) + 1, 16), y22(std::abs(e(rng)) + 1, 16), y12(e(rng), 64);
        if (y11 * y22 - y12 * y12 <= 0)
            continue;
        z(0, 0) = cb(Rational(e(rng), 32), y11, ctx);
        z(0, 1) = z(1, 0) = cb(Rational(e(rng), 32), y12, ctx);
        z(1, 1) = cb(Rational(e(rng), 32), y22, ctx);
        return SiegelPoint::from_balls(z);
    }
}

SiegelPoint random_interior_point(std::size_t g, std::mt19937_64& rng, const PrecisionContext& ctx)
{
    for (;;) {
        ReductionResult r = reduce(random_siegel_point(g, rng, ctx));
        if (r.report.reduced() && !r.trace.boundary_flag && !near_boundary(r.z, 1.0 / (1 << 20)))
            return r.z;
    }
}

bool near_boundary(const SiegelPoint& z, double eps)
{
    const mpfr_prec_t prec = z.precision();
    const Real w = widening(eps, prec);
    Matrix<ComplexBall> wide = z.z.map([&](const ComplexBall& b) { return ComplexBall(b.re() + w, b.im() + w); });
    if (z.g == 2)
        wide(1, 0) = wide(0, 1);
    return !is_reduced(SiegelPoint::from_balls(wide), 0).reduced();
}

RoundTripStats round_trip(const std::vector<SiegelPoint>& bases, std::size_t words, std::size_t max_len,
                          std::mt19937_64& rng)
{
    RoundTripStats s;
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    const double tol = std::ldexp(1.0, -40);
    for (const auto& base : bases)
        for (std::size_t w = 0; w < words; ++w) {
            ++s.cases;
            SymplecticIntMatrix gamma = oracle::random_symplectic_word(base.g, len(rng), rng);
            try {
                SiegelPoint moved = sp_action(gamma, SiegelPoint::from_balls(base.z));
                ReductionResult r = reduce(moved);
                const double gmax = r.trace.gamma_max_entry.get_d();
                const double h = r.trace.h_start.mid_double();
                s.finite = s.finite && std::isfinite(gmax) && std::isfinite(h);
                if (gmax > 1 && h > 1)
                    s.gamma_vs_h.emplace_back(std::log(h), std::log(gmax));
                if (max_abs_diff(r.z, base) <= tol)
                    ++s.recovered;
                else if (!r.report.reduced() || r.trace.boundary_flag || near_boundary(r.z, 1.0 / (1 << 20)))
                    ++s.flagged;
                else
                    ++s.mismatched;
            } catch (const Error& err) {
                if (err.kind() == ErrorKind::UndecidableAtPrecision)
                    ++s.flagged;
                else
                    ++s.mismatched;
            }
        }
    return s;
}

CaseCount hermitian_cases(std::size_t per_field, std::mt19937_64& rng, const PrecisionContext& ctx)
{
    CaseCount c;
    for (const FieldPtr& F : {quadratic("Q(i)", {1, 0, 1}, -4), quadratic("Q(w)", {1, 1, 1}, -3)}) {
        CMFieldPtr cf = make_cm_field(F, ctx);
        AlgebraicNumber theta = AlgebraicNumber::generator(F);
        AlgebraicNumber zeta = theta - cf->rho(theta);
        if (!ball_eval(zeta, 0, ctx).im().certainly_positive())
            zeta = -zeta;
        AlgebraicNumber h = zeta * Rational(-1, 2);
        AlgebraicNumber zero = AlgebraicNumber::zero(F);
        AlgebraicMatrix base = form2(h, zero, zero, h);
        for (std::size_t t = 0; t < per_field; ++t) {
            ++c.cases;
            AlgebraicMatrix gam = random_gl2(F, rng, 8);
            AlgebraicMatrix e = gam * base * conjugate_transpose(gam, *cf);
            try {
                HermitianReduction r = hermitian_reduce(e, zeta, *cf, ctx);
                AlgebraicNumber dg = r.g(0, 0) * r.g(1, 1) - r.g(0, 1) * r.g(1, 0);
                AlgebraicNumber de = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
                AlgebraicNumber dr = r.reduced(0, 0) * r.reduced(1, 1) - r.reduced(0, 1) * r.reduced(1, 0);
                if (r.bound_holds && r.unimodular && dr == dg * cf->rho(dg) * de)
                    ++c.passed;
                else if (c.first_failure.empty())
                    c.first_failure = F->name() + " case " + std::to_string(t);
            } catch (const Error& err) {
                if (c.first_failure.empty())
                    c.first_failure = F->name() + ": " + err.what();
            }
        }
    }
    return c;
}

VerifyReport verify_suite(const std::vector<std::string>& filter, std::uint64_t seed, const std::string& catalog_path)
{
    const auto& tags = verify_tags();
    for (const auto& f : filter)
        if (std::find(tags.begin(), tags.end(), f) == tags.end()) {
            std::string valid;
            for (const auto& t : tags)
                valid += (valid.empty() ? "" : ", ") + t;
            throw Error(ErrorKind::InvalidArgument, "unknown tag \"" + f + "\"; valid tags: " + valid);
        }
    VerifyReport rep;
    rep.seed = seed;
    for (const auto& tag : tags) {
        if (!filter.empty() && std::find(filter.begin(), filter.end(), tag) == filter.end())
            continue;
        std::mt19937_64 rng(seed);
        const auto t0 = Clock::now();
        SuiteResult r;
        try {
            if (tag == "action-law")
                r = action_law(rng);
            else if (tag == "round-trip")
                r = round_trip_suite(rng);
            else if (tag == "det-formula")
                r = det_formula_suite(catalog_path);
            else if (tag == "gauss-oracle")
                r = gauss_suite(rng);
            else if (tag == "lll-bound")
                r = lll_suite(rng);
            else if (tag == "hermitian")
                r = hermitian_suite(rng);
            else
                r = heights_suite(catalog_path);
        } catch (const std::exception& ex) {
            r = {tag, false, std::string("crashed: ") + ex.what()};
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        rep.suites.push_back(std::move(r));
    }
    return rep;
}

}  // namespace cmh

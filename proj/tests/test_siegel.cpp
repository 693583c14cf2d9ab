#include <cmath>
#include <random>

#include "doctest.h"
#include "cmh/error.hpp"
#include "cmh/siegel.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cmh;
using fixtures::element;

namespace {

PrecisionContext ctx;

ComplexBall cb(const Rational& re, const Rational& im)
{
    return ComplexBall(re, im, ctx.bits);
}

SiegelPoint point1(const Rational& re, const Rational& im)
{
    Matrix<ComplexBall> z(1, 1);
    z(0, 0) = cb(re, im);
    return SiegelPoint::from_balls(z);
}

SiegelPoint point2(ComplexBall a, ComplexBall b, ComplexBall c)
{
    Matrix<ComplexBall> z(2, 2);
    z(0, 0) = a;
    z(0, 1) = z(1, 0) = b;
    z(1, 1) = c;
    return SiegelPoint::from_balls(z);
}

SiegelPoint exact_point(const CMFieldPtr& L, AlgebraicMatrix m)
{
    return SiegelPoint::from_exact({L, std::move(m)}, ctx);
}

AlgebraicMatrix scalar_matrix(const AlgebraicNumber& a, std::size_t g)
{
    AlgebraicMatrix m(g, g, AlgebraicNumber::zero(a.field()));
    for (std::size_t i = 0; i < g; ++i)
        m(i, i) = a;
    return m;
}

// the element of Q(i) mapping to +i under the first embedding
AlgebraicNumber upper_i(const FieldPtr& K)
{
    AlgebraicNumber t = element(K, {0, 1});
    return ball_eval(t, 0, ctx).im().certainly_positive() ? t : -t;
}

bool close(const SiegelPoint& a, const SiegelPoint& b, double tol)
{
    for (std::size_t i = 0; i < a.g; ++i)
        for (std::size_t j = 0; j < a.g; ++j) {
            ComplexBall d = a.z(i, j) - b.z(i, j);
            if (!(d.abs().mid_double() + d.abs().rad_double() <= tol))
                return false;
        }
    return true;
}

SiegelPoint random_point2(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> e(-40, 40);
    for (;;) {
        Rational y11(std::abs(e(rng)) + 1, 16), y22(std::abs(e(rng)) + 1, 16), y12(e(rng), 64);
        if (y11 * y22 - y12 * y12 <= 0)
            continue;
        return point2(cb(Rational(e(rng), 32), y11), cb(Rational(e(rng), 32), y12), cb(Rational(e(rng), 32), y22));
    }
}

}  // namespace

TEST_CASE("symplectic matrices and the Gottschling table")
{
    CHECK(is_symplectic(SymplecticIntMatrix::j(2).matrix()));
    const auto& t = gottschling_matrices();
    CHECK(t.size() == 19);
    for (std::size_t a = 0; a < t.size(); ++a) {
        CHECK(is_symplectic(t[a].matrix()));
        for (std::size_t b = 0; b < a; ++b)
            CHECK_FALSE(t[a] == t[b]);
    }
    SiegelPoint z = point2(cb(Rational(1, 3), 2), cb(Rational(1, 5), Rational(1, 7)), cb(Rational(-1, 4), 3));
    for (long e : {1L, -1L}) {
        ComplexBall expect = z.z(0, 0) + z.z(1, 1) - z.z(0, 1) - z.z(0, 1) + cb(e, 0);
        CHECK(cocycle(t[e == 1 ? 17 : 18], z).overlaps(expect));
    }
    CHECK(cocycle(t[15], z).overlaps(z.z(0, 0)));
    CHECK(cocycle(t[16], z).overlaps(z.z(1, 1)));
    CHECK_THROWS_AS(SymplecticIntMatrix(IntegerMatrix{{1, 1}, {1, 2}} * IntegerMatrix{{1, 0}, {0, 2}}), Error);
}

TEST_CASE("sp_action")
{
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    SiegelPoint ii = exact_point(cm, scalar_matrix(upper_i(K), 2));
    SiegelPoint same = sp_action(SymplecticIntMatrix::identity(2), ii);
    CHECK(same.exact->m == ii.exact->m);
    SiegelPoint jz = sp_action(SymplecticIntMatrix::j(2), ii);
    CHECK(jz.exact->m == ii.exact->m);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        SiegelPoint z = random_point2(rng);
        SymplecticIntMatrix a = oracle::random_symplectic_word(2, 6, rng);
        SymplecticIntMatrix b = oracle::random_symplectic_word(2, 6, rng);
        SiegelPoint lhs = sp_action(a, sp_action(b, z));
        SiegelPoint rhs = sp_action(a * b, z);
        CHECK(close(lhs, rhs, std::ldexp(1.0, -int(ctx.bits / 2))));
    }
}

TEST_CASE("action preserves the upper half space")
{
    std::mt19937_64 rng(1000);
    int ok = 0;
    for (int t = 0; t < 1000; ++t) {
        SiegelPoint z = random_point2(rng);
        SymplecticIntMatrix w = oracle::random_symplectic_word(2, 10, rng);
        ok += in_upper_half_space(sp_action(w, z));
    }
    CHECK(ok == 1000);
}

TEST_CASE("period_matrix")
{
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    ZLattice ok = ZLattice::maximal_order(K);
    PolarizedCMLattice p = make_polarized(cm, upper_cm_type(*K), ok, scalar_form(element(K, {0, 1}, 2)), ctx);
    SymplecticBasis sb = symplectic_basis(p.gram);
    SiegelPoint z = period_matrix(p, sb, ctx);
    REQUIRE(z.exact);
    CHECK(z.exact->m(0, 0) == upper_i(K));

    auto W = fixtures::eisenstein();
    auto cmw = make_cm_field(W, ctx);
    CMType upw = upper_cm_type(*W);
    ZLattice ow = ZLattice::maximal_order(W);
    PolarizedCMLattice q =
        make_polarized(cmw, upw, ow, scalar_form(find_principal_xi(ow, upw, *cmw, ctx).xis[0]), ctx);
    SiegelPoint zq = period_matrix(q, symplectic_basis(q.gram), ctx);
    ReductionResult rq = reduce(zq);
    // the reduced omega-point is (1 + i sqrt 3) / 2 up to the boundary identification
    CHECK(rq.z.z(0, 0).norm().contains(Rational(1)));
    CHECK(rq.z.z(0, 0).im().overlaps(sqrt(Real(Rational(3, 4), ctx.bits))));

    SiegelPoint prod = period_matrix(product_polarized(p, q), ctx);
    CHECK(prod.z(0, 0).overlaps(z.z(0, 0)));
    CHECK(prod.z(1, 1).overlaps(zq.z(0, 0)));
    CHECK(prod.z(0, 1).contains_zero());
    CHECK_FALSE(prod.exact);

    // quartic fields: symmetric with positive imaginary part, exact through automorphisms
    for (const auto& Q : {fixtures::zeta5(), fixtures::zeta8()}) {
        auto cq = make_cm_field(Q, ctx);
        CMType phi = cm_types(*cq)[0];
        ZLattice oq = ZLattice::maximal_order(Q);
        XiSearch s = find_principal_xi(oq, phi, *cq, ctx);
        PolarizedCMLattice pq = make_polarized(cq, phi, oq, scalar_form(s.xis[0]), ctx);
        SiegelPoint zz = period_matrix(pq, symplectic_basis(pq.gram), ctx);
        REQUIRE(zz.exact);
        CHECK(in_upper_half_space(zz));
        ComplexBall d = zz.z(0, 1) - zz.z(1, 0);
        CHECK(d.abs().mid_double() <= std::ldexp(1.0, -int(ctx.bits / 2)));
    }
}

TEST_CASE("h_of examples")
{
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    SiegelPoint ii = exact_point(cm, scalar_matrix(upper_i(K), 2));
    CHECK(h_of(ii).contains(Rational(1)));
    CHECK(h_of(point1(Rational(1, 3), Rational(1, 1000))).contains(Rational(1000)));
    SiegelPoint d = point2(cb(0, 2), cb(0, 0), cb(0, Rational(1, 2)));
    CHECK(h_of(d).contains(Rational(2)));
}

TEST_CASE("is_reduced examples")
{
    CHECK(is_reduced(point1(0, 2)).reduced());
    ReducedReport r = is_reduced(point1(Rational(1, 2), Rational(1, 2)));
    CHECK(r.status == ReducedReport::Status::NotReduced);
    REQUIRE(r.failing.size() == 1);
    CHECK(r.failing[0] == "iii:|z|>=1");

    ReducedReport wrong = is_reduced(point2(cb(0, 2), cb(0, 0), cb(0, Rational(3, 2))));
    CHECK(wrong.status == ReducedReport::Status::NotReduced);
    REQUIRE_FALSE(wrong.failing.empty());
    CHECK(wrong.failing[0] == "i:y11<=y22");
    CHECK(is_reduced(point2(cb(0, Rational(3, 2)), cb(0, 0), cb(0, 2))).reduced());

    // i Id_2 lies on the boundary: undecidable numerically, reduced exactly
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    SiegelPoint ii = exact_point(cm, scalar_matrix(upper_i(K), 2));
    CHECK(is_reduced(ii).reduced());
    SiegelPoint num = ii;
    num.exact.reset();
    CHECK(is_reduced(num).status != ReducedReport::Status::NotReduced);
}

TEST_CASE("reduce examples")
{
    ReductionResult a = reduce(point1(3, 2));
    CHECK(a.gamma == SymplecticIntMatrix::translation(IntegerMatrix{{-3}}));
    CHECK(a.z.z(0, 0).re().contains(Rational(0)));
    CHECK(a.z.z(0, 0).im().contains(Rational(2)));

    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    SiegelPoint q = exact_point(cm, scalar_matrix(upper_i(K) * Rational(1, 4), 1));
    ReductionResult b = reduce(q);
    REQUIRE(b.z.exact);
    CHECK(b.z.exact->m(0, 0) == upper_i(K) * Rational(4));
    CHECK(b.trace.steps.size() == 1);
    CHECK(b.trace.steps[0].kind == "invert");

    std::mt19937_64 rng(20);
    SiegelPoint base = exact_point(cm, scalar_matrix(upper_i(K), 2));
    for (int t = 0; t < 20; ++t) {
        SymplecticIntMatrix w = oracle::random_symplectic_word(2, 20, rng);
        SiegelPoint z = sp_action(w, base);
        ReductionResult r = reduce(z);
        CHECK(r.report.reduced());
        REQUIRE(r.z.exact);
        CHECK(r.z.exact->m == base.exact->m);
        CHECK(sp_action(r.gamma, z).exact->m == r.z.exact->m);
        // monotone det Im Z over the height moves
        Real last = Real(0L, ctx.bits);
        bool first = true;
        for (const auto& s : r.trace.steps) {
            if (s.kind == "gottschling") {
                if (!first)
                    CHECK_FALSE(certainly_lt(s.det_im, last));
            }
            last = s.det_im;
            first = false;
        }
        SymplecticIntMatrix prod = SymplecticIntMatrix::identity(2);
        for (const auto& s : r.trace.steps)
            prod = s.matrix * prod;
        CHECK(prod == r.trace.gamma_total);
        CHECK(r.trace.gamma_max_entry == r.gamma.max_entry());
    }
}

TEST_CASE("reduction trace serialization")
{
    ReductionResult r = reduce(point1(Rational(7, 2), Rational(1, 5)));
    std::string s = r.trace.serialize();
    std::size_t lines = 0;
    for (char c : s)
        lines += c == '\n';
    CHECK(lines == r.trace.steps.size());
    CHECK(s == reduce(point1(Rational(7, 2), Rational(1, 5))).trace.serialize());
    CHECK(s.rfind("translate", 0) == 0);
}

TEST_CASE("imaginary part identity")
{
    SiegelPoint z1 = point1(Rational(1, 3), Rational(5, 4));
    CHECK(imaginary_part_identity_check(SymplecticIntMatrix::identity(1), z1).contains(Rational(0)));
    PrecisionContext p128{128, 3};
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        SiegelPoint z = random_point2(rng).at_precision(p128);
        SymplecticIntMatrix g = oracle::random_symplectic_word(2, 8, rng);
        Real res = imaginary_part_identity_check(g, z);
        CHECK(res.mid_double() + res.rad_double() <= std::ldexp(1.0, -80));
        IntegerMatrix u{{Integer(2), Integer(1)}, {Integer(1), Integer(1)}};
        SiegelPoint zu = sp_action(SymplecticIntMatrix::embed(u), z);
        Real ru = imaginary_part_identity_check(g, zu);
        CHECK(ru.mid_double() + ru.rad_double() <= std::ldexp(1.0, -80));
    }
}

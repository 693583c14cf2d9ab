#include <random>

#include "doctest.h"
#include "cmh/error.hpp"
#include "cmh/polarization.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cmh;
using fixtures::element;

namespace {

PrecisionContext ctx;

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
        AlgebraicMatrix m = s % 2 ? form2(one, a, zero, one) : form2(one, zero, a, one);
        g = m * g;
    }
    return g;
}

}  // namespace

TEST_CASE("riemann_gram examples")
{
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    ZLattice ok = ZLattice::maximal_order(K);
    RiemannForm f = riemann_gram(ok, element(K, {0, 1}, 2), *cm);
    CHECK(f.gram == RationalMatrix{{0, 1}, {-1, 0}});
    CHECK(f.integral);
    CHECK(f.principal);
    RiemannForm z = riemann_gram(ok, AlgebraicNumber::zero(K), *cm);
    CHECK(z.gram == RationalMatrix(2, 2));
    CHECK_FALSE(z.principal);
    RiemannForm m = riemann_gram(ok, element(K, {0, -1}, 2), *cm);
    CHECK(m.gram == -f.gram);
    CHECK_THROWS_AS(riemann_gram(ok, element(K, {1, 1}), *cm), Error);
}

TEST_CASE("det formula")
{
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    DetFormula d = verify_det_formula(ZLattice::maximal_order(K), scalar_form(element(K, {0, 1}, 2)), *cm);
    CHECK(d.holds);
    CHECK(d.det == 1);
    CHECK(d.signed_expected == -1);

    auto Z5 = fixtures::zeta5();
    auto cm5 = make_cm_field(Z5, ctx);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        AlgebraicNumber a = fixtures::random_element(Z5, rng);
        AlgebraicNumber xi = a - cm5->rho(a);
        if (xi.is_zero())
            continue;
        ZLattice I = ZLattice::order_conductor(Z5, 1 + t % 3);
        DetFormula one = verify_det_formula(I, scalar_form(xi), *cm5);
        CHECK(one.holds);
        DetFormula two = verify_det_formula(I.scaled(element(Z5, {2})), scalar_form(xi), *cm5);
        CHECK(two.holds);
        CHECK(two.det == one.det * 256);
    }
}

TEST_CASE("equivalence move preserves the Gram matrix")
{
    std::mt19937_64 rng(9);
    for (const auto& K : {fixtures::gaussian(), fixtures::zeta5(), fixtures::zeta8()}) {
        auto cm = make_cm_field(K, ctx);
        for (int t = 0; t < 5; ++t) {
            AlgebraicNumber a = fixtures::random_element(K, rng);
            AlgebraicNumber xi = a - cm->rho(a);
            AlgebraicNumber nu = fixtures::random_element(K, rng);
            if (xi.is_zero() || nu.is_zero())
                continue;
            ZLattice I = ZLattice::order_conductor(K, 2);
            RationalMatrix g1 = riemann_gram(I, xi, *cm).gram;
            RationalMatrix g2 = riemann_gram(I.scaled(nu), xi / (nu * cm->rho(nu)), *cm).gram;
            CHECK(g1 == g2);
        }
    }
}

TEST_CASE("find_principal_xi examples")
{
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    CMType up = upper_cm_type(*K);
    XiSearch s = find_principal_xi(ZLattice::maximal_order(K), up, *cm, ctx);
    REQUIRE(s.xis.size() == 1);
    CHECK(s.xis[0] == element(K, {0, 1}, 2));

    auto W = fixtures::eisenstein();
    auto cmw = make_cm_field(W, ctx);
    CMType upw = upper_cm_type(*W);
    XiSearch sw = find_principal_xi(ZLattice::maximal_order(W), upw, *cmw, ctx);
    REQUIRE(sw.xis.size() == 1);
    AlgebraicNumber sq = element(W, {1, 2});  // 2w + 1
    CHECK((sw.xis[0] == sq * Rational(1, 3) || sw.xis[0] == sq * Rational(-1, 3)));
    CHECK(ball_eval(sw.xis[0], upw.embedding_indices[0], ctx).im().certainly_positive());
    CHECK(riemann_gram(ZLattice::maximal_order(W), sw.xis[0], *cmw).principal);

    CMType low = make_cm_type(*W, {1 - upw.embedding_indices[0]});
    XiSearch sl = find_principal_xi(ZLattice::maximal_order(W), low, *cmw, ctx);
    REQUIRE(sl.xis.size() == 1);
    CHECK(sl.xis[0] == -sw.xis[0]);

    // quartic fields: every returned xi is admissible
    for (const auto& Q : {fixtures::zeta5(), fixtures::zeta8(), fixtures::zeta12()}) {
        auto cq = make_cm_field(Q, ctx);
        int found = 0;
        for (const CMType& phi : cm_types(*cq)) {
            XiSearch sq4;
            try {
                sq4 = find_principal_xi(ZLattice::maximal_order(Q), phi, *cq, ctx);
            } catch (const Error& e) {
                // not every type admits a principal polarization on O_K
                CHECK(e.kind() == ErrorKind::NoneFound);
                continue;
            }
            ++found;
            for (const auto& xi : sq4.xis) {
                CHECK(cq->rho(xi) == -xi);
                CHECK(riemann_gram(ZLattice::maximal_order(Q), xi, *cq).principal);
                for (std::size_t k : phi.embedding_indices)
                    CHECK(ball_eval(xi, k, ctx).im().certainly_positive());
            }
        }
        CHECK(found >= 2);
    }

    // (1 + i) Z[i]
    ZLattice big = ZLattice::maximal_order(K).scaled(element(K, {1, 1}));
    XiSearch sb = find_principal_xi(big, up, *cm, ctx);
    CHECK(riemann_gram(big, sb.xis[0], *cm).principal);
}

TEST_CASE("reduce_xi")
{
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    CMType up = upper_cm_type(*K);
    XiReduction r = reduce_xi(ZLattice::maximal_order(K), element(K, {0, 1}, 2), up, *cm, ctx);
    CHECK(r.nu == element(K, {1}));
    CHECK(r.xi == element(K, {0, 1}, 2));

    auto Z5 = fixtures::zeta5();
    auto cm5 = make_cm_field(Z5, ctx);
    ZLattice ok = ZLattice::maximal_order(Z5);
    CMType phi = cm_types(*cm5)[0];
    XiSearch s = find_principal_xi(ok, phi, *cm5, ctx);
    AlgebraicNumber xi0 = s.xis[0];
    XiReduction balanced = reduce_xi(ok, xi0, phi, *cm5, ctx);
    CHECK(balanced.nu.norm() == 1);

    // u = (zeta + zeta^-1)^2 is a totally positive unit of the real subfield
    AlgebraicNumber eps = element(Z5, {0, 1, 0, 0}) + element(Z5, {0, 1, 0, 0}).inverse();
    AlgebraicNumber u = eps * eps;
    auto max_conj = [&](const AlgebraicNumber& x) {
        Real m = ball_eval(x, phi.embedding_indices[0], ctx).abs();
        for (std::size_t k : phi.embedding_indices)
            m = max(m, ball_eval(x, k, ctx).abs());
        return m;
    };
    // exhaustive unit-power oracle
    Real best = max_conj(xi0);
    AlgebraicNumber uinv = u.inverse();
    for (unsigned long k = 1; k <= 8; ++k) {
        best = min(best, max_conj(xi0 * u.pow(k)));
        best = min(best, max_conj(xi0 * uinv.pow(k)));
    }
    for (int p : {1, 2, 3, 5}) {
        AlgebraicNumber xi = xi0 * u.pow(static_cast<unsigned long>(p));
        XiReduction red = reduce_xi(ok, xi, phi, *cm5, ctx);
        CHECK(certainly_le(red.max_after, red.max_before));
        CHECK_FALSE(certainly_lt(best, red.max_after));
        CHECK(riemann_gram(red.lattice, red.xi, *cm5).principal);
        CHECK(cm5->totally_real_subfield_basis().rows() == 2);
        CHECK(cm5->rho(red.nu) == red.nu);
    }
}

TEST_CASE("symplectic_basis")
{
    RationalMatrix j4 = standard_symplectic_form(2);
    SymplecticBasis id = symplectic_basis(j4);
    CHECK(id.transform == IntegerMatrix::identity(4));
    SymplecticBasis sw = symplectic_basis(RationalMatrix{{0, -1}, {1, 0}});
    CHECK((sw.transform == IntegerMatrix{{1, 0}, {0, -1}} || sw.transform == IntegerMatrix{{0, 1}, {1, 0}}));
    RationalMatrix t = to_rational(sw.transform);
    CHECK(t * RationalMatrix{{0, -1}, {1, 0}} * t.transpose() == standard_symplectic_form(1));

    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        IntegerMatrix gam = oracle::random_unimodular(4, 6, rng);
        RationalMatrix gr = to_rational(gam);
        RationalMatrix gram = gr * j4 * gr.transpose();
        SymplecticBasis sb = symplectic_basis(gram);
        RationalMatrix tr = to_rational(sb.transform);
        CHECK(tr * gram * tr.transpose() == j4);
        CHECK(abs(determinant(sb.transform)) == 1);
    }
    CHECK_THROWS_AS(symplectic_basis(RationalMatrix{{0, 2}, {-2, 0}}), Error);
    CHECK_THROWS_AS(symplectic_basis(RationalMatrix{{0, 1}, {1, 0}}), Error);
}

TEST_CASE("product_polarized")
{
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    ZLattice ok = ZLattice::maximal_order(K);
    auto p = make_polarized(cm, upper_cm_type(*K), ok, scalar_form(element(K, {0, 1}, 2)), ctx);
    ProductPolarized pp = product_polarized(p, p);
    CHECK(pp.gram.block(0, 0, 2, 2) == p.gram);
    CHECK(pp.gram.block(2, 2, 2, 2) == p.gram);
    CHECK(pp.gram.block(0, 2, 2, 2) == RationalMatrix(2, 2));
    CHECK(pp.disc == 16);
    SymplecticBasis sb = symplectic_basis(pp.gram);
    CHECK(sb.transform == IntegerMatrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});

    auto W = fixtures::eisenstein();
    auto cmw = make_cm_field(W, ctx);
    CMType upw = upper_cm_type(*W);
    ZLattice ow = ZLattice::maximal_order(W);
    auto q = make_polarized(cmw, upw, ow, scalar_form(find_principal_xi(ow, upw, *cmw, ctx).xis[0]), ctx);
    CHECK(product_polarized(p, q).disc == 12);
    CHECK_THROWS_AS(make_polarized(cm, upper_cm_type(*K), ok, scalar_form(element(K, {0, 1})), ctx), Error);
    CHECK_THROWS_AS(make_polarized(cm, upper_cm_type(*K), ok, scalar_form(element(K, {0, -1}, 2)), ctx), Error);
}

TEST_CASE("hermitian_reduce")
{
    auto K = fixtures::gaussian();
    auto cm = make_cm_field(K, ctx);
    auto zero = AlgebraicNumber::zero(K);
    AlgebraicNumber zeta = element(K, {0, 1});
    AlgebraicNumber h = element(K, {0, -1}, 2);
    AlgebraicMatrix e0 = form2(h, zero, zero, h);
    HermitianReduction r = hermitian_reduce(e0, zeta, *cm, ctx);
    auto one = AlgebraicNumber::from_rational(K, 1);
    CHECK(r.g == form2(one, zero, zero, one));
    CHECK(r.unimodular);
    CHECK(r.bound_holds);
    CHECK_THROWS_AS(hermitian_reduce(form2(-h, zero, zero, h), zeta, *cm, ctx), Error);

    std::mt19937_64 rng(21);
    for (const auto& F : {fixtures::gaussian(), fixtures::eisenstein()}) {
        auto cf = make_cm_field(F, ctx);
        AlgebraicNumber z = AlgebraicNumber::generator(F) - cf->rho(AlgebraicNumber::generator(F));
        if (!ball_eval(z, 0, ctx).im().certainly_positive())
            z = -z;
        AlgebraicNumber hf = z * Rational(-1, 2);
        auto zf = AlgebraicNumber::zero(F);
        AlgebraicMatrix base = form2(hf, zf, zf, hf);
        for (int t = 0; t < 10; ++t) {
            AlgebraicMatrix gam = random_gl2(F, rng, 8);
            AlgebraicMatrix e = gam * base * conjugate_transpose(gam, *cf);
            REQUIRE(is_skew_hermitian(e, *cf));
            HermitianReduction red = hermitian_reduce(e, z, *cf, ctx);
            CHECK(red.bound_holds);
            AlgebraicNumber dg = red.g(0, 0) * red.g(1, 1) - red.g(0, 1) * red.g(1, 0);
            AlgebraicNumber de = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
            AlgebraicNumber dr = red.reduced(0, 0) * red.reduced(1, 1) - red.reduced(0, 1) * red.reduced(1, 0);
            CHECK(dr == dg * cf->rho(dg) * de);
            // LLL in dimension 4 keeps the diagonal within 2^3 of the minima
            Real cap = ball_eval(hf, 0, ctx).abs() * Real(8L, ctx.bits);
            CHECK(certainly_le(red.max_entry, cap));
        }
    }
}

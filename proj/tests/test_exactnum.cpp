#include <cmath>
#include <random>

#include "doctest.h"
#include "cmh/error.hpp"
#include "cmh/number_field.hpp"
#include "fixtures.hpp"

using namespace cmh;
using fixtures::element;

TEST_CASE("rational parsing and rounding")
{
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK_THROWS_AS(parse_rational("1.5"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK(round(Rational(5, 2)) == 3);
    CHECK(round(Rational(-5, 2)) == -3);
    CHECK(floor(Rational(-1, 3)) == -1);
    CHECK(ceil(Rational(-1, 3)) == 0);
}

TEST_CASE("real balls enclose exact results")
{
    Real third = Real(1L, 64) / Real(3L, 64);
    CHECK(third.contains(Rational(1, 3)));
    CHECK_FALSE(third.is_exact());
    Real s = sqrt(Real(2L, 128));
    CHECK(sqr(s).contains(Rational(2)));
    Real r = root(Real(16L, 128), 4);
    CHECK(r.contains(Rational(2)));
    CHECK(certainly_lt(Real(1L, 64), Real(2L, 64)));
    CHECK(compare(Real(1L, 64), Real(1L, 64)) == Sign::Zero);
    CHECK_THROWS_AS(Real(1L, 64) / Real(Rational(0), 64), Error);
}

TEST_CASE("ball_eval examples")
{
    auto K = fixtures::gaussian();
    PrecisionContext ctx{64, 3};
    for (std::size_t k = 0; k < 2; ++k) {
        ComplexBall one = ball_eval(AlgebraicNumber::from_rational(K, 1), k, ctx);
        CHECK(one.contains(ComplexBall(Rational(1), Rational(0), 64)));
        CHECK(one.radius() <= std::ldexp(1.0, -60));
    }
    // canonical order: -i before +i
    ComplexBall up = ball_eval(element(K, {0, 1}), 1, ctx);
    CHECK(up.overlaps(ComplexBall::i(64)));

    auto Z5 = fixtures::zeta5();
    ComplexBall target = ComplexBall::root_of_unity(2, 5, 256);
    bool found = false;
    for (std::size_t k = 0; k < 4; ++k)
        if (ball_eval(element(Z5, {0, 1}), k, PrecisionContext{}).overlaps(target)) {
            found = true;
            CHECK(k == 1);
        }
    CHECK(found);
}

TEST_CASE("ball containment under field arithmetic")
{
    std::mt19937_64 rng(12345);
    std::vector<FieldPtr> fields{fixtures::gaussian(), fixtures::zeta5(), fixtures::zeta8(), fixtures::sqrt2()};
    int checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const FieldPtr& K = fields[trial % fields.size()];
        AlgebraicNumber a = fixtures::random_element(K, rng), b = fixtures::random_element(K, rng);
        std::size_t k = static_cast<std::size_t>(trial) % K->degree();
        ComplexBall x = a.eval(k, 64), y = b.eval(k, 64);
        int op = trial % 4;
        ComplexBall lo;
        AlgebraicNumber exact;
        if (op == 0) {
            lo = x + y;
            exact = a + b;
        } else if (op == 1) {
            lo = x - y;
            exact = a - b;
        } else if (op == 2) {
            lo = x * y;
            exact = a * b;
        } else {
            if (b.is_zero() || y.contains_zero())
                continue;
            lo = x / y;
            exact = a / b;
        }
        ComplexBall hi = exact.eval(k, 256);
        REQUIRE(lo.overlaps(hi));
        ++checked;
    }
    CHECK(checked > 9000);
}

TEST_CASE("minimal polynomial examples")
{
    auto K = fixtures::gaussian();
    CHECK(minimal_polynomial(AlgebraicNumber::zero(K)) == Polynomial::from_integers({0, 1}));
    CHECK(minimal_polynomial(element(K, {0, 1})) == Polynomial::from_integers({1, 0, 1}));

    auto Z5 = fixtures::zeta5();
    AlgebraicNumber z = element(Z5, {0, 1});
    AlgebraicNumber a = z + z.inverse();
    Polynomial m = minimal_polynomial(a);
    CHECK(m == Polynomial::from_integers({-1, 1, 1}));
    // oracle: x^2 + x - 1 vanishes at a, and a is irrational
    CHECK((a * a + a - AlgebraicNumber::from_rational(Z5, 1)).is_zero());
    CHECK_FALSE(a.is_rational());
}

TEST_CASE("minimal polynomial annihilates its element")
{
    std::mt19937_64 rng(7);
    for (const auto& K : {fixtures::zeta5(), fixtures::zeta12(), fixtures::eisenstein()}) {
        for (int t = 0; t < 30; ++t) {
            AlgebraicNumber a = fixtures::random_element(K, rng);
            Polynomial m = minimal_polynomial(a);
            CHECK(K->degree() % static_cast<std::size_t>(m.degree()) == 0);
            AlgebraicNumber acc = AlgebraicNumber::zero(K);
            for (int k = m.degree(); k >= 0; --k)
                acc = acc * a + AlgebraicNumber::from_rational(K, m.coeff(static_cast<std::size_t>(k)));
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("weil height examples")
{
    auto K = fixtures::gaussian();
    PrecisionContext ctx;
    CHECK(weil_height(AlgebraicNumber::zero(K), ctx).H.contains(Rational(1)));
    CHECK(weil_height(element(K, {0, 1}), ctx).H.contains(Rational(1)));
    for (long f = 1; f <= 12; ++f) {
        HeightValue h = weil_height(element(K, {0, f}), ctx);
        // conjugates +-f i, leading coefficient 1: (max(1,f)^2)^(1/2)
        CHECK(h.H.contains(Rational(f)));
        CHECK(h.H.relative_width() < std::ldexp(1.0, -32));
        CHECK(h.naive == f * f);
    }
    HeightValue q = weil_height(AlgebraicNumber::from_rational(K, Rational(-7, 3)), ctx);
    CHECK(q.H.contains(Rational(7)));
}

TEST_CASE("height inequalities and Galois invariance")
{
    std::mt19937_64 rng(99);
    PrecisionContext ctx;
    auto Z5 = fixtures::zeta5();
    auto autos = automorphisms(Z5, ctx);
    REQUIRE(autos.size() == 4);
    for (int t = 0; t < 25; ++t) {
        AlgebraicNumber a = fixtures::random_element(Z5, rng, 5, 3);
        AlgebraicNumber b = fixtures::random_element(Z5, rng, 5, 3);
        Real ha = weil_height(a, ctx).H, hb = weil_height(b, ctx).H;
        CHECK(certainly_le(weil_height(a * b, ctx).H, ha * hb + Real(Rational(1, 1000000), 64)));
        CHECK(certainly_le(weil_height(a + b, ctx).H, Real(2L, 64) * ha * hb));
        for (const auto& s : autos)
            CHECK(weil_height(s.apply(a), ctx).H.overlaps(ha));
    }
}

TEST_CASE("denominator diagnostic")
{
    auto K = fixtures::gaussian();
    CHECK(denominator(element(K, {1, 1}, 2)) == 2);
    CHECK(denominator(element(K, {0, 1}, 4)) == 4);
    CHECK(denominator(element(K, {3, 5})) == 1);
    auto Z5 = fixtures::zeta5();
    CHECK(denominator(element(Z5, {1, 0, 1}, 3)) == 3);
}

TEST_CASE("verify_field accepts and rejects")
{
    auto K = fixtures::gaussian();
    CHECK(K->disc() == -4);
    CHECK(fixtures::zeta5()->disc() == 125);
    RationalMatrix half{{1, 0}, {0, Rational(1, 2)}};
    try {
        verify_field({"bad", {1, 0, 1}, half, Integer(-1)});
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotARing);
    }
    try {
        verify_field({"red", {-1, 0, 1}, RationalMatrix::identity(2), Integer(4)});
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ReduciblePoly);
    }
    try {
        verify_field({"red4", {1, 0, 2, 0, 1}, RationalMatrix::identity(4), Integer(0)});
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ReduciblePoly);
    }
    try {
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2), no rational roots
        verify_field({"red5", {4, 0, 0, 0, 1}, RationalMatrix::identity(4), Integer(-1)});
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ReduciblePoly);
    }
    try {
        verify_field({"disc", {1, 0, 1}, RationalMatrix::identity(2), Integer(-16)});
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DiscMismatch);
    }
    // Z[(1+sqrt-3)/2] given with the non-power basis {1, (1+sqrt-3)/2}
    RationalMatrix eis{{1, 0}, {Rational(1, 2), Rational(1, 2)}};
    FieldPtr E = verify_field({"Q(sqrt-3)", {3, 0, 1}, eis, Integer(-3)});
    CHECK(E->degree() == 2);
}

TEST_CASE("embeddings are ordered and certified")
{
    PrecisionContext ctx;
    auto K = fixtures::gaussian();
    auto r = embeddings(*K, ctx);
    REQUIRE(r.size() == 2);
    CHECK(r[0].overlaps(-ComplexBall::i(256)));
    CHECK(r[1].overlaps(ComplexBall::i(256)));
    auto R = embeddings(*fixtures::sqrt2(), ctx);
    CHECK(R[0].im().is_exact());
    CHECK(R[0].re().certainly_negative());
    CHECK(R[1].re().contains(Rational(0)) == false);
    auto Z = embeddings(*fixtures::zeta5(), ctx);
    for (const auto& z : Z) {
        ComplexBall p = z * z * z * z * z;
        CHECK(p.overlaps(ComplexBall(Real(1L, 256))));
    }
    // higher precision keeps the same order
    auto Zhi = embeddings(*fixtures::zeta5(), PrecisionContext{1024, 3});
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(Zhi[k].overlaps(Z[k]));
}

TEST_CASE("complex conjugation and CM types")
{
    PrecisionContext ctx;
    auto K = fixtures::gaussian();
    auto rho = complex_conjugation(K, ctx);
    CHECK(rho.apply(element(K, {0, 1})) == element(K, {0, -1}));
    try {
        complex_conjugation(fixtures::sqrt2(), ctx);
        FAIL("expected not-cm");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotCM);
    }
    auto Z5 = fixtures::zeta5();
    auto cm = make_cm_field(Z5, ctx);
    AlgebraicNumber z = element(Z5, {0, 1});
    CHECK(cm->rho(z) == z.pow(4));
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(cm->rho(z).eval(k, 256).overlaps(z.eval(k, 256).conj()));
    // rho is an involution fixing O_F
    CHECK(cm->rho() * cm->rho() == RationalMatrix::identity(4));
    const auto& f = cm->totally_real_subfield_basis();
    REQUIRE(f.rows() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        AlgebraicNumber w(Z5, f.row(i));
        CHECK(cm->rho(w) == w);
    }

    auto types = cm_types(*cm);
    CHECK(types.size() == 4);
    for (const auto& t : types) {
        std::vector<bool> hit(4, false);
        for (auto k : t.embedding_indices) {
            CHECK_FALSE(hit[k]);
            hit[k] = true;
            hit[Z5->conjugate_index(k)] = true;
        }
        CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    }
    CHECK(cm_types(*make_cm_field(K, ctx)).size() == 2);
    CHECK(upper_cm_type(*K).embedding_indices == std::vector<std::size_t>{1});
}

TEST_CASE("trace and norm agree with embeddings")
{
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 1000; ++t) {
        const FieldPtr& K = t % 2 ? fixtures::zeta12() : fixtures::zeta5();
        AlgebraicNumber a = fixtures::random_element(K, rng);
        ComplexBall sum(Real(0L, 256)), prod(Real(1L, 256));
        for (std::size_t k = 0; k < K->degree(); ++k) {
            ComplexBall v = a.eval(k, 256);
            sum += v;
            prod *= v;
        }
        REQUIRE(sum.re().contains(a.trace()));
        REQUIRE(prod.re().contains(a.norm()));
    }
}

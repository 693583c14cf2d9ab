#include "cmh/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "cmh/error.hpp"

namespace cmh {

namespace {

std::size_t form_rank(const AlgebraicMatrix& e)
{
    require(e.rows() >= 1 && e.rows() == e.cols(), ErrorKind::InvalidArgument, "form must be square");
    return e.rows();
}

AlgebraicNumber form_determinant(const AlgebraicMatrix& e)
{
    if (e.rows() == 1)
        return e(0, 0);
    require(e.rows() == 2, ErrorKind::InvalidArgument, "forms of rank > 2 are not supported");
    return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
}

Rational upward(double x)
{
    return Rational(x * (1 + 1e-9) + 1e-12);
}

}  // namespace

AlgebraicMatrix conjugate_transpose(const AlgebraicMatrix& m, const CMField& K)
{
    AlgebraicMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t(j, i) = K.rho(m(i, j));
    return t;
}

bool is_skew_hermitian(const AlgebraicMatrix& e, const CMField& K)
{
    if (e.rows() != e.cols())
        return false;
    AlgebraicMatrix s = conjugate_transpose(e, K);
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j)
            if (s(i, j) != -e(i, j))
                return false;
    return true;
}

AlgebraicMatrix scalar_form(const AlgebraicNumber& xi)
{
    AlgebraicMatrix e(1, 1);
    e(0, 0) = xi;
    return e;
}

RationalMatrix trace_form_gram(const ZLattice& I, const AlgebraicMatrix& e, const CMField& K,
                               const std::optional<AlgebraicNumber>& zeta)
{
    const std::size_t r = form_rank(e);
    require(I.module_rank() == r, ErrorKind::InvalidArgument, "form rank does not match the lattice");
    const std::size_t d = I.dim();
    std::vector<std::vector<AlgebraicNumber>> left(d), right(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<AlgebraicNumber> v = I.element(i);
        // left: zeta * v E, right: rho(v)
        std::vector<AlgebraicNumber> ve(r, AlgebraicNumber::zero(I.field()));
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t a = 0; a < r; ++a)
                ve[b] += v[a] * e(a, b);
        if (zeta)
            for (auto& x : ve)
                x *= *zeta;
        left[i] = std::move(ve);
        for (auto& x : v)
            x = K.rho(x);
        right[i] = std::move(v);
    }
    RationalMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            AlgebraicNumber s = AlgebraicNumber::zero(I.field());
            for (std::size_t c = 0; c < r; ++c)
                s += left[i][c] * right[j][c];
            g(i, j) = s.trace();
        }
    return g;
}

RiemannForm riemann_gram(const ZLattice& I, const AlgebraicNumber& xi, const CMField& K)
{
    return riemann_gram(I, scalar_form(xi), K);
}

RiemannForm riemann_gram(const ZLattice& I, const AlgebraicMatrix& e, const CMField& K)
{
    require(is_skew_hermitian(e, K), ErrorKind::InvalidArgument, "Riemann form must satisfy E* = -E");
    RiemannForm f;
    f.e = e;
    f.gram = trace_form_gram(I, e, K);
    f.integral = is_integral(f.gram);
    f.principal = f.integral && determinant(f.gram) == 1;
    return f;
}

DetFormula verify_det_formula(const ZLattice& I, const AlgebraicMatrix& e, const CMField& K)
{
    const std::size_t r = form_rank(e);
    DetFormula out;
    out.det = determinant(trace_form_gram(I, e, K));
    Rational idx = I.index_in_maximal();
    Rational nd = form_determinant(e).norm();
    Rational disc = Rational(K.base()->disc());
    Rational dr = 1;
    for (std::size_t c = 0; c < r; ++c)
        dr *= disc;
    out.signed_expected = nd * dr * idx * idx;
    out.expected = abs(out.signed_expected);
    out.holds = out.det == out.expected;
    return out;
}

bool positive_along_type(const AlgebraicMatrix& e, const CMType& type, const PrecisionContext& ctx)
{
    const std::size_t r = form_rank(e);
    for (std::size_t k : type.embedding_indices) {
        if (r == 1) {
            if (!ball_eval(e(0, 0), k, ctx).im().certainly_positive())
                return false;
            continue;
        }
        // -i phi(E) = [[Im e11, -i e12], [., Im e22]]
        ComplexBall e11 = ball_eval(e(0, 0), k, ctx);
        ComplexBall e22 = ball_eval(e(1, 1), k, ctx);
        ComplexBall e12 = ball_eval(e(0, 1), k, ctx);
        if (!e11.im().certainly_positive())
            return false;
        if (!(e11.im() * e22.im() - e12.norm()).certainly_positive())
            return false;
    }
    return true;
}

PolarizedCMLattice make_polarized(CMFieldPtr field, CMType type, ZLattice lattice, AlgebraicMatrix e,
                                  const PrecisionContext& ctx)
{
    require(field != nullptr, ErrorKind::InvalidArgument, "missing CM field");
    RiemannForm f = riemann_gram(lattice, e, *field);
    require(f.integral, ErrorKind::NotUnimodular, "Riemann form is not integral on the lattice");
    require(f.principal, ErrorKind::NotUnimodular, "Riemann form does not have determinant 1");
    require(positive_along_type(e, type, ctx), ErrorKind::NotPosDef,
            "Riemann form is not positive along the CM type");
    return {std::move(field), std::move(type), std::move(lattice), std::move(e), std::move(f.gram)};
}

namespace {

// Z-basis (rows, power coordinates) of { x in L : rho(x) = -x }.
RationalMatrix minus_part(const ZLattice& L, const CMField& K)
{
    const std::size_t n = K.degree();
    RationalMatrix m = L.basis() * (K.rho() + RationalMatrix::identity(n));
    IntegerMatrix ker = integer_left_kernel(m);
    return to_rational(ker) * L.basis();
}

Rational t_form(const std::vector<Rational>& a, const std::vector<Rational>& b, const CMField& K)
{
    return K.base()->trace(K.base()->multiply(a, row_times(b, K.rho())));
}

RationalMatrix t_gram(const RationalMatrix& rows, const CMField& K)
{
    RationalMatrix g(rows.rows(), rows.rows());
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t j = i; j < rows.rows(); ++j)
            g(i, j) = g(j, i) = t_form(rows.row(i), rows.row(j), K);
    return g;
}

// xi1 ~ xi2 when xi2 / xi1 = (nu rho(nu))^-1 for a unit nu of the multiplier
// ring, i.e. (I, xi1) and (nu I, xi2) = (I, xi2).
bool equivalent_xi(const AlgebraicNumber& a, const AlgebraicNumber& b, const ZLattice& R,
                   const RationalMatrix& r_gram, const CMField& K)
{
    AlgebraicNumber q = a / b;  // = nu rho(nu)
    if (abs(q.norm()) != 1)
        return false;
    Rational t = q.trace();
    if (t <= 0)
        return false;
    ShortVectors sv = enumerate_short_vectors(r_gram, t, 10000);
    for (const auto& x : sv.vectors) {
        Rational tx = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j)
                tx += Rational(x[i] * x[j]) * r_gram(i, j);
        if (tx != t)
            continue;
        AlgebraicNumber nu = R.combination(x)[0];
        if (nu * K.rho(nu) == q)
            return true;
    }
    return false;
}

}  // namespace

XiSearch find_principal_xi(const ZLattice& I, const CMType& phi, const CMField& K, const PrecisionContext& ctx,
                           unsigned radius_steps)
{
    require(I.module_rank() == 1, ErrorKind::InvalidArgument, "find_principal_xi expects a rank-1 lattice");
    const FieldPtr& F = I.field();
    const std::size_t n = K.degree(), g = K.g();
    ZLattice dual = I.product(I.conjugate(K.rho_map())).trace_dual();
    RationalMatrix v = minus_part(dual, K);
    require(v.rows() == g, ErrorKind::Internal, "unexpected rank of the totally imaginary part");
    LllResult red = lll_reduce_gram(t_gram(v, K));
    RationalMatrix vb = to_rational(red.transform) * v;

    Rational idx = I.index_in_maximal();
    Rational target = Rational(1) / (abs(Rational(F->disc())) * idx * idx);
    // tr(xi rho(xi)) >= n |N(xi)|^(2/n) with equality for balanced xi
    double r0 = static_cast<double>(n) * std::pow(target.get_d(), 2.0 / static_cast<double>(n));

    Order R = multiplier_ring(I);
    RationalMatrix r_gram = t2_gram(R.lattice, K);

    XiSearch out;
    struct Found {
        Rational t;
        std::vector<Rational> coords;
        AlgebraicNumber xi;
    };
    std::vector<Found> found;
    for (unsigned s = 0; s <= radius_steps; ++s) {
        out.radius_steps_used = s;
        out.bound = upward(r0 * std::pow(4.0, static_cast<double>(s)));
        ShortVectors sv = enumerate_short_vectors(red.gram, out.bound);
        out.enumerated = sv.vectors.size();
        for (const auto& x : sv.vectors) {
            std::vector<Rational> c(n, Rational(0));
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    c[j] += Rational(x[i]) * vb(i, j);
            AlgebraicNumber xi(F, c);
            if (abs(xi.norm()) != target)
                continue;
            int sign = 0;
            bool mixed = false;
            for (std::size_t k : phi.embedding_indices) {
                Sign sg = ball_eval(xi, k, ctx).im().sign();
                int t = sg == Sign::Positive ? 1 : sg == Sign::Negative ? -1 : 0;
                if (t == 0 || (sign != 0 && t != sign)) {
                    mixed = true;
                    break;
                }
                sign = t;
            }
            if (mixed || sign == 0)
                continue;
            if (sign < 0)
                xi = -xi;
            RiemannForm f = riemann_gram(I, xi, K);
            if (!f.principal)
                continue;
            found.push_back({t_form(xi.coords(), xi.coords(), K), xi.integral_coords(), xi});
        }
        if (!found.empty())
            break;
    }
    std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
        return std::tie(a.t, a.coords) < std::tie(b.t, b.coords);
    });
    for (const auto& f : found) {
        bool dup = false;
        for (const auto& kept : out.xis)
            if (equivalent_xi(f.xi, kept, R.lattice, r_gram, K)) {
                dup = true;
                break;
            }
        if (!dup)
            out.xis.push_back(f.xi);
    }
    require(!out.xis.empty(), ErrorKind::NoneFound, "no principal polarization found within the search radius");
    return out;
}

XiReduction reduce_xi(const ZLattice& I, const AlgebraicNumber& xi, const CMType& phi, const CMField& K,
                      const PrecisionContext& ctx)
{
    const FieldPtr& F = xi.field();
    const std::size_t g = K.g();
    const auto& idx = phi.embedding_indices;

    std::vector<Real> absxi;
    for (std::size_t k : idx)
        absxi.push_back(ball_eval(xi, k, ctx).abs());
    auto max_of = [](const std::vector<Real>& v) {
        Real m = v[0];
        for (std::size_t i = 1; i < v.size(); ++i)
            m = max(m, v[i]);
        return m;
    };

    XiReduction out{AlgebraicNumber::from_rational(F, 1), xi, I, max_of(absxi), max_of(absxi), 0};
    if (g == 1)
        return out;

    // weights (-xi^2)^(1/4) at each embedding of F in the type
    AlgebraicNumber mxi2 = -(xi * xi);
    std::vector<Real> w;
    for (std::size_t k : idx)
        w.push_back(root(ball_eval(mxi2, k, ctx).re(), 4));

    const RationalMatrix& fb = K.totally_real_subfield_basis();
    std::vector<AlgebraicNumber> fbasis;
    for (std::size_t i = 0; i < g; ++i)
        fbasis.emplace_back(F, fb.row(i));
    Matrix<Real> wb(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t c = 0; c < g; ++c)
            wb(i, c) = ball_eval(fbasis[i], idx[c], ctx).re() * w[c];
    RealShortBasis sb = short_basis(wb);
    RationalMatrix mid = sb.basis.map([](const Real& x) { return x.mid_rational(); });
    RationalMatrix gram = mid * mid.transpose();

    // ||w phi(nu)||_inf^2 < max|phi(xi)| requires the sum of squares below g times it
    Rational bound = upward(static_cast<double>(g) * out.max_before.mid_double() * 1.01);
    ShortVectors sv = enumerate_short_vectors(gram, bound, 20000);
    out.candidates = sv.vectors.size();

    Real best = out.max_before;
    AlgebraicNumber best_nu = out.nu;
    for (const auto& x : sv.vectors) {
        std::vector<Integer> c(g, Integer(0));
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j)
                c[j] += x[i] * sb.transform(i, j);
        AlgebraicNumber nu = AlgebraicNumber::zero(F);
        for (std::size_t j = 0; j < g; ++j)
            nu += fbasis[j] * Rational(c[j]);
        if (nu.is_zero())
            continue;
        std::vector<Real> vals;
        for (std::size_t t = 0; t < g; ++t)
            vals.push_back(sqr(ball_eval(nu, idx[t], ctx).re()) * absxi[t]);
        Real m = max_of(vals);
        if (certainly_lt(m, best)) {
            best = m;
            best_nu = nu;
        }
    }
    if (best_nu != out.nu) {
        out.nu = best_nu;
        out.xi = best_nu * best_nu * xi;
        out.lattice = I.scaled(best_nu.inverse());
        out.max_after = best;
    }
    return out;
}

RationalMatrix standard_symplectic_form(std::size_t g)
{
    RationalMatrix j(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i) {
        j(i, g + i) = 1;
        j(g + i, i) = -1;
    }
    return j;
}

SymplecticBasis symplectic_basis(const RationalMatrix& gram)
{
    const std::size_t m = gram.rows();
    require(m % 2 == 0 && m == gram.cols() && m > 0, ErrorKind::NotUnimodular, "Gram matrix must be even square");
    require(is_integral(gram), ErrorKind::NotUnimodular, "Gram matrix is not integral");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            require(gram(i, j) == -gram(j, i), ErrorKind::NotUnimodular, "Gram matrix is not alternating");
    require(determinant(gram) == 1, ErrorKind::NotUnimodular, "Gram matrix does not have determinant 1");

    const std::size_t g = m / 2;
    IntegerMatrix G = to_integer(gram);
    using Vec = std::vector<Integer>;
    auto pair = [&](const Vec& a, const Vec& b) {
        Integer s = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                s += a[i] * G(i, j) * b[j];
        }
        return s;
    };
    auto axpy = [&](Vec& y, const Integer& q, const Vec& x) {
        for (std::size_t i = 0; i < m; ++i)
            y[i] -= q * x[i];
    };

    std::vector<Vec> rest;
    for (std::size_t i = 0; i < m; ++i) {
        Vec e(m, Integer(0));
        e[i] = 1;
        rest.push_back(e);
    }
    std::vector<Vec> alphas, betas;
    while (!rest.empty()) {
        Vec a = rest.front();
        rest.erase(rest.begin());
        // Euclid on the pairings E(a, r) until a single one is nonzero
        for (;;) {
            std::size_t piv = rest.size();
            for (std::size_t j = 0; j < rest.size(); ++j) {
                Integer e = pair(a, rest[j]);
                if (e != 0 && (piv == rest.size() || abs(e) < abs(pair(a, rest[piv]))))
                    piv = j;
            }
            require(piv < rest.size(), ErrorKind::NotUnimodular, "degenerate alternating form");
            Integer ep = pair(a, rest[piv]);
            bool others = false;
            for (std::size_t j = 0; j < rest.size(); ++j) {
                if (j == piv)
                    continue;
                Integer e = pair(a, rest[j]);
                if (e == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), e.get_mpz_t(), ep.get_mpz_t());
                axpy(rest[j], q, rest[piv]);
                if (pair(a, rest[j]) != 0)
                    others = true;
            }
            if (others)
                continue;
            require(abs(ep) == 1, ErrorKind::NotUnimodular, "elementary divisor different from 1");
            Vec b = rest[piv];
            rest.erase(rest.begin() + static_cast<long>(piv));
            if (ep < 0)
                for (auto& x : b)
                    x = -x;
            for (auto& c : rest) {
                Integer q = pair(c, b);
                if (q != 0)
                    axpy(c, q, a);
            }
            alphas.push_back(a);
            betas.push_back(b);
            break;
        }
    }
    SymplecticBasis out;
    out.g = g;
    out.transform = IntegerMatrix(0, m);
    for (const auto& a : alphas)
        out.transform.append_row(a);
    for (const auto& b : betas)
        out.transform.append_row(b);
    RationalMatrix t = to_rational(out.transform);
    require(t * gram * t.transpose() == standard_symplectic_form(g), ErrorKind::Internal,
            "symplectic reduction failed");
    return out;
}

ProductPolarized product_polarized(const PolarizedCMLattice& a, const PolarizedCMLattice& b)
{
    require(a.g() == 1 && b.g() == 1, ErrorKind::InvalidArgument, "product of elliptic factors expected");
    ProductPolarized out;
    out.factors = {a, b};
    out.gram = RationalMatrix(4, 4);
    out.gram.set_block(0, 0, a.gram);
    out.gram.set_block(2, 2, b.gram);
    out.disc = multiplier_ring(a.lattice).disc * multiplier_ring(b.lattice).disc;
    return out;
}

HermitianReduction hermitian_reduce(const AlgebraicMatrix& e, const AlgebraicNumber& zeta, const CMField& K,
                                    const PrecisionContext& ctx, const std::optional<ZLattice>& module)
{
    require(K.degree() == 2, ErrorKind::InvalidArgument, "Hermitian reduction needs an imaginary quadratic field");
    require(e.rows() == 2 && e.cols() == 2, ErrorKind::InvalidArgument, "Hermitian reduction needs a 2x2 form");
    require(is_skew_hermitian(e, K), ErrorKind::InvalidArgument, "form must satisfy E* = -E");
    require(K.rho(zeta) == -zeta, ErrorKind::InvalidArgument, "zeta must be totally imaginary");
    const FieldPtr& F = K.base();
    ZLattice L = module ? *module : ZLattice::maximal_order(F, 2);
    RationalMatrix q = trace_form_gram(L, e, K, zeta);
    require(is_positive_definite(q), ErrorKind::NotPosDef, "trace form is not positive definite");

    HermitianReduction out;
    LllResult red = lll_reduce_gram(q);
    out.transform = red.transform;
    out.q = red.gram;
    ZLattice Lr = L.transformed(red.transform);
    std::vector<std::vector<AlgebraicNumber>> w;
    for (std::size_t i = 0; i < 4; ++i)
        w.push_back(Lr.element(i));
    std::size_t second = 4;
    for (std::size_t i = 1; i < 4; ++i)
        if (!(w[0][0] * w[i][1] - w[0][1] * w[i][0]).is_zero()) {
            second = i;
            break;
        }
    require(second < 4, ErrorKind::NoIndependentPair, "no K-independent pair among the reduced vectors");

    std::size_t pick[2] = {0, second};
    out.g = AlgebraicMatrix(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
            out.g(r, c) = w[pick[r]][c];
    out.reduced = out.g * e * conjugate_transpose(out.g, K);
    AlgebraicNumber dg = form_determinant(out.g);
    out.unimodular = dg.is_algebraic_integer() && abs(dg.norm()) == 1;

    Real two_zeta = ball_eval(zeta, 0, ctx).abs() * Real(2L, ctx.bits);
    out.bound_holds = true;
    out.max_entry = Real(0L, ctx.bits);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            Real lhs = ball_eval(out.reduced(r, c), 0, ctx).abs();
            out.max_entry = max(out.max_entry, lhs);
            Rational qq = out.q(pick[r], pick[r]) * out.q(pick[c], pick[c]);
            Real rhs = sqrt(Real(qq, ctx.bits));
            if (certainly_lt(rhs, lhs * two_zeta))
                out.bound_holds = false;
        }
    return out;
}

}  // namespace cmh

#include "cmh/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "cmh/error.hpp"

namespace cmh {

RationalMatrix lattice_basis(const RationalMatrix& generators)
{
    Integer d = common_denominator(generators);
    IntegerMatrix a = generators.map([&](const Rational& q) { return Rational(q * d).get_num(); });
    HermiteResult h = hermite_normal_form(a);
    RationalMatrix out(h.rank, generators.cols());
    for (std::size_t i = 0; i < h.rank; ++i)
        for (std::size_t j = 0; j < generators.cols(); ++j)
            out(i, j) = Rational(h.hnf(i, j)) / Rational(d);
    return out;
}

ZLattice::ZLattice(FieldPtr field, RationalMatrix generators, std::size_t module_rank)
    : field_(std::move(field)), rank_(module_rank)
{
    require(field_ != nullptr, ErrorKind::InvalidArgument, "lattice without a field");
    require(rank_ >= 1 && generators.cols() == rank_ * field_->degree(), ErrorKind::InvalidArgument,
            "lattice generators have the wrong number of coordinates");
    const std::size_t dim = rank_ * field_->degree();
    std::size_t rk = rank(generators);
    require(rk == dim, ErrorKind::InvalidArgument, "lattice generators do not have full rank");
    basis_ = generators.rows() == dim ? std::move(generators) : lattice_basis(generators);
}

ZLattice ZLattice::maximal_order(FieldPtr field, std::size_t module_rank)
{
    const std::size_t n = field->degree();
    RationalMatrix b(module_rank * n, module_rank * n);
    for (std::size_t c = 0; c < module_rank; ++c)
        b.set_block(c * n, c * n, field->integral_basis());
    return ZLattice(std::move(field), std::move(b), module_rank);
}

ZLattice ZLattice::order_conductor(FieldPtr field, const Integer& f)
{
    require(f >= 1, ErrorKind::InvalidArgument, "conductor must be positive");
    const std::size_t n = field->degree();
    RationalMatrix gens(n + 1, n);
    gens(0, 0) = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gens(i + 1, j) = Rational(f) * field->integral_basis()(i, j);
    return ZLattice(std::move(field), lattice_basis(gens), 1);
}

RationalMatrix ZLattice::canonical_basis() const
{
    return lattice_basis(basis_);
}

std::vector<AlgebraicNumber> ZLattice::element(std::size_t i) const
{
    const std::size_t n = field_->degree();
    std::vector<AlgebraicNumber> out;
    const std::vector<Rational> row = basis_.row(i);
    for (std::size_t c = 0; c < rank_; ++c) {
        std::vector<Rational> v(row.begin() + c * n, row.begin() + (c + 1) * n);
        out.emplace_back(field_, std::move(v));
    }
    return out;
}

std::vector<AlgebraicNumber> ZLattice::combination(const std::vector<Integer>& c) const
{
    std::vector<Rational> q(c.begin(), c.end());
    std::vector<Rational> coords = row_times(q, basis_);
    const std::size_t n = field_->degree();
    std::vector<AlgebraicNumber> out;
    for (std::size_t k = 0; k < rank_; ++k)
        out.emplace_back(field_, std::vector<Rational>(coords.begin() + k * n, coords.begin() + (k + 1) * n));
    return out;
}

bool ZLattice::contains(const std::vector<Rational>& coords) const
{
    auto x = solve_left(basis_, coords);
    return std::all_of(x.begin(), x.end(), [](const Rational& q) { return q.get_den() == 1; });
}

bool ZLattice::contains(const ZLattice& other) const
{
    RationalMatrix x = other.basis_ * inverse(basis_);
    return is_integral(x);
}

Rational ZLattice::index_in(const ZLattice& super) const
{
    return abs(determinant(basis_) / determinant(super.basis_));
}

Rational ZLattice::index_in_maximal() const
{
    Rational dk = determinant(field_->integral_basis());
    Rational d = dk;
    for (std::size_t c = 1; c < rank_; ++c)
        d *= dk;
    return abs(determinant(basis_) / d);
}

ZLattice ZLattice::scaled(const AlgebraicNumber& nu) const
{
    require(nu.field() == field_, ErrorKind::InvalidArgument, "scaling by an element of another field");
    const std::size_t n = field_->degree();
    RationalMatrix m = field_->multiplication_matrix(nu.coords());
    RationalMatrix b(basis_.rows(), basis_.cols());
    for (std::size_t c = 0; c < rank_; ++c)
        b.set_block(0, c * n, basis_.block(0, c * n, basis_.rows(), n) * m);
    return ZLattice(field_, std::move(b), rank_);
}

ZLattice ZLattice::conjugate(const Automorphism& sigma) const
{
    const std::size_t n = field_->degree();
    RationalMatrix b(basis_.rows(), basis_.cols());
    for (std::size_t c = 0; c < rank_; ++c)
        b.set_block(0, c * n, basis_.block(0, c * n, basis_.rows(), n) * sigma.matrix);
    return ZLattice(field_, std::move(b), rank_);
}

ZLattice ZLattice::sum(const ZLattice& other) const
{
    RationalMatrix g = basis_;
    for (std::size_t i = 0; i < other.basis_.rows(); ++i)
        g.append_row(other.basis_.row(i));
    return ZLattice(field_, lattice_basis(g), rank_);
}

ZLattice ZLattice::coordinate_dual() const
{
    return ZLattice(field_, inverse(basis_).transpose(), rank_);
}

ZLattice ZLattice::intersect(const ZLattice& other) const
{
    return coordinate_dual().sum(other.coordinate_dual()).coordinate_dual();
}

ZLattice ZLattice::trace_dual() const
{
    require(rank_ == 1, ErrorKind::InvalidArgument, "trace dual of a rank-2 module");
    const std::size_t n = field_->degree();
    RationalMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> e(n, Rational(0));
        e[i] = 1;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> f(n, Rational(0));
            f[j] = 1;
            t(i, j) = field_->trace(field_->multiply(e, f));
        }
    }
    // x T B^T integral  <=>  x in Z^n (T B^T)^{-1}
    return ZLattice(field_, inverse(t * basis_.transpose()), 1);
}

ZLattice ZLattice::product(const ZLattice& other) const
{
    require(rank_ == 1 && other.rank_ == 1, ErrorKind::InvalidArgument, "product of rank-2 modules");
    RationalMatrix g;
    for (std::size_t i = 0; i < basis_.rows(); ++i)
        for (std::size_t j = 0; j < other.basis_.rows(); ++j)
            g.append_row(field_->multiply(basis_.row(i), other.basis_.row(j)));
    return ZLattice(field_, lattice_basis(g), 1);
}

ZLattice ZLattice::transformed(const IntegerMatrix& u) const
{
    return ZLattice(field_, to_rational(u) * basis_, rank_);
}

bool ZLattice::operator==(const ZLattice& other) const
{
    return field_ == other.field_ && rank_ == other.rank_ && canonical_basis() == other.canonical_basis();
}

namespace {

// { a in K : a * v_j in target for every basis vector v_j of I }
ZLattice preimage_intersection(const ZLattice& I, const ZLattice& target)
{
    const FieldPtr& K = I.field();
    const std::size_t n = K->degree(), r = I.module_rank();
    RationalMatrix tinv = inverse(target.basis());
    std::optional<ZLattice> acc;
    for (std::size_t j = 0; j < I.dim(); ++j) {
        RationalMatrix l(n, r * n);
        std::vector<Rational> v = I.basis().row(j);
        for (std::size_t c = 0; c < r; ++c) {
            std::vector<Rational> comp(v.begin() + c * n, v.begin() + (c + 1) * n);
            l.set_block(0, c * n, K->multiplication_matrix(comp));
        }
        RationalMatrix m = l * tinv;
        // { a : a m integral } is the dual of the span of the columns of m
        ZLattice cols(K, lattice_basis(m.transpose()), 1);
        ZLattice pre = cols.coordinate_dual();
        acc = acc ? acc->intersect(pre) : pre;
    }
    return *acc;
}

}  // namespace

Order multiplier_ring(const ZLattice& I)
{
    ZLattice r = preimage_intersection(I, I);
    Rational idx = r.index_in_maximal();
    require(idx.get_den() == 1, ErrorKind::Internal, "multiplier ring is not inside the maximal order");
    return {ZLattice(r.field(), r.canonical_basis(), 1), idx.get_num(), r.field()->disc() * idx.get_num() * idx.get_num()};
}

ZLattice colon(const ZLattice& J, const ZLattice& I)
{
    require(I.module_rank() == 1 && J.module_rank() == 1, ErrorKind::InvalidArgument, "colon of rank-2 modules");
    return preimage_intersection(I, J);
}

RationalMatrix t2_gram(const ZLattice& I, const CMField& K)
{
    const std::size_t d = I.dim(), n = K.degree(), r = I.module_rank();
    const FieldPtr& F = I.field();
    std::vector<std::vector<std::vector<Rational>>> comps(d), rcomps(d);
    for (std::size_t i = 0; i < d; ++i) {
        const std::vector<Rational> row = I.basis().row(i);
        for (std::size_t c = 0; c < r; ++c) {
            std::vector<Rational> v(row.begin() + c * n, row.begin() + (c + 1) * n);
            rcomps[i].push_back(row_times(v, K.rho()));
            comps[i].push_back(std::move(v));
        }
    }
    RationalMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            Rational s = 0;
            for (std::size_t c = 0; c < r; ++c)
                s += F->trace(F->multiply(comps[i][c], rcomps[j][c]));
            g(i, j) = g(j, i) = s;
        }
    return g;
}

namespace {

Real real_determinant(Matrix<Real> a)
{
    const std::size_t n = a.rows();
    Real det(1L, a(0, 0).precision());
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(a(i, c).mid_double()) > std::fabs(a(p, c).mid_double()))
                p = i;
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Real f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

}  // namespace

MinkowskiImage minkowski_embedding(const ZLattice& I, const PrecisionContext& ctx)
{
    const FieldPtr& K = I.field();
    const std::size_t n = K->degree(), r = I.module_rank(), d = I.dim();
    std::vector<std::size_t> reps;
    std::size_t pairs = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t c = K->conjugate_index(k);
        if (c == k)
            reps.push_back(k);
        else if (k < c) {
            reps.push_back(k);
            ++pairs;
        }
    }
    for (unsigned step = 0;; ++step) {
        mpfr_prec_t prec = ctx.refined(step).bits;
        MinkowskiImage out;
        out.basis = Matrix<Real>(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            auto comps = I.element(i);
            std::size_t col = 0;
            for (std::size_t c = 0; c < r; ++c)
                for (auto k : reps) {
                    ComplexBall v = comps[c].eval(k, prec);
                    out.basis(i, col++) = v.re();
                    if (!K->is_real_embedding(k))
                        out.basis(i, col++) = v.im();
                }
        }
        try {
            out.covolume = abs(real_determinant(out.basis));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExhausted || step + 1 >= ctx.max_refinements)
                throw;
            continue;
        }
        out.normalization = Rational(1);
        for (std::size_t k = 0; k < r * pairs; ++k)
            out.normalization /= 2;
        if (out.covolume.relative_width() < std::ldexp(1.0, -32) || step + 1 >= ctx.max_refinements) {
            require(out.covolume.relative_width() < std::ldexp(1.0, -32), ErrorKind::PrecisionExhausted,
                    "covolume enclosure too wide");
            return out;
        }
    }
}

ShortBasis short_basis(const RationalMatrix& basis)
{
    LllResult r = lll_reduce_basis(basis);
    return {to_rational(r.transform) * basis, r.transform};
}

RealShortBasis short_basis(const Matrix<Real>& basis)
{
    RationalMatrix mid = basis.map([](const Real& x) { return x.mid_rational(); });
    LllResult r = lll_reduce_gram(mid * mid.transpose());
    Matrix<Real> u = r.transform.map([&](const Integer& z) { return Real(Rational(z), basis(0, 0).precision()); });
    return {u * basis, r.transform};
}

NormalizedIdeal normalize_ideal(const ZLattice& I, const CMField& K)
{
    require(I.module_rank() == 1, ErrorKind::InvalidArgument, "normalize_ideal expects a rank-1 lattice");
    const FieldPtr& F = I.field();
    ZLattice ok = ZLattice::maximal_order(F);
    ZLattice J = colon(ok, I);
    LllResult red = lll_reduce_gram(t2_gram(J, K));
    ZLattice Jr = J.transformed(red.transform);
    RationalMatrix gram = red.gram;

    const std::size_t n = F->degree();
    double mk = std::sqrt(std::fabs(F->disc().get_d()));
    for (std::size_t k = 1; k <= n; ++k)
        mk *= static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        mk *= 4.0 / M_PI;
    double nj = Rational(J.index_in_maximal()).get_d();
    double t2 = static_cast<double>(n) * std::pow(2.0 * mk * nj, 2.0 / static_cast<double>(n));
    Rational bound(t2 * (1 + 1e-9) + 1e-9);
    bound = std::max(bound, gram(0, 0));

    ShortVectors sv = enumerate_short_vectors(gram, bound, 50000);
    struct Cand {
        Rational norm, t2;
        bool positive_rational;
        std::vector<Integer> c;
    };
    std::optional<Cand> best;
    auto better = [](const Cand& a, const Cand& b) {
        if (a.norm != b.norm)
            return a.norm < b.norm;
        if (a.t2 != b.t2)
            return a.t2 < b.t2;
        if (a.positive_rational != b.positive_rational)
            return a.positive_rational;
        return a.c < b.c;
    };
    for (auto& x : sv.vectors) {
        AlgebraicNumber nu = Jr.combination(x)[0];
        std::vector<Rational> q(x.begin(), x.end());
        Cand c{abs(nu.norm()), 0, nu.is_rational() && nu.coords()[0] > 0,
               [&] {
                   std::vector<Integer> ic;
                   for (const auto& v : nu.integral_coords())
                       ic.push_back(v.get_num());
                   return ic;
               }()};
        Rational t = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j)
                t += q[i] * gram(i, j) * q[j];
        c.t2 = t;
        if (nu.is_rational() && nu.coords()[0] < 0) {
            for (auto& v : c.c)
                v = -v;
            c.positive_rational = true;
        }
        if (!best || better(c, *best))
            best = std::move(c);
    }
    require(best.has_value(), ErrorKind::Internal, "normalize_ideal found no candidate");
    std::vector<Rational> ic(best->c.begin(), best->c.end());
    AlgebraicNumber nu = AlgebraicNumber::from_integral(F, ic);
    ZLattice image = I.scaled(nu);
    Rational idx = image.index_in_maximal();
    require(idx.get_den() == 1 && ok.contains(image), ErrorKind::Internal, "normalized ideal is not inside O_K");
    return {nu, image, idx.get_num(), sv.vectors.size()};
}

GaussReduced gauss_reduce(const RationalMatrix& y)
{
    require(y.rows() == 2 && y.cols() == 2 && y(0, 1) == y(1, 0), ErrorKind::InvalidArgument,
            "gauss_reduce expects a symmetric 2x2 matrix");
    Rational det = y(0, 0) * y(1, 1) - y(0, 1) * y(0, 1);
    if (y(0, 0) <= 0 || det <= 0)
        throw Error(ErrorKind::NotPosDef, "gauss_reduce: matrix is not positive definite");
    GaussReduced out;
    out.h = std::max({abs(y(0, 0)), abs(y(0, 1)), abs(y(1, 1)), Rational(1 / det)});
    IntegerMatrix u = IntegerMatrix::identity(2);
    Rational a = y(0, 0), b = y(0, 1), c = y(1, 1);
    for (;;) {
        Integer q = round(b / a);
        if (q != 0) {
            // v2 -= q v1
            c = c - 2 * Rational(q) * b + Rational(q) * Rational(q) * a;
            b = b - Rational(q) * a;
            u(1, 0) -= q * u(0, 0);
            u(1, 1) -= q * u(0, 1);
        }
        if (c < a) {
            std::swap(a, c);
            u.swap_rows(0, 1);
            continue;
        }
        break;
    }
    if (b < 0) {
        b = -b;
        u(1, 0) = -u(1, 0);
        u(1, 1) = -u(1, 1);
    }
    out.u = u;
    out.y = RationalMatrix{{a, b}, {b, c}};
    out.max_entry = 0;
    for (const auto& z : u.data())
        out.max_entry = std::max(out.max_entry, Integer(abs(z)));
    return out;
}

bool is_gauss_reduced(const RationalMatrix& y)
{
    return y(0, 1) >= 0 && 2 * y(0, 1) <= y(0, 0) && y(0, 0) <= y(1, 1);
}

bool certified_positive_definite(const Matrix<Real>& y)
{
    const std::size_t n = y.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix<Real> m = y.block(0, 0, k, k);
        try {
            if (!real_determinant(m).certainly_positive())
                return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

}  // namespace cmh

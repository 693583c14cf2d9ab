#include "cmh/siegel.hpp"

#include <cstdio>
#include <sstream>

#include "cmh/error.hpp"

namespace cmh {

namespace {

IntegerMatrix int_j(std::size_t g)
{
    IntegerMatrix j(2 * g, 2 * g, Integer(0));
    for (std::size_t i = 0; i < g; ++i) {
        j(i, g + i) = 1;
        j(g + i, i) = -1;
    }
    return j;
}

IntegerMatrix int_identity(std::size_t n)
{
    return IntegerMatrix::identity(n, Integer(0), Integer(1));
}

IntegerMatrix diag2(long a, long b)
{
    return IntegerMatrix{{Integer(a), Integer(0)}, {Integer(0), Integer(b)}};
}

IntegerMatrix blocks(const IntegerMatrix& a, const IntegerMatrix& b, const IntegerMatrix& c, const IntegerMatrix& d)
{
    const std::size_t g = a.rows();
    IntegerMatrix m(2 * g, 2 * g, Integer(0));
    m.set_block(0, 0, a);
    m.set_block(0, g, b);
    m.set_block(g, 0, c);
    m.set_block(g, g, d);
    return m;
}

ComplexBall cball(const Integer& v, mpfr_prec_t prec)
{
    return ComplexBall(Real(Rational(v), prec));
}

Matrix<ComplexBall> to_balls(const IntegerMatrix& m, mpfr_prec_t prec)
{
    return m.map([&](const Integer& v) { return cball(v, prec); });
}

ComplexBall cdet(const Matrix<ComplexBall>& m)
{
    if (m.rows() == 1)
        return m(0, 0);
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

Matrix<ComplexBall> cinverse(const Matrix<ComplexBall>& m)
{
    ComplexBall d = cdet(m);
    require(!d.contains_zero(), ErrorKind::Internal, "matrix not certifiably invertible");
    ComplexBall one(Real(1L, m(0, 0).precision()));
    Matrix<ComplexBall> r(m.rows(), m.cols());
    if (m.rows() == 1) {
        r(0, 0) = one / d;
        return r;
    }
    ComplexBall inv = one / d;
    r(0, 0) = m(1, 1) * inv;
    r(1, 1) = m(0, 0) * inv;
    r(0, 1) = -m(0, 1) * inv;
    r(1, 0) = -m(1, 0) * inv;
    return r;
}

Real rdet(const Matrix<Real>& m)
{
    if (m.rows() == 1)
        return m(0, 0);
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

Matrix<Real> rinverse(const Matrix<Real>& m)
{
    Real d = rdet(m);
    require(!d.contains_zero(), ErrorKind::Internal, "matrix not certifiably invertible");
    Matrix<Real> r(m.rows(), m.cols());
    if (m.rows() == 1) {
        r(0, 0) = Real(1L, m(0, 0).precision()) / d;
        return r;
    }
    r(0, 0) = m(1, 1) / d;
    r(1, 1) = m(0, 0) / d;
    r(0, 1) = -m(0, 1) / d;
    r(1, 0) = -m(1, 0) / d;
    return r;
}

AlgebraicNumber adet(const AlgebraicMatrix& m)
{
    if (m.rows() == 1)
        return m(0, 0);
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

AlgebraicMatrix ainverse(const AlgebraicMatrix& m)
{
    AlgebraicNumber d = adet(m);
    require(!d.is_zero(), ErrorKind::Internal, "singular matrix over the field");
    AlgebraicNumber inv = d.inverse();
    AlgebraicMatrix r(m.rows(), m.cols());
    if (m.rows() == 1) {
        r(0, 0) = inv;
        return r;
    }
    r(0, 0) = m(1, 1) * inv;
    r(1, 1) = m(0, 0) * inv;
    r(0, 1) = -m(0, 1) * inv;
    r(1, 0) = -m(1, 0) * inv;
    return r;
}

AlgebraicMatrix to_field(const IntegerMatrix& m, const FieldPtr& L)
{
    return m.map([&](const Integer& v) { return AlgebraicNumber::from_rational(L, Rational(v)); });
}

Real max_real(const Real& a, const Real& b)
{
    return max(a, b);
}

}  // namespace

bool is_symplectic(const IntegerMatrix& m)
{
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
        return false;
    IntegerMatrix j = int_j(m.rows() / 2);
    return m.transpose() * j * m == j;
}

SymplecticIntMatrix::SymplecticIntMatrix(IntegerMatrix m) : m_(std::move(m)), g_(m_.rows() / 2)
{
    require(is_symplectic(m_), ErrorKind::InvalidArgument, "matrix is not symplectic");
}

SymplecticIntMatrix SymplecticIntMatrix::identity(std::size_t g)
{
    return SymplecticIntMatrix(int_identity(2 * g));
}

SymplecticIntMatrix SymplecticIntMatrix::j(std::size_t g)
{
    return SymplecticIntMatrix(int_j(g));
}

SymplecticIntMatrix SymplecticIntMatrix::translation(const IntegerMatrix& s)
{
    const std::size_t g = s.rows();
    return SymplecticIntMatrix(blocks(int_identity(g), s, IntegerMatrix(g, g, Integer(0)), int_identity(g)));
}

SymplecticIntMatrix SymplecticIntMatrix::embed(const IntegerMatrix& u)
{
    const std::size_t g = u.rows();
    Integer det = determinant(u);
    require(abs(det) == 1, ErrorKind::InvalidArgument, "embedded matrix is not unimodular");
    IntegerMatrix uit = to_integer(inverse(to_rational(u)).transpose());
    return SymplecticIntMatrix(blocks(u, IntegerMatrix(g, g, Integer(0)), IntegerMatrix(g, g, Integer(0)), uit));
}

Integer SymplecticIntMatrix::max_entry() const
{
    Integer m = 0;
    for (const auto& v : m_.data())
        if (abs(v) > m)
            m = abs(v);
    return m;
}

SymplecticIntMatrix operator*(const SymplecticIntMatrix& x, const SymplecticIntMatrix& y)
{
    SymplecticIntMatrix r;
    r.m_ = x.m_ * y.m_;
    r.g_ = x.g_;
    return r;
}

// Boundary of the genus-2 fundamental domain following Gottschling,
// "Explizite Bestimmung der Randflaechen des Fundamentalbereiches der
// Modulgruppe zweiten Grades", Math. Ann. 138 (1959), in the form listed in
// M. Streng, "Complex multiplication of abelian surfaces", thesis (2010).
// Table version 1.
const std::vector<SymplecticIntMatrix>& gottschling_matrices()
{
    static const std::vector<SymplecticIntMatrix> table = [] {
        std::vector<SymplecticIntMatrix> t;
        const IntegerMatrix zero(2, 2, Integer(0)), id = int_identity(2), mid = diag2(-1, -1);
        auto push_s = [&](long s11, long s12, long s22) {
            IntegerMatrix s{{Integer(s11), Integer(s12)}, {Integer(s12), Integer(s22)}};
            t.emplace_back(blocks(zero, mid, id, s));
        };
        push_s(0, 0, 0);
        for (long e : {1L, -1L}) {
            push_s(e, 0, 0);
            push_s(0, 0, e);
            push_s(e, 0, e);
            push_s(e, 0, -e);
            push_s(0, e, 0);
            push_s(e, e, 0);
            push_s(0, e, e);
        }
        // |z1| >= 1 and |z2| >= 1
        SymplecticIntMatrix s1(blocks(diag2(0, 1), diag2(-1, 0), diag2(1, 0), diag2(0, 1)));
        SymplecticIntMatrix s2(blocks(diag2(1, 0), diag2(0, -1), diag2(0, 1), diag2(1, 0)));
        t.push_back(s1);
        t.push_back(s2);
        // |z1 + z2 - 2 z3 + e| >= 1
        IntegerMatrix u{{Integer(1), Integer(-1)}, {Integer(0), Integer(1)}};
        for (long e : {1L, -1L})
            t.push_back(s1 * SymplecticIntMatrix::translation(diag2(e, 0)) * SymplecticIntMatrix::embed(u));
        return t;
    }();
    return table;
}

SiegelPoint SiegelPoint::from_exact(ExactPeriod e, const PrecisionContext& ctx)
{
    const std::size_t g = e.m.rows();
    Matrix<ComplexBall> z(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            z(i, j) = ball_eval(e.m(i, j), 0, ctx);
    SiegelPoint p = from_balls(std::move(z));
    p.exact = std::move(e);
    return p;
}

SiegelPoint SiegelPoint::from_balls(Matrix<ComplexBall> z)
{
    SiegelPoint p;
    p.g = z.rows();
    require(p.g == 1 || p.g == 2, ErrorKind::InvalidArgument, "only g = 1, 2 are supported");
    p.asymmetry = Real(0L, z(0, 0).precision());
    if (p.g == 2) {
        p.asymmetry = (z(0, 1) - z(1, 0)).abs();
        require(z(0, 1).overlaps(z(1, 0)), ErrorKind::RiemannRelationViolated, "Z is not symmetric");
        z(1, 0) = z(0, 1);
    }
    p.z = std::move(z);
    return p;
}

SiegelPoint SiegelPoint::at_precision(const PrecisionContext& ctx) const
{
    if (exact)
        return from_exact(*exact, ctx);
    return from_balls(z.map([&](const ComplexBall& b) { return with_precision(b, ctx.bits); }));
}

Matrix<Real> SiegelPoint::real_part() const
{
    return z.map([](const ComplexBall& b) { return b.re(); });
}

Matrix<Real> SiegelPoint::imag_part() const
{
    return z.map([](const ComplexBall& b) { return b.im(); });
}

bool in_upper_half_space(const SiegelPoint& z)
{
    if (z.g == 2 && !z.z(0, 1).overlaps(z.z(1, 0)))
        return false;
    return certified_positive_definite(z.imag_part());
}

ComplexBall cocycle(const SymplecticIntMatrix& gamma, const SiegelPoint& z)
{
    const mpfr_prec_t prec = z.precision();
    return cdet(to_balls(gamma.c(), prec) * z.z + to_balls(gamma.d(), prec));
}

SiegelPoint sp_action(const SymplecticIntMatrix& gamma, const SiegelPoint& z)
{
    require(gamma.g() == z.g, ErrorKind::InvalidArgument, "genus mismatch");
    const mpfr_prec_t prec = z.precision();
    if (z.exact) {
        const FieldPtr& L = z.exact->field->base();
        const AlgebraicMatrix& m = z.exact->m;
        AlgebraicMatrix num = to_field(gamma.a(), L) * m + to_field(gamma.b(), L);
        AlgebraicMatrix den = to_field(gamma.c(), L) * m + to_field(gamma.d(), L);
        ExactPeriod e{z.exact->field, num * ainverse(den)};
        SiegelPoint out = SiegelPoint::from_exact(std::move(e), {static_cast<unsigned>(prec), 3});
        require(certified_positive_definite(out.imag_part()), ErrorKind::Internal,
                "image not certified in the upper half space");
        return out;
    }
    Matrix<ComplexBall> num = to_balls(gamma.a(), prec) * z.z + to_balls(gamma.b(), prec);
    Matrix<ComplexBall> den = to_balls(gamma.c(), prec) * z.z + to_balls(gamma.d(), prec);
    SiegelPoint out;
    try {
        out = SiegelPoint::from_balls(num * cinverse(den));
    } catch (const Error& e) {
        throw Error(ErrorKind::Internal, std::string("symplectic action: ") + e.what());
    }
    require(certified_positive_definite(out.imag_part()), ErrorKind::Internal,
            "image not certified in the upper half space");
    return out;
}

std::optional<RationalMatrix> field_embedding(const NumberField& K, std::size_t k, const FieldPtr& L,
                                              const PrecisionContext& ctx)
{
    const std::size_t n = K.degree();
    if (L.get() == &K && k == 0)
        return RationalMatrix::identity(n);
    for (unsigned step = 0; step <= ctx.max_refinements; ++step) {
        const mpfr_prec_t prec = ctx.refined(step).bits;
        const ComplexBall& target = K.roots(prec)[k];
        auto y = recognize_in_field(L, target, 0, 3 * prec / 4);
        if (!y || !eval_poly(K.poly(), *y).is_zero())
            continue;
        bool unique = true;
        const auto& roots = K.roots(prec);
        ComplexBall v = y->eval(0, prec);
        for (std::size_t m = 0; m < n; ++m)
            if (m != k && v.overlaps(roots[m]))
                unique = false;
        if (!unique || !v.overlaps(target))
            continue;
        RationalMatrix out(n, L->degree());
        AlgebraicNumber p = AlgebraicNumber::from_rational(L, 1);
        for (std::size_t j = 0; j < n; ++j) {
            out.set_row(j, p.coords());
            p *= *y;
        }
        return out;
    }
    return std::nullopt;
}

SiegelPoint period_matrix(const PolarizedCMLattice& p, const SymplecticBasis& basis, const PrecisionContext& ctx,
                          const CMFieldPtr& closure)
{
    const std::size_t g = basis.g, r = p.lattice.module_rank();
    const auto& phi = p.cm_type.embedding_indices;
    require(g == r * phi.size(), ErrorKind::InvalidArgument, "symplectic basis does not match the lattice");
    RationalMatrix t = to_rational(basis.transform);
    require(t * p.gram * t.transpose() == standard_symplectic_form(g), ErrorKind::InvalidArgument,
            "basis is not symplectic for the Riemann form");

    std::vector<std::vector<AlgebraicNumber>> vec;
    for (std::size_t i = 0; i < 2 * g; ++i)
        vec.push_back(p.lattice.combination(basis.transform.row(i)));

    Matrix<ComplexBall> a(g, g), b(g, g);
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t s = 0; s < phi.size(); ++s)
            for (std::size_t i = 0; i < g; ++i) {
                a(c * phi.size() + s, i) = ball_eval(vec[i][c], phi[s], ctx);
                b(c * phi.size() + s, i) = ball_eval(vec[g + i][c], phi[s], ctx);
            }
    SiegelPoint numeric = SiegelPoint::from_balls(cinverse(a) * b);
    require(certified_positive_definite(numeric.imag_part()), ErrorKind::RiemannRelationViolated,
            "Im Z is not positive definite");

    CMFieldPtr L = closure ? closure : p.field;
    const NumberField& K = *p.field->base();
    std::vector<RationalMatrix> iota;
    for (std::size_t k : phi) {
        auto e = field_embedding(K, k, L->base(), ctx);
        if (!e)
            return numeric;
        iota.push_back(std::move(*e));
    }
    const FieldPtr& LF = L->base();
    AlgebraicMatrix ax(g, g), bx(g, g);
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t s = 0; s < phi.size(); ++s)
            for (std::size_t i = 0; i < g; ++i) {
                ax(c * phi.size() + s, i) = AlgebraicNumber(LF, row_times(vec[i][c].coords(), iota[s]));
                bx(c * phi.size() + s, i) = AlgebraicNumber(LF, row_times(vec[g + i][c].coords(), iota[s]));
            }
    AlgebraicMatrix m = ainverse(ax) * bx;
    require(m == m.transpose(), ErrorKind::RiemannRelationViolated, "Z is not symmetric");
    SiegelPoint exact = SiegelPoint::from_exact({L, m}, ctx);
    exact.asymmetry = numeric.asymmetry;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            require(exact.z(i, j).overlaps(numeric.z(i, j)), ErrorKind::Internal,
                    "exact period matrix disagrees with its numerical value");
    return exact;
}

SiegelPoint period_matrix(const ProductPolarized& p, const PrecisionContext& ctx, const CMFieldPtr& closure)
{
    require(p.factors.size() == 2, ErrorKind::InvalidArgument, "two factors expected");
    std::vector<SiegelPoint> taus;
    for (const auto& f : p.factors) {
        CMFieldPtr L = closure;
        if (!L && p.factors[0].field->base() == p.factors[1].field->base())
            L = p.factors[0].field;
        taus.push_back(period_matrix(f, symplectic_basis(f.gram), ctx, L));
    }
    const mpfr_prec_t prec = ctx.bits;
    Matrix<ComplexBall> z(2, 2, ComplexBall(Real(0L, prec)));
    z(0, 0) = taus[0].z(0, 0);
    z(1, 1) = taus[1].z(0, 0);
    SiegelPoint out = SiegelPoint::from_balls(std::move(z));
    if (taus[0].exact && taus[1].exact && taus[0].exact->field->base() == taus[1].exact->field->base()) {
        const FieldPtr& L = taus[0].exact->field->base();
        AlgebraicMatrix m(2, 2, AlgebraicNumber::zero(L));
        m(0, 0) = taus[0].exact->m(0, 0);
        m(1, 1) = taus[1].exact->m(0, 0);
        out.exact = ExactPeriod{taus[0].exact->field, m};
    }
    return out;
}

Real h_of(const SiegelPoint& z)
{
    Real h = z.z(0, 0).abs();
    for (const auto& v : z.z.data())
        h = max_real(h, v.abs());
    Real d = rdet(z.imag_part());
    return max_real(h, Real(1L, z.precision()) / d);
}

namespace {

enum class Part { Re, Im };

// Sign of the real or imaginary part of phi_0(u), exact at zero.
Sign exact_sign(const AlgebraicNumber& u, Part part, const CMField& L, mpfr_prec_t prec, unsigned refinements)
{
    AlgebraicNumber w = part == Part::Re ? u + L.rho(u) : u - L.rho(u);
    if (w.is_zero())
        return Sign::Zero;
    for (unsigned s = 0; s <= refinements + 4; ++s) {
        ComplexBall b = u.eval(0, prec << s);
        Sign sg = part == Part::Re ? b.re().sign() : b.im().sign();
        if (sg != Sign::Unknown)
            return sg;
    }
    return Sign::Unknown;
}

struct Condition {
    std::string name;
    Real value;                          // must be >= 0
    std::optional<AlgebraicNumber> u;    // same sign as Re/Im phi_0(u)
    Part part = Part::Re;
};

std::vector<Condition> conditions(const SiegelPoint& p)
{
    std::vector<Condition> out;
    const mpfr_prec_t prec = p.precision();
    const auto& z = p.z;
    const bool ex = p.exact.has_value();
    const AlgebraicMatrix* m = ex ? &p.exact->m : nullptr;
    auto half = [&](const FieldPtr& L) { return AlgebraicNumber::from_rational(L, Rational(1, 2)); };
    Real halfr(Rational(1, 2), prec);

    if (p.g == 2) {
        out.push_back({"i:y12>=0", z(0, 1).im(), ex ? std::optional((*m)(0, 1)) : std::nullopt, Part::Im});
        out.push_back({"i:2y12<=y11", z(0, 0).im() - z(0, 1).im() - z(0, 1).im(),
                       ex ? std::optional((*m)(0, 0) - (*m)(0, 1) - (*m)(0, 1)) : std::nullopt, Part::Im});
        out.push_back({"i:y11<=y22", z(1, 1).im() - z(0, 0).im(),
                       ex ? std::optional((*m)(1, 1) - (*m)(0, 0)) : std::nullopt, Part::Im});
    }
    for (std::size_t i = 0; i < p.g; ++i)
        for (std::size_t j = i; j < p.g; ++j) {
            std::string nm = "ii:x" + std::to_string(i + 1) + std::to_string(j + 1);
            std::optional<AlgebraicNumber> up, lo;
            if (ex) {
                const FieldPtr& L = p.exact->field->base();
                up = half(L) - (*m)(i, j);
                lo = half(L) + (*m)(i, j);
            }
            out.push_back({nm + "<=1/2", halfr - z(i, j).re(), up, Part::Re});
            out.push_back({nm + ">=-1/2", halfr + z(i, j).re(), lo, Part::Re});
        }
    Real one(1L, prec);
    if (p.g == 1) {
        std::optional<AlgebraicNumber> u;
        if (ex) {
            const AlgebraicNumber& x = (*m)(0, 0);
            u = x * p.exact->field->rho(x) - AlgebraicNumber::from_rational(x.field(), 1);
        }
        out.push_back({"iii:|z|>=1", z(0, 0).norm() - one, u, Part::Re});
        return out;
    }
    const auto& table = gottschling_matrices();
    for (std::size_t k = 0; k < table.size(); ++k) {
        std::optional<AlgebraicNumber> u;
        if (ex) {
            const FieldPtr& L = p.exact->field->base();
            AlgebraicNumber d = adet(to_field(table[k].c(), L) * (*m) + to_field(table[k].d(), L));
            u = d * p.exact->field->rho(d) - AlgebraicNumber::from_rational(L, 1);
        }
        out.push_back({"iii:gottschling" + std::to_string(k), cocycle(table[k], p).norm() - one, u, Part::Re});
    }
    return out;
}

}  // namespace

ReducedReport is_reduced(const SiegelPoint& z, unsigned max_refinements)
{
    ReducedReport rep;
    for (const Condition& c : conditions(z)) {
        Sign s = c.value.sign();
        if (s == Sign::Unknown && c.u)
            s = exact_sign(*c.u, c.part, *z.exact->field, z.precision(), max_refinements);
        if (s == Sign::Negative)
            rep.failing.push_back(c.name);
        else if (s == Sign::Unknown)
            rep.undecidable.push_back(c.name);
    }
    if (!rep.failing.empty())
        rep.status = ReducedReport::Status::NotReduced;
    else if (!rep.undecidable.empty())
        rep.status = ReducedReport::Status::Undecidable;
    return rep;
}

std::string ReductionTrace::serialize() const
{
    std::ostringstream os;
    for (const auto& s : steps) {
        os << s.kind;
        for (const auto& v : s.matrix.matrix().data())
            os << ' ' << v.get_str();
        char buf[64];
        std::snprintf(buf, sizeof buf, " %.17g", mpfr_get_d(s.det_im.lower().get(), MPFR_RNDD));
        os << buf << '\n';
    }
    return os.str();
}

ReductionResult reduce(const SiegelPoint& z0, std::size_t max_iterations)
{
    const std::size_t g = z0.g;
    require(in_upper_half_space(z0), ErrorKind::InvalidArgument, "point is not in the upper half space");
    SiegelPoint numeric = z0;
    numeric.exact.reset();

    ReductionResult res;
    res.trace.h_start = h_of(z0);
    SymplecticIntMatrix total = SymplecticIntMatrix::identity(g);
    SiegelPoint cur = numeric;
    auto apply = [&](const std::string& kind, const SymplecticIntMatrix& m) {
        total = m * total;
        cur = sp_action(total, numeric);
        res.trace.steps.push_back({kind, m, rdet(cur.imag_part())});
    };

    bool converged = false;
    for (std::size_t it = 0; it < max_iterations && !converged; ++it) {
        if (g == 2) {
            RationalMatrix y = cur.imag_part().map([](const Real& v) { return v.mid_rational(); });
            y(1, 0) = y(0, 1);
            GaussReduced gr = gauss_reduce(y);
            if (gr.u != IntegerMatrix::identity(2, Integer(0), Integer(1)))
                apply("gauss", SymplecticIntMatrix::embed(gr.u));
        }
        IntegerMatrix s(g, g, Integer(0));
        bool shift = false;
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = i; j < g; ++j) {
                Integer k = round(cur.z(i, j).re().mid_rational());
                s(i, j) = s(j, i) = -k;
                shift = shift || k != 0;
            }
        if (shift)
            apply("translate", SymplecticIntMatrix::translation(s));

        if (g == 1) {
            Real n = cur.z(0, 0).norm();
            Sign sg = compare(n, Real(1L, cur.precision()));
            if (sg == Sign::Negative) {
                apply("invert", SymplecticIntMatrix::j(1));
                continue;
            }
            if (sg == Sign::Unknown)
                res.trace.boundary_flag = true;
            converged = true;
            continue;
        }
        const auto& table = gottschling_matrices();
        std::optional<std::size_t> best;
        Real best_val;
        for (std::size_t k = 0; k < table.size(); ++k) {
            Real n = cocycle(table[k], cur).norm();
            Sign sg = compare(n, Real(1L, cur.precision()));
            if (sg == Sign::Unknown)
                res.trace.boundary_flag = true;
            if (sg != Sign::Negative)
                continue;
            if (!best || n.mid_double() < best_val.mid_double()) {
                best = k;
                best_val = n;
            }
        }
        if (best) {
            res.trace.boundary_flag = false;
            apply("gottschling", table[*best]);
            continue;
        }
        converged = true;
    }
    require(converged, ErrorKind::Internal, "reduction did not terminate within the iteration limit");

    res.gamma = total;
    res.trace.gamma_total = total;
    res.trace.gamma_max_entry = total.max_entry();
    res.z = z0.exact ? sp_action(total, z0) : cur;
    res.report = is_reduced(res.z);
    require(res.report.status != ReducedReport::Status::NotReduced, ErrorKind::UndecidableAtPrecision,
            "reduced point violates a domain condition at this precision");
    return res;
}

Real imaginary_part_identity_check(const SymplecticIntMatrix& gamma, const SiegelPoint& z)
{
    const std::size_t g = z.g;
    const mpfr_prec_t prec = z.precision();
    SiegelPoint w = sp_action(gamma, z);
    Matrix<Real> yw_inv = rinverse(w.imag_part());
    Matrix<Real> x = z.real_part(), y = z.imag_part();
    Matrix<Real> yi = rinverse(y);
    IntegerMatrix c = gamma.c(), d = gamma.d();
    Real residual(0L, prec);
    for (std::size_t l = 0; l < g; ++l) {
        std::vector<Real> v(g, Real(0L, prec)), cl(g, Real(0L, prec));
        for (std::size_t i = 0; i < g; ++i) {
            cl[i] = Real(Rational(c(l, i)), prec);
            v[i] = Real(Rational(d(l, i)), prec);
        }
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t k = 0; k < g; ++k)
                v[i] += x(i, k) * cl[k];
        Real rhs(0L, prec);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t k = 0; k < g; ++k)
                rhs += v[i] * yi(i, k) * v[k] + cl[i] * y(i, k) * cl[k];
        residual = max_real(residual, abs(yw_inv(l, l) - rhs));
    }
    return residual;
}

}  // namespace cmh

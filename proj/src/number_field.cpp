#include "cmh/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmh/error.hpp"
#include "cmh/lll.hpp"

namespace cmh {

namespace {

constexpr mpfr_prec_t kBasePrecision = 128;

std::vector<ComplexBall> isolate_with_retries(const Polynomial& p, mpfr_prec_t prec)
{
    for (int step = 0;; ++step) {
        try {
            return isolate_roots(p, prec << step);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExhausted || step >= 4)
                throw;
        }
    }
}

std::vector<Rational> unit_vector(std::size_t n, std::size_t k)
{
    std::vector<Rational> v(n, Rational(0));
    v[k] = 1;
    return v;
}

bool integral_vector(const std::vector<Rational>& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

}  // namespace

NumberField::NumberField(std::string name, Polynomial poly, RationalMatrix basis, Integer disc)
    : name_(std::move(name)), degree_(static_cast<std::size_t>(poly.degree())),
      poly_(std::move(poly)), basis_(std::move(basis)), disc_(std::move(disc))
{
    require(poly_.degree() >= 1 && poly_.leading() == 1, ErrorKind::InvalidArgument,
            "defining polynomial must be monic of positive degree");
    require(basis_.rows() == degree_ && basis_.cols() == degree_, ErrorKind::InvalidArgument,
            "integral basis must be " + std::to_string(degree_) + "x" + std::to_string(degree_));
    require(rank(basis_) == degree_, ErrorKind::NotARing, "integral basis is not of full rank");
    basis_inv_ = inverse(basis_);

    const std::size_t n = degree_;
    power_table_.push_back(unit_vector(n, 0));
    for (std::size_t k = 1; k + 1 < 2 * n; ++k) {
        const auto& prev = power_table_.back();
        std::vector<Rational> next(n, Rational(0));
        for (std::size_t j = 0; j + 1 < n; ++j)
            next[j + 1] = prev[j];
        // theta^n = -sum c_j theta^j
        if (prev[n - 1] != 0)
            for (std::size_t j = 0; j < n; ++j)
                next[j] -= prev[n - 1] * poly_.coeff(j);
        power_table_.push_back(std::move(next));
    }

    base_roots_ = isolate_with_retries(poly_, kBasePrecision);
    conj_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t hits = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (base_roots_[k].conj().overlaps(base_roots_[j])) {
                conj_[k] = j;
                ++hits;
            }
        require(hits == 1, ErrorKind::Internal, "ambiguous conjugate root in " + name_);
    }
}

std::vector<Rational> NumberField::multiply(const std::vector<Rational>& a,
                                            const std::vector<Rational>& b) const
{
    const std::size_t n = degree_;
    std::vector<Rational> prod(2 * n - 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            if (b[j] != 0)
                prod[i + j] += a[i] * b[j];
    }
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t k = 0; k < prod.size(); ++k) {
        if (prod[k] == 0)
            continue;
        if (k < n) {
            out[k] += prod[k];
            continue;
        }
        for (std::size_t j = 0; j < n; ++j)
            out[j] += prod[k] * power_table_[k][j];
    }
    return out;
}

RationalMatrix NumberField::multiplication_matrix(const std::vector<Rational>& a) const
{
    RationalMatrix m(degree_, degree_);
    for (std::size_t k = 0; k < degree_; ++k)
        m.set_row(k, multiply(a, power_table_[k]));
    return m;
}

Rational NumberField::trace(const std::vector<Rational>& a) const
{
    RationalMatrix m = multiplication_matrix(a);
    Rational t = 0;
    for (std::size_t k = 0; k < degree_; ++k)
        t += m(k, k);
    return t;
}

Rational NumberField::norm(const std::vector<Rational>& a) const
{
    return determinant(multiplication_matrix(a));
}

std::vector<ComplexBall> NumberField::compute_roots(mpfr_prec_t prec) const
{
    if (prec <= kBasePrecision) {
        std::vector<ComplexBall> out;
        for (const auto& r : base_roots_)
            out.push_back(with_precision(r, prec));
        return out;
    }
    std::vector<ComplexBall> fresh = isolate_with_retries(poly_, prec);
    std::vector<ComplexBall> out(degree_);
    std::vector<bool> used(degree_, false);
    for (const auto& r : fresh) {
        std::size_t hit = degree_;
        for (std::size_t k = 0; k < degree_; ++k)
            if (r.overlaps(base_roots_[k])) {
                require(hit == degree_ && !used[k], ErrorKind::Internal,
                        "root matching across precisions failed for " + name_);
                hit = k;
            }
        require(hit < degree_, ErrorKind::Internal, "root matching across precisions failed for " + name_);
        used[hit] = true;
        out[hit] = r;
    }
    return out;
}

const std::vector<ComplexBall>& NumberField::roots(mpfr_prec_t prec) const
{
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = root_cache_.find(prec);
    if (it == root_cache_.end())
        it = root_cache_.emplace(prec, compute_roots(prec)).first;
    return it->second;
}

std::size_t NumberField::conjugate_index(std::size_t k) const
{
    return conj_.at(k);
}

bool NumberField::totally_imaginary() const
{
    for (std::size_t k = 0; k < degree_; ++k)
        if (conj_[k] == k)
            return false;
    return true;
}

namespace {

// Searches for a proper factor over Z of a monic squarefree integer
// polynomial from products of subsets of its certified roots.
bool has_proper_factor(const Polynomial& f, const std::vector<ComplexBall>& roots)
{
    const std::size_t n = roots.size();
    const mpfr_prec_t prec = roots.empty() ? 64 : roots[0].precision();
    for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << n); ++mask) {
        std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (2 * size > n || (2 * size == n && !(mask & 1)))
            continue;
        std::vector<ComplexBall> c{ComplexBall(Real(1L, prec))};
        for (std::size_t k = 0; k < n; ++k) {
            if (!(mask >> k & 1))
                continue;
            std::vector<ComplexBall> next(c.size() + 1, ComplexBall(Real(0L, prec)));
            for (std::size_t j = 0; j < c.size(); ++j) {
                next[j + 1] += c[j];
                next[j] -= c[j] * roots[k];
            }
            c = std::move(next);
        }
        std::vector<Integer> coeffs;
        bool integral = true;
        for (const auto& z : c) {
            Integer v = round(z.re().mid_rational());
            if (!z.re().contains(Rational(v)) || !z.im().contains(Rational(0))) {
                integral = false;
                break;
            }
            coeffs.push_back(v);
        }
        if (!integral)
            continue;
        if (f.divmod(Polynomial::from_integers(coeffs)).remainder.is_zero())
            return true;
    }
    return false;
}

}  // namespace

FieldPtr verify_field(const FieldDescriptor& data)
{
    const std::string who = "field '" + data.name + "': ";
    require(data.poly.size() >= 2 && data.poly.back() == 1, ErrorKind::InvalidArgument,
            who + "defining polynomial must be monic of positive degree");
    Polynomial f = Polynomial::from_integers(data.poly);
    const std::size_t n = static_cast<std::size_t>(f.degree());
    require(data.basis.rows() == n && data.basis.cols() == n, ErrorKind::InvalidArgument,
            who + "integral basis has the wrong shape");

    if (gcd(f, f.derivative()).degree() > 0)
        throw Error(ErrorKind::ReduciblePoly, who + "defining polynomial has a repeated factor");
    std::vector<ComplexBall> roots = isolate_with_retries(f, kBasePrecision);
    if (has_proper_factor(f, roots))
        throw Error(ErrorKind::ReduciblePoly, who + "defining polynomial " + f.to_string() + " is reducible");

    if (rank(data.basis) != n)
        throw Error(ErrorKind::NotARing, who + "integral basis is not of full rank");
    auto K = std::make_shared<NumberField>(data.name, f, data.basis, data.disc);
    const RationalMatrix& b = K->integral_basis();
    const RationalMatrix& binv = K->integral_basis_inverse();
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> theta_k(n, Rational(0));
        theta_k[k] = 1;
        if (!integral_vector(row_times(theta_k, binv)))
            throw Error(ErrorKind::NotARing, who + "span of the basis does not contain theta^" + std::to_string(k));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto prod = K->multiply(b.row(i), b.row(j));
            if (!integral_vector(row_times(prod, binv)))
                throw Error(ErrorKind::NotARing, who + "basis is not closed under multiplication (w" + std::to_string(i)
                                                     + "*w" + std::to_string(j) + ")");
        }
    RationalMatrix tr(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            tr(i, j) = K->trace(K->multiply(b.row(i), b.row(j)));
    Rational d = determinant(tr);
    if (d != Rational(data.disc))
        throw Error(ErrorKind::DiscMismatch, who + "basis discriminant is " + to_string(d) + ", catalog says "
                                                 + to_string(data.disc));
    std::size_t complex_pairs = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (!K->is_real_embedding(k))
            ++complex_pairs;
    complex_pairs /= 2;
    Integer r = data.disc % 4;
    if (r < 0)
        r += 4;
    if ((data.disc < 0) != (complex_pairs % 2 == 1) || (r != 0 && r != 1))
        throw Error(ErrorKind::DiscMismatch, who + "discriminant violates the sign or Stickelberger condition");
    return K;
}

std::vector<ComplexBall> embeddings(const NumberField& K, const PrecisionContext& ctx)
{
    return K.roots(ctx.bits);
}

// ---------------------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords))
{
    require(field_ != nullptr, ErrorKind::InvalidArgument, "algebraic number without a field");
    require(coords_.size() == field_->degree(), ErrorKind::InvalidArgument,
            "coordinate vector length differs from the field degree");
}

AlgebraicNumber AlgebraicNumber::zero(FieldPtr field)
{
    std::size_t n = field->degree();
    return {std::move(field), std::vector<Rational>(n, Rational(0))};
}

AlgebraicNumber AlgebraicNumber::from_rational(FieldPtr field, const Rational& q)
{
    std::size_t n = field->degree();
    std::vector<Rational> c(n, Rational(0));
    c[0] = q;
    return {std::move(field), std::move(c)};
}

AlgebraicNumber AlgebraicNumber::generator(FieldPtr field)
{
    std::size_t n = field->degree();
    std::vector<Rational> c(n, Rational(0));
    if (n == 1)
        c[0] = -field->poly().coeff(0);
    else
        c[1] = 1;
    return {std::move(field), std::move(c)};
}

AlgebraicNumber AlgebraicNumber::from_integral(FieldPtr field, const std::vector<Rational>& c)
{
    auto coords = row_times(c, field->integral_basis());
    return {std::move(field), std::move(coords)};
}

std::vector<Rational> AlgebraicNumber::integral_coords() const
{
    return row_times(coords_, field_->integral_basis_inverse());
}

bool AlgebraicNumber::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

bool AlgebraicNumber::is_rational() const
{
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& q) { return q == 0; });
}

bool AlgebraicNumber::is_algebraic_integer() const
{
    return integral_vector(integral_coords());
}

void AlgebraicNumber::check_same_field(const AlgebraicNumber& b) const
{
    require(field_ && field_ == b.field_, ErrorKind::InvalidArgument,
            "arithmetic between different ambient fields");
}

AlgebraicNumber AlgebraicNumber::operator-() const
{
    AlgebraicNumber r = *this;
    for (auto& c : r.coords_)
        c = -c;
    return r;
}

AlgebraicNumber& AlgebraicNumber::operator+=(const AlgebraicNumber& b)
{
    check_same_field(b);
    for (std::size_t k = 0; k < coords_.size(); ++k)
        coords_[k] += b.coords_[k];
    return *this;
}

AlgebraicNumber& AlgebraicNumber::operator-=(const AlgebraicNumber& b)
{
    check_same_field(b);
    for (std::size_t k = 0; k < coords_.size(); ++k)
        coords_[k] -= b.coords_[k];
    return *this;
}

AlgebraicNumber& AlgebraicNumber::operator*=(const AlgebraicNumber& b)
{
    check_same_field(b);
    coords_ = field_->multiply(coords_, b.coords_);
    return *this;
}

AlgebraicNumber& AlgebraicNumber::operator*=(const Rational& q)
{
    for (auto& c : coords_)
        c *= q;
    return *this;
}

AlgebraicNumber& AlgebraicNumber::operator/=(const AlgebraicNumber& b)
{
    return *this *= b.inverse();
}

bool AlgebraicNumber::operator==(const AlgebraicNumber& b) const
{
    return field_ == b.field_ && coords_ == b.coords_;
}

AlgebraicNumber AlgebraicNumber::inverse() const
{
    require(!is_zero(), ErrorKind::InvalidArgument, "inverse of zero");
    // x * M = e_0 where the rows of M are a * theta^k
    RationalMatrix m = field_->multiplication_matrix(coords_);
    return {field_, solve_left(m, unit_vector(coords_.size(), 0))};
}

AlgebraicNumber AlgebraicNumber::pow(unsigned long e) const
{
    AlgebraicNumber result = from_rational(field_, 1);
    AlgebraicNumber base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

Rational AlgebraicNumber::trace() const
{
    return field_->trace(coords_);
}

Rational AlgebraicNumber::norm() const
{
    return field_->norm(coords_);
}

ComplexBall AlgebraicNumber::eval(std::size_t embedding, mpfr_prec_t prec) const
{
    require(embedding < field_->degree(), ErrorKind::InvalidArgument, "embedding index out of range");
    const ComplexBall& theta = field_->roots(prec)[embedding];
    std::size_t n = coords_.size();
    ComplexBall acc(Real(coords_[n - 1], prec));
    for (std::size_t k = n - 1; k-- > 0;) {
        acc *= theta;
        acc.re() += Real(coords_[k], prec);
    }
    return acc;
}

std::string AlgebraicNumber::to_string() const
{
    return Polynomial(coords_).to_string("t");
}

ComplexBall ball_eval(const AlgebraicNumber& a, std::size_t embedding_index, const PrecisionContext& ctx)
{
    return a.eval(embedding_index, ctx.bits);
}

Polynomial minimal_polynomial(const AlgebraicNumber& a)
{
    const std::size_t n = a.field()->degree();
    RationalMatrix powers;
    AlgebraicNumber p = AlgebraicNumber::from_rational(a.field(), 1);
    for (std::size_t k = 0; k <= n; ++k) {
        powers.append_row(p.coords());
        if (rank(powers) <= k) {
            RationalMatrix ker = left_kernel(powers);
            std::vector<Rational> v = ker.row(0);
            return Polynomial(v).monic();
        }
        p *= a;
    }
    throw Error(ErrorKind::Internal, "no linear dependency among powers");
}

HeightValue weil_height(const Polynomial& minpoly, const PrecisionContext& ctx)
{
    HeightValue out;
    std::vector<Integer> prim = minpoly.primitive_integer();
    out.degree = static_cast<std::size_t>(minpoly.degree());
    out.naive = 0;
    for (const auto& c : prim)
        out.naive = std::max(out.naive, Integer(abs(c)));
    const unsigned long d = out.degree;
    for (unsigned step = 0; step < ctx.max_refinements; ++step) {
        mpfr_prec_t prec = ctx.refined(step).bits;
        try {
            std::vector<ComplexBall> roots = isolate_roots(minpoly.monic(), prec);
            Real m(Rational(abs(prim.back())), prec);
            Real one(1L, prec);
            for (const auto& r : roots)
                m *= max(one, r.abs());
            Real h = d == 1 ? m : root(m, d);
            if (h.relative_width() < std::ldexp(1.0, -32)) {
                out.H = h;
                return out;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExhausted)
                throw;
        }
    }
    throw Error(ErrorKind::PrecisionExhausted, "height enclosure did not reach relative width 2^-32");
}

HeightValue weil_height(const AlgebraicNumber& a, const PrecisionContext& ctx)
{
    if (a.is_zero()) {
        HeightValue v{Real(1L, ctx.bits), Integer(1), 1};
        return v;
    }
    return weil_height(minimal_polynomial(a), ctx);
}

namespace {

std::vector<std::pair<Integer, unsigned long>> factor_small(Integer n)
{
    std::vector<std::pair<Integer, unsigned long>> out;
    for (Integer p = 2; p * p <= n; ++p) {
        unsigned long e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

}  // namespace

Integer denominator(const AlgebraicNumber& a)
{
    Polynomial m = minimal_polynomial(a);
    const int d = m.degree();
    std::map<Integer, unsigned long> need;
    for (int k = 1; k <= d; ++k) {
        Integer den = m.coeff(static_cast<std::size_t>(d - k)).get_den();
        for (const auto& [p, e] : factor_small(den)) {
            unsigned long req = (e + static_cast<unsigned long>(k) - 1) / static_cast<unsigned long>(k);
            need[p] = std::max(need[p], req);
        }
    }
    Integer n = 1;
    for (const auto& [p, e] : need) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        n *= pe;
    }
    return n;
}

std::optional<AlgebraicNumber> recognize_in_field(const FieldPtr& K, const ComplexBall& target,
                                                  std::size_t embedding, long scale_bits)
{
    const std::size_t n = K->degree();
    const mpfr_prec_t prec = target.precision();
    std::vector<ComplexBall> values{target};
    std::vector<AlgebraicNumber> omega;
    for (std::size_t i = 0; i < n; ++i) {
        omega.emplace_back(K, K->integral_basis().row(i));
        values.push_back(omega.back().eval(embedding, prec));
    }
    IntegerMatrix rel = integer_relations(values, scale_bits);
    for (std::size_t r = 0; r < rel.rows(); ++r) {
        if (rel(r, 0) == 0)
            continue;
        std::vector<Rational> c(n);
        for (std::size_t i = 0; i < n; ++i)
            c[i] = Rational(-rel(r, i + 1)) / Rational(rel(r, 0));
        AlgebraicNumber x = AlgebraicNumber::from_integral(K, c);
        if (x.eval(embedding, prec).overlaps(target))
            return x;
    }
    return std::nullopt;
}

AlgebraicNumber Automorphism::apply(const AlgebraicNumber& a) const
{
    return {a.field(), row_times(a.coords(), matrix)};
}

AlgebraicNumber eval_poly(const Polynomial& f, const AlgebraicNumber& x)
{
    AlgebraicNumber acc = AlgebraicNumber::zero(x.field());
    for (int k = f.degree(); k >= 0; --k) {
        acc *= x;
        acc += AlgebraicNumber::from_rational(x.field(), f.coeff(static_cast<std::size_t>(k)));
    }
    return acc;
}

namespace {

std::optional<Automorphism> automorphism_to(const FieldPtr& K, std::size_t k, const PrecisionContext& ctx)
{
    const std::size_t n = K->degree();
    for (unsigned step = 0; step < ctx.max_refinements; ++step) {
        mpfr_prec_t prec = ctx.refined(step).bits;
        const ComplexBall& target = K->roots(prec)[k];
        auto x = recognize_in_field(K, target, 0, 3 * prec / 4);
        if (!x || !eval_poly(K->poly(), *x).is_zero())
            continue;
        Automorphism s;
        s.matrix = RationalMatrix(n, n);
        AlgebraicNumber p = AlgebraicNumber::from_rational(K, 1);
        for (std::size_t j = 0; j < n; ++j) {
            s.matrix.set_row(j, p.coords());
            p *= *x;
        }
        s.perm.resize(n);
        const auto& roots = K->roots(prec);
        for (std::size_t j = 0; j < n; ++j) {
            ComplexBall v = x->eval(j, prec);
            std::size_t hits = 0;
            for (std::size_t m = 0; m < n; ++m)
                if (v.overlaps(roots[m])) {
                    s.perm[j] = m;
                    ++hits;
                }
            require(hits == 1, ErrorKind::Internal, "automorphism image matches no unique root");
        }
        return s;
    }
    return std::nullopt;
}

}  // namespace

std::vector<Automorphism> automorphisms(const FieldPtr& K, const PrecisionContext& ctx)
{
    std::vector<Automorphism> out;
    for (std::size_t k = 0; k < K->degree(); ++k)
        if (auto s = automorphism_to(K, k, ctx))
            out.push_back(std::move(*s));
    std::stable_sort(out.begin(), out.end(), [](const Automorphism& a, const Automorphism& b) {
        return a.perm[0] < b.perm[0];
    });
    return out;
}

Automorphism complex_conjugation(const FieldPtr& K, const PrecisionContext& ctx)
{
    if (!K->totally_imaginary())
        throw Error(ErrorKind::NotCM, "field '" + K->name() + "' is not totally imaginary");
    auto s = automorphism_to(K, K->conjugate_index(0), ctx);
    if (!s)
        throw Error(ErrorKind::NotCM, "complex conjugation of '" + K->name() + "' is not an automorphism");
    for (std::size_t j = 0; j < K->degree(); ++j)
        if (s->perm[j] != K->conjugate_index(j))
            throw Error(ErrorKind::NotCM, "field '" + K->name() + "' has no central complex conjugation");
    return *s;
}

CMField::CMField(FieldPtr base, Automorphism rho, RationalMatrix real_subfield_basis)
    : base_(std::move(base)), rho_(std::move(rho)), real_basis_(std::move(real_subfield_basis))
{
}

CMFieldPtr make_cm_field(const FieldPtr& K, const PrecisionContext& ctx)
{
    Automorphism rho = complex_conjugation(K, ctx);
    const std::size_t n = K->degree();
    const RationalMatrix& b = K->integral_basis();
    // rho in integral coordinates, minus the identity
    RationalMatrix r = b * rho.matrix * K->integral_basis_inverse() - RationalMatrix::identity(n);
    IntegerMatrix fixed = integer_left_kernel(r);
    require(fixed.rows() * 2 == n, ErrorKind::NotCM, "fixed field of conjugation has the wrong degree");
    RationalMatrix real_basis = to_rational(fixed) * b;
    return std::make_shared<CMField>(K, std::move(rho), std::move(real_basis));
}

CMType make_cm_type(const NumberField& K, std::vector<std::size_t> indices)
{
    std::sort(indices.begin(), indices.end());
    const std::size_t n = K.degree();
    require(indices.size() * 2 == n, ErrorKind::InvalidArgument, "CM type must have n/2 embeddings");
    std::vector<bool> seen(n, false);
    for (auto k : indices) {
        require(k < n, ErrorKind::InvalidArgument, "CM type index out of range");
        require(!seen[k] && !seen[K.conjugate_index(k)], ErrorKind::InvalidArgument,
                "CM type contains a repeated or conjugate pair of embeddings");
        require(K.conjugate_index(k) != k, ErrorKind::InvalidArgument, "CM type contains a real embedding");
        seen[k] = true;
    }
    return {std::move(indices)};
}

CMType upper_cm_type(const NumberField& K)
{
    std::vector<std::size_t> idx;
    const auto& roots = K.roots(kBasePrecision);
    for (std::size_t k = 0; k < K.degree(); ++k)
        if (roots[k].im().certainly_positive())
            idx.push_back(k);
    return make_cm_type(K, idx);
}

std::vector<CMType> cm_types(const CMField& K)
{
    const NumberField& F = *K.base();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k < F.degree(); ++k)
        if (k < F.conjugate_index(k))
            pairs.emplace_back(k, F.conjugate_index(k));
    std::vector<CMType> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << pairs.size()); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            idx.push_back(mask >> p & 1 ? pairs[p].second : pairs[p].first);
        out.push_back(make_cm_type(F, idx));
    }
    return out;
}

}  // namespace cmh

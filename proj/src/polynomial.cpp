#include "cmh/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "cmh/error.hpp"

namespace cmh {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree)
{
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_integers(const std::vector<Integer>& coeffs)
{
    std::vector<Rational> v;
    v.reserve(coeffs.size());
    for (const auto& z : coeffs)
        v.emplace_back(z);
    return Polynomial(std::move(v));
}

void Polynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Polynomial Polynomial::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = coeffs_[k] * k;
    return Polynomial(d);
}

Polynomial Polynomial::monic() const
{
    if (is_zero())
        return {};
    std::vector<Rational> v = coeffs_;
    Rational lead = v.back();
    for (auto& c : v)
        c /= lead;
    return Polynomial(v);
}

std::vector<Integer> Polynomial::primitive_integer() const
{
    Integer den = common_denominator(coeffs_);
    std::vector<Integer> z;
    Integer content = 0;
    for (const auto& c : coeffs_) {
        Rational s = c * den;
        z.push_back(s.get_num());
        content = gcd(content, z.back());
    }
    if (content == 0)
        return z;
    if (z.back() < 0)
        content = -content;
    for (auto& v : z)
        v /= content;
    return z;
}

Rational Polynomial::eval(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

ComplexBall Polynomial::eval(const ComplexBall& x) const
{
    const mpfr_prec_t prec = x.precision();
    if (coeffs_.empty())
        return ComplexBall(Real(0L, prec));
    ComplexBall acc(Real(coeffs_.back(), prec));
    for (int k = degree() - 1; k >= 0; --k) {
        acc *= x;
        acc.re() += Real(coeffs_[k], prec);
    }
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& b)
{
    if (coeffs_.size() < b.coeffs_.size())
        coeffs_.resize(b.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k)
        coeffs_[k] += b.coeffs_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& b)
{
    if (coeffs_.size() < b.coeffs_.size())
        coeffs_.resize(b.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k)
        coeffs_[k] -= b.coeffs_[k];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(c);
}

Polynomial::DivMod Polynomial::divmod(const Polynomial& divisor) const
{
    if (divisor.is_zero())
        throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    const int dd = divisor.degree();
    if (degree() < dd)
        return {Polynomial(), *this};
    std::vector<Rational> quo(degree() - dd + 1, Rational(0));
    for (int k = degree(); k >= dd; --k) {
        Rational f = rem[k] / divisor.leading();
        quo[k - dd] = f;
        if (f == 0)
            continue;
        for (int j = 0; j <= dd; ++j)
            rem[k - dd + j] -= f * divisor.coeffs_[j];
    }
    rem.resize(dd);
    return {Polynomial(quo), Polynomial(rem)};
}

std::string Polynomial::to_string(const std::string& var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[k];
        if (c == 0)
            continue;
        Rational a = abs(c);
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        if (k == 0 || a != 1)
            os << a.get_str();
        if (k > 0)
            os << var;
        if (k > 1)
            os << "^" << k;
    }
    return os.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = x.divmod(y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

namespace {

using cd = std::complex<double>;

std::vector<cd> durand_kerner_double(const Polynomial& p)
{
    const int n = p.degree();
    std::vector<cd> c(n + 1);
    for (int k = 0; k <= n; ++k)
        c[k] = Rational(p.coeff(k) / p.leading()).get_d();
    double bound = 1.0;
    for (int k = 0; k < n; ++k)
        bound = std::max(bound, 1.0 + std::abs(c[k]));
    std::vector<cd> z(n);
    cd seed(0.4, 0.9);
    cd w = 1.0;
    for (int k = 0; k < n; ++k) {
        w *= seed;
        z[k] = bound * w;
    }
    auto eval = [&](cd x) {
        cd acc = c[n];
        for (int k = n - 1; k >= 0; --k)
            acc = acc * x + c[k];
        return acc;
    };
    for (int iter = 0; iter < 1000; ++iter) {
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            cd den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    den *= (z[i] - z[j]);
            if (den == 0.0)
                den = 1e-30;
            cd step = eval(z[i]) / den;
            z[i] -= step;
            worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[i])));
        }
        if (worst < 1e-14)
            break;
    }
    return z;
}

ComplexBall point(const ComplexBall& z)
{
    Mpfr zero(kRadiusPrecision);
    return {Real(z.re().mid(), zero), Real(z.im().mid(), zero)};
}

ComplexBall from_double(cd z, mpfr_prec_t prec)
{
    return {Real::from_double(z.real(), prec), Real::from_double(z.imag(), prec)};
}

// Upper bound on n |p(z)| / |p'(z)| as a Real; throws when p'(z) may vanish.
Real inclusion_radius(const Polynomial& p, const Polynomial& dp, const ComplexBall& z)
{
    Real num = p.eval(z).abs();
    Real den = dp.eval(z).abs();
    if (!den.certainly_positive())
        throw Error(ErrorKind::PrecisionExhausted, "derivative vanishes near a root approximation");
    Real r = Real(static_cast<long>(p.degree()), 64) * num / den;
    return Real::from_bounds(r.upper(), r.upper());
}

// a precedes b in the canonical embedding order
bool canonical_before(const ComplexBall& a, const ComplexBall& b)
{
    if (!a.re().overlaps(b.re()))
        return certainly_lt(a.re(), b.re());
    return a.im().mid_double() < b.im().mid_double()
        || (a.im().mid_double() == b.im().mid_double()
            && mpfr_less_p(a.im().mid().get(), b.im().mid().get()));
}

}  // namespace

std::vector<ComplexBall> isolate_roots(const Polynomial& p, mpfr_prec_t prec)
{
    const int n = p.degree();
    if (n < 1)
        return {};
    const mpfr_prec_t work = prec + 32;
    Polynomial mp = p.monic();
    Polynomial dp = mp.derivative();

    std::vector<ComplexBall> z;
    for (cd r : durand_kerner_double(mp))
        z.push_back(from_double(r, work));

    // Weierstrass iteration at working precision; quadratic for simple roots.
    for (int iter = 0; iter < 200 && n > 1; ++iter) {
        bool converged = true;
        for (int i = 0; i < n; ++i) {
            ComplexBall den(Real(1L, work));
            for (int j = 0; j < n; ++j)
                if (j != i)
                    den *= (z[i] - z[j]);
            if (den.contains_zero())
                break;
            ComplexBall step = point(mp.eval(z[i])) / point(den);
            z[i] = point(z[i] - step);
            double s = std::hypot(step.re().mid_double(), step.im().mid_double());
            double m = std::max(1.0, std::hypot(z[i].re().mid_double(), z[i].im().mid_double()));
            if (!(s <= std::ldexp(m, -static_cast<int>(prec) - 8)))
                converged = false;
        }
        if (converged)
            break;
    }
    if (n == 1) {
        Rational root = -mp.coeff(0);
        z[0] = ComplexBall(Real(root, work));
    }

    std::vector<Real> radius(n);
    bool real_poly = true;  // coefficients are rational
    for (int i = 0; i < n; ++i) {
        if (real_poly) {
            // Snap near-real approximations onto the axis; a disc centred on
            // the axis holding exactly one root of a real polynomial holds a
            // real root.
            double im = std::fabs(z[i].im().mid_double());
            double re = std::max(1.0, std::fabs(z[i].re().mid_double()));
            if (im < std::ldexp(re, -static_cast<int>(prec) / 2))
                z[i] = ComplexBall(z[i].re(), Real(0L, work));
        }
        radius[i] = inclusion_radius(mp, dp, z[i]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Real gap = (z[i] - z[j]).abs();
            if (!certainly_lt(radius[i] + radius[j], gap))
                throw Error(ErrorKind::PrecisionExhausted,
                            "root discs of " + p.to_string() + " not separated at "
                                + std::to_string(prec) + " bits");
        }

    std::vector<ComplexBall> balls;
    for (int i = 0; i < n; ++i) {
        Real re(z[i].re().mid(), radius[i].upper());
        Real im = z[i].im().sign() == Sign::Zero ? Real(0L, work)
                                                  : Real(z[i].im().mid(), radius[i].upper());
        balls.push_back(with_precision(ComplexBall(re, im), prec));
    }
    // Insertion sort: the ordering is only a strict weak order on separated roots.
    for (std::size_t i = 1; i < balls.size(); ++i)
        for (std::size_t j = i; j > 0 && canonical_before(balls[j], balls[j - 1]); --j)
            std::swap(balls[j], balls[j - 1]);
    return balls;
}

std::vector<ComplexBall> certified_roots(const Polynomial& p, const PrecisionContext& ctx)
{
    for (unsigned step = 0;; ++step) {
        try {
            return isolate_roots(p, ctx.refined(step).bits);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExhausted || step + 1 >= ctx.max_refinements)
                throw;
        }
    }
}

}  // namespace cmh

#include "cmh/real.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cmh/error.hpp"

namespace cmh {

Mpfr::Mpfr(mpfr_prec_t prec)
{
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other)
{
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept
{
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other)
{
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept
{
    if (this != &other)
        mpfr_swap(value_, other.value_);
    return *this;
}

Mpfr::~Mpfr()
{
    mpfr_clear(value_);
}

namespace {

// Adds one ulp of `mid` to `rad` (upward) when the last rounding was inexact.
void account_rounding(Mpfr& rad, const Mpfr& mid, int ternary)
{
    if (ternary == 0 || mpfr_zero_p(mid.get()))
        return;
    Mpfr ulp(kRadiusPrecision);
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid.get()) - mid.precision(), MPFR_RNDU);
    mpfr_add(rad.get(), rad.get(), ulp.get(), MPFR_RNDU);
}

Mpfr abs_of(const Mpfr& x)
{
    Mpfr r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

}  // namespace

Real::Real() : mid_(64), rad_(kRadiusPrecision) {}

Real::Real(long value, mpfr_prec_t prec) : mid_(prec), rad_(kRadiusPrecision)
{
    int t = mpfr_set_si(mid_.get(), value, MPFR_RNDN);
    account_rounding(rad_, mid_, t);
}

Real::Real(const Rational& value, mpfr_prec_t prec) : mid_(prec), rad_(kRadiusPrecision)
{
    int t = mpfr_set_q(mid_.get(), value.get_mpq_t(), MPFR_RNDN);
    account_rounding(rad_, mid_, t);
}

Real::Real(const Mpfr& mid, const Mpfr& rad) : mid_(mid), rad_(kRadiusPrecision)
{
    mpfr_abs(rad_.get(), rad.get(), MPFR_RNDU);
}

Real Real::from_bounds(const Mpfr& lo, const Mpfr& hi)
{
    mpfr_prec_t prec = std::max(lo.precision(), hi.precision());
    Mpfr mid(prec);
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    Mpfr r1(kRadiusPrecision), r2(kRadiusPrecision);
    mpfr_sub(r1.get(), hi.get(), mid.get(), MPFR_RNDU);
    mpfr_sub(r2.get(), mid.get(), lo.get(), MPFR_RNDU);
    mpfr_max(r1.get(), r1.get(), r2.get(), MPFR_RNDU);
    if (mpfr_sgn(r1.get()) < 0)
        mpfr_set_zero(r1.get(), 1);
    return Real(mid, r1);
}

Real Real::from_double(double value, mpfr_prec_t prec)
{
    Mpfr mid(prec);
    mpfr_set_d(mid.get(), value, MPFR_RNDN);
    return Real(mid, Mpfr(kRadiusPrecision));
}

Real Real::pi(mpfr_prec_t prec)
{
    Real r;
    r.mid_ = Mpfr(prec);
    int t = mpfr_const_pi(r.mid_.get(), MPFR_RNDN);
    account_rounding(r.rad_, r.mid_, t);
    return r;
}

Mpfr Real::lower() const
{
    Mpfr r(precision());
    mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return r;
}

Mpfr Real::upper() const
{
    Mpfr r(precision());
    mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return r;
}

double Real::mid_double() const
{
    return mpfr_get_d(mid_.get(), MPFR_RNDN);
}

double Real::rad_double() const
{
    return mpfr_get_d(rad_.get(), MPFR_RNDU);
}

Rational Real::mid_rational() const
{
    Rational q;
    mpfr_get_q(q.get_mpq_t(), mid_.get());
    return q;
}

bool Real::is_exact() const
{
    return mpfr_zero_p(rad_.get()) != 0;
}

bool Real::contains_zero() const
{
    return sign() == Sign::Unknown || sign() == Sign::Zero;
}

bool Real::contains(const Real& inner) const
{
    return mpfr_lessequal_p(lower().get(), inner.lower().get())
        && mpfr_lessequal_p(inner.upper().get(), upper().get());
}

bool Real::contains(const Rational& value) const
{
    return mpfr_cmp_q(lower().get(), value.get_mpq_t()) <= 0
        && mpfr_cmp_q(upper().get(), value.get_mpq_t()) >= 0;
}

bool Real::overlaps(const Real& other) const
{
    return mpfr_lessequal_p(lower().get(), other.upper().get())
        && mpfr_lessequal_p(other.lower().get(), upper().get());
}

Sign Real::sign() const
{
    if (is_exact()) {
        int s = mpfr_sgn(mid_.get());
        return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
    }
    if (mpfr_sgn(lower().get()) > 0)
        return Sign::Positive;
    if (mpfr_sgn(upper().get()) < 0)
        return Sign::Negative;
    return Sign::Unknown;
}

double Real::relative_width() const
{
    if (is_exact())
        return 0.0;
    double m = std::fabs(mid_double());
    if (m == 0.0)
        return INFINITY;
    return rad_double() / m;
}

Real Real::operator-() const
{
    Real r(*this);
    mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& b)
{
    Mpfr mid(std::max(precision(), b.precision()));
    int t = mpfr_add(mid.get(), mid_.get(), b.mid_.get(), MPFR_RNDN);
    mpfr_add(rad_.get(), rad_.get(), b.rad_.get(), MPFR_RNDU);
    mid_ = std::move(mid);
    account_rounding(rad_, mid_, t);
    return *this;
}

Real& Real::operator-=(const Real& b)
{
    Mpfr mid(std::max(precision(), b.precision()));
    int t = mpfr_sub(mid.get(), mid_.get(), b.mid_.get(), MPFR_RNDN);
    mpfr_add(rad_.get(), rad_.get(), b.rad_.get(), MPFR_RNDU);
    mid_ = std::move(mid);
    account_rounding(rad_, mid_, t);
    return *this;
}

Real& Real::operator*=(const Real& b)
{
    Mpfr mid(std::max(precision(), b.precision()));
    int t = mpfr_mul(mid.get(), mid_.get(), b.mid_.get(), MPFR_RNDN);
    Mpfr rad(kRadiusPrecision), tmp(kRadiusPrecision);
    mpfr_mul(rad.get(), abs_of(mid_).get(), b.rad_.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), abs_of(b.mid_).get(), rad_.get(), MPFR_RNDU);
    mpfr_add(rad.get(), rad.get(), tmp.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(rad.get(), rad.get(), tmp.get(), MPFR_RNDU);
    mid_ = std::move(mid);
    rad_ = std::move(rad);
    account_rounding(rad_, mid_, t);
    return *this;
}

Real& Real::operator/=(const Real& b)
{
    Mpfr bm = abs_of(b.mid_);
    Mpfr gap(kRadiusPrecision);
    mpfr_sub(gap.get(), bm.get(), b.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(gap.get()) <= 0)
        throw Error(ErrorKind::PrecisionExhausted, "division by a ball containing zero");
    Mpfr mid(std::max(precision(), b.precision()));
    int t = mpfr_div(mid.get(), mid_.get(), b.mid_.get(), MPFR_RNDN);
    // |x/y - a/b| <= (ra |b| + |a| rb) / (|b| (|b| - rb))
    Mpfr num(kRadiusPrecision), tmp(kRadiusPrecision), den(kRadiusPrecision);
    mpfr_mul(num.get(), rad_.get(), bm.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), abs_of(mid_).get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), tmp.get(), MPFR_RNDU);
    mpfr_mul(den.get(), bm.get(), gap.get(), MPFR_RNDD);
    mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDU);
    mid_ = std::move(mid);
    rad_ = std::move(num);
    account_rounding(rad_, mid_, t);
    return *this;
}

std::string Real::to_string(int digits) const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg +/- %.3Rg", digits, mid_.get(), rad_.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Real abs(const Real& x)
{
    switch (x.sign()) {
    case Sign::Positive:
    case Sign::Zero:
        return x;
    case Sign::Negative:
        return -x;
    case Sign::Unknown:
        break;
    }
    Mpfr lo = x.lower(), hi = x.upper();
    mpfr_abs(lo.get(), lo.get(), MPFR_RNDU);
    mpfr_max(hi.get(), hi.get(), lo.get(), MPFR_RNDU);
    return Real::from_bounds(Mpfr(x.precision()), hi);
}

Real sqr(const Real& x)
{
    Real a = abs(x);
    return a * a;
}

Real sqrt(const Real& x)
{
    Mpfr lo = x.lower(), hi = x.upper();
    if (mpfr_sgn(hi.get()) < 0)
        throw Error(ErrorKind::InvalidArgument, "sqrt of a negative ball");
    if (mpfr_sgn(lo.get()) < 0)
        mpfr_set_zero(lo.get(), 1);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    return Real::from_bounds(lo, hi);
}

Real root(const Real& x, unsigned long n)
{
    Mpfr lo = x.lower(), hi = x.upper();
    if (mpfr_sgn(hi.get()) < 0)
        throw Error(ErrorKind::InvalidArgument, "root of a negative ball");
    if (mpfr_sgn(lo.get()) < 0)
        mpfr_set_zero(lo.get(), 1);
    mpfr_rootn_ui(lo.get(), lo.get(), n, MPFR_RNDD);
    mpfr_rootn_ui(hi.get(), hi.get(), n, MPFR_RNDU);
    return Real::from_bounds(lo, hi);
}

Real log(const Real& x)
{
    Mpfr lo = x.lower(), hi = x.upper();
    if (mpfr_sgn(lo.get()) <= 0)
        throw Error(ErrorKind::PrecisionExhausted, "log of a ball touching zero");
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
    return Real::from_bounds(lo, hi);
}

namespace {

// f(mid) with |f'| <= 1 contributes rad to the enclosure.
template <class F>
Real lipschitz_one(const Real& x, F f)
{
    Mpfr mid(x.precision());
    int t = f(mid.get(), x.mid().get(), MPFR_RNDN);
    Mpfr rad = x.rad();
    account_rounding(rad, mid, t);
    return Real(mid, rad);
}

}  // namespace

Real cos(const Real& x)
{
    return lipschitz_one(x, mpfr_cos);
}

Real sin(const Real& x)
{
    return lipschitz_one(x, mpfr_sin);
}

Real max(const Real& a, const Real& b)
{
    Mpfr lo = a.lower(), hi = a.upper();
    mpfr_max(lo.get(), lo.get(), b.lower().get(), MPFR_RNDD);
    mpfr_max(hi.get(), hi.get(), b.upper().get(), MPFR_RNDU);
    return Real::from_bounds(lo, hi);
}

Real min(const Real& a, const Real& b)
{
    Mpfr lo = a.lower(), hi = a.upper();
    mpfr_min(lo.get(), lo.get(), b.lower().get(), MPFR_RNDD);
    mpfr_min(hi.get(), hi.get(), b.upper().get(), MPFR_RNDU);
    return Real::from_bounds(lo, hi);
}

Real with_precision(const Real& x, mpfr_prec_t prec)
{
    Mpfr mid(prec);
    int t = mpfr_set(mid.get(), x.mid().get(), MPFR_RNDN);
    Mpfr rad = x.rad();
    account_rounding(rad, mid, t);
    return Real(mid, rad);
}

Sign compare(const Real& a, const Real& b)
{
    if (certainly_lt(a, b))
        return Sign::Negative;
    if (certainly_lt(b, a))
        return Sign::Positive;
    if (a.is_exact() && b.is_exact() && mpfr_equal_p(a.mid().get(), b.mid().get()))
        return Sign::Zero;
    return Sign::Unknown;
}

bool certainly_lt(const Real& a, const Real& b)
{
    return mpfr_less_p(a.upper().get(), b.lower().get()) != 0;
}

bool certainly_le(const Real& a, const Real& b)
{
    return mpfr_lessequal_p(a.upper().get(), b.lower().get()) != 0;
}

std::ostream& operator<<(std::ostream& os, const Real& x)
{
    return os << x.to_string();
}

ComplexBall ComplexBall::root_of_unity(long num, long den, mpfr_prec_t prec)
{
    Real angle = Real::pi(prec + 16) * Real(2 * num, prec + 16) / Real(den, prec + 16);
    return {with_precision(cos(angle), prec), with_precision(sin(angle), prec)};
}

double ComplexBall::radius() const
{
    double r = std::hypot(re_.rad_double(), im_.rad_double());
    return std::nextafter(r, INFINITY);
}

ComplexBall& ComplexBall::operator+=(const ComplexBall& b)
{
    re_ += b.re_;
    im_ += b.im_;
    return *this;
}

ComplexBall& ComplexBall::operator-=(const ComplexBall& b)
{
    re_ -= b.re_;
    im_ -= b.im_;
    return *this;
}

ComplexBall& ComplexBall::operator*=(const ComplexBall& b)
{
    Real re = re_ * b.re_ - im_ * b.im_;
    Real im = re_ * b.im_ + im_ * b.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

ComplexBall& ComplexBall::operator*=(const Real& b)
{
    re_ *= b;
    im_ *= b;
    return *this;
}

ComplexBall& ComplexBall::operator/=(const ComplexBall& b)
{
    Real n = b.norm();
    *this *= b.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string ComplexBall::to_string(int digits) const
{
    return "(" + re_.to_string(digits) + ") + i(" + im_.to_string(digits) + ")";
}

ComplexBall with_precision(const ComplexBall& z, mpfr_prec_t prec)
{
    return {with_precision(z.re(), prec), with_precision(z.im(), prec)};
}

std::ostream& operator<<(std::ostream& os, const ComplexBall& z)
{
    return os << z.to_string();
}

}  // namespace cmh

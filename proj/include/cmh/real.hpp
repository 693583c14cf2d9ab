#pragma once

// Certified midpoint-radius arithmetic on top of MPFR.
//
// A Real is a closed interval [mid - rad, mid + rad]. Every operation returns
// an interval containing the exact result of the operation applied to any
// points of its inputs: midpoint rounding is always accounted for in the
// radius, and radii are computed with upward rounding.

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>

#include "cmh/rational.hpp"

namespace cmh {

struct PrecisionContext {
    unsigned bits = 256;
    unsigned max_refinements = 3;

    PrecisionContext refined(unsigned step) const
    {
        return {bits << step, max_refinements};
    }
};

// Owning wrapper around mpfr_t.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec = 64);
    Mpfr(const Mpfr& other);
    Mpfr(Mpfr&& other) noexcept;
    Mpfr& operator=(const Mpfr& other);
    Mpfr& operator=(Mpfr&& other) noexcept;
    ~Mpfr();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

private:
    mpfr_t value_;
};

constexpr mpfr_prec_t kRadiusPrecision = 64;

enum class Sign { Negative, Zero, Positive, Unknown };

class Real {
public:
    Real();
    explicit Real(long value, mpfr_prec_t prec = 64);
    Real(const Rational& value, mpfr_prec_t prec);
    Real(const Mpfr& mid, const Mpfr& rad);

    // Smallest ball containing [lo, hi]; requires lo <= hi.
    static Real from_bounds(const Mpfr& lo, const Mpfr& hi);
    static Real from_double(double value, mpfr_prec_t prec);
    static Real pi(mpfr_prec_t prec);

    const Mpfr& mid() const { return mid_; }
    const Mpfr& rad() const { return rad_; }
    mpfr_prec_t precision() const { return mid_.precision(); }

    Mpfr lower() const;
    Mpfr upper() const;
    double mid_double() const;
    double rad_double() const;
    Rational mid_rational() const;

    bool is_exact() const;
    bool contains_zero() const;
    bool contains(const Real& inner) const;
    bool contains(const Rational& value) const;
    bool overlaps(const Real& other) const;

    // Rigorous sign: Unknown when the interval straddles zero.
    Sign sign() const;
    bool certainly_positive() const { return sign() == Sign::Positive; }
    bool certainly_negative() const { return sign() == Sign::Negative; }

    // Relative width rad/|mid|; infinity when mid is zero and rad is not.
    double relative_width() const;

    Real operator-() const;
    Real& operator+=(const Real& b);
    Real& operator-=(const Real& b);
    Real& operator*=(const Real& b);
    Real& operator/=(const Real& b);

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }

    std::string to_string(int digits = 20) const;

private:
    Mpfr mid_;
    Mpfr rad_;
};

Real abs(const Real& x);
Real sqr(const Real& x);
Real sqrt(const Real& x);
Real root(const Real& x, unsigned long n);
Real log(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
// Raise the midpoint precision, keeping the enclosure.
Real with_precision(const Real& x, mpfr_prec_t prec);

// Certified comparisons; Unknown means the balls overlap.
Sign compare(const Real& a, const Real& b);
bool certainly_lt(const Real& a, const Real& b);
bool certainly_le(const Real& a, const Real& b);

std::ostream& operator<<(std::ostream& os, const Real& x);

class ComplexBall {
public:
    ComplexBall() = default;
    ComplexBall(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit ComplexBall(Real re) : re_(std::move(re)), im_(0L, re_.precision()) {}
    ComplexBall(const Rational& re, const Rational& im, mpfr_prec_t prec)
        : re_(re, prec), im_(im, prec) {}

    static ComplexBall i(mpfr_prec_t prec) { return {Real(0L, prec), Real(1L, prec)}; }
    // e^{2 pi i num/den}
    static ComplexBall root_of_unity(long num, long den, mpfr_prec_t prec);

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Real& re() { return re_; }
    Real& im() { return im_; }

    double center_re() const { return re_.mid_double(); }
    double center_im() const { return im_.mid_double(); }
    // Upper bound on the distance from the center to any contained point.
    double radius() const;

    mpfr_prec_t precision() const { return re_.precision(); }
    bool contains(const ComplexBall& inner) const
    {
        return re_.contains(inner.re_) && im_.contains(inner.im_);
    }
    bool overlaps(const ComplexBall& other) const
    {
        return re_.overlaps(other.re_) && im_.overlaps(other.im_);
    }
    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }

    ComplexBall conj() const { return {re_, -im_}; }
    Real norm() const { return sqr(re_) + sqr(im_); }  // |z|^2
    Real abs() const { return sqrt(norm()); }

    ComplexBall operator-() const { return {-re_, -im_}; }
    ComplexBall& operator+=(const ComplexBall& b);
    ComplexBall& operator-=(const ComplexBall& b);
    ComplexBall& operator*=(const ComplexBall& b);
    ComplexBall& operator*=(const Real& b);
    ComplexBall& operator/=(const ComplexBall& b);

    friend ComplexBall operator+(ComplexBall a, const ComplexBall& b) { return a += b; }
    friend ComplexBall operator-(ComplexBall a, const ComplexBall& b) { return a -= b; }
    friend ComplexBall operator*(ComplexBall a, const ComplexBall& b) { return a *= b; }
    friend ComplexBall operator*(ComplexBall a, const Real& b) { return a *= b; }
    friend ComplexBall operator/(ComplexBall a, const ComplexBall& b) { return a /= b; }

    std::string to_string(int digits = 20) const;

private:
    Real re_;
    Real im_;
};

ComplexBall with_precision(const ComplexBall& z, mpfr_prec_t prec);
std::ostream& operator<<(std::ostream& os, const ComplexBall& z);

}  // namespace cmh

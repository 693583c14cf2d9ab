#pragma once

#include <string>
#include <vector>

#include "cmh/rational.hpp"
#include "cmh/real.hpp"

namespace cmh {

// Univariate polynomial over Q, coefficients in ascending order of degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial monomial(const Rational& c, std::size_t degree);
    static Polynomial from_integers(const std::vector<Integer>& coeffs);

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
    const Rational& leading() const { return coeffs_.back(); }

    Polynomial derivative() const;
    Polynomial monic() const;
    // Integer polynomial with positive leading coefficient and content 1.
    std::vector<Integer> primitive_integer() const;

    Rational eval(const Rational& x) const;
    ComplexBall eval(const ComplexBall& x) const;

    Polynomial& operator+=(const Polynomial& b);
    Polynomial& operator-=(const Polynomial& b);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    bool operator==(const Polynomial& b) const { return coeffs_ == b.coeffs_; }

    struct DivMod;
    DivMod divmod(const Polynomial& divisor) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct Polynomial::DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Certified isolation of the roots of a squarefree polynomial.
//
// Returns one ball per root, pairwise disjoint, each containing exactly one
// root. Real roots of real polynomials are returned with an exact zero
// imaginary part. Order: by real part, then imaginary part, where two real
// parts count as equal when their balls overlap.
// Throws Error(PrecisionExhausted) when separation fails at `prec` bits.
std::vector<ComplexBall> isolate_roots(const Polynomial& p, mpfr_prec_t prec);

// Same, refining the precision up to ctx.max_refinements doublings.
std::vector<ComplexBall> certified_roots(const Polynomial& p, const PrecisionContext& ctx);

}  // namespace cmh

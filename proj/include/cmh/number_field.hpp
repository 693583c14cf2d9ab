#pragma once

// Number fields given by a monic integer defining polynomial together with a
// catalog-supplied integral basis, exact elements in power-basis coordinates,
// certified embeddings, complex conjugation and CM types.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cmh/matrix.hpp"
#include "cmh/polynomial.hpp"
#include "cmh/real.hpp"

namespace cmh {

// Unverified field data as read from a catalog.
struct FieldDescriptor {
    std::string name;
    std::vector<Integer> poly;  // ascending coefficients, monic
    RationalMatrix basis;       // rows: integral basis in power-basis coordinates
    Integer disc;
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
public:
    // Use verify_field() to construct; this constructor performs no checks.
    NumberField(std::string name, Polynomial poly, RationalMatrix basis, Integer disc);

    const std::string& name() const { return name_; }
    std::size_t degree() const { return degree_; }
    const Polynomial& poly() const { return poly_; }
    // Rows: a Z-basis of O_K in power-basis coordinates.
    const RationalMatrix& integral_basis() const { return basis_; }
    const RationalMatrix& integral_basis_inverse() const { return basis_inv_; }
    const Integer& disc() const { return disc_; }

    // Power-basis coordinates of a*b.
    std::vector<Rational> multiply(const std::vector<Rational>& a,
                                   const std::vector<Rational>& b) const;
    // Rows: coordinates of a * theta^k, k = 0..n-1, so that x -> x*a is
    // the row map  coords(x) -> coords(x) * M.
    RationalMatrix multiplication_matrix(const std::vector<Rational>& a) const;
    Rational trace(const std::vector<Rational>& a) const;
    Rational norm(const std::vector<Rational>& a) const;

    // Certified roots of the defining polynomial in the canonical embedding
    // order, at (at least) `prec` bits. Index k is the embedding theta -> root k.
    const std::vector<ComplexBall>& roots(mpfr_prec_t prec) const;
    // Index of the embedding complex-conjugate to embedding k.
    std::size_t conjugate_index(std::size_t k) const;
    bool is_real_embedding(std::size_t k) const { return conjugate_index(k) == k; }
    bool totally_imaginary() const;

private:
    std::vector<ComplexBall> compute_roots(mpfr_prec_t prec) const;

    std::string name_;
    std::size_t degree_;
    Polynomial poly_;
    RationalMatrix basis_;
    RationalMatrix basis_inv_;
    Integer disc_;
    // power_table_[k] = coordinates of theta^k, k < 2n - 1
    std::vector<std::vector<Rational>> power_table_;
    std::vector<ComplexBall> base_roots_;
    std::vector<std::size_t> conj_;
    mutable std::mutex cache_mutex_;
    mutable std::map<mpfr_prec_t, std::vector<ComplexBall>> root_cache_;
};

// Checks irreducibility, ring closure of the basis and discriminant
// consistency. Throws Error(ReduciblePoly | NotARing | DiscMismatch |
// InvalidArgument).
FieldPtr verify_field(const FieldDescriptor& data);

std::vector<ComplexBall> embeddings(const NumberField& K, const PrecisionContext& ctx);

class AlgebraicNumber {
public:
    AlgebraicNumber() = default;
    AlgebraicNumber(FieldPtr field, std::vector<Rational> coords);
    static AlgebraicNumber zero(FieldPtr field);
    static AlgebraicNumber from_rational(FieldPtr field, const Rational& q);
    static AlgebraicNumber generator(FieldPtr field);
    // sum c_i * omega_i over the integral basis
    static AlgebraicNumber from_integral(FieldPtr field, const std::vector<Rational>& c);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }
    // Coordinates over the integral basis.
    std::vector<Rational> integral_coords() const;
    bool is_zero() const;
    bool is_rational() const;
    bool is_algebraic_integer() const;

    AlgebraicNumber operator-() const;
    AlgebraicNumber& operator+=(const AlgebraicNumber& b);
    AlgebraicNumber& operator-=(const AlgebraicNumber& b);
    AlgebraicNumber& operator*=(const AlgebraicNumber& b);
    AlgebraicNumber& operator*=(const Rational& q);
    AlgebraicNumber& operator/=(const AlgebraicNumber& b);
    friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
    friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
    friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }
    friend AlgebraicNumber operator*(AlgebraicNumber a, const Rational& q) { return a *= q; }
    friend AlgebraicNumber operator/(AlgebraicNumber a, const AlgebraicNumber& b) { return a /= b; }
    bool operator==(const AlgebraicNumber& b) const;
    bool operator!=(const AlgebraicNumber& b) const { return !(*this == b); }

    // Throws Error(InvalidArgument) for zero.
    AlgebraicNumber inverse() const;
    AlgebraicNumber pow(unsigned long e) const;
    Rational trace() const;
    Rational norm() const;

    ComplexBall eval(std::size_t embedding, mpfr_prec_t prec) const;
    std::string to_string() const;

private:
    void check_same_field(const AlgebraicNumber& b) const;
    FieldPtr field_;
    std::vector<Rational> coords_;
};

inline std::ostream& operator<<(std::ostream& os, const AlgebraicNumber& a)
{
    return os << a.to_string();
}

ComplexBall ball_eval(const AlgebraicNumber& a, std::size_t embedding_index,
                      const PrecisionContext& ctx);

// f(x) computed in the field of x.
AlgebraicNumber eval_poly(const Polynomial& f, const AlgebraicNumber& x);

// Smallest linear dependency among 1, a, a^2, ...; monic.
Polynomial minimal_polynomial(const AlgebraicNumber& a);

struct HeightValue {
    Real H;               // absolute multiplicative Weil height
    Integer naive;        // max |coefficient| of the primitive minimal polynomial
    std::size_t degree = 0;
};
// Enclosure of relative width < 2^-32. Throws Error(PrecisionExhausted).
HeightValue weil_height(const Polynomial& minpoly, const PrecisionContext& ctx);
HeightValue weil_height(const AlgebraicNumber& a, const PrecisionContext& ctx);
// Smallest positive n with n*a an algebraic integer (diagnostic).
Integer denominator(const AlgebraicNumber& a);

// An element x of K with phi_0(x) inside `target`, found by an integer
// relation against the integral basis (x is assumed to be an algebraic
// integer divided by a small integer). Verification is the caller's job.
std::optional<AlgebraicNumber> recognize_in_field(const FieldPtr& K, const ComplexBall& target,
                                                  std::size_t embedding, long scale_bits);

// sigma(theta) = image; matrix rows are the coordinates of sigma(theta^k).
struct Automorphism {
    RationalMatrix matrix;
    // phi_j o sigma = phi_{perm[j]}
    std::vector<std::size_t> perm;
    AlgebraicNumber apply(const AlgebraicNumber& a) const;
};
// All automorphisms of K (identity first), located exactly.
std::vector<Automorphism> automorphisms(const FieldPtr& K, const PrecisionContext& ctx);

class CMField {
public:
    CMField(FieldPtr base, Automorphism rho, RationalMatrix real_subfield_basis);
    const FieldPtr& base() const { return base_; }
    std::size_t degree() const { return base_->degree(); }
    std::size_t g() const { return base_->degree() / 2; }
    const Automorphism& rho_map() const { return rho_; }
    const RationalMatrix& rho() const { return rho_.matrix; }
    AlgebraicNumber rho(const AlgebraicNumber& a) const { return rho_.apply(a); }
    // Rows: Z-basis of O_F (power-basis coordinates of K).
    const RationalMatrix& totally_real_subfield_basis() const { return real_basis_; }

private:
    FieldPtr base_;
    Automorphism rho_;
    RationalMatrix real_basis_;
};
using CMFieldPtr = std::shared_ptr<const CMField>;

// The automorphism restricting to complex conjugation at every embedding.
// Throws Error(NotCM).
Automorphism complex_conjugation(const FieldPtr& K, const PrecisionContext& ctx);
CMFieldPtr make_cm_field(const FieldPtr& K, const PrecisionContext& ctx);

struct CMType {
    std::vector<std::size_t> embedding_indices;  // sorted
    bool operator==(const CMType&) const = default;
};
// Throws Error(InvalidArgument) when `indices` is not a CM type of K.
CMType make_cm_type(const NumberField& K, std::vector<std::size_t> indices);
// The type choosing the embedding with positive imaginary part of theta.
CMType upper_cm_type(const NumberField& K);
std::vector<CMType> cm_types(const CMField& K);

}  // namespace cmh

#pragma once

// Points of the Siegel upper half space (g <= 2), the action of Sp(2g, Z),
// period matrices of polarized CM lattices and reduction into the standard
// fundamental domain.

#include <optional>
#include <string>
#include <vector>

#include "cmh/polarization.hpp"

namespace cmh {

class SymplecticIntMatrix {
public:
    SymplecticIntMatrix() = default;
    // Throws Error(InvalidArgument) unless m^T J m = J.
    explicit SymplecticIntMatrix(IntegerMatrix m);

    static SymplecticIntMatrix identity(std::size_t g);
    static SymplecticIntMatrix j(std::size_t g);
    // Z -> Z + S, S symmetric
    static SymplecticIntMatrix translation(const IntegerMatrix& s);
    // Z -> U Z U^T, U in GL_g(Z)
    static SymplecticIntMatrix embed(const IntegerMatrix& u);

    std::size_t g() const { return g_; }
    const IntegerMatrix& matrix() const { return m_; }
    IntegerMatrix a() const { return m_.block(0, 0, g_, g_); }
    IntegerMatrix b() const { return m_.block(0, g_, g_, g_); }
    IntegerMatrix c() const { return m_.block(g_, 0, g_, g_); }
    IntegerMatrix d() const { return m_.block(g_, g_, g_, g_); }
    Integer max_entry() const;

    friend SymplecticIntMatrix operator*(const SymplecticIntMatrix& x, const SymplecticIntMatrix& y);
    bool operator==(const SymplecticIntMatrix& o) const { return m_ == o.m_; }

private:
    IntegerMatrix m_;
    std::size_t g_ = 0;
};

bool is_symplectic(const IntegerMatrix& m);

// The 19 matrices whose cocycles |det(CZ + D)| >= 1 cut out the height
// condition of the genus-2 fundamental domain.
const std::vector<SymplecticIntMatrix>& gottschling_matrices();

// Z = phi_0(m) for the first embedding of a CM field L.
struct ExactPeriod {
    CMFieldPtr field;
    AlgebraicMatrix m;
};

struct SiegelPoint {
    std::size_t g = 0;
    Matrix<ComplexBall> z;
    std::optional<ExactPeriod> exact;
    // |z_12 - z_21| before mirroring
    Real asymmetry;

    static SiegelPoint from_exact(ExactPeriod e, const PrecisionContext& ctx);
    // The upper triangle is mirrored; throws Error(RiemannRelationViolated)
    // when z_ij and z_ji do not overlap.
    static SiegelPoint from_balls(Matrix<ComplexBall> z);
    SiegelPoint at_precision(const PrecisionContext& ctx) const;

    Matrix<Real> real_part() const;
    Matrix<Real> imag_part() const;
    mpfr_prec_t precision() const { return z(0, 0).precision(); }
};

// Symmetric with certified positive definite imaginary part.
bool in_upper_half_space(const SiegelPoint& z);

// (AZ + B)(CZ + D)^-1; exact when Z is. Throws Error(Internal) when the
// result cannot be certified in H_g.
SiegelPoint sp_action(const SymplecticIntMatrix& gamma, const SiegelPoint& z);
// det(CZ + D)
ComplexBall cocycle(const SymplecticIntMatrix& gamma, const SiegelPoint& z);

// Embedding iota: K -> L with phi_0^L(iota(x)) = phi_k^K(x), as the matrix
// whose rows are the L-coordinates of iota(theta^j).
std::optional<RationalMatrix> field_embedding(const NumberField& K, std::size_t k, const FieldPtr& L,
                                              const PrecisionContext& ctx);

// Z = psi(alpha)^-1 psi(beta) for the symplectic basis; exact in `closure`
// (or in K itself when K is Galois) when every embedding of the type can be
// realized there. Throws Error(RiemannRelationViolated).
SiegelPoint period_matrix(const PolarizedCMLattice& p, const SymplecticBasis& basis, const PrecisionContext& ctx,
                          const CMFieldPtr& closure = nullptr);
// diag(tau_1, tau_2)
SiegelPoint period_matrix(const ProductPolarized& p, const PrecisionContext& ctx, const CMFieldPtr& closure = nullptr);

// max(|z_ij|, 1 / det Im Z)
Real h_of(const SiegelPoint& z);

struct ReducedReport {
    enum class Status { Reduced, NotReduced, Undecidable };
    Status status = Status::Reduced;
    std::vector<std::string> failing;      // conditions certainly violated
    std::vector<std::string> undecidable;  // conditions not separated
    bool reduced() const { return status == Status::Reduced; }
};
// (i) Im Z Gauss reduced, (ii) |Re z_ij| <= 1/2, (iii) |z| >= 1 (g = 1) or
// |det(CZ + D)| >= 1 over the Gottschling set (g = 2). Exact points are
// decided exactly at equality and by refinement otherwise.
ReducedReport is_reduced(const SiegelPoint& z, unsigned max_refinements = 3);

struct ReductionStep {
    std::string kind;  // gauss, translate, invert, gottschling
    SymplecticIntMatrix matrix;
    Real det_im;       // det Im Z after the step
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    SymplecticIntMatrix gamma_total;
    Real h_start;
    Integer gamma_max_entry;
    bool boundary_flag = false;  // a move was skipped because it could not be certified

    std::string serialize() const;
};

struct ReductionResult {
    SymplecticIntMatrix gamma;
    SiegelPoint z;
    ReductionTrace trace;
    ReducedReport report;  // Undecidable only on boundary cases of numeric points
};
// Throws Error(Internal) when the iteration limit is hit and
// Error(UndecidableAtPrecision) when the result certainly violates a
// condition (precision too low for the input).
ReductionResult reduce(const SiegelPoint& z, std::size_t max_iterations = 1000);

// max_l | (Im gamma Z)^-1_ll - (Y^-1[X c_l + d_l] + Y[c_l]) |
Real imaginary_part_identity_check(const SymplecticIntMatrix& gamma, const SiegelPoint& z);

}  // namespace cmh

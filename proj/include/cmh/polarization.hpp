#pragma once

// Riemann forms tr(a E b*) on lattices in K^r, principal polarization
// search, balancing of xi, symplectic bases, products of elliptic factors and
// reduction of rank-2 Hermitian forms.

#include <optional>
#include <vector>

#include "cmh/lattice.hpp"

namespace cmh {

using AlgebraicMatrix = Matrix<AlgebraicNumber>;

// b* = rho(b)^T
AlgebraicMatrix conjugate_transpose(const AlgebraicMatrix& m, const CMField& K);
bool is_skew_hermitian(const AlgebraicMatrix& e, const CMField& K);
AlgebraicMatrix scalar_form(const AlgebraicNumber& xi);

// Gram matrix of (a, b) -> tr(zeta * a E b*) on the basis of I; zeta = 1
// when absent.
RationalMatrix trace_form_gram(const ZLattice& I, const AlgebraicMatrix& e, const CMField& K,
                               const std::optional<AlgebraicNumber>& zeta = std::nullopt);

struct RiemannForm {
    AlgebraicMatrix e;   // r x r, e* = -e; (xi) in rank 1
    RationalMatrix gram;
    bool integral = false;
    bool principal = false;  // integral with det 1
};
RiemannForm riemann_gram(const ZLattice& I, const AlgebraicNumber& xi, const CMField& K);
RiemannForm riemann_gram(const ZLattice& I, const AlgebraicMatrix& e, const CMField& K);

struct DetFormula {
    Rational det;       // det of the Gram matrix
    Rational expected;  // |N(det E)| |Disc(O_K)|^r [O_K^r : I]^2
    Rational signed_expected;
    bool holds = false;
};
DetFormula verify_det_formula(const ZLattice& I, const AlgebraicMatrix& e, const CMField& K);

struct PolarizedCMLattice {
    CMFieldPtr field;
    CMType cm_type;
    ZLattice lattice;
    AlgebraicMatrix e;
    RationalMatrix gram;

    std::size_t g() const { return lattice.dim() / 2; }
    const AlgebraicNumber& xi() const { return e(0, 0); }
};
// Validates integrality, det = 1 and positivity of -i phi(E) along the CM
// type. Throws Error(NotUnimodular | NotPosDef | InvalidArgument).
PolarizedCMLattice make_polarized(CMFieldPtr field, CMType type, ZLattice lattice, AlgebraicMatrix e,
                                  const PrecisionContext& ctx);

// Certified positivity of -i phi(E) for every phi in the type (Hermitian
// positive definite in rank 2).
bool positive_along_type(const AlgebraicMatrix& e, const CMType& type, const PrecisionContext& ctx);

struct XiSearch {
    std::vector<AlgebraicNumber> xis;
    std::size_t enumerated = 0;
    unsigned radius_steps_used = 0;
    Rational bound;  // final bound on tr(xi rho(xi))
};
// Throws Error(NoneFound).
XiSearch find_principal_xi(const ZLattice& I, const CMType& phi, const CMField& K, const PrecisionContext& ctx,
                           unsigned radius_steps = 3);

struct XiReduction {
    AlgebraicNumber nu;   // in O_F
    AlgebraicNumber xi;   // nu^2 xi
    ZLattice lattice;     // nu^-1 I
    Real max_before;      // max |phi(xi)| over embeddings
    Real max_after;
    std::size_t candidates = 0;
};
XiReduction reduce_xi(const ZLattice& I, const AlgebraicNumber& xi, const CMType& phi, const CMField& K,
                      const PrecisionContext& ctx);

struct SymplecticBasis {
    // rows alpha_1..alpha_g, beta_1..beta_g in coordinates of the input basis
    IntegerMatrix transform;
    std::size_t g = 0;
};
// Throws Error(NotUnimodular) unless gram is integral alternating with det 1.
SymplecticBasis symplectic_basis(const RationalMatrix& gram);
RationalMatrix standard_symplectic_form(std::size_t g);

struct ProductPolarized {
    std::vector<PolarizedCMLattice> factors;
    RationalMatrix gram;  // block diagonal
    Integer disc;         // product of the factors' order discriminants
};
ProductPolarized product_polarized(const PolarizedCMLattice& a, const PolarizedCMLattice& b);

struct HermitianReduction {
    AlgebraicMatrix g;        // rows w_1, w_2 in O_K^2
    AlgebraicMatrix reduced;  // g E g*
    RationalMatrix q;         // reduced trace form on the rank-4 lattice
    IntegerMatrix transform;  // reduction transform of the rank-4 lattice
    bool unimodular = false;  // det g a unit
    bool bound_holds = false; // |phi(E'_jk)| <= sqrt(Q(w_j) Q(w_k)) / (2 |phi(zeta)|)
    Real max_entry;           // max |phi(E'_jk)| over entries and embeddings
};
// E skew-Hermitian over an imaginary quadratic field; Q(v, w) =
// tr(zeta v E w*) must be positive definite on the module (default O_K^2).
// Throws Error(NotPosDef | NoIndependentPair).
HermitianReduction hermitian_reduce(const AlgebraicMatrix& e, const AlgebraicNumber& zeta, const CMField& K,
                                    const PrecisionContext& ctx, const std::optional<ZLattice>& module = std::nullopt);

}  // namespace cmh

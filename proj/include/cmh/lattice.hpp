#pragma once

// Z-lattices inside K^r (r = 1 or 2), orders and multiplier rings,
// Minkowski embeddings, reduced bases, ideal normalization and reduction of
// binary positive definite forms.

#include <vector>

#include "cmh/lll.hpp"
#include "cmh/number_field.hpp"

namespace cmh {

// A full-rank Z-lattice in K^r. Basis rows are concatenated power-basis
// coordinates of the r components.
class ZLattice {
public:
    ZLattice() = default;
    // Generators must span K^r over Q. Independent generators are kept as the
    // basis in the given order; otherwise the Hermite form is used.
    ZLattice(FieldPtr field, RationalMatrix generators, std::size_t module_rank = 1);

    static ZLattice maximal_order(FieldPtr field, std::size_t module_rank = 1);
    // Z + f O_K
    static ZLattice order_conductor(FieldPtr field, const Integer& f);

    const FieldPtr& field() const { return field_; }
    std::size_t module_rank() const { return rank_; }
    std::size_t dim() const { return basis_.rows(); }
    const RationalMatrix& basis() const { return basis_; }
    // Canonical basis (Hermite normal form); equal lattices have equal forms.
    RationalMatrix canonical_basis() const;

    std::vector<AlgebraicNumber> element(std::size_t i) const;
    std::vector<AlgebraicNumber> combination(const std::vector<Integer>& c) const;
    bool contains(const std::vector<Rational>& coords) const;
    bool contains(const ZLattice& other) const;
    // covolume(this) / covolume(super) when this is inside super
    Rational index_in(const ZLattice& super) const;
    // Generalized index [O_K^r : this] = covolume ratio (rational in general).
    Rational index_in_maximal() const;

    ZLattice scaled(const AlgebraicNumber& nu) const;
    ZLattice conjugate(const Automorphism& sigma) const;
    ZLattice sum(const ZLattice& other) const;
    ZLattice intersect(const ZLattice& other) const;
    // Dual for the standard pairing on coordinates.
    ZLattice coordinate_dual() const;
    // { x : tr(x y) in Z for all y } (rank 1 only)
    ZLattice trace_dual() const;
    // Z-span of all products (rank 1 only)
    ZLattice product(const ZLattice& other) const;
    // Lattice with basis U * basis.
    ZLattice transformed(const IntegerMatrix& u) const;

    bool operator==(const ZLattice& other) const;

private:
    FieldPtr field_;
    std::size_t rank_ = 1;
    RationalMatrix basis_;
};

// Hermite-form basis of the Z-span of the rows (rank rows, zero rows dropped).
RationalMatrix lattice_basis(const RationalMatrix& generators);

struct Order {
    ZLattice lattice;  // rank 1, contains 1
    Integer index;     // e_R = [O_K : R]
    Integer disc;      // Disc(O_K) * e_R^2
};

// R = { a in K : a I subset of I }.
Order multiplier_ring(const ZLattice& I);
// { x in K : x I subset of J } for rank-1 I and J.
ZLattice colon(const ZLattice& J, const ZLattice& I);

// Exact tr(x * rho(y)) Gram matrix on the basis of a rank-1 lattice; for a CM
// field this is sum over embeddings of phi(x) conj(phi(y)).
RationalMatrix t2_gram(const ZLattice& I, const CMField& K);

struct MinkowskiImage {
    Matrix<Real> basis;  // rows: images of the basis of I
    Real covolume;
    // covolume = normalization * sqrt|Disc(O_K)|^r * [O_K^r : I]; here
    // normalization = 2^(-r * (number of complex pairs)).
    Rational normalization;
};
// One coordinate per real embedding and (Re, Im) per conjugate pair, using
// the smaller index of each pair.
MinkowskiImage minkowski_embedding(const ZLattice& I, const PrecisionContext& ctx);

struct ShortBasis {
    RationalMatrix basis;     // transform * input
    IntegerMatrix transform;  // unimodular
};
ShortBasis short_basis(const RationalMatrix& basis);
// Reduction of a real basis through its rational midpoint Gram matrix.
struct RealShortBasis {
    Matrix<Real> basis;
    IntegerMatrix transform;
};
RealShortBasis short_basis(const Matrix<Real>& basis);

struct NormalizedIdeal {
    AlgebraicNumber nu;
    ZLattice ideal;  // nu * I, inside O_K
    Integer index;   // [O_K : nu I]
    std::size_t candidates = 0;
};
NormalizedIdeal normalize_ideal(const ZLattice& I, const CMField& K);

struct GaussReduced {
    IntegerMatrix u;       // unimodular
    RationalMatrix y;      // u * Y * u^T
    Integer max_entry;     // max |u_ij|
    Rational h;            // max(|y_ij|, 1/det Y) of the input
};
// Reduced: 0 <= 2 y12 <= y11 <= y22. Throws Error(NotPosDef).
GaussReduced gauss_reduce(const RationalMatrix& y);
bool is_gauss_reduced(const RationalMatrix& y);

// Leading principal minors certainly positive.
bool certified_positive_definite(const Matrix<Real>& y);

}  // namespace cmh

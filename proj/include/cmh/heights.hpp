#pragma once

// Heights of Siegel points, reconstruction of numerical entries as elements
// of a number field, and the height ratio of isogenous points.

#include <optional>
#include <vector>

#include "cmh/siegel.hpp"

namespace cmh {

struct EntryHeight {
    std::size_t row = 0, col = 0;
    Real H;
    Integer naive;
    std::size_t degree = 0;
};

struct HeightReport {
    Real H;                // max over entries
    std::vector<EntryHeight> per_entry;
    Integer naive_H;       // max naive height over entries
    std::size_t degree_max = 0;
};

// Entries z_ij, i <= j, of an exact point. With `cm_provenance` the degree
// bound 4g is enforced (Error(Internal) otherwise). Throws
// Error(NoExactField) for a purely numerical point.
HeightReport height_of_point(const SiegelPoint& z, const PrecisionContext& ctx, bool cm_provenance = true);

// An element x of L with phi_k(x) inside b, checked at doubled precision and
// with H(x) <= height_cap. Throws Error(NoCandidate).
AlgebraicNumber reconstruct(const ComplexBall& b, const FieldPtr& L, const Real& height_cap,
                            std::size_t embedding = 0);

// Exact point over L from a numerical one, entry by entry.
SiegelPoint reconstruct_point(const SiegelPoint& z, const CMFieldPtr& L, const Real& height_cap,
                              const PrecisionContext& ctx);

struct HeightRatio {
    Real ratio;  // H(Z1) / H(Z2)
    Integer c;
};
HeightRatio isogeny_height_ratio(const SiegelPoint& z1, const SiegelPoint& z2, const Integer& c,
                                 const PrecisionContext& ctx);

}  // namespace cmh

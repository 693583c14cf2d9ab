#pragma once

// Exact lattice reduction and short-vector enumeration on rational Gram
// matrices, plus integer-relation search on certified complex values.

#include <optional>
#include <vector>

#include "cmh/matrix.hpp"
#include "cmh/real.hpp"

namespace cmh {

struct LllResult {
    IntegerMatrix transform;  // unimodular U; reduced basis is U * B
    RationalMatrix gram;      // U * G * U^T
};

// LLL reduction with Lovasz parameter `delta` of a positive definite Gram
// matrix. Throws Error(NotPosDef) on a degenerate form.
LllResult lll_reduce_gram(const RationalMatrix& gram, const Rational& delta = Rational(3, 4));
// Same on the rows of a full-rank basis (Gram = B B^T).
LllResult lll_reduce_basis(const RationalMatrix& basis, const Rational& delta = Rational(3, 4));

// True when every leading principal minor is positive.
bool is_positive_definite(const RationalMatrix& gram);

// All nonzero x in Z^n with x G x^T <= bound, one of each +-x pair (first
// nonzero coordinate positive), in enumeration order. Stops after `limit`
// vectors and reports truncation.
struct ShortVectors {
    std::vector<std::vector<Integer>> vectors;
    bool truncated = false;
};
ShortVectors enumerate_short_vectors(const RationalMatrix& gram, const Rational& bound,
                                     std::size_t limit = 200000);

// Integer relations among `values`: rows of the LLL-reduced coefficient
// lattice for the embedding x -> (x, 2^scale_bits * sum x_i v_i), shortest
// first. A true relation with small coefficients appears first.
IntegerMatrix integer_relations(const std::vector<ComplexBall>& values, long scale_bits);

}  // namespace cmh

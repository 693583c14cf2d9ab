#pragma once

// Brute-force reference computations used by the test suites and by the
// `verify` subcommand. Deliberately naive: exhaustive searches over boxes.

#include <random>

#include "cmh/lattice.hpp"
#include "cmh/matrix.hpp"
#include "cmh/siegel.hpp"

namespace cmh::oracle {

// Lexicographic minimum of (y11, y22, |y12|) over U in GL_2(Z) with
// |U_ij| <= bound; returns the minimizing form with y12 >= 0.
RationalMatrix gauss_bruteforce(const RationalMatrix& y, long bound);

// Minimum of x G x^T over nonzero integer x with |x_i| <= bound.
Rational shortest_in_box(const RationalMatrix& gram, long bound);

// True when, for every a = sum c_i w_i with |c_i| <= bound (w the integral
// basis), a I subset I holds exactly when a lies in R.
bool multiplier_ring_box_check(const ZLattice& I, const ZLattice& R, long bound);

// Minimal [O_K : nu I] over nu = sum c_i w_i, |c_i| <= bound, nu I inside O_K.
Integer normalize_box(const ZLattice& I, long bound);

// Random unimodular matrix with entries bounded by `bound` (product of
// elementary moves, rejected until the bound holds).
IntegerMatrix random_unimodular(std::size_t n, long bound, std::mt19937_64& rng);

// Random positive definite symmetric integer 2x2 matrix with |entries| <= bound.
RationalMatrix random_posdef2(long bound, std::mt19937_64& rng);

// Random word of `length` generators of Sp(2g, Z): inversions or
// Gottschling matrices, translations by small symmetric S, and embedded
// elementary GL_g(Z) moves.
SymplecticIntMatrix random_symplectic_word(std::size_t g, std::size_t length, std::mt19937_64& rng);

}  // namespace cmh::oracle

#pragma once

#include <random>

#include "cmh/number_field.hpp"

namespace fixtures {

using namespace cmh;

inline FieldPtr power_basis_field(const std::string& name, std::vector<Integer> poly, long disc)
{
    const std::size_t n = poly.size() - 1;
    return verify_field({name, std::move(poly), RationalMatrix::identity(n), Integer(disc)});
}

inline FieldPtr gaussian() { static FieldPtr K = power_basis_field("Q(i)", {1, 0, 1}, -4); return K; }
inline FieldPtr eisenstein() { static FieldPtr K = power_basis_field("Q(w)", {1, 1, 1}, -3); return K; }
inline FieldPtr sqrt_minus2() { static FieldPtr K = power_basis_field("Q(sqrt-2)", {2, 0, 1}, -8); return K; }
inline FieldPtr sqrt2() { static FieldPtr K = power_basis_field("Q(sqrt2)", {-2, 0, 1}, 8); return K; }
inline FieldPtr zeta5() { static FieldPtr K = power_basis_field("Q(zeta5)", {1, 1, 1, 1, 1}, 125); return K; }
inline FieldPtr zeta8() { static FieldPtr K = power_basis_field("Q(zeta8)", {1, 0, 0, 0, 1}, 256); return K; }
inline FieldPtr zeta12() { static FieldPtr K = power_basis_field("Q(zeta12)", {1, 0, -1, 0, 1}, 144); return K; }

inline AlgebraicNumber element(const FieldPtr& K, std::vector<long> c, long den = 1)
{
    std::vector<Rational> q;
    for (long v : c)
        q.emplace_back(v, den);
    q.resize(K->degree(), Rational(0));
    for (auto& v : q)
        v.canonicalize();
    return {K, q};
}

inline AlgebraicNumber random_element(const FieldPtr& K, std::mt19937_64& rng, long bound = 9, long den_bound = 4)
{
    std::uniform_int_distribution<long> num(-bound, bound), den(1, den_bound);
    std::vector<Rational> q;
    for (std::size_t k = 0; k < K->degree(); ++k) {
        Rational v(num(rng), den(rng));
        v.canonicalize();
        q.push_back(v);
    }
    return {K, q};
}

}  // namespace fixtures

#include "oracles.hpp"

#include <optional>
#include <tuple>

namespace cmh::oracle {

namespace {

Rational form(const RationalMatrix& y, long a, long b)
{
    return y(0, 0) * a * a + 2 * y(0, 1) * a * b + y(1, 1) * b * b;
}

Rational pairing(const RationalMatrix& y, long a, long b, long c, long d)
{
    return y(0, 0) * a * c + y(0, 1) * (a * d + b * c) + y(1, 1) * b * d;
}

}  // namespace

RationalMatrix gauss_bruteforce(const RationalMatrix& y, long bound)
{
    // every primitive first row in the box admits a completion in the box
    std::optional<Rational> best11;
    std::vector<std::pair<long, long>> firsts;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b) {
            if (gcd(Integer(a), Integer(b)) != 1)
                continue;
            Rational v = form(y, a, b);
            if (!best11 || v < *best11) {
                best11 = v;
                firsts.clear();
            }
            if (v == *best11)
                firsts.emplace_back(a, b);
        }
    std::optional<std::tuple<Rational, Rational>> best;
    for (auto [a, b] : firsts)
        for (long c = -bound; c <= bound; ++c)
            for (long d = -bound; d <= bound; ++d) {
                long det = a * d - b * c;
                if (det != 1 && det != -1)
                    continue;
                std::tuple<Rational, Rational> key{form(y, c, d), abs(pairing(y, a, b, c, d))};
                if (!best || key < *best)
                    best = key;
            }
    const auto& [y22, y12] = *best;
    return RationalMatrix{{*best11, y12}, {y12, y22}};
}

Rational shortest_in_box(const RationalMatrix& gram, long bound)
{
    const std::size_t n = gram.rows();
    std::vector<long> x(n, -bound);
    std::optional<Rational> best;
    for (;;) {
        bool nonzero = false;
        for (long v : x)
            nonzero |= v != 0;
        if (nonzero) {
            Rational s = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    s += gram(i, j) * x[i] * x[j];
            if (!best || s < *best)
                best = s;
        }
        std::size_t k = 0;
        while (k < n && x[k] == bound)
            x[k++] = -bound;
        if (k == n)
            break;
        ++x[k];
    }
    return *best;
}

namespace {

template <class F>
void for_each_box_element(const FieldPtr& K, long bound, F f)
{
    const std::size_t n = K->degree();
    std::vector<long> c(n, -bound);
    for (;;) {
        std::vector<Rational> q(c.begin(), c.end());
        f(AlgebraicNumber::from_integral(K, q));
        std::size_t k = 0;
        while (k < n && c[k] == bound)
            c[k++] = -bound;
        if (k == n)
            break;
        ++c[k];
    }
}

}  // namespace

bool multiplier_ring_box_check(const ZLattice& I, const ZLattice& R, long bound)
{
    bool ok = true;
    for_each_box_element(I.field(), bound, [&](const AlgebraicNumber& a) {
        if (!ok)
            return;
        bool mult = true;
        for (std::size_t j = 0; j < I.dim() && mult; ++j) {
            std::vector<Rational> coords;
            for (const auto& comp : I.element(j)) {
                AlgebraicNumber p = a * comp;
                coords.insert(coords.end(), p.coords().begin(), p.coords().end());
            }
            mult = I.contains(coords);
        }
        if (mult != R.contains(a.coords()))
            ok = false;
    });
    return ok;
}

Integer normalize_box(const ZLattice& I, long bound)
{
    ZLattice ok = ZLattice::maximal_order(I.field());
    std::optional<Integer> best;
    for_each_box_element(I.field(), bound, [&](const AlgebraicNumber& nu) {
        if (nu.is_zero())
            return;
        ZLattice image = I.scaled(nu);
        if (!ok.contains(image))
            return;
        Integer idx = image.index_in_maximal().get_num();
        if (!best || idx < *best)
            best = idx;
    });
    return best.value_or(Integer(0));
}

IntegerMatrix random_unimodular(std::size_t n, long bound, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> steps(4, 40), coin(0, 3);
    IntegerMatrix u = IntegerMatrix::identity(n);
    int count = steps(rng);
    for (int s = 0; s < count; ++s) {
        IntegerMatrix v = u;
        std::size_t i = pick(rng), j = pick(rng);
        int kind = coin(rng);
        if (kind == 0)
            v.swap_rows(i, j);
        else if (kind == 1)
            for (std::size_t k = 0; k < n; ++k)
                v(i, k) = -v(i, k);
        else if (i != j)
            for (std::size_t k = 0; k < n; ++k)
                v(i, k) += (kind == 2 ? 1 : -1) * v(j, k);
        bool fits = true;
        for (const auto& z : v.data())
            fits &= abs(z) <= bound;
        if (fits)
            u = v;
    }
    return u;
}

RationalMatrix random_posdef2(long bound, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> diag(1, bound), off(-bound, bound);
    for (;;) {
        long a = diag(rng), c = diag(rng), b = off(rng);
        if (a * c - b * b > 0)
            return RationalMatrix{{a, b}, {b, c}};
    }
}

SymplecticIntMatrix random_symplectic_word(std::size_t g, std::size_t length, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> kind(0, 2), small(-1, 1);
    const auto& table = gottschling_matrices();
    std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
    SymplecticIntMatrix w = SymplecticIntMatrix::identity(g);
    for (std::size_t s = 0; s < length; ++s) {
        int k = kind(rng);
        if (k == 0) {
            w = (g == 1 ? SymplecticIntMatrix::j(1) : table[pick(rng)]) * w;
        } else if (k == 1) {
            IntegerMatrix t(g, g, Integer(0));
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = i; j < g; ++j)
                    t(i, j) = t(j, i) = small(rng);
            w = SymplecticIntMatrix::translation(t) * w;
        } else if (g == 2) {
            IntegerMatrix u = IntegerMatrix::identity(2, Integer(0), Integer(1));
            int e = small(rng) >= 0 ? 1 : -1;
            switch (small(rng)) {
            case -1: u(0, 1) = e; break;
            case 0: u(1, 0) = e; break;
            default: u.swap_rows(0, 1); break;
            }
            w = SymplecticIntMatrix::embed(u) * w;
        } else {
            w = SymplecticIntMatrix::j(1) * w;
        }
    }
    return w;
}

}  // namespace cmh::oracle

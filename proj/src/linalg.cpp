#include <utility>

#include "cmh/error.hpp"
#include "cmh/matrix.hpp"

namespace cmh {

RationalMatrix to_rational(const IntegerMatrix& m)
{
    return m.map([](const Integer& z) { return Rational(z); });
}

IntegerMatrix to_integer(const RationalMatrix& m)
{
    return m.map([](const Rational& q) {
        if (q.get_den() != 1)
            throw Error(ErrorKind::InvalidArgument, "matrix entry " + to_string(q) + " is not an integer");
        return Integer(q.get_num());
    });
}

bool is_integral(const RationalMatrix& m)
{
    for (const auto& q : m.data())
        if (q.get_den() != 1)
            return false;
    return true;
}

Integer common_denominator(const RationalMatrix& m)
{
    return common_denominator(m.data());
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& a)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        a.swap_rows(p, r);
        Rational inv = 1 / a(r, c);
        for (std::size_t j = 0; j < a.cols(); ++j)
            a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rational determinant(const RationalMatrix& m)
{
    if (m.rows() != m.cols())
        throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    RationalMatrix a = m;
    Rational det = 1;
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0)
                continue;
            Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

Integer determinant(const IntegerMatrix& m)
{
    Rational d = determinant(to_rational(m));
    return d.get_num();
}

std::size_t rank(const RationalMatrix& m)
{
    RationalMatrix a = m;
    return rref(a).size();
}

RationalMatrix inverse(const RationalMatrix& m)
{
    const std::size_t n = m.rows();
    if (n != m.cols())
        throw Error(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
    RationalMatrix aug(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, RationalMatrix::identity(n));
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        throw Error(ErrorKind::InvalidArgument, "inverse of a singular matrix");
    return aug.block(0, n, n, n);
}

std::vector<Rational> solve_left(const RationalMatrix& m, const std::vector<Rational>& b)
{
    return row_times(b, inverse(m));
}

RationalMatrix left_kernel(const RationalMatrix& m)
{
    // x m = 0  <=>  m^T x^T = 0
    RationalMatrix a = m.transpose();
    auto pivots = rref(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    RationalMatrix basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a(r, f);
        basis.append_row(v);
    }
    if (basis.rows() == 0)
        return RationalMatrix(0, n);
    return basis;
}

std::vector<Rational> row_times(const std::vector<Rational>& x, const RationalMatrix& m)
{
    std::vector<Rational> out(m.cols(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] += x[i] * m(i, j);
    }
    return out;
}

namespace {

void row_axpy(IntegerMatrix& a, std::size_t dst, std::size_t src, const Integer& q)
{
    for (std::size_t j = 0; j < a.cols(); ++j)
        a(dst, j) -= q * a(src, j);
}

void negate_row(IntegerMatrix& a, std::size_t r)
{
    for (std::size_t j = 0; j < a.cols(); ++j)
        a(r, j) = -a(r, j);
}

}  // namespace

HermiteResult hermite_normal_form(const IntegerMatrix& m)
{
    HermiteResult res;
    res.hnf = m;
    res.transform = IntegerMatrix::identity(m.rows());
    IntegerMatrix& h = res.hnf;
    IntegerMatrix& u = res.transform;
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        bool found = false;
        for (;;) {
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i)
                if (h(i, c) != 0 && (best == h.rows() || abs(h(i, c)) < abs(h(best, c))))
                    best = i;
            if (best == h.rows())
                break;
            found = true;
            h.swap_rows(best, r);
            u.swap_rows(best, r);
            bool others = false;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, c) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
                row_axpy(h, i, r, q);
                row_axpy(u, i, r, q);
                if (h(i, c) != 0)
                    others = true;
            }
            if (!others)
                break;
        }
        if (!found)
            continue;
        if (h(r, c) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            if (q != 0) {
                row_axpy(h, i, r, q);
                row_axpy(u, i, r, q);
            }
        }
        ++r;
    }
    res.rank = r;
    return res;
}

IntegerMatrix integer_left_kernel(const RationalMatrix& m)
{
    Integer d = common_denominator(m);
    IntegerMatrix a = m.map([&](const Rational& q) { return Integer(q * d); });
    HermiteResult h = hermite_normal_form(a);
    IntegerMatrix k(0, m.rows());
    for (std::size_t i = h.rank; i < m.rows(); ++i)
        k.append_row(h.transform.row(i));
    return k;
}

}  // namespace cmh

#include "cmh/lll.hpp"

#include <cmath>

#include "cmh/error.hpp"

namespace cmh {

namespace {

class GramLll {
public:
    GramLll(const RationalMatrix& gram, const Rational& delta)
        : n_(gram.rows()), delta_(delta), g_(gram), u_(IntegerMatrix::identity(n_)),
          mu_(n_, n_), b_(n_, Rational(0))
    {
    }

    LllResult run()
    {
        if (n_ == 0)
            return {u_, g_};
        b_[0] = g_(0, 0);
        if (b_[0] <= 0)
            throw Error(ErrorKind::NotPosDef, "lattice reduction: degenerate Gram matrix");
        std::size_t k = 1, kmax = 0;
        while (k < n_) {
            if (k > kmax) {
                kmax = k;
                for (std::size_t j = 0; j < k; ++j) {
                    Rational s = g_(k, j);
                    for (std::size_t i = 0; i < j; ++i)
                        s -= mu_(j, i) * mu_(k, i) * b_[i];
                    mu_(k, j) = s / b_[j];
                }
                Rational s = g_(k, k);
                for (std::size_t j = 0; j < k; ++j)
                    s -= mu_(k, j) * mu_(k, j) * b_[j];
                b_[k] = s;
                if (b_[k] <= 0)
                    throw Error(ErrorKind::NotPosDef, "lattice reduction: degenerate Gram matrix");
            }
            size_reduce(k, k - 1);
            Rational m = mu_(k, k - 1);
            if (b_[k] < (delta_ - m * m) * b_[k - 1]) {
                swap(k, kmax);
                k = std::max<std::size_t>(1, k - 1);
            } else {
                for (std::size_t l = k - 1; l-- > 0;)
                    size_reduce(k, l);
                ++k;
            }
        }
        return {u_, g_};
    }

private:
    void size_reduce(std::size_t k, std::size_t l)
    {
        Rational two_mu = 2 * mu_(k, l);
        if (abs(two_mu) <= 1)
            return;
        Integer q = round(mu_(k, l));
        Rational qr(q);
        for (std::size_t j = 0; j < n_; ++j)
            u_(k, j) -= q * u_(l, j);
        for (std::size_t j = 0; j < n_; ++j)
            g_(k, j) -= qr * g_(l, j);
        for (std::size_t i = 0; i < n_; ++i)
            g_(i, k) -= qr * g_(i, l);
        mu_(k, l) -= qr;
        for (std::size_t i = 0; i < l; ++i)
            mu_(k, i) -= qr * mu_(l, i);
    }

    void swap(std::size_t k, std::size_t kmax)
    {
        u_.swap_rows(k, k - 1);
        g_.swap_rows(k, k - 1);
        for (std::size_t i = 0; i < n_; ++i)
            std::swap(g_(i, k), g_(i, k - 1));
        for (std::size_t j = 0; j + 1 < k; ++j)
            std::swap(mu_(k, j), mu_(k - 1, j));
        Rational m = mu_(k, k - 1);
        Rational bn = b_[k] + m * m * b_[k - 1];
        mu_(k, k - 1) = m * b_[k - 1] / bn;
        b_[k] = b_[k - 1] * b_[k] / bn;
        b_[k - 1] = bn;
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Rational t = mu_(i, k);
            mu_(i, k) = mu_(i, k - 1) - m * t;
            mu_(i, k - 1) = t + mu_(k, k - 1) * mu_(i, k);
        }
    }

    std::size_t n_;
    Rational delta_;
    RationalMatrix g_;
    IntegerMatrix u_;
    RationalMatrix mu_;
    std::vector<Rational> b_;
};

}  // namespace

LllResult lll_reduce_gram(const RationalMatrix& gram, const Rational& delta)
{
    return GramLll(gram, delta).run();
}

LllResult lll_reduce_basis(const RationalMatrix& basis, const Rational& delta)
{
    return lll_reduce_gram(basis * basis.transpose(), delta);
}

bool is_positive_definite(const RationalMatrix& gram)
{
    for (std::size_t k = 1; k <= gram.rows(); ++k)
        if (determinant(gram.block(0, 0, k, k)) <= 0)
            return false;
    return true;
}

namespace {

class Enumerator {
public:
    Enumerator(const RationalMatrix& gram, const Rational& bound, std::size_t limit)
        : n_(gram.rows()), bound_(bound), limit_(limit), q_(n_, n_), x_(n_, Integer(0))
    {
        // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
        RationalMatrix a = gram;
        for (std::size_t i = 0; i < n_; ++i) {
            q_(i, i) = a(i, i);
            if (q_(i, i) <= 0)
                throw Error(ErrorKind::NotPosDef, "enumeration: form is not positive definite");
            for (std::size_t j = i + 1; j < n_; ++j)
                q_(i, j) = a(i, j) / a(i, i);
            for (std::size_t k = i + 1; k < n_; ++k)
                for (std::size_t l = k; l < n_; ++l) {
                    a(k, l) -= q_(i, k) * q_(i, l) * q_(i, i);
                    a(l, k) = a(k, l);
                }
        }
    }

    ShortVectors run()
    {
        if (n_ > 0)
            descend(n_ - 1, bound_);
        return std::move(out_);
    }

private:
    void descend(std::size_t i, const Rational& remaining)
    {
        if (out_.truncated)
            return;
        Rational c = 0;
        for (std::size_t j = i + 1; j < n_; ++j)
            c += q_(i, j) * x_[j];
        double span = std::sqrt(std::max(0.0, Rational(remaining / q_(i, i)).get_d()));
        double centre = -c.get_d();
        Integer lo = Integer(std::floor(centre - span)) - 1;
        Integer hi = Integer(std::ceil(centre + span)) + 1;
        for (Integer v = lo; v <= hi; ++v) {
            Rational t = Rational(v) + c;
            Rational used = q_(i, i) * t * t;
            if (used > remaining)
                continue;
            x_[i] = v;
            if (i == 0)
                emit();
            else
                descend(i - 1, remaining - used);
            if (out_.truncated)
                break;
        }
        x_[i] = 0;
    }

    void emit()
    {
        std::size_t first = 0;
        while (first < n_ && x_[first] == 0)
            ++first;
        if (first == n_ || x_[first] < 0)
            return;
        if (out_.vectors.size() >= limit_) {
            out_.truncated = true;
            return;
        }
        out_.vectors.push_back(x_);
    }

    std::size_t n_;
    Rational bound_;
    std::size_t limit_;
    RationalMatrix q_;
    std::vector<Integer> x_;
    ShortVectors out_;
};

}  // namespace

ShortVectors enumerate_short_vectors(const RationalMatrix& gram, const Rational& bound,
                                     std::size_t limit)
{
    return Enumerator(gram, bound, limit).run();
}

IntegerMatrix integer_relations(const std::vector<ComplexBall>& values, long scale_bits)
{
    const std::size_t n = values.size();
    RationalMatrix basis(n, n + 2);
    Rational scale = 1;
    mpz_mul_2exp(scale.get_num_mpz_t(), scale.get_num_mpz_t(), static_cast<mp_bitcnt_t>(scale_bits));
    for (std::size_t i = 0; i < n; ++i) {
        basis(i, i) = 1;
        basis(i, n) = Rational(round(values[i].re().mid_rational() * scale));
        basis(i, n + 1) = Rational(round(values[i].im().mid_rational() * scale));
    }
    return lll_reduce_basis(basis).transform;
}

}  // namespace cmh

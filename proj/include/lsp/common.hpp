#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lsp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Cluster or parameterization labels, 0-based.
using Labels = std::vector<int>;

/// Thrown when a loss or gradient becomes non-finite during optimization.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown for unreadable/unwritable files and malformed file contents.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// SplitMix64 step; used to derive independent per-restart / per-view seeds.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
{
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// x·log(x) with the 0·log 0 = 0 convention.
inline double xlogx(double x)
{
    return x > 0.0 ? x * std::log(x) : 0.0;
}

/// Strictly-lower-triangular pair enumeration: (i > j), column-major by j.
/// Pair (i, j) maps to j*n - j*(j+1)/2 + (i - j - 1).
class PairIndex {
public:
    explicit PairIndex(Eigen::Index n) : n_(n) {}

    Eigen::Index n() const { return n_; }
    Eigen::Index size() const { return n_ * (n_ - 1) / 2; }

    Eigen::Index index(Eigen::Index i, Eigen::Index j) const
    {
        if (i < j)
            std::swap(i, j);
        return j * n_ - j * (j + 1) / 2 + (i - j - 1);
    }

    /// Calls f(i, j, k) for every pair in storage order.
    template <class F>
    void for_each(F&& f) const
    {
        Eigen::Index k = 0;
        for (Eigen::Index j = 0; j < n_; ++j)
            for (Eigen::Index i = j + 1; i < n_; ++i)
                f(i, j, k++);
    }

private:
    Eigen::Index n_;
};

/// Lower-triangular vectorization of a square matrix in PairIndex order.
inline Vector lower_pairs(const Matrix& m)
{
    PairIndex idx(m.rows());
    Vector out(idx.size());
    idx.for_each([&](Eigen::Index i, Eigen::Index j, Eigen::Index k) { out[k] = m(i, j); });
    return out;
}

/// Inverse of lower_pairs: symmetric matrix with the given diagonal.
inline Matrix symmetric_from_pairs(const Vector& pairs, Eigen::Index n, double diagonal)
{
    Matrix out(n, n);
    PairIndex idx(n);
    idx.for_each([&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
        out(i, j) = pairs[k];
        out(j, i) = pairs[k];
    });
    out.diagonal().setConstant(diagonal);
    return out;
}

} // namespace lsp

#pragma once

#include "lsp/common.hpp"

#include <vector>

namespace lsp {

/// Normalized mutual information 2·I/(H_a + H_b), natural logs. When an entropy
/// is zero the score is 1 if the partitions coincide and 0 otherwise.
double nmi(const Labels& a, const Labels& b);

/// True when the labelings induce the same partition.
bool same_partition(const Labels& a, const Labels& b);

/// Median absolute difference over strictly-lower-triangular entries.
double mad(const Matrix& a, const Matrix& b);

/// Independent per-coordinate density of one mixture component.
struct CoordinateDensity {
    enum class Family { Normal, Exponential, Cauchy };
    Family family = Family::Normal;
    double location = 0.0;   ///< mean, shift, or median
    double scale = 1.0;      ///< sd, 1/rate, or Cauchy scale
    double sign = 1.0;       ///< Exponential only: y = location + sign·Exp(rate)

    double log_density(double y) const;
};

struct MixtureComponent {
    double weight = 0.5;
    std::vector<CoordinateDensity> coordinates;

    double log_density(const Eigen::Ref<const Eigen::RowVectorXd>& y) const;
};

using MixtureSpec = std::vector<MixtureComponent>;

/// Posterior co-assignment Pr(c_i = c_j | y_i, y_j) from the generating mixture,
/// treating items as independent given their labels.
Matrix oracle_coassignment(const MixtureSpec& mixture, const Matrix& data);

/// Per-item posterior over mixture components (n x K).
Matrix mixture_posterior(const MixtureSpec& mixture, const Matrix& data);

} // namespace lsp

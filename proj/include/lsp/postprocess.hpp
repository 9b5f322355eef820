#pragma once

#include "lsp/model.hpp"

#include <cstdint>
#include <vector>

namespace lsp {

struct ViewEstimate {
    int view_id = 0;
    int x_hat = 0;               ///< most probable parameterization (0-based)
    Labels pointwise_labels;     ///< per-item argmax of W^(x_hat)
    Labels joint_labels;         ///< spectral clustering of P^(x_hat) with g_hat clusters
    int g_hat = 0;
};

struct EffectiveCounts {
    int d_hat = 0;
    std::vector<int> g_hat;      ///< per view
};

struct Consensus {
    Matrix matrix;
    Vector weights;              ///< u per view
    bool fallback = false;       ///< no view had structure; plain average returned
};

struct FitEstimate {
    std::vector<ViewEstimate> views;
    std::vector<Matrix> p_hat;   ///< per parameterization; view v uses p_hat[views[v].x_hat]
    int d_hat = 0;
    Consensus consensus;

    const Matrix& p_hat_for(std::size_t v) const { return p_hat[static_cast<std::size_t>(views[v].x_hat)]; }
};

/// argmax_l eta(v, l), lowest index on ties.
int most_probable_param(const Responsibilities& eta, std::size_t v);

/// Per-row argmax, lowest index on ties.
Labels pointwise_labels(const SimplexWeightMatrix& w);

EffectiveCounts effective_counts(const FitState& state);

/// Spectral clustering on D^-1/2 P D^-1/2: top eigenvectors (sign-normalized),
/// row-normalized, then K-means++. Zero-degree items become singletons.
Labels spectral_labels(const Matrix& p_hat, int g_hat, std::uint64_t seed);

/// Weighted average of per-view co-assignment matrices over views with structure.
Consensus consensus_matrix(const FitState& state, const std::vector<ViewEstimate>& views);

FitEstimate estimate(const FitState& state, std::uint64_t seed);

} // namespace lsp

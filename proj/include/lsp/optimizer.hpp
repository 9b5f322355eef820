#pragma once

#include "lsp/common.hpp"

#include <vector>

namespace lsp {

struct AdamOptions {
    double step_size = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double stability = 1e-8;
    int inner_iterations = 50;
};

/// Adaptive-moment state for a list of same-shaped parameter blocks.
class Adam {
public:
    Adam(const AdamOptions& options, const std::vector<Matrix>& shapes);

    /// In-place update of each block given its gradient.
    void step(std::vector<Matrix>& params, const std::vector<Matrix>& grads);

    long steps() const { return t_; }

private:
    AdamOptions options_;
    std::vector<Matrix> m_;
    std::vector<Matrix> v_;
    long t_ = 0;
};

} // namespace lsp

#include "lsp/optimizer.hpp"

#include <cmath>

namespace lsp {

Adam::Adam(const AdamOptions& options, const std::vector<Matrix>& shapes) : options_(options)
{
    m_.reserve(shapes.size());
    v_.reserve(shapes.size());
    for (const auto& s : shapes) {
        m_.push_back(Matrix::Zero(s.rows(), s.cols()));
        v_.push_back(Matrix::Zero(s.rows(), s.cols()));
    }
}

void Adam::step(std::vector<Matrix>& params, const std::vector<Matrix>& grads)
{
    ++t_;
    const double b1 = options_.beta1;
    const double b2 = options_.beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
    const double lr = options_.step_size;
    const double eps = options_.stability;
    for (std::size_t b = 0; b < params.size(); ++b) {
        m_[b] = b1 * m_[b] + (1.0 - b1) * grads[b];
        v_[b] = b2 * v_[b] + (1.0 - b2) * grads[b].cwiseAbs2();
        params[b].array() -= lr * (m_[b].array() / c1) / ((v_[b].array() / c2).sqrt() + eps);
    }
}

} // namespace lsp

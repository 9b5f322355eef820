#pragma once

#include "lsp/common.hpp"
#include "lsp/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lsp {

/// The six two-cluster planar designs used for single-view benchmarking.
enum class SingleViewSetting { A, B, C, D, E, F };

SingleViewSetting parse_setting(const std::string& name);
char setting_name(SingleViewSetting s);

struct LabeledData {
    Matrix data;     ///< n x p
    Labels labels;   ///< aligned with rows
};

/// Generating mixture of a setting (equal weights); used by the oracle co-assignment.
MixtureSpec setting_mixture(SingleViewSetting setting);

LabeledData single_view(SingleViewSetting setting, Eigen::Index n, std::uint64_t seed);

/// Draws from an arbitrary product-density mixture.
LabeledData sample_mixture(const MixtureSpec& mixture, Eigen::Index n, std::uint64_t seed);

struct MultiViewSpec {
    Eigen::Index n = 150;
    Eigen::Index views = 500;
    int patterns = 5;                      ///< d0
    int clusters = 3;                      ///< g0
    double dirichlet_alpha = 0.5;
    std::vector<Eigen::RowVector2d> means{{0.0, 0.0}, {2.0, 2.0}, {-2.0, -2.0}};
    std::uint64_t seed = 0;
};

struct MultiViewData {
    Matrix data;                   ///< n x 2V, view v in columns [2v, 2v+2)
    Labels pattern;                ///< true parameterization per view (x0)
    std::vector<Labels> labels;    ///< true cluster labels per view
    std::vector<Matrix> weights;   ///< the d0 ground-truth simplex weight matrices
};

MultiViewData multi_view(const MultiViewSpec& spec);

struct ConsensusData {
    Matrix data;                   ///< n x 10, one column per view
    std::vector<Labels> labels;    ///< per view; all-zero for the unstructured views
    std::vector<bool> structured;  ///< views 1 and 2 carry clustering structure
};

/// View 1: N(0,1)/N(2,1); view 2: N(0,1)/N(1,1)/N(2,1); views 3..10: N(0,1).
ConsensusData consensus_views(Eigen::Index n, std::uint64_t seed);

/// Columns ranked by sd/median (median-zero columns last), top `top_v`, stable on ties.
std::vector<std::size_t> screen_columns(const Matrix& data, std::size_t top_v);

} // namespace lsp

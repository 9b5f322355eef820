#pragma once

#include "lsp/model.hpp"

#include <string>
#include <vector>

namespace lsp {

struct CsvTable {
    std::vector<std::string> header;   ///< empty when the file had none
    Matrix values;
};

/// Dense numeric CSV. The first row is taken as a header when any of its
/// fields fails to parse as a number.
CsvTable read_csv(const std::string& path);

/// Writes with 17 significant digits so values round-trip exactly.
void write_csv(const std::string& path, const Matrix& values, const std::vector<std::string>& header = {});

/// Integer label columns (one column per labeling).
void write_labels_csv(const std::string& path, const std::vector<Labels>& columns,
                      const std::vector<std::string>& header = {}, int offset = 0);

std::string format_double(double x);

/// Versioned text container: config, logits of every component, lambda, eta,
/// loss history, iteration count and convergence flag.
void save_fit_state(const std::string& path, const FitState& state);
FitState load_fit_state(const std::string& path);

inline constexpr int kFitStateVersion = 1;

} // namespace lsp

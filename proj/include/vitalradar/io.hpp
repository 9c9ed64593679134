#pragma once

#include <filesystem>

#include <Eigen/Core>

#include "vitalradar/types.hpp"

namespace vitalradar {

/// CSV series: header "t,value", axis with 9 decimal places, values with 9
/// significant digits, LF line endings.
void write_csv_series(const Eigen::Ref<const ArrayXd>& axis,
                      const Eigen::Ref<const ArrayXd>& values,
                      const std::filesystem::path& path);

/// CSV matrix: first row is the column axis (leading cell empty), first
/// column the row axis, cells with 9 significant digits, LF line endings.
void write_csv_matrix(const Eigen::Ref<const Eigen::MatrixXd>& values,
                      const Eigen::Ref<const ArrayXd>& row_axis,
                      const Eigen::Ref<const ArrayXd>& col_axis,
                      const std::filesystem::path& path);

/// Binary P5 PGM of a dB matrix, row 0 first (most negative velocity at the
/// top). Gray level = clamp(255 * (dB - (peak - 80)) / 80): a peak-referenced
/// 80 dB display window.
void write_pgm_heatmap(const Eigen::Ref<const Eigen::MatrixXd>& magnitude_db,
                       const std::filesystem::path& path);

}  // namespace vitalradar

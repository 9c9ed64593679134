#include "vitalradar/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace vitalradar {

namespace {

std::string format_axis(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.9g", v);
  return buf;
}

std::ofstream open_binary(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace

void write_csv_series(const Eigen::Ref<const ArrayXd>& axis,
                      const Eigen::Ref<const ArrayXd>& values,
                      const std::filesystem::path& path) {
  if (axis.size() != values.size())
    throw std::invalid_argument("write_csv_series: axis/value length mismatch");
  if (!axis.allFinite() || !values.allFinite())
    throw std::invalid_argument("write_csv_series: non-finite data");
  auto out = open_binary(path);
  std::string body = "t,value\n";
  body.reserve(static_cast<std::size_t>(axis.size()) * 28 + body.size());
  for (Index i = 0; i < axis.size(); ++i) {
    body += format_axis(axis[i]);
    body += ',';
    body += format_value(values[i]);
    body += '\n';
  }
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  finish(out, path);
}

void write_csv_matrix(const Eigen::Ref<const Eigen::MatrixXd>& values,
                      const Eigen::Ref<const ArrayXd>& row_axis,
                      const Eigen::Ref<const ArrayXd>& col_axis,
                      const std::filesystem::path& path) {
  if (values.rows() != row_axis.size() || values.cols() != col_axis.size())
    throw std::invalid_argument("write_csv_matrix: axis/matrix shape mismatch");
  if (!values.allFinite() || !row_axis.allFinite() || !col_axis.allFinite())
    throw std::invalid_argument("write_csv_matrix: non-finite data");
  auto out = open_binary(path);
  std::string line;
  line.reserve(static_cast<std::size_t>(values.cols() + 1) * 18);
  for (Index j = 0; j < col_axis.size(); ++j) {
    line += ',';
    line += format_value(col_axis[j]);
  }
  line += '\n';
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  for (Index i = 0; i < values.rows(); ++i) {
    line.clear();
    line += format_value(row_axis[i]);
    for (Index j = 0; j < values.cols(); ++j) {
      line += ',';
      line += format_value(values(i, j));
    }
    line += '\n';
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
  finish(out, path);
}

void write_pgm_heatmap(const Eigen::Ref<const Eigen::MatrixXd>& magnitude_db,
                       const std::filesystem::path& path) {
  if (magnitude_db.size() == 0) throw std::invalid_argument("write_pgm_heatmap: empty matrix");
  if (!magnitude_db.allFinite())
    throw std::invalid_argument("write_pgm_heatmap: non-finite data");
  const double peak = magnitude_db.maxCoeff();
  const double floor = peak - 80.0;
  auto out = open_binary(path);
  const std::string header = "P5\n" + std::to_string(magnitude_db.cols()) + " " +
                             std::to_string(magnitude_db.rows()) + "\n255\n";
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  std::vector<unsigned char> row(static_cast<std::size_t>(magnitude_db.cols()));
  for (Index i = 0; i < magnitude_db.rows(); ++i) {
    for (Index j = 0; j < magnitude_db.cols(); ++j) {
      const long g = std::lround(255.0 * (magnitude_db(i, j) - floor) / 80.0);
      row[static_cast<std::size_t>(j)] =
          static_cast<unsigned char>(std::clamp(g, 0L, 255L));
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  finish(out, path);
}

}  // namespace vitalradar

#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "avdsprep/raster.hpp"

namespace avdsprep {

template <typename A, typename B>
void require_same_shape(const Eigen::ArrayBase<A>& a, const Eigen::ArrayBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("operands differ in size");
}

/// Mean of squared per-pixel differences.
template <typename A, typename B>
[[nodiscard]] double mse(const Eigen::ArrayBase<A>& a, const Eigen::ArrayBase<B>& b) {
  require_same_shape(a, b);
  return (a.template cast<double>() - b.template cast<double>()).square().mean();
}

template <typename A, typename B>
[[nodiscard]] double rmse(const Eigen::ArrayBase<A>& a, const Eigen::ArrayBase<B>& b) {
  return std::sqrt(mse(a, b));
}

/// 20 log10(max) - 10 log10(mse); +inf when mse is zero.
[[nodiscard]] inline double psnr_from_mse(double mse_value, double max_value = kMaxSample) {
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(max_value) - 10.0 * std::log10(mse_value);
}

template <typename A, typename B>
[[nodiscard]] double psnr(const Eigen::ArrayBase<A>& a, const Eigen::ArrayBase<B>& b,
                          double max_value = kMaxSample) {
  if (!(max_value > 0.0)) throw InvalidConfig("PSNR peak value must be > 0");
  return psnr_from_mse(mse(a, b), max_value);
}

/// Population standard deviation of all samples.
template <typename A>
[[nodiscard]] double contrast(const Eigen::ArrayBase<A>& plane) {
  const auto x = plane.template cast<double>();
  const double mean = x.mean();
  return std::sqrt((x - mean).square().mean());
}

/// Shannon entropy in bits of the `bins`-bin intensity histogram.
[[nodiscard]] double shannon_entropy(const Plane& plane, std::size_t bins = 256);

/// One row of a method comparison. RMSE and PSNR are always derived from the
/// stored MSE, so rmse^2 == mse and psnr is +inf exactly when mse is 0.
struct QualityReport {
  std::string method;
  double mse = 0.0;
  double rmse = 0.0;
  double psnr_db = std::numeric_limits<double>::infinity();
  double contrast = 0.0;
  double entropy_bits = 0.0;
  std::map<std::string, std::string> params;

  static QualityReport from_mse(std::string method, double mse_value, double contrast_value,
                                double entropy_value,
                                std::map<std::string, std::string> params = {});
};

/// Scores `processed` against `reference`. Multi-channel images average MSE,
/// contrast and entropy over channels; RMSE and PSNR follow from the mean MSE.
[[nodiscard]] QualityReport evaluate(std::string method, const Image& reference,
                                     const Image& processed,
                                     std::map<std::string, std::string> params = {});

[[nodiscard]] QualityReport evaluate(std::string method, const Plane& reference,
                                     const Plane& processed,
                                     std::map<std::string, std::string> params = {});

/// Shortest round-trip decimal form; "inf" for +infinity.
[[nodiscard]] std::string format_number(double value);

/// "k=v;k=v" in key order.
[[nodiscard]] std::string format_params(const std::map<std::string, std::string>& params);

inline constexpr const char* kReportCsvHeader = "method,mse,rmse,psnr_db,contrast,entropy_bits,params";

/// method,mse,rmse,psnr_db,contrast,entropy_bits,params (no trailing newline).
[[nodiscard]] std::string to_csv_row(const QualityReport& report);

/// JSON object with the same fields; psnr_db is the string "inf" when infinite.
[[nodiscard]] std::string to_json(const QualityReport& report);

/// Quotes a CSV field when it contains a separator, quote or newline.
[[nodiscard]] std::string csv_field(const std::string& text);

}  // namespace avdsprep

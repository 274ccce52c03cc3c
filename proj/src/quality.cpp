#include "avdsprep/quality.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

namespace avdsprep {

double shannon_entropy(const Plane& plane, std::size_t bins) {
  const Pdf pdf = normalize(histogram(plane, bins));
  double h = 0.0;
  for (double p : pdf.probs)
    if (p > 0.0) h -= p * std::log2(p);
  // -0.0 for a single-outcome distribution.
  return h + 0.0;
}

QualityReport QualityReport::from_mse(std::string method, double mse_value, double contrast_value,
                                      double entropy_value,
                                      std::map<std::string, std::string> params) {
  QualityReport r;
  r.method = std::move(method);
  r.mse = mse_value;
  r.rmse = std::sqrt(mse_value);
  r.psnr_db = psnr_from_mse(mse_value);
  r.contrast = contrast_value;
  r.entropy_bits = entropy_value;
  r.params = std::move(params);
  return r;
}

QualityReport evaluate(std::string method, const Plane& reference, const Plane& processed,
                       std::map<std::string, std::string> params) {
  return QualityReport::from_mse(std::move(method), mse(reference, processed), contrast(processed),
                                 shannon_entropy(processed), std::move(params));
}

QualityReport evaluate(std::string method, const Image& reference, const Image& processed,
                       std::map<std::string, std::string> params) {
  if (reference.channels() != processed.channels())
    throw DimensionMismatch("images differ in channel count");
  double m = 0.0;
  double c = 0.0;
  double e = 0.0;
  for (std::size_t ch = 0; ch < processed.channels(); ++ch) {
    m += mse(reference.plane(ch), processed.plane(ch));
    c += contrast(processed.plane(ch));
    e += shannon_entropy(processed.plane(ch));
  }
  const auto n = static_cast<double>(processed.channels());
  return QualityReport::from_mse(std::move(method), m / n, c / n, e / n, std::move(params));
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_params(const std::map<std::string, std::string>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + '=' + v;
  }
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string to_csv_row(const QualityReport& r) {
  return csv_field(r.method) + ',' + format_number(r.mse) + ',' + format_number(r.rmse) + ',' +
         format_number(r.psnr_db) + ',' + format_number(r.contrast) + ',' +
         format_number(r.entropy_bits) + ',' + csv_field(format_params(r.params));
}

std::string to_json(const QualityReport& r) {
  nlohmann::ordered_json j;
  j["method"] = r.method;
  j["mse"] = r.mse;
  j["rmse"] = r.rmse;
  if (std::isinf(r.psnr_db))
    j["psnr_db"] = "inf";
  else
    j["psnr_db"] = r.psnr_db;
  j["contrast"] = r.contrast;
  j["entropy_bits"] = r.entropy_bits;
  j["params"] = r.params;
  return j.dump();
}

}  // namespace avdsprep

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>

namespace alphapi {

/// Flat key = value configuration with [section] headers, chosen so run
/// manifests stay diffable. Keys are addressed as "section.key". '#' and ';'
/// start comments. Unknown sections and keys are preserved verbatim.
class Config {
 public:
  Config() = default;
  static Config parse(const std::string& text);
  static Config load_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  Eigen::VectorXd get_vector(const std::string& key,
                             const Eigen::VectorXd& fallback) const;
  /// Rows separated by ';', entries by whitespace.
  Eigen::MatrixXd get_matrix(const std::string& key,
                             const Eigen::MatrixXd& fallback) const;

  void set_string(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);  // 17 digits, exact
  void set_int(const std::string& key, long long value);
  void set_u64(const std::string& key, std::uint64_t value);
  void set_bool(const std::string& key, bool value);
  void set_vector(const std::string& key, const Eigen::VectorXd& v);
  void set_matrix(const std::string& key, const Eigen::MatrixXd& m);

  /// Renders sections in sorted order; parse(to_text()) round-trips.
  std::string to_text() const;

 private:
  std::map<std::string, std::string> values_;  // "section.key" -> raw text
};

}  // namespace alphapi

#include "alphapi/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "alphapi/errors.hpp"

namespace alphapi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    cfg.values_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

Config Config::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse(buf.str());
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (trim(it->second.substr(pos)).empty()) return v;
  } catch (...) {
  }
  throw ConfigError("config: key '" + key + "' is not a number: " + it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const long v = std::stol(it->second, &pos, 10);
    if (trim(it->second.substr(pos)).empty()) return static_cast<int>(v);
  } catch (...) {
  }
  throw ConfigError("config: key '" + key + "' is not an integer: " + it->second);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(it->second, &pos, 10);
    if (trim(it->second.substr(pos)).empty()) return v;
  } catch (...) {
  }
  throw ConfigError("config: key '" + key + "' is not an unsigned integer: " + it->second);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: key '" + key + "' is not a boolean: " + v);
}

Eigen::VectorXd Config::get_vector(const std::string& key,
                                   const Eigen::VectorXd& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::istringstream is(it->second);
  std::vector<double> entries;
  double v;
  while (is >> v) entries.push_back(v);
  if (entries.empty() || !is.eof())
    throw ConfigError("config: key '" + key + "' is not a vector: " + it->second);
  Eigen::VectorXd out(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) out[i] = entries[i];
  return out;
}

Eigen::MatrixXd Config::get_matrix(const std::string& key,
                                   const Eigen::MatrixXd& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<std::vector<double>> rows;
  std::istringstream rs(it->second);
  std::string row_text;
  while (std::getline(rs, row_text, ';')) {
    std::istringstream is(row_text);
    std::vector<double> row;
    double v;
    while (is >> v) row.push_back(v);
    if (row.empty())
      throw ConfigError("config: key '" + key + "' has an empty matrix row");
    if (!rows.empty() && rows.front().size() != row.size())
      throw ConfigError("config: key '" + key + "' has ragged matrix rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw ConfigError("config: key '" + key + "' is not a matrix: " + it->second);
  Eigen::MatrixXd out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) out(i, j) = rows[i][j];
  return out;
}

void Config::set_string(const std::string& key, const std::string& value) {
  values_[key] = value;
}

void Config::set_double(const std::string& key, double value) {
  values_[key] = fmt_double(value);
}

void Config::set_int(const std::string& key, long long value) {
  values_[key] = std::to_string(value);
}

void Config::set_u64(const std::string& key, std::uint64_t value) {
  values_[key] = std::to_string(value);
}

void Config::set_bool(const std::string& key, bool value) {
  values_[key] = value ? "true" : "false";
}

void Config::set_vector(const std::string& key, const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += fmt_double(v[i]);
  }
  values_[key] = s;
}

void Config::set_matrix(const std::string& key, const Eigen::MatrixXd& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      s += fmt_double(m(i, j));
    }
  }
  values_[key] = s;
}

std::string Config::to_text() const {
  std::string out, current_section;
  bool first = true;
  for (const auto& [full_key, value] : values_) {
    const auto dot = full_key.find('.');
    const std::string section = dot == std::string::npos ? "" : full_key.substr(0, dot);
    const std::string key = dot == std::string::npos ? full_key : full_key.substr(dot + 1);
    if (section != current_section || first) {
      if (!first) out += '\n';
      if (!section.empty()) out += "[" + section + "]\n";
      current_section = section;
      first = false;
    }
    out += key + " = " + value + "\n";
  }
  return out;
}

}  // namespace alphapi

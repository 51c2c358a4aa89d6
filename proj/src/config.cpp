#include "divstokes/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace divstokes {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// comma split that respects parentheses, for strategy names
std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (const char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (const std::string t = trim(cur); !t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (const std::string t = trim(cur); !t.empty()) out.push_back(t);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": " + v);
}

}  // namespace

CaseConfig parse_config_text(const std::string& text) {
  CaseConfig config;
  bool saw_case = false, saw_k = false, saw_levels = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "case") {
      config.case_name = value;
      saw_case = true;
    } else if (key == "k_prime") {
      config.k_prime = std::stoi(value);
      saw_k = true;
    } else if (key == "levels") {
      config.levels.clear();
      for (const auto& tok : split_list(value)) config.levels.push_back(std::stoi(tok));
      saw_levels = true;
    } else if (key == "nu") {
      config.nu = std::stod(value);
    } else if (key == "c_pen") {
      config.c_pen = std::stod(value);
    } else if (key == "strategies") {
      config.strategies = split_list(value);
    } else if (key == "outer_tol") {
      config.outer_tol = std::stod(value);
    } else if (key == "inner_tol") {
      config.inner_tol = std::stod(value);
    } else if (key == "spectra") {
      config.spectra = parse_bool(key, value);
    } else if (key == "infsup") {
      config.infsup = parse_bool(key, value);
    } else if (key == "divcheck") {
      config.divcheck = parse_bool(key, value);
    } else if (key == "max_iter") {
      config.max_iter = std::stoi(value);
    } else if (key == "dump_matrices") {
      config.dump_matrices = parse_bool(key, value);
    } else if (key == "streamfunction") {
      config.streamfunction = parse_bool(key, value);
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key " +
                                  key);
    }
  }
  if (!saw_case || !saw_k || !saw_levels)
    throw std::invalid_argument("config: case, k_prime and levels are required");
  if (config.levels.empty()) throw std::invalid_argument("config: levels list is empty");
  if (!(config.outer_tol > 0.0 && config.outer_tol < 1.0) ||
      !(config.inner_tol > 0.0 && config.inner_tol < 1.0))
    throw std::invalid_argument("config: tolerances must lie in (0,1)");
  return config;
}

CaseConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace divstokes

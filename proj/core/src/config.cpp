#include "ucilab/config.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ucilab {

namespace {

constexpr std::array kSections = {"field", "run", "output"};

constexpr std::array kExactKeys = {
    "field.profile", "field.seed",
    "run.command",   "run.tol",        "run.grid_n",   "run.x_tail",  "run.x0",
    "run.u0",        "run.du0",        "run.x_end",    "run.kappa",   "run.kappa_prime",
    "run.x_bar",     "run.max_h",      "run.tol_thm",  "run.seeds",   "run.du0_lo",
    "run.du0_hi",    "run.mesh_n",     "run.mesh_density", "run.band", "run.n_dim",
    "run.r_lo",      "run.r_hi",       "run.nr",       "run.R1",      "run.R",
    "run.h",         "run.delta",      "run.grid_nr",  "run.grid_nt", "run.t_min",
    "run.workers",   "run.residual_tol", "output.dir", "output.formats"};

constexpr std::array kPrefixKeys = {"field.params.", "run.x0_list.", "run.radii.",
                                    "run.deltas."};

bool known_key(const std::string& key) {
  for (const char* k : kExactKeys)
    if (key == k) return true;
  for (const char* p : kPrefixKeys)
    if (key.rfind(p, 0) == 0 && key.size() > std::string(p).size()) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

void ExperimentConfig::set(const std::string& dotted_key, const std::string& value) {
  if (!known_key(dotted_key))
    throw ConfigParse("unknown configuration key '" + dotted_key + "'");
  if (value.empty()) throw ConfigParse("empty value for key '" + dotted_key + "'");
  kv_[dotted_key] = value;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigParse("line " + std::to_string(line_no) + ": bad section");
      section = trim(t.substr(1, t.size() - 2));
      bool ok = false;
      for (const char* s : kSections) ok = ok || section == s;
      if (!ok)
        throw ConfigParse("line " + std::to_string(line_no) + ": unknown section '" + section +
                          "'");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigParse("line " + std::to_string(line_no) + ": expected key = value");
    if (section.empty())
      throw ConfigParse("line " + std::to_string(line_no) + ": key outside any section");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigParse("line " + std::to_string(line_no) + ": empty key");
    try {
      cfg.set(section + "." + key, value);
    } catch (const ConfigParse& e) {
      throw ConfigParse("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParse("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  for (const char* section : kSections) {
    const std::string prefix = std::string(section) + ".";
    bool any = false;
    for (const auto& [k, v] : kv_) {
      if (k.rfind(prefix, 0) != 0) continue;
      if (!any) {
        out << "[" << section << "]\n";
        any = true;
      }
      out << k.substr(prefix.size()) << " = " << v << "\n";
    }
    if (any) out << "\n";
  }
  return out.str();
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0')
    throw ConfigParse("key '" + key + "': cannot parse '" + it->second + "' as a number");
  return v;
}

int ExperimentConfig::get_int(const std::string& key, int fallback) const {
  const double v = get_double(key, static_cast<double>(fallback));
  return static_cast<int>(v);
}

std::uint64_t ExperimentConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  return std::strtoull(it->second.c_str(), nullptr, 10);
}

std::vector<double> ExperimentConfig::get_list(const std::string& prefix) const {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const std::string key = prefix + "." + std::to_string(k);
    if (!has(key)) break;
    out.push_back(get_double(key, 0.0));
  }
  return out;
}

ParamMap ExperimentConfig::field_params() const {
  ParamMap params;
  const std::string prefix = "field.params.";
  for (const auto& [k, v] : kv_) {
    if (k.rfind(prefix, 0) != 0) continue;
    char* end = nullptr;
    const double num = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
      throw ConfigParse("key '" + k + "': cannot parse '" + v + "' as a number");
    params[k.substr(prefix.size())] = num;
  }
  return params;
}

} // namespace ucilab

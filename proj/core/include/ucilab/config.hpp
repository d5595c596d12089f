#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ucilab/field.hpp"

namespace ucilab {

// Flat INI-style configuration: [section] headers, key = value lines, full-line
// # comments. Keys are stored section-qualified ("run.tol"). Parsing is
// strict: unknown sections or keys are rejected, not ignored, and
// parse(serialize(c)) == c.
//
// Recognized keys:
//   [field]  profile, seed, params.*
//   [run]    command, tol, grid_n, x_tail, x0, u0, du0, x_end, kappa,
//            kappa_prime, x_bar, max_h, tol_thm, seeds, du0_lo, du0_hi,
//            mesh_n, mesh_density, band, n_dim, r_lo, r_hi, nr, R1, R, h,
//            delta, grid_nr, grid_nt, t_min, workers, residual_tol,
//            x0_list.*, radii.*, deltas.*
//   [output] dir, formats
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig parse_file(const std::string& path);
  std::string serialize() const;

  // Validates the key against the registry; throws ConfigParse on unknown keys.
  void set(const std::string& dotted_key, const std::string& value);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_list(const std::string& prefix) const;  // prefix.0, prefix.1, ...
  ParamMap field_params() const;

  bool operator==(const ExperimentConfig&) const = default;

 private:
  std::map<std::string, std::string> kv_;
};

} // namespace ucilab

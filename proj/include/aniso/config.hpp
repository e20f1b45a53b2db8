#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aniso/domain.hpp"
#include "aniso/finsler.hpp"
#include "aniso/solvers.hpp"

namespace aniso {

// Flat sectioned key-value configuration:
//
//   [norm]
//   kind = quadratic      # or: euclidean, weighted_q
//   matrix = 4, 0, 0, 1   # row-major, symmetric positive-definite
//
// Lines are `key = value` under a `[section]` header; `#` and `;` start
// comments; keys and section names are case-insensitive and looked up as
// "section.key". The original bytes are kept so artifacts can record a
// content hash. All parse and validation failures throw config_error.
class Config {
 public:
  static Config from_text(std::string text);
  static Config from_file(const std::string& path);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  // Comma-separated list of numbers.
  std::vector<double> list(const std::string& key) const;
  std::vector<double> list(const std::string& key, std::vector<double> fallback) const;

  const std::string& text() const { return text_; }
  std::uint64_t hash() const;

 private:
  std::string text_;
  std::map<std::string, std::string> kv_;
};

// Builds the norm described by the [norm] section. Keys: kind (euclidean |
// weighted_q | quadratic; default euclidean), q and weights for weighted_q,
// matrix (row-major 2x2) for quadratic.
FinslerNorm norm_from_config(const Config& c);

// Builds the domain described by the [domain] section. Keys: family (wulff |
// ellipse | rectangle | annulus), r for wulff, a/b for ellipse, width/height
// for rectangle, r_inner/r_outer for annulus, optional center_x/center_y.
// Wulff shapes and annuli take their shape norm from the [norm] section.
AnalyticDomain domain_from_config(const Config& c, const FinslerNorm& F);

// Reads [solver] overrides (tol, max_outer, max_inner, thresholds,
// annulus_scan, descent_tol, descent_max_iter) over the library defaults.
SolverOptions solver_from_config(const Config& c);

}  // namespace aniso

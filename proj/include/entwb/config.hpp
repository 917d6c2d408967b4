#pragma once

#include "entwb/jsonio.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace entwb {

/** Everything that determines the numbers a run produces. */
struct RunConfig {
  std::string family = "sigma";  // "sigma" | "rho"
  std::vector<double> b_grid = default_grid();
  std::vector<double> a_grid = default_grid();
  std::vector<int> n_list = {1, 2};
  ConstructionVariant variant = consistent_variant();
  std::uint64_t seed = 1;
  Tolerances tol;
  std::string out_dir = ".";
  std::string format = "json";  // "json" | "csv"
  int max_n = 3;                // hard cap; dimension grows as (2n)^3

  static std::vector<double> default_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 9; ++i) g.push_back(i / 10.0);
    return g;
  }

  void validate() const {
    if (family != "sigma" && family != "rho")
      throw ConfigError("family must be 'sigma' or 'rho', got '" + family + "'");
    if (format != "json" && format != "csv")
      throw ConfigError("format must be 'json' or 'csv', got '" + format + "'");
    auto check_grid = [](const std::vector<double>& g, const char* name) {
      if (g.empty()) throw ConfigError(std::string(name) + " grid is empty");
      for (double v : g)
        if (!(v >= 0.0 && v <= 1.0))
          throw ConfigError(std::string(name) + " value " + format_sig17(v) +
                            " outside [0, 1]");
    };
    check_grid(b_grid, "b");
    check_grid(a_grid, "a");
    if (n_list.empty()) throw ConfigError("n list is empty");
    for (int n : n_list) {
      if (n < 1) throw ConfigError("n must be >= 1");
      if (n > max_n)
        throw ConfigError("n = " + std::to_string(n) + " exceeds the cap " +
                          std::to_string(max_n) + " (dimension (2n)^3 = " +
                          std::to_string(8 * n * n * n) + "); raise --max-n deliberately");
    }
    if (!(tol.psd > 0) || !(tol.rank > 0) || !(tol.membership > 0))
      throw ConfigError("tolerances must be positive");
    if (!(tol.membership < tol.non_membership))
      throw ConfigError("membership tolerance must lie below the non-membership cut");
  }

  /** Analysis-relevant fields only; output destination and format excluded. */
  Json fingerprint() const {
    Json j;
    j["family"] = family;
    j["b_grid"] = b_grid;
    j["a_grid"] = a_grid;
    j["n_list"] = n_list;
    j["variant"] = variant_name(variant);
    j["seed"] = seed;
    j["tolerances"] = {{"psd", tol.psd},
                       {"rank", tol.rank},
                       {"hermiticity", tol.hermiticity},
                       {"membership", tol.membership},
                       {"non_membership", tol.non_membership}};
    return j;
  }
};

/** FNV-1a (64-bit) over a canonical config dump; stable across platforms. */
inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string config_hash(const RunConfig& cfg) {
  return hash_hex(fnv1a64(cfg.fingerprint().dump()));
}

/** Common header embedded in every emitted report. */
inline Json report_header(const RunConfig& cfg) {
  Json j;
  j["toolkit"] = {{"name", toolkit_name}, {"version", toolkit_version}};
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.seed;
  j["config"] = cfg.fingerprint();
  return j;
}

}  // namespace entwb

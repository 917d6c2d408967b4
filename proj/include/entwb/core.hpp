#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace entwb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr const char* toolkit_name = "entwb";
inline constexpr const char* toolkit_version = "1.0.0";

/** Default numeric thresholds used across the toolkit. */
struct Tolerances {
  double psd = 1e-9;        // eigenvalue cutoff for PPT verdicts
  double rank = 1e-9;       // eigenvalue cutoff for rank and inertia
  double hermiticity = 1e-12;
  double membership = 1e-8;     // residual below this: subspace member
  double non_membership = 0.05; // residual above this: definite non-member
};

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ENTWB_DEFINE_ERROR(name)                                   \
  struct name : Error {                                            \
    explicit name(const std::string& msg) : Error(#name ": " + msg) {} \
  }

ENTWB_DEFINE_ERROR(NotHermitian);
ENTWB_DEFINE_ERROR(ZeroVector);
ENTWB_DEFINE_ERROR(IndexOutOfRange);
ENTWB_DEFINE_ERROR(ParamOutOfRange);
ENTWB_DEFINE_ERROR(DimensionMismatch);
ENTWB_DEFINE_ERROR(ArityMismatch);
ENTWB_DEFINE_ERROR(NotProductForm);
ENTWB_DEFINE_ERROR(NotOrthonormal);
ENTWB_DEFINE_ERROR(EmptySubset);
ENTWB_DEFINE_ERROR(SplitMismatch);
ENTWB_DEFINE_ERROR(DegenerateParameter);
ENTWB_DEFINE_ERROR(ConfigError);
ENTWB_DEFINE_ERROR(IOFailure);

#undef ENTWB_DEFINE_ERROR

/** Thread cap: ENTWB_THREADS if set, else hardware concurrency. */
/** Deterministic RNG facade.  mt19937_64 output is fixed by the standard, but
 *  std::normal_distribution is not; the explicit Box-Muller here keeps report
 *  payloads byte-identical for a given seed regardless of the C++ runtime. */
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  /** Uniform in [0, 1). */
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /** Standard normal via Box-Muller. */
  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  std::size_t index(std::size_t bound) {
    return static_cast<std::size_t>(gen_() % bound);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline int max_threads() {
  if (const char* env = std::getenv("ENTWB_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/** Runs fn(i) for i in [0, count) on up to max_threads() workers.
 *  Work items must be independent; results should be written to
 *  preallocated per-index slots so the outcome is order-independent. */
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  int workers = std::min<std::size_t>(max_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace entwb

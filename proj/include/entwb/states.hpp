#pragma once

#include "entwb/linalg.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <utility>

namespace entwb {

/** Which projector closes the inseparable mixture.
 *  Consistent: the unpaired basis product e_n (x) e_2n (x) e_2n; reduces to the
 *  qubit family at n = 1. AsPrinted: e_n (x) e_2n (x) e_n, following the source
 *  text literally even though its n = 1 case disagrees with the qubit family. */
enum class ExtraProjector { Consistent, AsPrinted };

/** PrintedWeights keeps the literal 2/N and 1/N mixture weights (unit trace only
 *  at n = 1); Renormalized divides the inseparable part by its computed trace. */
enum class Normalization { Renormalized, PrintedWeights };

struct ConstructionVariant {
  ExtraProjector extra_projector = ExtraProjector::Consistent;
  Normalization normalization = Normalization::Renormalized;
  bool operator==(const ConstructionVariant& o) const {
    return extra_projector == o.extra_projector && normalization == o.normalization;
  }
};

inline ConstructionVariant consistent_variant() { return {}; }

inline ConstructionVariant printed_variant() {
  return {ExtraProjector::AsPrinted, Normalization::PrintedWeights};
}

/** CLI vocabulary: "consistent" and "paper" (the literal printed construction). */
inline std::string variant_name(const ConstructionVariant& v) {
  if (v == consistent_variant()) return "consistent";
  if (v == printed_variant()) return "paper";
  std::string s = "mixed(";
  s += v.extra_projector == ExtraProjector::Consistent ? "consistent-projector" : "printed-projector";
  s += ",";
  s += v.normalization == Normalization::Renormalized ? "renormalized" : "printed-weights";
  s += ")";
  return s;
}

inline ConstructionVariant parse_variant(const std::string& token) {
  if (token == "consistent") return consistent_variant();
  if (token == "paper") return printed_variant();
  throw ConfigError("unknown variant '" + token + "' (expected consistent|paper)");
}

/** e_label in C^dim, label 1-based. */
inline Vector basis_vector(int label, int dim) {
  if (label < 1 || label > dim) throw IndexOutOfRange("basis label outside [1, dim]");
  Vector v = Vector::Zero(dim);
  v(label - 1) = Complex(1.0, 0.0);
  return v;
}

/** Product basis vector with 1-based per-party labels; party order slow-to-fast. */
inline Vector basis_product(const std::vector<int>& labels, const std::vector<int>& dims) {
  if (labels.size() != dims.size() || labels.empty())
    throw DimensionMismatch("basis_product needs matching nonempty label/dim lists");
  Vector v = basis_vector(labels[0], dims[0]);
  for (std::size_t p = 1; p < labels.size(); ++p)
    v = kron(v, basis_vector(labels[p], dims[p]));
  return v;
}

inline Matrix projector(const Vector& v) { return v * v.adjoint(); }

struct MultipartiteState {
  std::vector<int> party_dims;
  Matrix rho;
  std::string label;
  std::map<std::string, double> params;
  ConstructionVariant variant;

  Eigen::Index dim() const {
    Eigen::Index d = 1;
    for (int p : party_dims) d *= p;
    return d;
  }
  double param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ConfigError("state '" + label + "' lacks parameter " + key);
    return it->second;
  }
};

struct PureVector {
  std::vector<int> party_dims;
  Vector amplitudes;
  std::string label;
};

namespace detail {
inline std::string format_param(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}
}  // namespace detail

/** Trace-one inseparable qubit mixture: three bond projectors at weight 2/7 plus
 *  the unpaired basis product at weight 1/7. */
inline Matrix sigma_insep_matrix() {
  const std::vector<int> d{2, 2, 2};
  const double r = 1.0 / std::sqrt(2.0);
  Vector p1 = r * (basis_product({1, 1, 1}, d) + basis_product({2, 1, 2}, d));
  Vector p2 = r * (basis_product({1, 1, 2}, d) + basis_product({2, 2, 1}, d));
  Vector p3 = r * (basis_product({1, 2, 1}, d) + basis_product({2, 2, 2}, d));
  Vector extra = basis_product({1, 2, 2}, d);
  return (2.0 / 7.0) * (projector(p1) + projector(p2) + projector(p3)) +
         (1.0 / 7.0) * projector(extra);
}

/** Qubit family on C^2 x C^2 x C^2, b in [0,1]:
 *  sigma_b = (7b * insep + |Phi><Phi|) / (7b+1) with
 *  Phi = e2 (x) e1 (x) (sqrt((1+b)/2) e1 + sqrt((1-b)/2) e2). */
inline MultipartiteState sigma_state(double b) {
  if (!(b >= 0.0 && b <= 1.0)) throw ParamOutOfRange("sigma_state needs b in [0,1]");
  const std::vector<int> d{2, 2, 2};
  Vector phi = kron(basis_product({2, 1}, {2, 2}),
                    std::sqrt((1.0 + b) / 2.0) * basis_vector(1, 2) +
                        std::sqrt((1.0 - b) / 2.0) * basis_vector(2, 2));
  MultipartiteState st;
  st.party_dims = d;
  st.rho = (7.0 * b * sigma_insep_matrix() + projector(phi)) / (7.0 * b + 1.0);
  st.label = "sigma(b=" + detail::format_param(b) + ")";
  st.params = {{"b", b}};
  st.variant = consistent_variant();
  return st;
}

/** Inseparable part of the general family on (C^2n)^3.  Bond vectors:
 *    (e_i (x) e_j (x) e_k  + e_{n+i} (x) e_j     (x) e_{k+1}) / sqrt(2),  i<=n, j<=2n, k<2n
 *    (e_i (x) e_k (x) e_2n + e_{n+i} (x) e_{k+1} (x) e_1    ) / sqrt(2),  i<=n, k<2n
 *  4n^3 - n bonds total, mixed at weight 2/N with N = 8n^3 - 1, plus the extra
 *  projector at weight 1/N.  With the printed weights the trace is
 *  (8n^3 - 2n + 1)/N, which equals 1 only at n = 1. */
inline Matrix rho_insep_matrix(int n, ConstructionVariant variant = consistent_variant()) {
  if (n < 1) throw ParamOutOfRange("rho_insep_matrix needs n >= 1");
  const int d = 2 * n;
  const double N = 8.0 * n * n * n - 1.0;
  const std::vector<int> dims{d, d, d};
  const double r = 1.0 / std::sqrt(2.0);
  const Eigen::Index D = static_cast<Eigen::Index>(d) * d * d;
  Matrix sum = Matrix::Zero(D, D);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= 2 * n; ++j)
      for (int k = 1; k < 2 * n; ++k) {
        Vector v = r * (basis_product({i, j, k}, dims) + basis_product({n + i, j, k + 1}, dims));
        sum += projector(v);
      }
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k < 2 * n; ++k) {
      Vector v = r * (basis_product({i, k, 2 * n}, dims) + basis_product({n + i, k + 1, 1}, dims));
      sum += projector(v);
    }
  int extra_last = variant.extra_projector == ExtraProjector::Consistent ? 2 * n : n;
  Matrix out = (2.0 / N) * sum + (1.0 / N) * projector(basis_product({n, 2 * n, extra_last}, dims));
  if (variant.normalization == Normalization::Renormalized) out /= out.trace().real();
  return out;
}

/** General family on (C^2n)^3, a in [0,1]:
 *  rho_a = (N a * insep + |Phi><Phi|) / (N a + 1) with N = 8n^3 - 1 and
 *  Phi = e_{n+1} (x) e_1 (x) (sqrt((1+a)/2) e_1 + sqrt((1-a)/2) e_2n). */
inline MultipartiteState rho_state(int n, double a,
                                   ConstructionVariant variant = consistent_variant()) {
  if (n < 1) throw ParamOutOfRange("rho_state needs n >= 1");
  if (!(a >= 0.0 && a <= 1.0)) throw ParamOutOfRange("rho_state needs a in [0,1]");
  const int d = 2 * n;
  const double N = 8.0 * n * n * n - 1.0;
  const std::vector<int> dims{d, d, d};
  Vector phi = kron(basis_product({n + 1, 1}, {d, d}),
                    std::sqrt((1.0 + a) / 2.0) * basis_vector(1, d) +
                        std::sqrt((1.0 - a) / 2.0) * basis_vector(2 * n, d));
  MultipartiteState st;
  st.party_dims = dims;
  st.rho = (N * a * rho_insep_matrix(n, variant) + projector(phi)) / (N * a + 1.0);
  st.label = "rho(n=" + std::to_string(n) + ",a=" + detail::format_param(a) +
             ",variant=" + variant_name(variant) + ")";
  st.params = {{"a", a}, {"n", static_cast<double>(n)}};
  st.variant = variant;
  return st;
}

/** Reference matrices transcribed entry-for-entry from the published tables the
 *  claim registry cross-checks.  Slips in the source are kept as printed; the
 *  comparison machinery, not the transcription, decides what matches. */
namespace printed {

namespace detail {
inline Matrix assemble(const std::array<double, 8>& diag,
                       const std::vector<std::pair<int, int>>& b_slots, double b) {
  Matrix M = Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) M(i, i) = diag[static_cast<std::size_t>(i)];
  for (auto [i, j] : b_slots) {
    M(i, j) = b;
    M(j, i) = b;
  }
  double g = std::sqrt(1.0 - b * b) / 2.0;
  M(4, 5) = g;
  M(5, 4) = g;
  return M / (7.0 * b + 1.0);
}
}  // namespace detail

/** The family's printed density-matrix table; its (5,5) entry holds (1-b)/2. */
inline Matrix sigma_matrix(double b) {
  return detail::assemble({b, b, b, b, (1 + b) / 2, (1 - b) / 2, b, b},
                          {{0, 5}, {1, 6}, {2, 7}}, b);
}

/** Printed table for the partial transpose on the last party. */
inline Matrix sigma_tc_matrix(double b) {
  return detail::assemble({b, b, b, b, (1 + b) / 2, (1 + b) / 2, b, b},
                          {{0, 7}, {1, 4}, {3, 6}}, b);
}

/** Printed table for the partial transpose on the last two parties. */
inline Matrix sigma_tbc_matrix(double b) {
  return detail::assemble({b, b, b, b, (1 + b) / 2, (1 + b) / 2, b, b},
                          {{1, 4}, {2, 5}, {3, 6}}, b);
}

}  // namespace printed

struct Mismatch {
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  Complex lhs;
  Complex rhs;
  double abs_diff = 0.0;
};

/** Entrywise comparison at absolute tolerance; returns every differing position
 *  in row-major order. */
inline std::vector<Mismatch> matrix_compare(const Matrix& L, const Matrix& R,
                                            double tol = 1e-12) {
  if (L.rows() != R.rows() || L.cols() != R.cols())
    throw DimensionMismatch("matrix_compare needs equal shapes");
  std::vector<Mismatch> out;
  for (Eigen::Index i = 0; i < L.rows(); ++i)
    for (Eigen::Index j = 0; j < L.cols(); ++j) {
      double diff = std::abs(L(i, j) - R(i, j));
      if (diff > tol) out.push_back({i, j, L(i, j), R(i, j), diff});
    }
  return out;
}

}  // namespace entwb

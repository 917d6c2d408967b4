#pragma once

#include "entwb/bipartition.hpp"
#include "entwb/states.hpp"

namespace entwb {

/** The five published closed-form quadratic expansions of X^T rho^PT X.
 *  Kind tokens name the source display and the transposed party set; they are
 *  the report vocabulary, so they stay verbatim in JSON output. */
enum class QuadFormKind { Eq17_TBC, Eq20_TAC, Eq26_TC_n, Eq31_TBC_n, Eq34_TAC_n };

inline std::string quad_form_kind_name(QuadFormKind k) {
  switch (k) {
    case QuadFormKind::Eq17_TBC: return "Eq17_TBC";
    case QuadFormKind::Eq20_TAC: return "Eq20_TAC";
    case QuadFormKind::Eq26_TC_n: return "Eq26_TC_n";
    case QuadFormKind::Eq31_TBC_n: return "Eq31_TBC_n";
    case QuadFormKind::Eq34_TAC_n: return "Eq34_TAC_n";
  }
  throw Error("unreachable quad form kind");
}

struct QuadFormSpec {
  QuadFormKind kind = QuadFormKind::Eq17_TBC;
  double param = 0.5;  // b for the qubit forms, a otherwise
  int n = 1;           // fixed at 1 for the qubit forms

  Eigen::Index arity() const {
    int m = is_qubit_kind() ? 1 : n;
    return static_cast<Eigen::Index>(8) * m * m * m;
  }
  bool is_qubit_kind() const {
    return kind == QuadFormKind::Eq17_TBC || kind == QuadFormKind::Eq20_TAC;
  }
  /** Party positions whose transposition the form expands. */
  std::vector<int> transposed_parties() const {
    switch (kind) {
      case QuadFormKind::Eq26_TC_n: return {2};
      case QuadFormKind::Eq17_TBC:
      case QuadFormKind::Eq31_TBC_n: return {1, 2};
      case QuadFormKind::Eq20_TAC:
      case QuadFormKind::Eq34_TAC_n: return {0, 2};
    }
    throw Error("unreachable quad form kind");
  }
};

/** The normalization the printed coefficients omit: 7b+1, resp. (8n^3-1)a+1. */
inline double quad_form_prefactor(const QuadFormSpec& spec) {
  if (spec.is_qubit_kind()) return 7.0 * spec.param + 1.0;
  return (8.0 * spec.n * spec.n * spec.n - 1.0) * spec.param + 1.0;
}

/** Literal evaluation of the printed closed form; X is 1-based in the source,
 *  0-based here.  Coefficients are transcribed exactly as published, index
 *  slips included; the identity checker, not this function, judges them. */
inline double quad_form_closed(const QuadFormSpec& spec, const RealVector& Xv) {
  if (Xv.size() != spec.arity()) throw ArityMismatch("input length must be 8n^3");
  auto X = [&](Eigen::Index one_based) { return Xv(one_based - 1); };
  auto sq = [](double t) { return t * t; };
  const double p = spec.param;
  if (!(p >= 0.0 && p <= 1.0)) throw ParamOutOfRange("quad form parameter must lie in [0,1]");
  const double g1 = std::sqrt((1.0 - p) / 2.0);
  const double g2 = std::sqrt((1.0 + p) / 2.0);
  switch (spec.kind) {
    case QuadFormKind::Eq17_TBC: {
      return p * sq(X(2) + X(5)) + p * sq(X(3) + X(6)) + p * sq(X(4) + X(7)) +
             sq(g1 * X(6) + g2 * X(5)) + p * sq(X(1)) + p * sq(X(8)) - p * sq(X(5));
    }
    case QuadFormKind::Eq20_TAC: {
      return p * sq(X(2)) + p * sq(X(7)) - p * sq(X(5)) + p * sq(X(1) + X(6)) +
             p * sq(X(3) + X(8)) + p * sq(X(4) + X(5)) + sq(g1 * X(6) + g2 * X(5));
    }
    case QuadFormKind::Eq26_TC_n: {
      const Eigen::Index n = spec.n, n3 = 4 * n * n * n;
      double s = 0.0;
      for (Eigen::Index k = 0; k < 2 * n * n; ++k)
        for (Eigen::Index i = 2; i <= 2 * n; ++i)
          s += p * sq(X(i + 2 * n * k) + X(n3 + i + 2 * n * k - 1));
      for (Eigen::Index k = 0; k + 1 < 2 * n * n; ++k)
        s += p * sq(X(1 + 2 * n * k) + X(n3 + 4 * n + 2 * n * k));
      s += p * sq(X(n3 - 2 * n + 1));
      s += sq(g1 * X(n3 + 1) + g2 * X(n3 + 2 * n));
      return s;
    }
    case QuadFormKind::Eq31_TBC_n: {
      const Eigen::Index n = spec.n, n2 = n * n, n3 = 4 * n * n * n;
      double s = 0.0;
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index i = 2; i <= 4 * n2; ++i)
          s += p * sq(X(i + 4 * k * n2) + X(n3 + 4 * k * n2 + i - 1));
      for (Eigen::Index k = 0; k + 1 < n; ++k)
        s += p * sq(X(1 + 4 * k * n2) + X(n3 + (8 + 4 * k) * n2));
      s += sq(g1 * X(n3 + 2 * n) + g2 * X(n3 + 1));
      s += p * sq(X(n3 - 4 * n2 + 1)) + p * sq(X(n3 + 4 * n2)) - p * sq(X(n3 + 1));
      return s;
    }
    case QuadFormKind::Eq34_TAC_n: {
      const Eigen::Index n = spec.n, n3 = 4 * n * n * n;
      double s = 0.0;
      for (Eigen::Index k = 0; k < 2 * n * n; ++k)
        for (Eigen::Index i = 1; i <= 2 * n - 1; ++i)
          s += p * sq(X(i + 2 * k * n) + X(n3 + 2 * k * n + i - 1));
      for (Eigen::Index k = 0; k + 1 < 2 * n * n; ++k)
        s += p * sq(X(2 * n * (2 + k)) + X(n3 + 2 * k * n + 1));
      s += sq(g1 * X(n3 + 2 * n) + g2 * X(n3 + 1));
      s += p * sq(X(n3 + 2 * n + 1)) + p * sq(X(2 * n)) - p * sq(X(n3 + 1));
      return s;
    }
  }
  throw Error("unreachable quad form kind");
}

struct QuadFormIdentityReport {
  QuadFormSpec spec;
  int samples = 0;
  std::uint64_t seed = 0;
  /** max over samples of |f(X) - pref * X^T M X| / (1 + |f(X)|), with M the
   *  partial transpose in tripartite flat ordering. */
  double max_scaled_mismatch = 0.0;
  double max_abs_mismatch = 0.0;
  /** Same quantity with M reindexed to the split's (left x right) ordering;
   *  differs from the tripartite reading only for the T_AC kinds. */
  double max_scaled_mismatch_split_order = 0.0;
  bool holds(double tol = 1e-10) const { return max_scaled_mismatch <= tol; }
};

/** Monte-Carlo identity check of the printed closed form against the direct
 *  quadratic form of the partial transpose.  Deterministic for a given seed. */
inline QuadFormIdentityReport quad_form_identity_check(const MultipartiteState& state,
                                                       const QuadFormSpec& spec, int samples,
                                                       std::uint64_t seed) {
  if (state.dim() != spec.arity())
    throw ArityMismatch("state dimension does not match quad form arity");
  Matrix pt = partial_transpose(state.rho, state.party_dims, spec.transposed_parties());
  Bipartition split =
      spec.kind == QuadFormKind::Eq26_TC_n
          ? split_ab_c(state.party_dims)
          : (spec.kind == QuadFormKind::Eq20_TAC || spec.kind == QuadFormKind::Eq34_TAC_n
                 ? split_b_ac(state.party_dims)
                 : split_a_bc(state.party_dims));
  Matrix pt_split = to_bipartite(pt, split);
  const double pref = quad_form_prefactor(spec);
  QuadFormIdentityReport rep;
  rep.spec = spec;
  rep.samples = samples;
  rep.seed = seed;
  DetRng rng(seed);
  RealVector x(spec.arity());
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.gauss();
    double f = quad_form_closed(spec, x);
    Vector xc = x.cast<Complex>();
    double direct = (xc.adjoint() * pt * xc)(0).real();
    double direct_split = (xc.adjoint() * pt_split * xc)(0).real();
    double scale = 1.0 + std::abs(f);
    rep.max_abs_mismatch = std::max(rep.max_abs_mismatch, std::abs(f - pref * direct));
    rep.max_scaled_mismatch =
        std::max(rep.max_scaled_mismatch, std::abs(f - pref * direct) / scale);
    rep.max_scaled_mismatch_split_order =
        std::max(rep.max_scaled_mismatch_split_order, std::abs(f - pref * direct_split) / scale);
  }
  return rep;
}

}  // namespace entwb

#pragma once

#include "entwb/bipartition.hpp"
#include "entwb/states.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <utility>

namespace entwb {

/** psi = c[0] u[0] (x) v[0] + c[1] u[1] (x) v[1], c nonnegative with unit sum
 *  of squares, u and v orthonormal pairs. */
struct SchmidtRank2Vector {
  Bipartition split;
  std::array<double, 2> c{1.0, 0.0};
  std::array<Vector, 2> u;
  std::array<Vector, 2> v;

  Vector assembled() const {
    Vector bip = c[0] * kron(u[0], v[0]) + c[1] * kron(u[1], v[1]);
    return from_bipartite(bip, split);
  }
};

namespace detail {

/** Deterministic unit vector orthogonal to the columns of U (L x k, k < L). */
inline Vector orthogonal_complement_vector(const Matrix& U) {
  const Eigen::Index L = U.rows();
  for (Eigen::Index trial = 0; trial < L; ++trial) {
    Vector cand = Vector::Zero(L);
    cand(trial) = 1.0;
    cand -= U * (U.adjoint() * cand);
    double nn = cand.norm();
    if (nn > 1e-6) return Vector(cand / nn);
  }
  throw Error("no orthogonal complement found");
}

inline void require_orthonormal_pair(const Vector& v1, const Vector& v2, double tol = 1e-10) {
  if (std::abs(v1.norm() - 1.0) > tol || std::abs(v2.norm() - 1.0) > tol ||
      std::abs(v1.dot(v2)) > tol)
    throw NotOrthonormal("expected an orthonormal pair");
}

}  // namespace detail

/** Schmidt-rank-2 form of a flat tripartite vector; pads a product vector with
 *  a deterministic orthogonal complement so the pair structure is total. */
inline SchmidtRank2Vector schmidt_rank2_from_vector(const Vector& psi, const Bipartition& split,
                                                    double tol = 1e-9) {
  SchmidtDecomposition d = schmidt_decompose(psi, split);
  double top = d.coefficients(0);
  if (d.coefficients.size() > 2 && d.coefficients(2) > tol * top)
    throw NotProductForm("vector has Schmidt rank above 2");
  SchmidtRank2Vector out;
  out.split = split;
  double c1 = d.coefficients(0);
  double c2 = d.coefficients.size() > 1 ? d.coefficients(1) : 0.0;
  double nrm = std::sqrt(c1 * c1 + c2 * c2);
  out.c = {c1 / nrm, c2 / nrm};
  out.u[0] = d.left.col(0);
  out.v[0] = d.right.col(0);
  if (d.coefficients.size() > 1 && c2 > 0.0) {
    out.u[1] = d.left.col(1);
    out.v[1] = d.right.col(1);
  } else {
    out.u[1] = detail::orthogonal_complement_vector(out.u[0]);
    out.v[1] = detail::orthogonal_complement_vector(out.v[0]);
  }
  return out;
}

/** <psi| rho^{T_right} |psi> for a Schmidt-rank-2 vector; the partial transpose
 *  is taken over the split's right group.  Real within 1e-12 by Hermiticity;
 *  the imaginary part is checked, then discarded. */
inline double distill_test_value(const Matrix& pt_tri, const SchmidtRank2Vector& psi) {
  Vector p = psi.assembled();
  if (pt_tri.rows() != p.size())
    throw SplitMismatch("vector does not match the state dimension");
  Complex val = (p.adjoint() * pt_tri * p)(0);
  if (std::abs(val.imag()) > 1e-12)
    throw Error("expectation value has a non-real component");
  return val.real();
}

inline double distill_test_value(const MultipartiteState& state, const Bipartition& split,
                                 const SchmidtRank2Vector& psi) {
  if (psi.split.name() != split.name() || psi.split.party_dims != split.party_dims)
    throw SplitMismatch("vector was built for a different split");
  return distill_test_value(partial_transpose_right(state.rho, split), psi);
}

/** The compression of rho^{T_right} onto span{e_i (x) v_k}: a Hermitian
 *  2L x 2L matrix with k-major block index, so that
 *  <psi|rho^{T_right}|psi> = Y^dag M Y for Y = (c1 u1; c2 u2). */
struct MMatrix {
  Vector v1, v2;
  Matrix m;
};

inline MMatrix build_M(const Matrix& pt_tri, const Bipartition& split, const Vector& v1,
                       const Vector& v2) {
  if (v1.size() != split.right_dim || v2.size() != split.right_dim)
    throw SplitMismatch("right vectors do not match the split");
  detail::require_orthonormal_pair(v1, v2);
  const Eigen::Index L = split.left_dim, R = split.right_dim;
  Matrix ptb = to_bipartite(pt_tri, split);
  Matrix W = Matrix::Zero(L * R, 2 * L);
  for (int k = 0; k < 2; ++k) {
    const Vector& v = k == 0 ? v1 : v2;
    for (Eigen::Index i = 0; i < L; ++i)
      for (Eigen::Index j = 0; j < R; ++j) W(i * R + j, k * L + i) = v(j);
  }
  MMatrix out;
  out.v1 = v1;
  out.v2 = v2;
  out.m = W.adjoint() * ptb * W;
  return out;
}

struct Rank2MinResult {
  std::string split_name;
  double value = 0.0;
  SchmidtRank2Vector argmin;
  std::string method;  // exact-left-dim-2 | see-saw
  int restarts = 0;
  int iterations_total = 0;
  double lambda_min_bound = 0.0;  // lambda_min of the partial transpose
  std::uint64_t seed = 0;
};

/** Minimize <psi|rho^{T_right}|psi> over Schmidt-rank-2 psi.
 *
 *  When left_dim = 2 every unit vector has Schmidt rank <= 2, so the minimum
 *  is exactly lambda_min(rho^{T_right}) and the bottom eigenvector is the
 *  argmin.  Otherwise a see-saw alternates two exact eigensolves: fix an
 *  orthonormal left pair and minimize over the compressed 2R-dim space, then
 *  fix the induced right pair and minimize over the 2L-dim M-matrix space.
 *  Each half-step minimizes over a superset of the previous optimum, so the
 *  value is monotone nonincreasing.  Restart 0..C(L,2)-1 start from left
 *  basis pairs in lexicographic order, later restarts from seeded random
 *  pairs; results merge deterministically. */
inline Rank2MinResult rank2_min(const MultipartiteState& state, const Bipartition& split,
                                int restarts = 64, int iters = 200, std::uint64_t seed = 1,
                                bool force_seesaw = false) {
  Matrix pt = partial_transpose_right(state.rho, split);
  EigenResult eig = hermitian_eig(pt);
  Rank2MinResult res;
  res.split_name = split.name();
  res.lambda_min_bound = eig.values(0);
  res.seed = seed;
  const Eigen::Index L = split.left_dim, R = split.right_dim;

  if (L == 2 && !force_seesaw) {
    res.method = "exact-left-dim-2";
    res.value = eig.values(0);
    res.argmin = schmidt_rank2_from_vector(eig.vectors.col(0), split);
    return res;
  }

  res.method = "see-saw";
  res.restarts = restarts;
  Matrix ptb = to_bipartite(pt, split);

  std::vector<std::pair<Eigen::Index, Eigen::Index>> basis_pairs;
  for (Eigen::Index i = 0; i < L; ++i)
    for (Eigen::Index j = i + 1; j < L; ++j) basis_pairs.emplace_back(i, j);

  struct RestartOutcome {
    double value = 0.0;
    Vector psi_bip;
    int iterations = 0;
  };
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(std::max(restarts, 0)));

  parallel_for(static_cast<std::size_t>(std::max(restarts, 0)), [&](std::size_t ridx) {
    DetRng rng(seed + static_cast<std::uint64_t>(ridx));
    Matrix U(L, 2);
    if (ridx < basis_pairs.size()) {
      U.setZero();
      U(basis_pairs[ridx].first, 0) = 1.0;
      U(basis_pairs[ridx].second, 1) = 1.0;
    } else {
      Matrix G(L, 2);
      for (Eigen::Index i = 0; i < L; ++i)
        for (Eigen::Index k = 0; k < 2; ++k) G(i, k) = Complex(rng.gauss(), rng.gauss());
      Eigen::HouseholderQR<Matrix> qr(G);
      U = qr.householderQ() * Matrix::Identity(L, 2);
    }
    double best = 0.0;
    bool have_best = false;
    Vector psi = Vector::Zero(L * R);
    int used = 0;
    for (int it = 0; it < iters; ++it) {
      ++used;
      // left pair fixed: exact minimum over span(U) (x) C^R
      Matrix WU = Matrix::Zero(L * R, 2 * R);
      for (Eigen::Index k = 0; k < 2; ++k)
        for (Eigen::Index i = 0; i < L; ++i)
          for (Eigen::Index j = 0; j < R; ++j) WU(i * R + j, k * R + j) += U(i, k);
      EigenResult el = hermitian_eig(Matrix(WU.adjoint() * ptb * WU));
      Vector phi = el.vectors.col(0);  // 2R coefficients, k-major
      psi = WU * phi;
      // extract the induced right pair
      Matrix Phi(2, R);
      for (Eigen::Index k = 0; k < 2; ++k)
        for (Eigen::Index j = 0; j < R; ++j) Phi(k, j) = phi(k * R + j);
      // row space of Phi = span of the conjugated right singular vectors
      Eigen::JacobiSVD<Matrix> svr(Phi, Eigen::ComputeThinV);
      Matrix V(R, 2);
      if (svr.singularValues().size() > 1 && svr.singularValues()(1) > 1e-14) {
        V = svr.matrixV().conjugate().leftCols(2);
      } else {
        V.col(0) = svr.matrixV().col(0).conjugate();
        V.col(1) = detail::orthogonal_complement_vector(V.leftCols(1));
      }
      // right pair fixed: exact minimum over C^L (x) span(V)
      Matrix WV = Matrix::Zero(L * R, 2 * L);
      for (Eigen::Index k = 0; k < 2; ++k)
        for (Eigen::Index i = 0; i < L; ++i)
          for (Eigen::Index j = 0; j < R; ++j) WV(i * R + j, k * L + i) += V(j, k);
      EigenResult er = hermitian_eig(Matrix(WV.adjoint() * ptb * WV));
      double val = er.values(0);
      Vector xi = er.vectors.col(0);  // 2L coefficients, k-major
      psi = WV * xi;
      // extract the induced left pair for the next sweep
      Matrix Xi(L, 2);
      for (Eigen::Index k = 0; k < 2; ++k)
        for (Eigen::Index i = 0; i < L; ++i) Xi(i, k) = xi(k * L + i);
      Eigen::JacobiSVD<Matrix> svl(Xi, Eigen::ComputeThinU);
      if (svl.singularValues().size() > 1 && svl.singularValues()(1) > 1e-14) {
        U = svl.matrixU().leftCols(2);
      } else {
        U.col(0) = svl.matrixU().col(0);
        U.col(1) = detail::orthogonal_complement_vector(U.leftCols(1));
      }
      if (have_best && best - val < 1e-12) {
        best = std::min(best, val);
        break;
      }
      best = val;
      have_best = true;
    }
    outcomes[ridx] = {best, psi / psi.norm(), used};
  });

  double best = 0.0;
  Vector best_psi;
  bool have = false;
  for (const auto& oc : outcomes) {
    res.iterations_total += oc.iterations;
    if (!have || oc.value < best) {
      best = oc.value;
      best_psi = oc.psi_bip;
      have = true;
    }
  }
  if (!have) throw Error("rank2_min ran with zero restarts");
  res.value = best;
  res.argmin = schmidt_rank2_from_vector(from_bipartite(best_psi, split), split, 1e-7);
  return res;
}

struct MScanResult {
  std::string split_name;
  double min_lambda = 0.0;
  Vector worst_v1, worst_v2;
  int samples = 0;
  std::uint64_t seed = 0;
  bool eigen_pair_included = false;
  bool eigen_pair_is_worst = false;
};

/** lambda_min(M) minimized over sampled right pairs: `samples` seeded random
 *  orthonormal pairs plus, when the bottom eigenvector of the partial
 *  transpose admits one, its Schmidt-derived right pair.  Deterministic for a
 *  given seed. */
inline MScanResult m_positivity_scan(const MultipartiteState& state, const Bipartition& split,
                                     int samples = 1000, std::uint64_t seed = 1) {
  if (samples < 1) throw ConfigError("m_positivity_scan needs samples >= 1");
  Matrix pt = partial_transpose_right(state.rho, split);
  const Eigen::Index R = split.right_dim;
  MScanResult res;
  res.split_name = split.name();
  res.samples = samples;
  res.seed = seed;

  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(static_cast<std::size_t>(samples) + 1);
  for (int sidx = 0; sidx < samples; ++sidx) {
    DetRng rng(seed + static_cast<std::uint64_t>(sidx));
    Matrix G(R, 2);
    for (Eigen::Index i = 0; i < R; ++i)
      for (Eigen::Index k = 0; k < 2; ++k) G(i, k) = Complex(rng.gauss(), rng.gauss());
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ() * Matrix::Identity(R, 2);
    pairs.emplace_back(Q.col(0), Q.col(1));
  }
  // The bottom eigenvector's two leading Schmidt right vectors; a heuristic
  // probe direction, so ranks above 2 are fine (extra components dropped).
  std::size_t eigen_pair_index = pairs.size();
  {
    EigenResult eig = hermitian_eig(pt);
    SchmidtDecomposition d = schmidt_decompose(eig.vectors.col(0), split);
    Vector v1 = d.right.col(0);
    Vector v2 = (d.coefficients.size() > 1 && d.coefficients(1) > 1e-12 * d.coefficients(0))
                    ? Vector(d.right.col(1))
                    : detail::orthogonal_complement_vector(d.right.leftCols(1));
    pairs.emplace_back(v1, v2);
    res.eigen_pair_included = true;
  }

  bool have = false;
  std::size_t worst = 0;
  std::vector<double> lambdas(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    MMatrix mm = build_M(pt, split, pairs[i].first, pairs[i].second);
    lambdas[i] = hermitian_eig(mm.m).values(0);
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!have || lambdas[i] < res.min_lambda) {
      res.min_lambda = lambdas[i];
      worst = i;
      have = true;
    }
  }
  res.worst_v1 = pairs[worst].first;
  res.worst_v2 = pairs[worst].second;
  res.eigen_pair_is_worst = worst == eigen_pair_index;
  return res;
}

struct ProjectorPair {
  Matrix P;  // left_dim x 2, orthonormal columns
  Matrix Q;  // right_dim x 2, orthonormal columns
  std::string origin = "basis-pair";
};

/** Basis-spanned pair: P = span{e_l1, e_l2}, Q = span{e_r1, e_r2}, 0-based. */
inline ProjectorPair basis_pair(const Bipartition& split, Eigen::Index l1, Eigen::Index l2,
                                Eigen::Index r1, Eigen::Index r2) {
  if (l1 == l2 || r1 == r2 || l1 < 0 || l2 < 0 || r1 < 0 || r2 < 0 ||
      std::max(l1, l2) >= split.left_dim || std::max(r1, r2) >= split.right_dim)
    throw IndexOutOfRange("basis_pair labels must be distinct and within the split");
  ProjectorPair pp;
  pp.P = Matrix::Zero(split.left_dim, 2);
  pp.P(l1, 0) = 1.0;
  pp.P(l2, 1) = 1.0;
  pp.Q = Matrix::Zero(split.right_dim, 2);
  pp.Q(r1, 0) = 1.0;
  pp.Q(r2, 1) = 1.0;
  return pp;
}

struct CompressionResult {
  Matrix j;                // 4x4 retained-space matrix after the Q-factor transpose
  RealVector eigenvalues;  // ascending
};

/** Compress (P (x) Q) rho (P (x) Q) to the retained 2x2 (x) 2x2 space, then
 *  transpose the Q factor.  For basis pairs this reproduces the principal
 *  submatrix of rho^{T_right}. */
inline CompressionResult projector_compress(const MultipartiteState& state,
                                            const Bipartition& split,
                                            const ProjectorPair& pair) {
  if (pair.P.rows() != split.left_dim || pair.Q.rows() != split.right_dim ||
      pair.P.cols() != 2 || pair.Q.cols() != 2)
    throw SplitMismatch("projector pair does not match the split dimensions");
  detail::require_orthonormal_pair(pair.P.col(0), pair.P.col(1));
  detail::require_orthonormal_pair(pair.Q.col(0), pair.Q.col(1));
  Matrix rb = to_bipartite(state.rho, split);
  Matrix W = kron(pair.P, pair.Q);  // (L*R) x 4, retained index p-major
  Matrix C = W.adjoint() * rb * W;
  Matrix J(4, 4);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int pp = 0; pp < 2; ++pp)
        for (int qq = 0; qq < 2; ++qq) J(p * 2 + q, pp * 2 + qq) = C(p * 2 + qq, pp * 2 + q);
  CompressionResult out;
  out.j = J;
  out.eigenvalues = hermitian_eig(J).values;
  return out;
}

struct FiveFormReport {
  int n = 1;
  double a = 0.5;
  std::string variant;
  long total_pairs = 0;
  std::map<std::string, long> counts;             // F1..F5, residual
  std::map<std::string, long> heavy_variants;     // e.g. "F2:d2" when d1 != d2
  std::map<std::string, long> residual_signatures;
  struct Exceptional {
    std::array<Eigen::Index, 2> left_pair;
    std::array<Eigen::Index, 2> right_pair;
    double lambda_min = 0.0;  // of the prefactor-scaled J
  };
  std::vector<Exceptional> non_psd;
  double symbol_alpha = 0.0, symbol_d1 = 0.0, symbol_d2 = 0.0, symbol_gamma = 0.0;
};

/** Exhaustive basis-pair compression survey for the general family across
 *  A-(BC).
 *
 *  Every C(2n,2) x C(4n^2,2) retained-pair submatrix J of the prefactor-scaled
 *  rho^{T_BC} is matched, up to simultaneous row/column permutation, against
 *  the five published 4x4 forms.  The printed symbol set {0, a, (1+a)/2,
 *  sqrt(1-a^2)/2} describes the unit-weight construction; renormalization
 *  rescales the bond symbol to alpha = a(8n^3-1)/(8n^3-2n+1) and splits the
 *  heavy diagonal into d1 = (1+a)/2 and d2 = alpha + (1-a)/2, which coincide
 *  with the printed values when the weights are literal.  The third printed
 *  form is matched in its symmetric reading (its printed (1,4) entry has no
 *  transposed partner).  Unmatched J patterns are tallied by canonical
 *  signature, and every non-PSD J is listed. */
inline FiveFormReport five_form_classify(const MultipartiteState& state, double tol = 1e-10) {
  if (state.params.count("a") == 0)
    throw ConfigError("five_form_classify applies to the general family");
  if (state.variant.extra_projector != ExtraProjector::Consistent)
    throw ConfigError("five_form_classify expects the consistent extra projector");
  const int n = static_cast<int>(state.param("n"));
  const double a = state.param("a");
  const Eigen::Index dA = 2 * n, dBC = 4 * static_cast<Eigen::Index>(n) * n;
  const double N = 8.0 * n * n * n - 1.0;
  const double trace_insep = (8.0 * n * n * n - 2.0 * n + 1.0) / N;
  const double pref = N * a + 1.0;

  FiveFormReport rep;
  rep.n = n;
  rep.a = a;
  rep.variant = variant_name(state.variant);
  rep.symbol_alpha =
      state.variant.normalization == Normalization::Renormalized ? a / trace_insep : a;
  rep.symbol_d1 = (1.0 + a) / 2.0;
  rep.symbol_d2 = rep.symbol_alpha + (1.0 - a) / 2.0;
  rep.symbol_gamma = std::sqrt(1.0 - a * a) / 2.0;
  const double al = rep.symbol_alpha, d1 = rep.symbol_d1, d2 = rep.symbol_d2,
               ga = rep.symbol_gamma;

  Matrix pt = partial_transpose(state.rho, state.party_dims, {1, 2});

  struct Form {
    std::string name;
    std::string heavy;  // "", "d1", "d2", "d1d2"
    Eigen::Matrix4d f;
  };
  auto F = [](std::initializer_list<double> v) {
    Eigen::Matrix4d m;
    int i = 0;
    for (double x : v) {
      m(i / 4, i % 4) = x;
      ++i;
    }
    return m;
  };
  std::vector<Form> forms;
  forms.push_back({"F1", "", F({al, 0, 0, 0, 0, al, 0, 0, 0, 0, al, 0, 0, 0, 0, al})});
  forms.push_back({"F2", "d1", F({d1, 0, 0, 0, 0, al, 0, 0, 0, 0, al, 0, 0, 0, 0, al})});
  forms.push_back({"F3", "", F({al, 0, 0, 0, 0, al, al, 0, 0, al, al, 0, 0, 0, 0, al})});
  forms.push_back({"F4", "d1", F({al, 0, 0, 0, 0, al, al, 0, 0, al, d1, 0, 0, 0, 0, al})});
  forms.push_back({"F5", "d1d2", F({al, 0, 0, 0, 0, al, 0, 0, 0, 0, d1, ga, 0, 0, ga, d2})});
  if (std::abs(d1 - d2) > tol) {
    forms.push_back({"F2", "d2", F({d2, 0, 0, 0, 0, al, 0, 0, 0, 0, al, 0, 0, 0, 0, al})});
    forms.push_back({"F4", "d2", F({al, 0, 0, 0, 0, al, al, 0, 0, al, d2, 0, 0, 0, 0, al})});
  }

  std::vector<std::array<int, 4>> perms;
  {
    std::array<int, 4> p{0, 1, 2, 3};
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  auto quantize = [&](double x) -> std::string {
    struct Sym {
      const char* name;
      double val;
    };
    const Sym syms[] = {{"0", 0.0}, {"a", al}, {"d1", d1}, {"d2", d2}, {"g", ga}};
    for (const auto& sy : syms)
      if (std::abs(x - sy.val) <= tol * std::max(1.0, std::abs(sy.val))) return sy.name;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
  };

  for (Eigen::Index a1 = 0; a1 < dA; ++a1)
    for (Eigen::Index a2 = a1 + 1; a2 < dA; ++a2)
      for (Eigen::Index q1 = 0; q1 < dBC; ++q1)
        for (Eigen::Index q2 = q1 + 1; q2 < dBC; ++q2) {
          ++rep.total_pairs;
          std::array<Eigen::Index, 4> rows{a1 * dBC + q1, a1 * dBC + q2, a2 * dBC + q1,
                                           a2 * dBC + q2};
          Eigen::Matrix4d J;
          for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
              J(r, c) = pref * pt(rows[static_cast<std::size_t>(r)],
                                  rows[static_cast<std::size_t>(c)])
                                   .real();
          Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(J);
          double lmin = es.eigenvalues()(0);
          double scale = std::max(1.0, std::abs(es.eigenvalues()(3)));
          if (lmin < -1e-12 * scale)
            rep.non_psd.push_back({{a1, a2}, {q1, q2}, lmin});

          const Form* matched = nullptr;
          for (const auto& form : forms) {
            for (const auto& p : perms) {
              double dmax = 0.0;
              for (int r = 0; r < 4 && dmax <= tol; ++r)
                for (int c = 0; c < 4; ++c)
                  dmax = std::max(dmax, std::abs(J(p[static_cast<std::size_t>(r)],
                                                   p[static_cast<std::size_t>(c)]) -
                                                 form.f(r, c)));
              if (dmax <= tol) {
                matched = &form;
                break;
              }
            }
            if (matched) break;
          }
          if (matched) {
            ++rep.counts[matched->name];
            if (!matched->heavy.empty())
              ++rep.heavy_variants[matched->name + ":" + matched->heavy];
          } else {
            ++rep.counts["residual"];
            std::string best_sig;
            for (const auto& p : perms) {
              std::string sig;
              for (int r = 0; r < 4; ++r)
                for (int c = r; c < 4; ++c) {
                  sig += quantize(J(p[static_cast<std::size_t>(r)],
                                    p[static_cast<std::size_t>(c)]));
                  sig += ",";
                }
              if (best_sig.empty() || sig < best_sig) best_sig = sig;
            }
            ++rep.residual_signatures[best_sig];
          }
        }
  return rep;
}

}  // namespace entwb

#pragma once

#include "entwb/linalg.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>

namespace entwb {

enum class Party { A = 0, B = 1, C = 2 };

inline char party_letter(Party p) { return static_cast<char>('A' + static_cast<int>(p)); }

/** A two-group partition of the parties, with the index bijections between
 *  tripartite flat indices and (left, right) pair indices.  Within each group
 *  the original party order is preserved, so for A-(BC) and (AB)-C the
 *  bipartite flattening coincides with the tripartite one, while B-(AC)
 *  induces a genuine permutation. */
struct Bipartition {
  std::vector<Party> left;
  std::vector<Party> right;
  std::vector<int> party_dims;
  Eigen::Index left_dim = 0;
  Eigen::Index right_dim = 0;
  std::vector<Eigen::Index> tri_of_bip;  // bipartite flat -> tripartite flat
  std::vector<Eigen::Index> bip_of_tri;  // inverse map

  static Bipartition make(const std::vector<Party>& left_parties,
                          const std::vector<int>& dims) {
    if (dims.size() != 3) throw DimensionMismatch("Bipartition::make expects three parties");
    if (left_parties.empty() || left_parties.size() >= 3)
      throw SplitMismatch("left group must contain one or two parties");
    Bipartition s;
    s.party_dims = dims;
    std::array<bool, 3> in_left{false, false, false};
    for (Party p : left_parties) {
      auto idx = static_cast<std::size_t>(p);
      if (in_left[idx]) throw SplitMismatch("duplicate party in left group");
      in_left[idx] = true;
    }
    for (int p = 0; p < 3; ++p)
      (in_left[static_cast<std::size_t>(p)] ? s.left : s.right).push_back(static_cast<Party>(p));
    s.left_dim = 1;
    for (Party p : s.left) s.left_dim *= dims[static_cast<std::size_t>(p)];
    s.right_dim = 1;
    for (Party p : s.right) s.right_dim *= dims[static_cast<std::size_t>(p)];
    Eigen::Index D = s.left_dim * s.right_dim;
    s.tri_of_bip.assign(static_cast<std::size_t>(D), 0);
    s.bip_of_tri.assign(static_cast<std::size_t>(D), 0);
    for (Eigen::Index tri = 0; tri < D; ++tri) {
      std::array<Eigen::Index, 3> idx{};
      Eigen::Index rem = tri;
      for (int p = 2; p >= 0; --p) {
        idx[static_cast<std::size_t>(p)] = rem % dims[static_cast<std::size_t>(p)];
        rem /= dims[static_cast<std::size_t>(p)];
      }
      Eigen::Index lf = 0;
      for (Party p : s.left) lf = lf * dims[static_cast<std::size_t>(p)] + idx[static_cast<std::size_t>(p)];
      Eigen::Index rf = 0;
      for (Party p : s.right) rf = rf * dims[static_cast<std::size_t>(p)] + idx[static_cast<std::size_t>(p)];
      Eigen::Index bip = lf * s.right_dim + rf;
      s.tri_of_bip[static_cast<std::size_t>(bip)] = tri;
      s.bip_of_tri[static_cast<std::size_t>(tri)] = bip;
    }
    return s;
  }

  std::string name() const {
    auto group = [](const std::vector<Party>& g) {
      std::string s;
      if (g.size() > 1) s += "(";
      for (Party p : g) s += party_letter(p);
      if (g.size() > 1) s += ")";
      return s;
    };
    return group(left) + "-" + group(right);
  }
};

inline Bipartition split_a_bc(const std::vector<int>& dims) {
  return Bipartition::make({Party::A}, dims);
}
inline Bipartition split_b_ac(const std::vector<int>& dims) {
  return Bipartition::make({Party::B}, dims);
}
inline Bipartition split_ab_c(const std::vector<int>& dims) {
  return Bipartition::make({Party::A, Party::B}, dims);
}

/** The three splits in report order. */
inline std::vector<Bipartition> all_splits(const std::vector<int>& dims) {
  return {split_a_bc(dims), split_b_ac(dims), split_ab_c(dims)};
}

/** Transpose the indices of the given party positions (0-based into dims).
 *  Works for any party count; the full set is the global transpose. */
inline Matrix partial_transpose(const Matrix& M, const std::vector<int>& dims,
                                const std::vector<int>& subset) {
  if (subset.empty()) throw EmptySubset("partial_transpose needs a nonempty party subset");
  Eigen::Index D = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionMismatch("party dimensions must be positive");
    D *= d;
  }
  if (M.rows() != D || M.cols() != D)
    throw DimensionMismatch("matrix size does not match party dimensions");
  std::vector<bool> flip(dims.size(), false);
  for (int p : subset) {
    if (p < 0 || p >= static_cast<int>(dims.size()))
      throw IndexOutOfRange("party position outside dims list");
    if (flip[static_cast<std::size_t>(p)]) throw IndexOutOfRange("duplicate party in subset");
    flip[static_cast<std::size_t>(p)] = true;
  }
  const auto nparties = dims.size();
  auto unflatten = [&](Eigen::Index f, std::vector<Eigen::Index>& idx) {
    for (std::size_t p = nparties; p-- > 0;) {
      idx[p] = f % dims[p];
      f /= dims[p];
    }
  };
  auto flatten = [&](const std::vector<Eigen::Index>& idx) {
    Eigen::Index f = 0;
    for (std::size_t p = 0; p < nparties; ++p) f = f * dims[p] + idx[p];
    return f;
  };
  Matrix out(D, D);
  std::vector<Eigen::Index> ri(nparties), ci(nparties), rr(nparties), cc(nparties);
  for (Eigen::Index r = 0; r < D; ++r) {
    unflatten(r, ri);
    for (Eigen::Index c = 0; c < D; ++c) {
      unflatten(c, ci);
      rr = ri;
      cc = ci;
      for (std::size_t p = 0; p < nparties; ++p)
        if (flip[p]) std::swap(rr[p], cc[p]);
      out(flatten(rr), flatten(cc)) = M(r, c);
    }
  }
  return out;
}

inline std::vector<int> party_positions(const std::vector<Party>& group) {
  std::vector<int> out;
  for (Party p : group) out.push_back(static_cast<int>(p));
  return out;
}

/** Partial transpose over the right group of the split (the PPT-test direction). */
inline Matrix partial_transpose_right(const Matrix& M, const Bipartition& split) {
  return partial_transpose(M, split.party_dims, party_positions(split.right));
}

/** Reindex a tripartite matrix into the split's (left x right) ordering.
 *  A permutation similarity: the spectrum is untouched. */
inline Matrix to_bipartite(const Matrix& M, const Bipartition& split) {
  Eigen::Index D = split.left_dim * split.right_dim;
  if (M.rows() != D || M.cols() != D)
    throw DimensionMismatch("to_bipartite: matrix does not match split dimensions");
  Matrix out(D, D);
  for (Eigen::Index p = 0; p < D; ++p)
    for (Eigen::Index q = 0; q < D; ++q)
      out(p, q) = M(split.tri_of_bip[static_cast<std::size_t>(p)],
                    split.tri_of_bip[static_cast<std::size_t>(q)]);
  return out;
}

inline Matrix from_bipartite(const Matrix& M, const Bipartition& split) {
  Eigen::Index D = split.left_dim * split.right_dim;
  if (M.rows() != D || M.cols() != D)
    throw DimensionMismatch("from_bipartite: matrix does not match split dimensions");
  Matrix out(D, D);
  for (Eigen::Index p = 0; p < D; ++p)
    for (Eigen::Index q = 0; q < D; ++q)
      out(split.tri_of_bip[static_cast<std::size_t>(p)],
          split.tri_of_bip[static_cast<std::size_t>(q)]) = M(p, q);
  return out;
}

inline Vector to_bipartite(const Vector& v, const Bipartition& split) {
  Eigen::Index D = split.left_dim * split.right_dim;
  if (v.size() != D) throw DimensionMismatch("to_bipartite: vector does not match split");
  Vector out(D);
  for (Eigen::Index p = 0; p < D; ++p) out(p) = v(split.tri_of_bip[static_cast<std::size_t>(p)]);
  return out;
}

inline Vector from_bipartite(const Vector& v, const Bipartition& split) {
  Eigen::Index D = split.left_dim * split.right_dim;
  if (v.size() != D) throw DimensionMismatch("from_bipartite: vector does not match split");
  Vector out(D);
  for (Eigen::Index p = 0; p < D; ++p) out(split.tri_of_bip[static_cast<std::size_t>(p)]) = v(p);
  return out;
}

/** Reshape a tripartite-ordered vector into the split's left_dim x right_dim matrix. */
inline Matrix split_reshape(const Vector& v, const Bipartition& split) {
  Vector w = to_bipartite(v, split);
  Matrix W(split.left_dim, split.right_dim);
  for (Eigen::Index i = 0; i < split.left_dim; ++i)
    for (Eigen::Index j = 0; j < split.right_dim; ++j) W(i, j) = w(i * split.right_dim + j);
  return W;
}

struct SchmidtDecomposition {
  RealVector coefficients;  // descending
  Matrix left;              // orthonormal columns in C^left_dim
  Matrix right;             // orthonormal columns in C^right_dim
};

/** v = sum_k coefficients(k) * left_k (x) right_k across the split. */
inline SchmidtDecomposition schmidt_decompose(const Vector& v, const Bipartition& split) {
  if (v.norm() <= 0.0) throw ZeroVector("schmidt_decompose needs a nonzero vector");
  Eigen::JacobiSVD<Matrix> svd(split_reshape(v, split),
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  return out;
}

inline int schmidt_rank(const Vector& v, const Bipartition& split, double tol = 1e-9) {
  SchmidtDecomposition d = schmidt_decompose(v, split);
  if (d.coefficients.size() == 0) return 0;
  double top = d.coefficients(0);
  int r = 0;
  for (Eigen::Index k = 0; k < d.coefficients.size(); ++k)
    if (d.coefficients(k) > tol * top) ++r;
  return r;
}

enum class Side { Left, Right };

/** A product vector across a split with its factor pair stored explicitly, so
 *  partial conjugation is exact.  assembled() returns tripartite ordering. */
struct CandidateProductVector {
  Bipartition split;
  Vector left_factor;
  Vector right_factor;
  std::string family = "searched";
  std::map<std::string, double> params;

  Vector assembled_bipartite() const { return kron(left_factor, right_factor); }
  Vector assembled() const { return from_bipartite(assembled_bipartite(), split); }

  CandidateProductVector conjugated(Side side) const {
    CandidateProductVector out = *this;
    if (side == Side::Left)
      out.left_factor = left_factor.conjugate();
    else
      out.right_factor = right_factor.conjugate();
    return out;
  }
};

/** Factor a flat tripartite vector across the split; rejects vectors whose
 *  second Schmidt coefficient exceeds tol relative to the first. */
inline CandidateProductVector product_from_flat(const Vector& v, const Bipartition& split,
                                                double tol = 1e-10) {
  SchmidtDecomposition d = schmidt_decompose(v, split);
  if (d.coefficients.size() > 1 && d.coefficients(1) > tol * d.coefficients(0))
    throw NotProductForm("vector has Schmidt rank above 1 at the given tolerance");
  CandidateProductVector out;
  out.split = split;
  out.left_factor = d.left.col(0) * d.coefficients(0);
  out.right_factor = d.right.col(0);
  return out;
}

struct MinorWitness {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  double value = 0.0;
};

/** Most negative 2x2 principal minor M(i,i)M(j,j) - |M(i,j)|^2, if any is
 *  below -tol.  A negative witness certifies that M is not PSD; a full
 *  eigensolve remains the authoritative test. */
inline std::optional<MinorWitness> minor2_scan(const Matrix& M, double tol = 1e-12) {
  if (!is_hermitian(M)) throw NotHermitian("minor2_scan expects a Hermitian matrix");
  MinorWitness best;
  bool found = false;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = i + 1; j < M.cols(); ++j) {
      double m = M(i, i).real() * M(j, j).real() - std::norm(M(i, j));
      if (!found || m < best.value) {
        best = {i, j, m};
        found = true;
      }
    }
  if (found && best.value < -tol) return best;
  return std::nullopt;
}

}  // namespace entwb

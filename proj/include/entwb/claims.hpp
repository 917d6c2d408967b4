#pragma once

#include "entwb/config.hpp"
#include "entwb/criteria.hpp"
#include "entwb/distill.hpp"
#include "entwb/quadform.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace entwb {

/** One mechanically checked published claim.
 *
 *  status semantics: "confirmed" means every instance on the configured grid
 *  checked out; "refuted" means at least one instance failed cleanly (beyond
 *  the coarse non-membership / negativity cuts); "inconclusive" means some
 *  instance landed between the accept and reject thresholds or the claim
 *  quantifies over an infinite family that sampling cannot confirm.  A
 *  refuted claim is a result, not an error: runs exit 0 either way. */
struct ClaimVerdict {
  std::string claim_id;
  std::string paper_anchor;  // section / display locator in the source text
  std::string statement;     // what is checked, in toolkit vocabulary
  Json inputs = Json::object();
  Json evidence = Json::object();
  std::string status = "inconclusive";
  std::vector<std::string> cross_refs;

  Json to_json() const {
    Json j;
    j["claim_id"] = claim_id;
    j["paper_anchor"] = paper_anchor;
    j["statement"] = statement;
    j["status"] = status;
    j["cross_refs"] = cross_refs;
    j["inputs"] = inputs;
    j["evidence"] = evidence;
    return j;
  }
};

namespace detail {

inline Json jvec(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back({v(i).real(), v(i).imag()});
  return a;
}

inline Json jinertia(const Inertia& in) {
  return Json{{"n_plus", in.n_plus}, {"n_minus", in.n_minus}, {"n_zero", in.n_zero}};
}

inline Json jmembership(const CandidateMembership& m) {
  Json j;
  j["family"] = m.family;
  j["residual_home"] = m.residual_home;
  j["residual_conj"] = m.residual_conj;
  j["in_home"] = m.in_home;
  j["conj_in_pt"] = m.conj_in_pt;
  j["gray_zone"] = m.gray_zone;
  j["qualifying"] = m.qualifying;
  return j;
}

inline Json jrange(const RangeCriterionReport& r) {
  Json j;
  j["home"] = r.home;
  j["home_rank"] = r.home_rank;
  j["qualifying_rank"] = r.qualifying_rank;
  j["spanning_defect"] = r.spanning_defect;
  j["any_gray"] = r.any_gray;
  j["verdict"] = r.verdict;
  Json cands = Json::array();
  for (const auto& c : r.candidates) cands.push_back(jmembership(c));
  j["candidates"] = cands;
  return j;
}

inline Json jwitness(const SchmidtRank2Vector& psi) {
  Json j;
  j["split"] = psi.split.name();
  j["c"] = {psi.c[0], psi.c[1]};
  j["u"] = {jvec(psi.u[0]), jvec(psi.u[1])};
  j["v"] = {jvec(psi.v[0]), jvec(psi.v[1])};
  return j;
}

inline Json jrank2(const Rank2MinResult& r) {
  Json j;
  j["split"] = r.split_name;
  j["method"] = r.method;
  j["value"] = r.value;
  j["lambda_min_bound"] = r.lambda_min_bound;
  j["restarts"] = r.restarts;
  j["iterations_total"] = r.iterations_total;
  return j;
}

inline Json jquad(const QuadFormIdentityReport& r) {
  Json j;
  j["kind"] = quad_form_kind_name(r.spec.kind);
  j["n"] = r.spec.n;
  j["param"] = r.spec.param;
  j["samples"] = r.samples;
  j["max_scaled_mismatch"] = r.max_scaled_mismatch;
  j["max_scaled_mismatch_split_order"] = r.max_scaled_mismatch_split_order;
  j["holds"] = r.holds();
  return j;
}

inline Json jfive(const FiveFormReport& r, std::size_t signature_cap = 16) {
  Json j;
  j["n"] = r.n;
  j["a"] = r.a;
  j["variant"] = r.variant;
  j["total_pairs"] = r.total_pairs;
  Json counts = Json::object();
  for (const auto& [k, v] : r.counts) counts[k] = v;
  j["counts"] = counts;
  Json heavy = Json::object();
  for (const auto& [k, v] : r.heavy_variants) heavy[k] = v;
  j["heavy_variants"] = heavy;
  Json sigs = Json::object();
  std::size_t emitted = 0;
  for (const auto& [k, v] : r.residual_signatures) {
    if (emitted++ == signature_cap) break;
    sigs[k] = v;
  }
  j["residual_signatures"] = sigs;
  j["residual_signatures_truncated"] =
      r.residual_signatures.size() > signature_cap;
  Json bad = Json::array();
  for (const auto& e : r.non_psd)
    bad.push_back({{"left_pair", {static_cast<long>(e.left_pair[0]),
                                  static_cast<long>(e.left_pair[1])}},
                   {"right_pair", {static_cast<long>(e.right_pair[0]),
                                   static_cast<long>(e.right_pair[1])}},
                   {"lambda_min", e.lambda_min}});
  j["non_psd"] = bad;
  j["symbols"] = {{"alpha", r.symbol_alpha},
                  {"d1", r.symbol_d1},
                  {"d2", r.symbol_d2},
                  {"gamma", r.symbol_gamma}};
  return j;
}

/** Grid material shared by the claim checks. */
struct ClaimsContext {
  RunConfig cfg;
  std::vector<MultipartiteState> sigma;                 // one per b_grid entry
  std::map<std::pair<int, int>, MultipartiteState> rho; // (n index, a index)
  std::vector<int> rep_a;                               // endpoint indices
  int rep_b = 0;                                        // middle of b_grid
};

inline ClaimsContext make_context(const RunConfig& cfg) {
  ClaimsContext cx;
  cx.cfg = cfg;
  for (double b : cfg.b_grid) cx.sigma.push_back(sigma_state(b));
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
    for (std::size_t j = 0; j < cfg.a_grid.size(); ++j)
      cx.rho.emplace(std::make_pair(static_cast<int>(i), static_cast<int>(j)),
                     rho_state(cfg.n_list[i], cfg.a_grid[j], cfg.variant));
  cx.rep_a.push_back(0);
  if (cfg.a_grid.size() > 1)
    cx.rep_a.push_back(static_cast<int>(cfg.a_grid.size()) - 1);
  cx.rep_b = static_cast<int>((cfg.b_grid.size() - 1) / 2);
  return cx;
}

}  // namespace detail

namespace claims_detail {

using detail::ClaimsContext;

inline ClaimVerdict c1_printed_state_table(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C1";
  c.paper_anchor = "S2, display (4)";
  c.statement =
      "the printed 8x8 table reproduces the constructed qubit-family state "
      "entry for entry";
  c.inputs = {{"b_grid", cx.cfg.b_grid}, {"tolerance", 1e-12}};
  Json rows = Json::array();
  bool all_clean = true;
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    double b = cx.cfg.b_grid[i];
    auto mism = matrix_compare(cx.sigma[i].rho, printed::sigma_matrix(b), 1e-12);
    Json ms = Json::array();
    for (const auto& m : mism)
      ms.push_back({{"row", m.row},
                    {"col", m.col},
                    {"constructed", m.lhs.real()},
                    {"printed", m.rhs.real()},
                    {"abs_diff", m.abs_diff}});
    rows.push_back({{"b", b}, {"mismatch_count", mism.size()}, {"mismatches", ms}});
    all_clean = all_clean && mism.empty();
  }
  c.evidence["per_b"] = rows;
  c.evidence["note"] =
      "whenever b > 0 exactly one entry disagrees: position (5,5) (0-based) "
      "prints (1-b)/2 where the construction gives (1+b)/2, both scaled by "
      "1/(7b+1); the printed table then has trace (7b+1-b)/(7b+1) != 1";
  c.status = all_clean ? "confirmed" : "refuted";
  return c;
}

inline ClaimVerdict c2_printed_tc_table(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C2";
  c.paper_anchor = "S2.1, display (5)";
  c.statement =
      "the printed table for the (AB)-C partial transpose matches the "
      "computed partial transpose of the constructed state";
  c.inputs = {{"b_grid", cx.cfg.b_grid}, {"tolerance", 1e-12}};
  Json rows = Json::array();
  bool all_clean = true;
  Bipartition split = split_ab_c({2, 2, 2});
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    double b = cx.cfg.b_grid[i];
    Matrix pt = partial_transpose_right(cx.sigma[i].rho, split);
    Matrix printed = printed::sigma_tc_matrix(b);
    auto mism = matrix_compare(pt, printed, 1e-12);
    double maxdiff = (pt - printed).cwiseAbs().maxCoeff();
    rows.push_back({{"b", b}, {"mismatch_count", mism.size()}, {"max_abs_diff", maxdiff}});
    all_clean = all_clean && mism.empty();
  }
  c.evidence["per_b"] = rows;
  c.status = all_clean ? "confirmed" : "refuted";
  c.cross_refs = {"C1"};
  return c;
}

inline ClaimVerdict c3_unitary_relation(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C3";
  c.paper_anchor = "S2.1, displays (6)-(7)";
  c.statement =
      "the (AB)-C partial transpose equals (I x I x U) sigma (I x I x U)^dag "
      "with U the 2x2 basis swap, so it is positive and unitarily equivalent "
      "to the state itself";
  c.inputs = {{"b_grid", cx.cfg.b_grid}, {"tolerance", 1e-12}};
  Matrix U(2, 2);
  U << 0, 1, 1, 0;
  Matrix conj_op = kron(Matrix(Matrix::Identity(4, 4)), U);
  Bipartition split = split_ab_c({2, 2, 2});
  Json rows = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    Matrix pt = partial_transpose_right(cx.sigma[i].rho, split);
    Matrix rhs = conj_op * cx.sigma[i].rho * conj_op.adjoint();
    double dev = (pt - rhs).cwiseAbs().maxCoeff();
    rows.push_back({{"b", cx.cfg.b_grid[i]}, {"max_abs_deviation", dev}});
    ok = ok && dev <= 1e-12;
  }
  c.evidence["per_b"] = rows;
  c.status = ok ? "confirmed" : "refuted";
  return c;
}

inline ClaimVerdict c4_sigma_ppt_rank(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C4";
  c.paper_anchor = "S2.1, after display (5)";
  c.statement =
      "the qubit-family state is PPT across (AB)-C and both the state and "
      "its partial transpose have rank 5";
  c.inputs = {{"b_grid", cx.cfg.b_grid},
              {"tol_psd", cx.cfg.tol.psd},
              {"tol_rank", cx.cfg.tol.rank},
              {"m_scan_samples", 200},
              {"seed", cx.cfg.seed}};
  Bipartition split = split_ab_c({2, 2, 2});
  Json rows = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    PptResult r = ppt_test(cx.sigma[i], split, cx.cfg.tol.psd);
    int state_rank = rank_of(cx.sigma[i].rho, cx.cfg.tol.rank);
    MScanResult scan = m_positivity_scan(cx.sigma[i], split, 200, cx.cfg.seed);
    rows.push_back({{"b", cx.cfg.b_grid[i]},
                    {"lambda_min", r.lambda_min},
                    {"is_ppt", r.is_ppt},
                    {"pt_rank", r.rank},
                    {"pt_inertia", detail::jinertia(r.inertia)},
                    {"state_rank", state_rank},
                    {"m_scan_min_lambda", scan.min_lambda}});
    ok = ok && r.is_ppt && r.rank == 5 && state_rank == 5 &&
         scan.min_lambda >= -1e-12;
  }
  c.evidence["per_b"] = rows;
  c.evidence["note"] =
      "the sampled compression scan across (AB)-C stays nonnegative, as "
      "positivity of the partial transpose requires";
  c.status = ok ? "confirmed" : "refuted";
  c.cross_refs = {"C3"};
  return c;
}

inline ClaimVerdict c5_sigma_inertia(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C5";
  c.paper_anchor = "S2.2, display (17)-(18); S2.3, display (22)";
  c.statement =
      "the partial transposes across A-(BC) and B-(AC) have positive inertia "
      "index 6 and rank 7 (hence exactly one negative eigenvalue), making "
      "the state NPT for both splits; the printed A-(BC) table matches";
  c.inputs = {{"b_grid", cx.cfg.b_grid}, {"tol_rank", cx.cfg.tol.rank}};
  Json rows = Json::array();
  bool ok = true;
  std::vector<int> dims{2, 2, 2};
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    double b = cx.cfg.b_grid[i];
    PptResult rbc = ppt_test(cx.sigma[i], split_a_bc(dims), cx.cfg.tol.psd);
    PptResult rac = ppt_test(cx.sigma[i], split_b_ac(dims), cx.cfg.tol.psd);
    Matrix tbc = partial_transpose(cx.sigma[i].rho, dims, {1, 2});
    auto mism = matrix_compare(tbc, printed::sigma_tbc_matrix(b), 1e-12);
    Inertia expect{6, 1, 1, 0.0};
    rows.push_back({{"b", b},
                    {"a_bc", {{"lambda_min", rbc.lambda_min},
                              {"inertia", detail::jinertia(rbc.inertia)},
                              {"rank", rbc.rank}}},
                    {"b_ac", {{"lambda_min", rac.lambda_min},
                              {"inertia", detail::jinertia(rac.inertia)},
                              {"rank", rac.rank}}},
                    {"printed_table_mismatches", mism.size()}});
    ok = ok && rbc.inertia == expect && rac.inertia == expect && !rbc.is_ppt &&
         !rac.is_ppt && mism.empty();
  }
  c.evidence["per_b"] = rows;
  c.evidence["note"] =
      "the two splits share the same spectrum; the single negative eigenvalue "
      "is the hook for the distillability checks in C8 and C9";
  c.status = ok ? "confirmed" : "refuted";
  return c;
}

inline ClaimVerdict c6_sigma_quad_forms(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C6";
  c.paper_anchor = "S2.2, display (18); S2.3, display (22)";
  c.statement =
      "the printed real quadratic forms equal (7b+1) X^T M X with M the "
      "A-(BC) and B-(AC) partial transposes";
  c.inputs = {{"b_grid", cx.cfg.b_grid},
              {"samples", 1000},
              {"seed", cx.cfg.seed},
              {"tolerance", 1e-10}};
  Json rows = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    double b = cx.cfg.b_grid[i];
    for (QuadFormKind kind : {QuadFormKind::Eq17_TBC, QuadFormKind::Eq20_TAC}) {
      QuadFormSpec spec;
      spec.kind = kind;
      spec.param = b;
      spec.n = 1;
      QuadFormIdentityReport rep =
          quad_form_identity_check(cx.sigma[i], spec, 1000, cx.cfg.seed);
      Json row = detail::jquad(rep);
      row["b"] = b;
      rows.push_back(row);
      ok = ok && rep.holds();
    }
  }
  c.evidence["per_b"] = rows;
  c.status = ok ? "confirmed" : "refuted";
  c.cross_refs = {"C5"};
  return c;
}

inline ClaimVerdict c7_sigma_range_criterion(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C7";
  c.paper_anchor = "S2.1, displays (8)-(16)";
  c.statement =
      "the four published product-vector families lie in the range of the "
      "state, only the first survives partial conjugation into the range of "
      "the partial transpose, and the surviving span falls short of the "
      "range: the state is entangled (with C4, bound entangled) across "
      "(AB)-C";
  c.inputs = {{"b_grid", cx.cfg.b_grid},
              {"tol_membership", cx.cfg.tol.membership},
              {"non_membership_cut", cx.cfg.tol.non_membership}};
  Bipartition split = split_ab_c({2, 2, 2});
  Json rows = Json::array();
  bool ok = true;
  bool any_gray = false;
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    double b = cx.cfg.b_grid[i];
    Json row;
    row["b"] = b;
    try {
      RangeCriterionReport rep = range_criterion(cx.sigma[i], split, cx.cfg.tol);
      row["report"] = detail::jrange(rep);
      ok = ok && rep.verdict == "entangled";
      any_gray = any_gray || rep.any_gray;
    } catch (const DegenerateParameter& ex) {
      row["skipped"] = ex.what();
    }
    rows.push_back(row);
  }
  c.evidence["per_b"] = rows;
  c.status = !ok ? "refuted" : (any_gray ? "inconclusive" : "confirmed");
  c.cross_refs = {"C4"};
  return c;
}

inline ClaimVerdict c8_sigma_distill_a_bc(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C8";
  c.paper_anchor = "S2.2, displays (19)-(21)";
  c.statement =
      "every Schmidt-rank-2 vector scores nonnegatively against the A-(BC) "
      "partial transpose (the compressed matrix M is positive), so the state "
      "is 1-copy undistillable across A-(BC)";
  c.inputs = {{"b_grid", cx.cfg.b_grid},
              {"seed", cx.cfg.seed},
              {"m_scan_samples", 200},
              {"tol_psd", cx.cfg.tol.psd}};
  std::vector<int> dims{2, 2, 2};
  Bipartition split = split_a_bc(dims);
  Json rows = Json::array();
  bool negative_everywhere = true;
  bool negative_somewhere = false;
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    double b = cx.cfg.b_grid[i];
    Rank2MinResult r = rank2_min(cx.sigma[i], split, 64, 200, cx.cfg.seed);
    MScanResult scan = m_positivity_scan(cx.sigma[i], split, 200, cx.cfg.seed);
    Json row = detail::jrank2(r);
    row["b"] = b;
    row["m_scan_min_lambda"] = scan.min_lambda;
    row["m_scan_eigen_pair_is_worst"] = scan.eigen_pair_is_worst;
    rows.push_back(row);
    bool neg = r.value < -cx.cfg.tol.psd;
    negative_everywhere = negative_everywhere && neg;
    negative_somewhere = negative_somewhere || neg;
    if (static_cast<int>(i) == cx.rep_b) {
      c.evidence["witness"] = detail::jwitness(r.argmin);
      c.evidence["witness_b"] = b;
      c.evidence["witness_value"] =
          distill_test_value(cx.sigma[i], split, r.argmin);
      MMatrix mm = build_M(partial_transpose_right(cx.sigma[i].rho, split),
                           split, r.argmin.v[0], r.argmin.v[1]);
      c.evidence["witness_m_eigenvalues"] = [&] {
        EigenResult e = hermitian_eig(mm.m);
        std::vector<double> vals(e.values.data(), e.values.data() + e.values.size());
        return vals;
      }();
    }
  }
  c.evidence["per_b"] = rows;
  c.evidence["why"] =
      "the A-(BC) partial transpose has one negative eigenvalue (C5, "
      "acceptance criterion 4); the left factor is 2-dimensional, so every "
      "vector has Schmidt rank at most 2 and the bottom eigenvector itself "
      "is an admissible witness with a strictly negative score";
  c.status = negative_everywhere ? "refuted"
                                 : (negative_somewhere ? "refuted" : "inconclusive");
  c.cross_refs = {"C5"};
  return c;
}

inline ClaimVerdict c9_sigma_distill_b_ac(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C9";
  c.paper_anchor = "S2.3, after display (22)";
  c.statement =
      "every Schmidt-rank-2 vector scores nonnegatively against the B-(AC) "
      "partial transpose, so the state is 1-copy undistillable across "
      "B-(AC)";
  c.inputs = {{"b_grid", cx.cfg.b_grid},
              {"seed", cx.cfg.seed},
              {"tol_psd", cx.cfg.tol.psd}};
  Bipartition split = split_b_ac({2, 2, 2});
  Json rows = Json::array();
  bool negative_somewhere = false;
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    Rank2MinResult r = rank2_min(cx.sigma[i], split, 64, 200, cx.cfg.seed);
    Json row = detail::jrank2(r);
    row["b"] = cx.cfg.b_grid[i];
    rows.push_back(row);
    negative_somewhere = negative_somewhere || r.value < -cx.cfg.tol.psd;
    if (static_cast<int>(i) == cx.rep_b) {
      c.evidence["witness"] = detail::jwitness(r.argmin);
      c.evidence["witness_b"] = cx.cfg.b_grid[i];
    }
  }
  c.evidence["per_b"] = rows;
  c.status = negative_somewhere ? "refuted" : "inconclusive";
  c.cross_refs = {"C5", "C8"};
  return c;
}

inline ClaimVerdict c10_sigma_compression(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C10";
  c.paper_anchor = "Conclusion, 2x2x2 projector compression";
  c.statement =
      "compressing with the identity pair on A and each basis pair on BC "
      "leaves the A-(BC) partial transpose positive, with nonzero "
      "eigenvalues b/(7b+1) and (b +- sqrt(2b^2-2b+1)/2 + 1/2)/(7b+1) for "
      "the first pair";
  c.inputs = {{"b_grid", cx.cfg.b_grid}, {"tolerance", 1e-10}};
  Bipartition split = split_a_bc({2, 2, 2});
  const std::array<std::pair<int, int>, 6> bc_pairs{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  Json rows = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < cx.sigma.size(); ++i) {
    double b = cx.cfg.b_grid[i];
    double root = std::sqrt(2 * b * b - 2 * b + 1) / 2;
    std::array<double, 4> expect{0.0, b / (7 * b + 1), (b + 0.5 - root) / (7 * b + 1),
                                 (b + 0.5 + root) / (7 * b + 1)};
    std::sort(expect.begin(), expect.end());
    Json row;
    row["b"] = b;
    Json pair_rows = Json::array();
    for (std::size_t p = 0; p < bc_pairs.size(); ++p) {
      ProjectorPair pp =
          basis_pair(split, 0, 1, bc_pairs[p].first, bc_pairs[p].second);
      CompressionResult comp = projector_compress(cx.sigma[i], split, pp);
      double lmin = comp.eigenvalues(0);
      Json pr = {{"bc_pair", {bc_pairs[p].first, bc_pairs[p].second}},
                 {"lambda_min", lmin}};
      if (p == 0) {
        double maxdev = 0;
        for (int k = 0; k < 4; ++k)
          maxdev = std::max(maxdev, std::abs(comp.eigenvalues(k) - expect[k]));
        pr["eigenvalues"] = {comp.eigenvalues(0), comp.eigenvalues(1),
                             comp.eigenvalues(2), comp.eigenvalues(3)};
        pr["formula_max_abs_dev"] = maxdev;
        ok = ok && maxdev <= 1e-10;
      }
      ok = ok && lmin >= -1e-12;
      pair_rows.push_back(pr);
    }
    row["pairs"] = pair_rows;
    rows.push_back(row);
  }
  c.evidence["per_b"] = rows;
  c.evidence["note"] =
      "the basis-pair survey itself checks out, but basis-aligned pairs do "
      "not exhaust 2-dimensional projectors: the non-basis right pair "
      "exhibited in C8 compresses to a block with a negative eigenvalue, so "
      "the undistillability inference drawn from this survey does not follow";
  c.status = ok ? "confirmed" : "refuted";
  c.cross_refs = {"C8"};
  return c;
}

inline ClaimVerdict c11_rho_reduction(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C11";
  c.paper_anchor = "S3, displays (23)-(25)";
  c.statement =
      "the general construction specializes to the qubit family at n = 1, "
      "and its inseparable core has a negative order-2 minor in a partial "
      "transpose for every split";
  c.inputs = {{"a_grid", cx.cfg.a_grid},
              {"n_list", cx.cfg.n_list},
              {"variant", variant_name(cx.cfg.variant)},
              {"reduction_tolerance", 1e-14}};
  Json rows = Json::array();
  bool ok = true;
  for (std::size_t j = 0; j < cx.cfg.a_grid.size(); ++j) {
    double a = cx.cfg.a_grid[j];
    Matrix lhs = rho_state(1, a, consistent_variant()).rho;
    Matrix rhs = sigma_state(a).rho;
    double dev = (lhs - rhs).cwiseAbs().maxCoeff();
    rows.push_back({{"a", a}, {"max_abs_diff", dev}});
    ok = ok && dev <= 1e-14;
  }
  c.evidence["n1_reduction_consistent"] = rows;

  {
    double a = cx.cfg.a_grid.front();
    Matrix lit = rho_state(1, a, printed_variant()).rho;
    Matrix rhs = sigma_state(a).rho;
    Json diffs = Json::array();
    for (const auto& m : matrix_compare(lit, rhs, 1e-12))
      diffs.push_back({{"row", m.row},
                       {"col", m.col},
                       {"literal", m.lhs.real()},
                       {"qubit_family", m.rhs.real()},
                       {"abs_diff", m.abs_diff}});
    c.evidence["printed_variant_diff_at_first_a"] = diffs;
    c.evidence["printed_variant_note"] =
        "read literally, the extra projector column index makes the n = 1 "
        "specialization differ from the qubit family exactly on the "
        "projector-touched diagonal entries; the 'consistent' variant "
        "resolves the index to the qubit-family value";
  }

  Json weight_rows = Json::array();
  for (int n : cx.cfg.n_list) {
    double printed_trace =
        (8.0 * n * n * n - 2.0 * n + 1.0) / (8.0 * n * n * n - 1.0);
    weight_rows.push_back({{"n", n}, {"printed_core_trace", printed_trace}});
  }
  c.evidence["printed_core_trace_note"] =
      "with the printed weights the inseparable core has trace "
      "(8n^3-2n+1)/(8n^3-1), which equals 1 only at n = 1; the renormalized "
      "variant divides by this trace";
  c.evidence["printed_core_trace"] = weight_rows;

  Json minor_rows = Json::array();
  for (int n : cx.cfg.n_list) {
    Matrix core = rho_insep_matrix(n, cx.cfg.variant);
    std::vector<int> dims{2 * n, 2 * n, 2 * n};
    for (const Bipartition& split : all_splits(dims)) {
      Matrix pt = partial_transpose_right(core, split);
      auto witness = minor2_scan(pt);
      Json mr = {{"n", n}, {"split", split.name()}};
      if (witness) {
        mr["min_minor"] = witness->value;
        mr["indices"] = {witness->i, witness->j};
      } else {
        mr["min_minor"] = "none-negative";
        ok = false;
      }
      minor_rows.push_back(mr);
    }
  }
  c.evidence["core_negative_minors"] = minor_rows;
  c.status = ok ? "confirmed" : "refuted";
  c.cross_refs = {"C1"};
  return c;
}

inline ClaimVerdict c12_rho_ppt_rank(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C12";
  c.paper_anchor = "S3.1, displays (26)-(27)";
  c.statement =
      "the (AB)-C partial transpose of the general family is PPT with rank "
      "and positive inertia index both 4n^3+1, as read off the printed "
      "quadratic form";
  c.inputs = {{"a_grid", cx.cfg.a_grid},
              {"n_list", cx.cfg.n_list},
              {"variant", variant_name(cx.cfg.variant)},
              {"samples", 1000},
              {"seed", cx.cfg.seed},
              {"tol_psd", cx.cfg.tol.psd},
              {"tol_rank", cx.cfg.tol.rank}};
  Json rows = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < cx.cfg.n_list.size(); ++i) {
    int n = cx.cfg.n_list[i];
    int expected_rank = 4 * n * n * n + 1;
    Bipartition split = split_ab_c({2 * n, 2 * n, 2 * n});
    for (std::size_t j = 0; j < cx.cfg.a_grid.size(); ++j) {
      const MultipartiteState& st =
          cx.rho.at({static_cast<int>(i), static_cast<int>(j)});
      PptResult r = ppt_test(st, split, cx.cfg.tol.psd);
      bool row_ok = r.is_ppt && r.rank == expected_rank;
      rows.push_back({{"n", n},
                      {"a", cx.cfg.a_grid[j]},
                      {"lambda_min", r.lambda_min},
                      {"is_ppt", r.is_ppt},
                      {"rank", r.rank},
                      {"expected_rank", expected_rank},
                      {"inertia", detail::jinertia(r.inertia)},
                      {"ok", row_ok}});
      ok = ok && row_ok;
    }
  }
  c.evidence["per_state"] = rows;

  Json quad_rows = Json::array();
  for (std::size_t i = 0; i < cx.cfg.n_list.size(); ++i) {
    int n = cx.cfg.n_list[i];
    for (int j : cx.rep_a) {
      double a = cx.cfg.a_grid[j];
      for (const ConstructionVariant& var :
           {cx.cfg.variant, cx.cfg.variant == consistent_variant()
                                ? printed_variant()
                                : consistent_variant()}) {
        QuadFormSpec spec;
        spec.kind = QuadFormKind::Eq26_TC_n;
        spec.param = a;
        spec.n = n;
        QuadFormIdentityReport rep =
            quad_form_identity_check(rho_state(n, a, var), spec, 1000, cx.cfg.seed);
        Json row = detail::jquad(rep);
        row["a"] = a;
        row["variant"] = variant_name(var);
        quad_rows.push_back(row);
      }
    }
  }
  c.evidence["quad_form_identity"] = quad_rows;
  c.evidence["note"] =
      "the printed quadratic form is checked against (pref) X^T M X for both "
      "construction variants at the grid endpoints; identity failures beyond "
      "n = 1 are recorded with their mismatch magnitudes";
  c.status = ok ? "confirmed" : "refuted";
  c.cross_refs = {"C4"};
  return c;
}

inline ClaimVerdict c13_rho_range(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C13";
  c.paper_anchor = "S3.1, displays (28)-(35); Appendix, displays (42)-(43)";
  c.statement =
      "the four published families exhaust the product vectors in the range "
      "of the (AB)-C partial transpose, each lies in that range, and none of "
      "their partial conjugates lies in the range of the state, certifying "
      "bound entanglement across (AB)-C";
  c.inputs = {{"a_grid", cx.cfg.a_grid},
              {"n_list", cx.cfg.n_list},
              {"variant", variant_name(cx.cfg.variant)},
              {"tol_membership", cx.cfg.tol.membership},
              {"non_membership_cut", cx.cfg.tol.non_membership},
              {"relation_draws", 100},
              {"seed", cx.cfg.seed}};
  Json rows = Json::array();
  bool membership_fails = false;
  bool conj_leaks = false;
  bool any_gray = false;
  bool all_entangled = true;
  for (std::size_t i = 0; i < cx.cfg.n_list.size(); ++i) {
    int n = cx.cfg.n_list[i];
    Bipartition split = split_ab_c({2 * n, 2 * n, 2 * n});
    for (std::size_t j = 0; j < cx.cfg.a_grid.size(); ++j) {
      double a = cx.cfg.a_grid[j];
      Json row = {{"n", n}, {"a", a}};
      try {
        RangeCriterionReport rep = range_criterion(
            cx.rho.at({static_cast<int>(i), static_cast<int>(j)}), split,
            cx.cfg.tol);
        row["report"] = detail::jrange(rep);
        for (const auto& m : rep.candidates) {
          if (!m.gray_zone && !m.in_home) membership_fails = true;
          if (!m.gray_zone && m.conj_in_pt) conj_leaks = true;
        }
        any_gray = any_gray || rep.any_gray;
        all_entangled = all_entangled && rep.verdict == "entangled";
      } catch (const DegenerateParameter& ex) {
        row["skipped"] = ex.what();
      }
      rows.push_back(row);
    }
  }
  c.evidence["per_state"] = rows;

  // Coefficient-relation theorem behind the case analysis: assignments
  // satisfying the two matching relations either satisfy both zero-pattern
  // implications or assemble to the zero vector.
  Json rel_rows = Json::array();
  bool relations_ok = true;
  for (int n : cx.cfg.n_list) {
    DetRng rng(cx.cfg.seed + static_cast<std::uint64_t>(n));
    int draws = 100;
    bool all_ok = true;
    for (int d = 0; d < draws; ++d) {
      const Eigen::Index S = 4 * static_cast<Eigen::Index>(n) * n, T = 2 * n;
      Vector At(T), s(S);
      Complex A0(rng.gauss(), rng.gauss());
      Complex q(rng.gauss(), rng.gauss());
      Complex s1(rng.gauss(), rng.gauss());
      if (d % 4 == 1) s1 = 0.0;       // zero chain
      if (d % 4 == 2) q = 0.0;        // collapsing ratio
      // |s| spans |q|^(2n(2n^2-1)) across the chain; keep that within ~8
      // decades so the relative zero classification stays meaningful.
      double q_floor = std::max(
          0.05, std::pow(10.0, -8.0 / (2.0 * n * (2.0 * n * n - 1.0))));
      if (d % 4 != 2)
        while (std::abs(q) < q_floor) q = Complex(rng.gauss(), rng.gauss());
      Complex acc = A0;
      for (Eigen::Index t = 0; t < T; ++t) {
        At(t) = acc;
        acc *= q;
      }
      Complex r = (std::abs(q) > 0 && std::abs(At(T - 1)) > 0)
                      ? At(0) / (q * At(T - 1))
                      : Complex(0.0, 0.0);
      Complex sm = s1;
      for (Eigen::Index m = 0; m < 2 * n * n; ++m) {
        s(m) = sm;
        s(2 * n * n + m) = q * sm;
        sm *= r;
      }
      CoefficientRelationsReport rep = coefficient_relations_check(n, s, At);
      all_ok = all_ok && rep.theorem_ok;
    }
    rel_rows.push_back({{"n", n}, {"draws", draws}, {"all_theorem_ok", all_ok}});
    relations_ok = relations_ok && all_ok;
  }
  c.evidence["coefficient_relations"] = rel_rows;
  c.evidence["v3_note"] =
      "the third family's right-hand tail is a power sequence in a parameter "
      "s; the matching equations force s^(2n-1) = -y, and with that root the "
      "membership residual vanishes, while naive choices of s do not lie in "
      "the range";
  c.evidence["conclusion_supported"] = all_entangled;
  c.evidence["note"] =
      "when a family fails its claimed range membership the case analysis is "
      "refuted as printed, but the entanglement conclusion itself still "
      "follows whenever the computed spanning defect stays positive";
  if (membership_fails || conj_leaks || !relations_ok)
    c.status = "refuted";
  else if (any_gray)
    c.status = "inconclusive";
  else
    c.status = "confirmed";
  c.cross_refs = {"C12"};
  return c;
}

inline ClaimVerdict c14_rho_distill(const ClaimsContext& cx) {
  ClaimVerdict c;
  c.claim_id = "C14";
  c.paper_anchor = "S3.2, displays (36)-(39); S3.3, display (40); Conclusion, display (41)";
  c.statement =
      "across A-(BC) and B-(AC) the general family is NPT yet 1-copy "
      "undistillable: the compressed matrices M are positive, and every "
      "retained-pair submatrix J of the scaled partial transpose takes one "
      "of five printed forms, all positive semidefinite";
  c.inputs = {{"a_grid", cx.cfg.a_grid},
              {"n_list", cx.cfg.n_list},
              {"variant", variant_name(cx.cfg.variant)},
              {"seesaw_restarts", 16},
              {"seesaw_iters", 150},
              {"samples", 1000},
              {"seed", cx.cfg.seed}};
  Json npt_rows = Json::array();
  bool npt_ok = true;
  for (std::size_t i = 0; i < cx.cfg.n_list.size(); ++i) {
    int n = cx.cfg.n_list[i];
    std::vector<int> dims{2 * n, 2 * n, 2 * n};
    for (std::size_t j = 0; j < cx.cfg.a_grid.size(); ++j) {
      const MultipartiteState& st =
          cx.rho.at({static_cast<int>(i), static_cast<int>(j)});
      PptResult rbc = ppt_test(st, split_a_bc(dims), cx.cfg.tol.psd);
      PptResult rac = ppt_test(st, split_b_ac(dims), cx.cfg.tol.psd);
      npt_rows.push_back({{"n", n},
                          {"a", cx.cfg.a_grid[j]},
                          {"a_bc_lambda_min", rbc.lambda_min},
                          {"b_ac_lambda_min", rac.lambda_min},
                          {"a_bc_inertia", detail::jinertia(rbc.inertia)},
                          {"b_ac_inertia", detail::jinertia(rac.inertia)}});
      npt_ok = npt_ok && !rbc.is_ppt && !rac.is_ppt;
    }
  }
  c.evidence["npt_per_state"] = npt_rows;
  c.evidence["npt_claim_holds"] = npt_ok;

  Json r2_rows = Json::array();
  bool negative_found = false;
  bool witness_stored = false;
  for (std::size_t i = 0; i < cx.cfg.n_list.size(); ++i) {
    int n = cx.cfg.n_list[i];
    std::vector<int> dims{2 * n, 2 * n, 2 * n};
    for (int j : cx.rep_a) {
      const MultipartiteState& st =
          cx.rho.at({static_cast<int>(i), static_cast<int>(j)});
      for (const Bipartition& split : {split_a_bc(dims), split_b_ac(dims)}) {
        Rank2MinResult r = rank2_min(st, split, 16, 150, cx.cfg.seed);
        Json row = detail::jrank2(r);
        row["n"] = n;
        row["a"] = cx.cfg.a_grid[j];
        r2_rows.push_back(row);
        bool neg = r.value < -cx.cfg.tol.psd;
        negative_found = negative_found || neg;
        if (neg && !witness_stored) {
          c.evidence["witness"] = detail::jwitness(r.argmin);
          c.evidence["witness_n"] = n;
          c.evidence["witness_a"] = cx.cfg.a_grid[j];
          c.evidence["witness_split"] = split.name();
          c.evidence["witness_value"] = r.value;
          witness_stored = true;
        }
      }
    }
  }
  c.evidence["rank2_min"] = r2_rows;

  Json quad_rows = Json::array();
  bool identities_hold = true;
  for (std::size_t i = 0; i < cx.cfg.n_list.size(); ++i) {
    int n = cx.cfg.n_list[i];
    for (int j : cx.rep_a) {
      double a = cx.cfg.a_grid[j];
      for (QuadFormKind kind :
           {QuadFormKind::Eq31_TBC_n, QuadFormKind::Eq34_TAC_n}) {
        QuadFormSpec spec;
        spec.kind = kind;
        spec.param = a;
        spec.n = n;
        QuadFormIdentityReport rep = quad_form_identity_check(
            cx.rho.at({static_cast<int>(i), static_cast<int>(j)}), spec, 1000,
            cx.cfg.seed);
        Json row = detail::jquad(rep);
        row["a"] = a;
        row["variant"] = variant_name(cx.cfg.variant);
        quad_rows.push_back(row);
        identities_hold = identities_hold && rep.holds();
      }
    }
  }
  c.evidence["quad_form_identity"] = quad_rows;
  c.evidence["quad_form_identities_hold"] = identities_hold;

  Json five_rows = Json::array();
  bool five_clean = true;
  bool five_ran = false;
  if (cx.cfg.variant.extra_projector == ExtraProjector::Consistent) {
    for (std::size_t i = 0; i < cx.cfg.n_list.size(); ++i) {
      for (int j : cx.rep_a) {
        const MultipartiteState& st =
            cx.rho.at({static_cast<int>(i), static_cast<int>(j)});
        FiveFormReport rep = five_form_classify(st);
        five_rows.push_back(detail::jfive(rep));
        five_ran = true;
        five_clean = five_clean && rep.non_psd.empty() &&
                     rep.counts.count("residual") == 0;
      }
    }
  } else {
    c.evidence["five_form_note"] =
        "the five-form survey targets the consistent extra-projector "
        "construction; skipped for the literal variant";
  }
  c.evidence["five_form_survey"] = five_rows;
  if (five_ran) c.evidence["five_form_claim_holds"] = five_clean;

  if (negative_found || (five_ran && !five_clean))
    c.status = "refuted";
  else
    c.status = "inconclusive";  // a no-violation search cannot confirm it
  c.evidence["status_note"] =
      "NPT (confirmed above) is necessary but not sufficient for "
      "distillability; the undistillability claim is refuted by any "
      "Schmidt-rank-2 vector with a negative score or any non-positive "
      "retained-pair submatrix, and can never be confirmed by finite "
      "sampling alone";
  c.cross_refs = {"C8", "C9", "C12"};
  return c;
}

}  // namespace claims_detail

struct ClaimsRun {
  Json header;
  std::vector<ClaimVerdict> claims;

  Json to_json() const {
    Json j = header;
    Json arr = Json::array();
    for (const auto& c : claims) arr.push_back(c.to_json());
    j["claims"] = arr;
    return j;
  }

  std::string summary_csv() const {
    auto esc = [](const std::string& s) {
      bool need = s.find_first_of(",\"\n") != std::string::npos;
      if (!need) return s;
      std::string out = "\"";
      for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
      return out;
    };
    std::string csv = "claim_id,status,paper_anchor,statement\n";
    for (const auto& c : claims)
      csv += esc(c.claim_id) + "," + esc(c.status) + "," + esc(c.paper_anchor) +
             "," + esc(c.statement) + "\n";
    return csv;
  }
};

/** Run the full registry C1-C14 over the configured grids.  The registry
 *  spans both families regardless of the construct/analyze family flag. */
inline ClaimsRun run_claims(const RunConfig& cfg) {
  cfg.validate();
  detail::ClaimsContext cx = detail::make_context(cfg);
  ClaimsRun run;
  run.header = report_header(cfg);
  run.claims.push_back(claims_detail::c1_printed_state_table(cx));
  run.claims.push_back(claims_detail::c2_printed_tc_table(cx));
  run.claims.push_back(claims_detail::c3_unitary_relation(cx));
  run.claims.push_back(claims_detail::c4_sigma_ppt_rank(cx));
  run.claims.push_back(claims_detail::c5_sigma_inertia(cx));
  run.claims.push_back(claims_detail::c6_sigma_quad_forms(cx));
  run.claims.push_back(claims_detail::c7_sigma_range_criterion(cx));
  run.claims.push_back(claims_detail::c8_sigma_distill_a_bc(cx));
  run.claims.push_back(claims_detail::c9_sigma_distill_b_ac(cx));
  run.claims.push_back(claims_detail::c10_sigma_compression(cx));
  run.claims.push_back(claims_detail::c11_rho_reduction(cx));
  run.claims.push_back(claims_detail::c12_rho_ppt_rank(cx));
  run.claims.push_back(claims_detail::c13_rho_range(cx));
  run.claims.push_back(claims_detail::c14_rho_distill(cx));
  return run;
}

}  // namespace entwb

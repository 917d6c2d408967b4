// Tests for the PPT test, the published product-vector candidate families,
// the range-criterion engine, the product-vector search, and the
// coefficient-relations checker.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <vector>

#include "entwb/criteria.hpp"
#include "test_support.hpp"

using namespace entwb;
using entwb::testing::max_abs;

namespace {

struct PtPin {
  int n_plus;
  int n_minus;
  int n_zero;
  double lambda_min;  // NaN = only check PSD-ness
};

void check_pt(const MultipartiteState& st, const Bipartition& sp, const PtPin& pin) {
  PptResult r = ppt_test(st, sp);
  INFO(st.label << " " << sp.name());
  CHECK(r.split_name == sp.name());
  CHECK(r.inertia.n_plus == pin.n_plus);
  CHECK(r.inertia.n_minus == pin.n_minus);
  CHECK(r.inertia.n_zero == pin.n_zero);
  CHECK(r.rank == pin.n_plus + pin.n_minus);
  if (pin.n_minus == 0) {
    CHECK(r.is_ppt);
    CHECK(r.witness.size() == 0);
    CHECK(r.lambda_min > -r.threshold);
  } else {
    CHECK(!r.is_ppt);
    REQUIRE(r.witness.size() == st.dim());
    CHECK(std::abs(r.witness.norm() - 1.0) < 1e-12);
    // The witness certifies the negative eigenvalue.
    Matrix pt = partial_transpose_right(st.rho, sp);
    Complex q = (r.witness.adjoint() * pt * r.witness)(0);
    CHECK(std::abs(q - Complex(r.lambda_min, 0.0)) < 1e-10);
    if (!std::isnan(pin.lambda_min))
      CHECK(r.lambda_min == Catch::Approx(pin.lambda_min).margin(1e-11));
  }
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

TEST_CASE("ppt test: qubit family is PPT only across (AB)-C") {
  const std::map<double, double> lam = {{0.1, -0.015604564053446944},
                                        {0.5, -0.022180177632522252},
                                        {0.9, -0.01203855014828643}};
  for (const auto& [b, lam_min] : lam) {
    MultipartiteState st = sigma_state(b);
    auto splits = all_splits(st.party_dims);
    check_pt(st, splits[0], {6, 1, 1, lam_min});  // A-(BC)
    check_pt(st, splits[1], {6, 1, 1, lam_min});  // B-(AC)
    check_pt(st, splits[2], {5, 0, 3, kNaN});     // (AB)-C
    CHECK(rank_of(st.rho) == 5);
  }
}

TEST_CASE("ppt test: general family, self-consistent construction") {
  SECTION("n = 1 reduces to the qubit pattern") {
    const std::map<double, double> lam = {{0.3, -0.022622076441449895},
                                          {0.5, -0.022180177632522217},
                                          {0.7, -0.018839181975322205}};
    for (const auto& [a, lam_min] : lam) {
      MultipartiteState st = rho_state(1, a);
      auto splits = all_splits(st.party_dims);
      check_pt(st, splits[0], {6, 1, 1, lam_min});
      check_pt(st, splits[1], {6, 1, 1, lam_min});
      check_pt(st, splits[2], {5, 0, 3, kNaN});
      CHECK(rank_of(st.rho) == 5);
    }
  }

  SECTION("n = 2 is NPT across every split, including (AB)-C") {
    const std::map<double, double> lam = {{0.3, -0.0096225738424689112},
                                          {0.5, -0.0098199599725708412},
                                          {0.7, -0.0099070549612410904}};
    for (const auto& [a, lam_min] : lam) {
      MultipartiteState st = rho_state(2, a);
      auto splits = all_splits(st.party_dims);
      check_pt(st, splits[0], {35, 3, 26, lam_min});
      check_pt(st, splits[1], {35, 3, 26, lam_min});
      check_pt(st, splits[2], {34, 3, 27, lam_min});
      CHECK(rank_of(st.rho) == 32);
      CHECK(std::abs(st.rho.trace().real() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("ppt test: general family, as-printed construction") {
  SECTION("n = 1") {
    const std::map<double, double> lam = {{0.3, -0.059809740846763958},
                                          {0.5, -0.068670443194432745},
                                          {0.7, -0.073326066461851899}};
    for (const auto& [a, lam_min] : lam) {
      MultipartiteState st = rho_state(1, a, printed_variant());
      auto splits = all_splits(st.party_dims);
      check_pt(st, splits[0], {6, 2, 0, lam_min});   // A-(BC)
      check_pt(st, splits[1], {7, 1, 0, lam_min});   // B-(AC)
      check_pt(st, splits[2], {5, 1, 2, lam_min});   // (AB)-C
      CHECK(rank_of(st.rho) == 5);
    }
  }

  SECTION("n = 2") {
    MultipartiteState st = rho_state(2, 0.5, printed_variant());
    auto splits = all_splits(st.party_dims);
    check_pt(st, splits[0], {36, 4, 24, -0.0095082152115368596});
    check_pt(st, splits[1], {36, 4, 24, -0.0095082152115368353});
    check_pt(st, splits[2], {35, 3, 26, -0.0095082152115368423});
    CHECK(rank_of(st.rho) == 32);
    // The printed weights do not sum to one at n = 2.
    CHECK(st.rho.trace().real() == Catch::Approx(63.0 / 65.0).margin(1e-13));
  }
}

TEST_CASE("qubit candidate family definitions") {
  const double b = 0.5;
  const double x = std::sqrt((1.0 + b) / (1.0 - b));
  auto cands = sigma_candidates(b);
  REQUIRE(cands.size() == 4);
  CHECK(cands[0].family == "u1");
  CHECK(std::abs(cands[0].left_factor(2) - Complex(x / (x - 1.0), 0.0)) < 1e-15);
  CHECK(std::abs(cands[1].left_factor(2) - Complex(-x, 0.0)) < 1e-15);
  CHECK(std::abs(cands[3].right_factor(0) - Complex(x, 0.0)) < 1e-15);
  for (const auto& c : cands) {
    CHECK(c.split.name() == "(AB)-C");
    CHECK(c.params.at("b") == b);
    CHECK(c.params.at("x") == Catch::Approx(x));
  }
  // u3 = |0>_A |1>_B (x) |1>_C sits at flat index 3.
  Vector v3 = cands[2].assembled();
  CHECK(std::abs(v3(3) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(v3.norm() == Catch::Approx(1.0));

  CHECK_THROWS_AS(sigma_candidates(0.0), DegenerateParameter);
  CHECK_THROWS_AS(sigma_candidates(1.0), DegenerateParameter);
}

TEST_CASE("general candidate family definitions") {
  const int n = 2;
  const double a = 0.5;
  const double y = std::sqrt((1.0 + a) / (1.0 - a));
  const double w = (y + 1.0) / y;
  const double s = -std::pow(y, 1.0 / 3.0);
  auto cands = rho_candidates(n, a);
  REQUIRE(cands.size() == 4);
  // v1: single left slot 2n^2+1 (1-based), right (1, 0, 0, y).
  CHECK(std::abs(cands[0].left_factor(8) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(cands[0].left_factor.cwiseAbs().sum() == Catch::Approx(1.0));
  CHECK(std::abs(cands[0].right_factor(3) - Complex(y, 0.0)) < 1e-15);
  // v2: single left slot 2n^2.
  CHECK(std::abs(cands[1].left_factor(7) - Complex(1.0, 0.0)) < 1e-15);
  // v3 carries the real (2n-1)-th root of -y as its ratio.
  CHECK(cands[2].params.at("s") == Catch::Approx(s));
  CHECK(std::abs(cands[2].right_factor(3) - Complex(s * s, 0.0)) < 1e-12);
  // v4: geometric left profile in w.
  CHECK(cands[3].params.at("w") == Catch::Approx(w));
  CHECK(std::abs(cands[3].left_factor(1) - Complex(w * w, 0.0)) < 1e-12);
  CHECK(std::abs(cands[3].right_factor(0) - Complex(w, 0.0)) < 1e-15);

  CHECK_THROWS_AS(rho_candidates(0, 0.5), ParamOutOfRange);
  CHECK_THROWS_AS(rho_candidates(2, 1.0), DegenerateParameter);
}

TEST_CASE("published_candidates dispatches on the state's parameters") {
  CHECK(published_candidates(sigma_state(0.4)).size() == 4);
  CHECK(published_candidates(rho_state(2, 0.4)).size() == 4);
  MultipartiteState anon;
  anon.party_dims = {2, 2, 2};
  anon.rho = Matrix::Identity(8, 8) / 8.0;
  anon.label = "anon";
  CHECK_THROWS_AS(published_candidates(anon), ConfigError);
}

TEST_CASE("range criterion: qubit family") {
  SECTION("only the first family qualifies; the span defect certifies entanglement") {
    for (double b : {0.1, 0.5, 0.9}) {
      MultipartiteState st = sigma_state(b);
      RangeCriterionReport rep = range_criterion(st, split_ab_c(st.party_dims));
      INFO("b = " << b);
      CHECK(rep.home == "state");
      CHECK(rep.home_rank == 5);
      REQUIRE(rep.candidates.size() == 4);
      for (const auto& c : rep.candidates) {
        CHECK(c.in_home);           // all four lie in the state's range
        CHECK(!c.gray_zone);
      }
      CHECK(rep.candidates[0].qualifying);
      CHECK(!rep.candidates[1].qualifying);
      CHECK(!rep.candidates[2].qualifying);
      CHECK(!rep.candidates[3].qualifying);
      CHECK(rep.qualifying_rank == 1);
      CHECK(rep.spanning_defect == 4);
      CHECK(!rep.any_gray);
      CHECK(rep.verdict == "entangled");
    }
  }

  SECTION("conjugate-residual magnitudes at b = 0.5") {
    MultipartiteState st = sigma_state(0.5);
    RangeCriterionReport rep = range_criterion(st, split_ab_c(st.party_dims));
    CHECK(rep.candidates[0].residual_conj < 1e-12);
    CHECK(rep.candidates[1].residual_conj ==
          Catch::Approx(0.66815310478106116).margin(1e-9));
    CHECK(rep.candidates[2].residual_conj ==
          Catch::Approx(0.70710678118654757).margin(1e-9));
    CHECK(rep.candidates[3].residual_conj ==
          Catch::Approx(0.3779644730092272).margin(1e-9));
  }

  SECTION("split and parameter guards") {
    MultipartiteState st = sigma_state(0.5);
    CHECK_THROWS_AS(range_criterion(st, split_a_bc(st.party_dims)), SplitMismatch);
    CHECK_THROWS_AS(range_criterion(st, split_b_ac(st.party_dims)), SplitMismatch);
    MultipartiteState degenerate = sigma_state(0.0);
    CHECK_THROWS_AS(range_criterion(degenerate, split_ab_c(degenerate.party_dims)),
                    DegenerateParameter);
  }

  SECTION("tight membership plus loose rejection forces the gray verdict") {
    MultipartiteState st = sigma_state(0.5);
    Tolerances tol;
    tol.membership = 1e-20;
    tol.non_membership = 0.9;
    RangeCriterionReport rep = range_criterion(st, split_ab_c(st.party_dims), tol);
    CHECK(rep.any_gray);
    CHECK(rep.verdict == "inconclusive");
  }
}

TEST_CASE("range criterion: general family evaluates the partially transposed matrix") {
  SECTION("n = 1: all four candidates in range, none survive conjugation") {
    MultipartiteState st = rho_state(1, 0.5);
    RangeCriterionReport rep = range_criterion(st, split_ab_c(st.party_dims));
    CHECK(rep.home == "state^T_C");
    CHECK(rep.home_rank == 5);
    REQUIRE(rep.candidates.size() == 4);
    for (const auto& c : rep.candidates) {
      CHECK(c.in_home);
      CHECK(!c.qualifying);
      CHECK(!c.gray_zone);
    }
    const double conj_pins[4] = {0.37796447300922698, 0.70710678118654757,
                                 0.66815310478106094, 0.35938437555524422};
    for (int i = 0; i < 4; ++i)
      CHECK(rep.candidates[static_cast<std::size_t>(i)].residual_conj ==
            Catch::Approx(conj_pins[i]).margin(1e-9));
    CHECK(rep.qualifying_rank == 0);
    CHECK(rep.spanning_defect == 5);
    CHECK(rep.verdict == "entangled");
    CHECK(!rep.any_gray);
  }

  SECTION("n = 2: the fourth family falls out of the range entirely") {
    MultipartiteState st = rho_state(2, 0.5);
    RangeCriterionReport rep = range_criterion(st, split_ab_c(st.party_dims));
    CHECK(rep.home == "state^T_C");
    CHECK(rep.home_rank == 37);
    REQUIRE(rep.candidates.size() == 4);
    CHECK(rep.candidates[0].in_home);
    CHECK(rep.candidates[1].in_home);
    CHECK(rep.candidates[2].in_home);
    CHECK(!rep.candidates[3].in_home);
    CHECK(rep.candidates[3].residual_home == Catch::Approx(0.1319).margin(5e-4));
    CHECK(!rep.candidates[3].gray_zone);  // well above the rejection threshold
    CHECK(rep.qualifying_rank == 0);
    CHECK(rep.spanning_defect == 37);
    CHECK(rep.verdict == "entangled");
    CHECK(!rep.any_gray);
  }
}

TEST_CASE("product vector search over the qubit state's range") {
  MultipartiteState st = sigma_state(0.5);
  Bipartition sp = split_ab_c(st.party_dims);
  Matrix basis = range_basis(st.rho, 1e-9);
  REQUIRE(basis.cols() == 5);

  auto hits = product_vector_search(basis, sp, 48, 200, 7);
  REQUIRE(!hits.empty());
  for (const auto& h : hits) {
    Vector v = h.assembled();
    CHECK(subspace_residual(v / v.norm(), basis) < 1e-7);
    CHECK(schmidt_rank(v, sp, 1e-7) == 1);
    CHECK(h.params.at("residual") <= 1e-8);
  }

  SECTION("deterministic for a fixed seed") {
    auto again = product_vector_search(basis, sp, 48, 200, 7);
    REQUIRE(again.size() == hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) {
      CHECK((hits[i].assembled() - again[i].assembled()).norm() == 0.0);
    }
  }

  SECTION("every hit is attributed to a nearest published family") {
    auto families = sigma_candidates(0.5);
    for (const auto& h : hits) {
      FamilyMatch m = closest_family(h, families);
      CHECK((m.family == "u1" || m.family == "u2" || m.family == "u3" || m.family == "u4"));
      CHECK(m.distance >= 0.0);
      CHECK(m.distance <= 1.0);
    }
  }

  SECTION("basis dimension guard") {
    CHECK_THROWS_AS(product_vector_search(Matrix::Identity(4, 2), sp, 4, 10, 1),
                    DimensionMismatch);
  }
}

namespace {

// Builds coefficient lists satisfying both matching relations: a geometric
// profile At_j = q^(j-1) forces s_{2n^2+m} = q s_m and s_m = s_1 q^(-2n(m-1));
// the slot s_{2n^2+1} stays free.
struct SatisfyingInput {
  Vector s;
  Vector At;
};

SatisfyingInput satisfying_coefficients(int n, double q, double s1, double free_slot) {
  Eigen::Index S = 4 * static_cast<Eigen::Index>(n) * n, T = 2 * n;
  SatisfyingInput out;
  out.At = Vector(T);
  for (Eigen::Index j = 0; j < T; ++j) out.At(j) = std::pow(q, static_cast<double>(j));
  out.s = Vector::Zero(S);
  const double r = (q == 0.0) ? 0.0 : std::pow(q, -2.0 * n);
  for (Eigen::Index m = 1; m <= 2 * n * n; ++m)
    out.s(m - 1) = s1 * std::pow(r, static_cast<double>(m - 1));
  out.s(2 * n * n) = free_slot;
  for (Eigen::Index m = 2; m <= 2 * n * n; ++m)
    out.s(2 * n * n + m - 1) = q * out.s(m - 1);
  return out;
}

}  // namespace

TEST_CASE("coefficient relations checker") {
  SECTION("geometric generator satisfies both relations with no violations") {
    for (int n : {1, 2, 3}) {
      SatisfyingInput in = satisfying_coefficients(n, 1.3, 0.7, 0.9);
      auto rep = coefficient_relations_check(n, in.s, in.At);
      INFO("n = " << n);
      CHECK(rep.n == n);
      CHECK(rep.satisfies);
      CHECK(rep.residual_first < 1e-12);
      CHECK(rep.residual_second < 1e-12);
      CHECK(rep.violations.empty());
      CHECK(rep.theorem_ok);
    }
  }

  SECTION("zero leading coefficient collapses the whole first block") {
    SatisfyingInput in = satisfying_coefficients(2, 1.3, 0.0, 1.0);
    auto rep = coefficient_relations_check(2, in.s, in.At);
    CHECK(rep.satisfies);
    CHECK(rep.violations.empty());
    CHECK(rep.theorem_ok);
    CHECK(rep.assembled_norm > 0.0);  // the free slot keeps the vector alive
  }

  SECTION("q = 0 branch: only the last first-block slot and the free slot survive") {
    for (int n : {1, 2}) {
      Eigen::Index S = 4 * static_cast<Eigen::Index>(n) * n, T = 2 * n;
      Vector At = Vector::Zero(T);
      At(0) = 1.0;
      Vector s = Vector::Zero(S);
      s(2 * n * n - 1) = 0.8;  // slot 2n^2
      s(2 * n * n) = 1.1;      // free slot 2n^2+1
      auto rep = coefficient_relations_check(n, s, At);
      INFO("n = " << n);
      CHECK(rep.satisfies);
      CHECK(rep.violations.empty());
      CHECK(rep.theorem_ok);
    }
  }

  SECTION("degenerate At = 0 admits a violation only because the vector vanishes") {
    Vector s(4);
    s << 0.0, 1.0, 1.0, 1.0;
    Vector At = Vector::Zero(2);
    auto rep = coefficient_relations_check(1, s, At);
    CHECK(rep.satisfies);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].kind == 1);
    CHECK(rep.violations[0].m == 2);
    CHECK(rep.assembled_norm == 0.0);
    CHECK(rep.theorem_ok);
  }

  SECTION("random coefficients do not satisfy the relations") {
    DetRng rng(42);
    for (int n : {1, 2}) {
      Vector s = entwb::testing::random_vector(4 * n * n, rng);
      Vector At = entwb::testing::random_vector(2 * n, rng);
      auto rep = coefficient_relations_check(n, s, At);
      CHECK(!rep.satisfies);
      CHECK(rep.theorem_ok);  // vacuous when the premises fail
    }
  }

  SECTION("arity guards") {
    Vector s = Vector::Ones(4), At = Vector::Ones(2);
    CHECK_THROWS_AS(coefficient_relations_check(1, Vector::Ones(5), At), ArityMismatch);
    CHECK_THROWS_AS(coefficient_relations_check(1, s, Vector::Ones(3)), ArityMismatch);
    CHECK_THROWS_AS(coefficient_relations_check(2, s, At), ArityMismatch);
  }
}

#include <catch2/catch_amalgamated.hpp>

#include "entwb/criteria.hpp"
#include "entwb/jsonio.hpp"
#include "entwb/states.hpp"
#include "test_support.hpp"

using namespace entwb;
using namespace entwb::testing;

TEST_CASE("qubit family: trace one, Hermitian, PSD, rank 5") {
  for (double b : {0.1, 0.5, 0.9}) {
    MultipartiteState st = sigma_state(b);
    REQUIRE(st.party_dims == std::vector<int>{2, 2, 2});
    CHECK(std::abs(st.rho.trace().real() - 1.0) < 1e-12);
    CHECK(is_hermitian(st.rho));
    EigenResult e = hermitian_eig(st.rho);
    CHECK(e.values(0) > -1e-12);
    CHECK(rank_of(st.rho, 1e-9) == 5);
    CHECK(st.params.at("b") == b);
  }
}

TEST_CASE("qubit family vs the printed tables") {
  SECTION("state table: exactly one mismatched entry, at (5,5)") {
    for (double b : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      MultipartiteState st = sigma_state(b);
      auto mm = matrix_compare(st.rho, printed::sigma_matrix(b), 1e-12);
      REQUIRE(mm.size() == 1);
      CHECK(mm[0].row == 5);
      CHECK(mm[0].col == 5);
      // constructed value (1+b)/(2(7b+1)); printed value (1-b)/(2(7b+1))
      CHECK(std::abs(mm[0].lhs - (1.0 + b) / (2.0 * (7.0 * b + 1.0))) < 1e-14);
      CHECK(std::abs(mm[0].rhs - (1.0 - b) / (2.0 * (7.0 * b + 1.0))) < 1e-14);
    }
  }
  SECTION("the mismatch vanishes only at the degenerate point b = 0") {
    MultipartiteState st = sigma_state(0.0);
    CHECK(matrix_compare(st.rho, printed::sigma_matrix(0.0), 1e-12).empty());
  }
  SECTION("partial-transpose tables match exactly") {
    for (double b : {0.1, 0.5, 0.9}) {
      MultipartiteState st = sigma_state(b);
      Matrix tc = partial_transpose(st.rho, st.party_dims, {2});
      Matrix tbc = partial_transpose(st.rho, st.party_dims, {1, 2});
      CHECK(matrix_compare(tc, printed::sigma_tc_matrix(b), 1e-12).empty());
      CHECK(matrix_compare(tbc, printed::sigma_tbc_matrix(b), 1e-12).empty());
    }
  }
  SECTION("T_C equals conjugation by I (x) I (x) swap") {
    Matrix u(2, 2);
    u << 0.0, 1.0, 1.0, 0.0;
    Matrix conj_op = kron(Matrix(Matrix::Identity(4, 4)), u);
    for (double b : {0.1, 0.5, 0.9}) {
      MultipartiteState st = sigma_state(b);
      Matrix tc = partial_transpose(st.rho, st.party_dims, {2});
      CHECK(max_abs(Matrix(tc - conj_op * st.rho * conj_op.adjoint())) < 1e-12);
    }
  }
}

TEST_CASE("general family: normalization and positivity") {
  for (int n : {1, 2}) {
    for (double a : {0.3, 0.7}) {
      MultipartiteState st = rho_state(n, a);
      REQUIRE(st.party_dims == std::vector<int>{2 * n, 2 * n, 2 * n});
      CHECK(std::abs(st.rho.trace().real() - 1.0) < 1e-12);
      CHECK(is_hermitian(st.rho));
      CHECK(hermitian_eig(st.rho).values(0) > -1e-12);
    }
  }
  CHECK(rank_of(rho_state(2, 0.5).rho, 1e-9) == 32);
}

TEST_CASE("general family reduces to the qubit family at n = 1 (consistent variant)") {
  for (double a : {0.1, 0.5, 0.9}) {
    MultipartiteState r1 = rho_state(1, a);
    MultipartiteState sg = sigma_state(a);
    CHECK(max_abs(Matrix(r1.rho - sg.rho)) < 1e-14);
  }
}

TEST_CASE("printed extra projector moves one diagonal entry (n = 1)") {
  ConstructionVariant printed = printed_variant();
  // keep the renormalized weights: isolate the projector change
  ConstructionVariant projector_only;
  projector_only.extra_projector = ExtraProjector::AsPrinted;
  projector_only.normalization = Normalization::Renormalized;
  MultipartiteState lit = rho_state(1, 0.5, projector_only);
  MultipartiteState cons = rho_state(1, 0.5);
  auto mm = matrix_compare(lit.rho, cons.rho, 1e-15);
  REQUIRE(mm.size() == 2);
  CHECK(mm[0].row == 2);
  CHECK(mm[0].col == 2);
  CHECK(mm[1].row == 3);
  CHECK(mm[1].col == 3);
  // full printed reading coincides at n = 1 because the core trace is 1 there
  MultipartiteState lit_full = rho_state(1, 0.5, printed);
  CHECK(max_abs(Matrix(lit_full.rho - lit.rho)) < 1e-14);
}

TEST_CASE("printed weights leave the core trace short of one for n > 1") {
  for (int n : {1, 2}) {
    ConstructionVariant v;
    v.normalization = Normalization::PrintedWeights;
    Matrix core = rho_insep_matrix(n, v);
    double expect = (8.0 * n * n * n - 2.0 * n + 1.0) / (8.0 * n * n * n - 1.0);
    CHECK(std::abs(core.trace().real() - expect) < 1e-12);
    Matrix renorm = rho_insep_matrix(n);
    CHECK(std::abs(renorm.trace().real() - 1.0) < 1e-12);
  }
  // the full printed-variant state inherits the deficit: trace (a(N-2n+2)+1)/(Na+1)
  const int n = 2;
  const double a = 0.5, N = 63.0;
  MultipartiteState lit = rho_state(n, a, printed_variant());
  CHECK(std::abs(lit.rho.trace().real() - (a * (N - 2 * n + 2) + 1.0) / (N * a + 1.0)) < 1e-12);
  CHECK(std::abs(lit.rho.trace().real() - 63.0 / 65.0) < 1e-12);
}

TEST_CASE("variant naming and parsing") {
  CHECK(variant_name(consistent_variant()) == "consistent");
  CHECK(variant_name(printed_variant()) == "paper");
  CHECK(parse_variant("consistent").extra_projector == ExtraProjector::Consistent);
  CHECK(parse_variant("paper").extra_projector == ExtraProjector::AsPrinted);
  CHECK(parse_variant("paper").normalization == Normalization::PrintedWeights);
  CHECK_THROWS_AS(parse_variant("bogus"), ConfigError);
  ConstructionVariant mixed;
  mixed.extra_projector = ExtraProjector::AsPrinted;
  mixed.normalization = Normalization::Renormalized;
  CHECK(variant_name(mixed).rfind("mixed", 0) == 0);
}

TEST_CASE("state labels identify family, parameter and variant") {
  CHECK(sigma_state(0.5).label.find("0.5") != std::string::npos);
  MultipartiteState r = rho_state(2, 0.3);
  CHECK(r.label.find("2") != std::string::npos);
  CHECK(r.label.find("0.3") != std::string::npos);
  CHECK(r.params.at("n") == 2.0);
  CHECK(r.params.at("a") == 0.3);
}

TEST_CASE("matrix_compare reports positions and values") {
  Matrix l = Matrix::Zero(3, 3), r = Matrix::Zero(3, 3);
  l(1, 2) = Complex(0.5, 0.25);
  r(1, 2) = Complex(0.5, 0.75);
  r(2, 2) = 1e-14;
  auto mm = matrix_compare(l, r, 1e-12);
  REQUIRE(mm.size() == 1);
  CHECK(mm[0].row == 1);
  CHECK(mm[0].col == 2);
  CHECK(mm[0].abs_diff == Catch::Approx(0.5));
}

TEST_CASE("basis vectors and projectors") {
  Vector e2 = basis_vector(2, 4);  // 1-based label
  CHECK(std::abs(e2(1) - 1.0) < 1e-15);
  CHECK(e2.norm() == Catch::Approx(1.0));
  Vector p = basis_product({1, 2, 2}, {2, 2, 2});
  CHECK(std::abs(p(3) - 1.0) < 1e-15);  // flat( A=0, B=1, C=1 ) = 3
  Matrix pr = projector(p);
  CHECK(std::abs(pr(3, 3).real() - 1.0) < 1e-15);
  CHECK(std::abs(pr.trace().real() - 1.0) < 1e-15);
  CHECK_THROWS_AS(basis_vector(0, 4), IndexOutOfRange);
  CHECK_THROWS_AS(basis_vector(5, 4), IndexOutOfRange);
}

TEST_CASE("state JSON round trip is bit exact") {
  for (const MultipartiteState& st :
       {sigma_state(1.0 / 3.0), rho_state(2, 0.3), rho_state(1, 0.7, printed_variant())}) {
    Json j = state_to_json(st);
    MultipartiteState back = state_from_json(j);
    REQUIRE(back.rho.rows() == st.rho.rows());
    // bitwise identity: 17 significant digits round-trip doubles exactly
    bool identical = true;
    for (Eigen::Index r = 0; r < st.rho.rows(); ++r)
      for (Eigen::Index c = 0; c < st.rho.cols(); ++c)
        identical = identical && back.rho(r, c) == st.rho(r, c);
    CHECK(identical);
    CHECK(back.label == st.label);
    CHECK(back.party_dims == st.party_dims);
    CHECK(back.params == st.params);
    CHECK(variant_name(back.variant) == variant_name(st.variant));
    // serialization itself is deterministic
    CHECK(state_to_json(back).dump(2) == j.dump(2));
  }
}

TEST_CASE("state JSON loader rejects malformed documents") {
  Json good = state_to_json(sigma_state(0.5));
  Json bad = good;
  bad.erase("matrix");
  CHECK_THROWS_AS(state_from_json(bad), IOFailure);
  bad = good;
  bad["matrix"]["entries"].push_back({99, 0, 1.0, 0.0});
  CHECK_THROWS_AS(state_from_json(bad), IOFailure);
  bad = good;
  bad["party_dims"] = {2, 2};
  CHECK_THROWS_AS(state_from_json(bad), IOFailure);
  CHECK_THROWS_AS(state_from_json(Json::parse("{}")), IOFailure);
}

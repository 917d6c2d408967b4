#pragma once

#include "entwb/claims.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace entwb {

namespace detail {

/** Shortest decimal string that round-trips the double (for file names). */
inline std::string shortest(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string sigma_name(double b) { return "sigma_b" + shortest(b); }

inline std::string rho_name(int n, double a, const ConstructionVariant& var) {
  return "rho_n" + std::to_string(n) + "_a" + shortest(a) + "_" + variant_name(var);
}

/** Buffered output: nothing touches the disk until every file is composed,
 *  so a validation or construction failure leaves no partial outputs. */
struct OutputBatch {
  std::filesystem::path dir;
  std::vector<std::pair<std::filesystem::path, std::string>> files;

  void add(const std::string& name, const std::string& content) {
    files.emplace_back(dir / name, content);
  }
  void flush() const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IOFailure("cannot create output directory: " + dir.string());
    for (const auto& [path, content] : files) {
      write_text_file(path, content);
      std::cout << "wrote " << path.string() << "\n";
    }
  }
};

inline Json analyze_state(const MultipartiteState& st, const RunConfig& cfg,
                          int restarts, int iters, int samples) {
  const std::vector<int>& dims = st.party_dims;
  Json j;
  Json params = Json::object();
  for (const auto& [k, v] : st.params) params[k] = v;
  j["state"] = {{"label", st.label},
                {"party_dims", dims},
                {"variant", variant_name(st.variant)},
                {"params", params}};
  j["state_rank"] = rank_of(st.rho, cfg.tol.rank);

  Json pts = Json::array();
  for (const Bipartition& split : all_splits(dims)) {
    PptResult r = ppt_test(st, split, cfg.tol.psd);
    pts.push_back({{"split", r.split_name},
                   {"lambda_min", r.lambda_min},
                   {"threshold", r.threshold},
                   {"is_ppt", r.is_ppt},
                   {"rank", r.rank},
                   {"inertia", detail::jinertia(r.inertia)}});
  }
  j["partial_transposes"] = pts;

  try {
    j["range_criterion"] = jrange(range_criterion(st, split_ab_c(dims), cfg.tol));
  } catch (const DegenerateParameter& ex) {
    j["range_criterion"] = {{"skipped", ex.what()}};
  }

  Json r2 = Json::array();
  for (const Bipartition& split : {split_a_bc(dims), split_b_ac(dims)}) {
    Rank2MinResult r = rank2_min(st, split, restarts, iters, cfg.seed);
    Json row = jrank2(r);
    row["argmin"] = jwitness(r.argmin);
    r2.push_back(row);
  }
  j["rank2_min"] = r2;

  Json scans = Json::array();
  for (const Bipartition& split : {split_a_bc(dims), split_ab_c(dims)}) {
    MScanResult s = m_positivity_scan(st, split, samples, cfg.seed);
    scans.push_back({{"split", s.split_name},
                     {"min_lambda", s.min_lambda},
                     {"samples", s.samples},
                     {"eigen_pair_included", s.eigen_pair_included},
                     {"eigen_pair_is_worst", s.eigen_pair_is_worst}});
  }
  j["m_scans"] = scans;

  Json quads = Json::array();
  const bool qubit = st.params.count("b") != 0;
  std::vector<QuadFormKind> kinds =
      qubit ? std::vector<QuadFormKind>{QuadFormKind::Eq17_TBC, QuadFormKind::Eq20_TAC}
            : std::vector<QuadFormKind>{QuadFormKind::Eq26_TC_n, QuadFormKind::Eq31_TBC_n,
                                        QuadFormKind::Eq34_TAC_n};
  for (QuadFormKind kind : kinds) {
    QuadFormSpec spec;
    spec.kind = kind;
    spec.param = qubit ? st.param("b") : st.param("a");
    spec.n = qubit ? 1 : static_cast<int>(st.param("n"));
    quads.push_back(jquad(quad_form_identity_check(st, spec, samples, cfg.seed)));
  }
  j["quad_form_identities"] = quads;

  if (qubit) {
    Bipartition split = split_a_bc(dims);
    Json comps = Json::array();
    const std::array<std::pair<int, int>, 6> bc_pairs{
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    for (const auto& [r1, r2p] : bc_pairs) {
      CompressionResult comp = projector_compress(st, split, basis_pair(split, 0, 1, r1, r2p));
      comps.push_back({{"bc_pair", {r1, r2p}},
                       {"eigenvalues",
                        {comp.eigenvalues(0), comp.eigenvalues(1), comp.eigenvalues(2),
                         comp.eigenvalues(3)}}});
    }
    j["basis_compressions"] = comps;
  } else if (st.variant.extra_projector == ExtraProjector::Consistent) {
    j["five_form_survey"] = jfive(five_form_classify(st));
  }
  return j;
}

inline std::string describe_verdict(double value, double tol) {
  return value < -tol ? "one-copy-distillable" : "no-violation-found";
}

}  // namespace detail

/** Entry point shared by the binary and the in-process tests.  argv follows
 *  main() conventions (argv[0] is the program name). */
inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "entwb: constructs two published families of tripartite states and "
      "mechanically checks the claims made about them (positivity of partial "
      "transposes, ranks and inertia, range-criterion entanglement, one-copy "
      "distillability searches), emitting signed verdicts"};
  app.require_subcommand(1);
  app.footer(
      "Environment: ENTWB_THREADS caps worker threads (default: hardware "
      "concurrency).\nExit codes: 0 success (refuted claims are data, not "
      "errors), 2 invalid configuration, 3 I/O failure, 1 internal error.");

  RunConfig cfg;
  std::string family = "sigma";
  std::string variant_token = "consistent";
  struct Budget {
    int restarts;
    int iters;
    int samples;
  };
  Budget analyze_budget{64, 200, 1000};
  Budget sweep_budget{16, 100, 1000};
  Budget search_budget{64, 200, 1000};

  auto add_common = [&](CLI::App* sub, bool construct_mode) {
    sub->add_option("--family", family, "state family to operate on")
        ->check(CLI::IsMember({"sigma", "rho"}))
        ->capture_default_str();
    sub->add_option("--b", cfg.b_grid,
                    "qubit-family parameter grid, values in [0,1] "
                    "(default 0.1..0.9)");
    sub->add_option("--a", cfg.a_grid,
                    "general-family parameter grid, values in [0,1] "
                    "(default 0.1..0.9)");
    sub->add_option("--n", cfg.n_list, "general-family sizes (default 1 2)");
    sub->add_option("--variant", variant_token,
                    construct_mode
                        ? "construction reading: consistent | paper | both"
                        : "construction reading: consistent | paper")
        ->check(construct_mode ? CLI::IsMember({"consistent", "paper", "both"})
                               : CLI::IsMember({"consistent", "paper"}))
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "base seed for all randomized searches")
        ->capture_default_str();
    sub->add_option("--tol-psd", cfg.tol.psd, "negativity threshold scale")
        ->capture_default_str();
    sub->add_option("--tol-rank", cfg.tol.rank, "rank / inertia threshold scale")
        ->capture_default_str();
    sub->add_option("--tol-member", cfg.tol.membership,
                    "range-membership acceptance residual")
        ->capture_default_str();
    sub->add_option("--out", cfg.out_dir, "output directory")
        ->capture_default_str();
    sub->add_option("--format", cfg.format, "tabular output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--max-n", cfg.max_n,
                    "safety cap on n (dimension grows as (2n)^3)")
        ->capture_default_str();
  };
  auto add_budget = [&](CLI::App* sub, Budget& budget) {
    sub->add_option("--restarts", budget.restarts, "see-saw restarts")
        ->capture_default_str();
    sub->add_option("--iters", budget.iters, "see-saw iterations per restart")
        ->capture_default_str();
    sub->add_option("--samples", budget.samples,
                    "sample count for identity checks and projector scans")
        ->capture_default_str();
  };

  auto finalize = [&](const Budget* budget = nullptr) {
    cfg.family = family;
    if (variant_token != "both") cfg.variant = parse_variant(variant_token);
    cfg.validate();
    if (budget && (budget->restarts < 1 || budget->iters < 1 || budget->samples < 1))
      throw ConfigError("--restarts, --iters and --samples must be >= 1");
  };

  // ---- construct ----------------------------------------------------------
  CLI::App* construct = app.add_subcommand(
      "construct", "build the states and write them as exact JSON documents");
  add_common(construct, true);
  construct->callback([&]() {
    finalize();
    detail::OutputBatch out{cfg.out_dir, {}};
    if (family == "sigma") {
      for (double b : cfg.b_grid) {
        MultipartiteState st = sigma_state(b);
        out.add(detail::sigma_name(b) + ".json", state_to_json(st).dump(2) + "\n");
      }
    } else {
      for (int n : cfg.n_list)
        for (double a : cfg.a_grid) {
          if (variant_token == "both") {
            MultipartiteState lhs = rho_state(n, a, consistent_variant());
            MultipartiteState rhs = rho_state(n, a, printed_variant());
            out.add(detail::rho_name(n, a, lhs.variant) + ".json",
                    state_to_json(lhs).dump(2) + "\n");
            out.add(detail::rho_name(n, a, rhs.variant) + ".json",
                    state_to_json(rhs).dump(2) + "\n");
            Json diff;
            diff["toolkit"] = {{"name", toolkit_name}, {"version", toolkit_version}};
            diff["lhs"] = lhs.label;
            diff["rhs"] = rhs.label;
            Json entries = Json::array();
            for (const auto& m : matrix_compare(lhs.rho, rhs.rho, 1e-15))
              entries.push_back({{"row", m.row},
                                 {"col", m.col},
                                 {"consistent", m.lhs.real()},
                                 {"paper", m.rhs.real()},
                                 {"abs_diff", m.abs_diff}});
            diff["differing_entries"] = entries;
            out.add("rho_n" + std::to_string(n) + "_a" + detail::shortest(a) +
                        "_diff.json",
                    diff.dump(2) + "\n");
          } else {
            MultipartiteState st = rho_state(n, a, cfg.variant);
            out.add(detail::rho_name(n, a, cfg.variant) + ".json",
                    state_to_json(st).dump(2) + "\n");
          }
        }
    }
    out.flush();
  });

  // ---- analyze ------------------------------------------------------------
  CLI::App* analyze = app.add_subcommand(
      "analyze", "full per-state analysis: partial transposes, ranks and "
                 "inertia, range criterion, distillability searches, "
                 "identity checks, compression surveys");
  add_common(analyze, false);
  add_budget(analyze, analyze_budget);
  analyze->callback([&]() {
    finalize(&analyze_budget);
    detail::OutputBatch out{cfg.out_dir, {}};
    auto emit = [&](const MultipartiteState& st, const std::string& name) {
      Json j = report_header(cfg);
      j["analysis"] = detail::analyze_state(st, cfg, analyze_budget.restarts,
                                            analyze_budget.iters,
                                            analyze_budget.samples);
      out.add("analysis_" + name + ".json", j.dump(2) + "\n");
    };
    if (family == "sigma") {
      for (double b : cfg.b_grid) emit(sigma_state(b), detail::sigma_name(b));
    } else {
      for (int n : cfg.n_list)
        for (double a : cfg.a_grid)
          emit(rho_state(n, a, cfg.variant), detail::rho_name(n, a, cfg.variant));
    }
    out.flush();
  });

  // ---- sweep --------------------------------------------------------------
  CLI::App* sweep = app.add_subcommand(
      "sweep", "per (family, parameter, split) table: partial-transpose "
               "minimum eigenvalue, rank, inertia, Schmidt-rank-2 minimum");
  add_common(sweep, false);
  add_budget(sweep, sweep_budget);
  sweep->callback([&]() {
    finalize(&sweep_budget);
    struct Row {
      std::string family;
      int n;
      double param;
      std::string variant;
      std::string split;
      double lambda_min;
      int rank;
      Inertia inertia;
      double rank2;
      std::string method;
    };
    std::vector<Row> rows;
    auto scan_state = [&](const MultipartiteState& st, const std::string& fam,
                          int n, double param) {
      for (const Bipartition& split : all_splits(st.party_dims)) {
        PptResult p = ppt_test(st, split, cfg.tol.psd);
        Rank2MinResult r = rank2_min(st, split, sweep_budget.restarts,
                                     sweep_budget.iters, cfg.seed);
        rows.push_back({fam, n, param, variant_name(st.variant), split.name(),
                        p.lambda_min, p.rank, p.inertia, r.value, r.method});
      }
    };
    if (family == "sigma") {
      for (double b : cfg.b_grid) scan_state(sigma_state(b), "sigma", 1, b);
    } else {
      for (int n : cfg.n_list)
        for (double a : cfg.a_grid)
          scan_state(rho_state(n, a, cfg.variant), "rho", n, a);
    }
    detail::OutputBatch out{cfg.out_dir, {}};
    if (cfg.format == "csv") {
      std::string csv =
          "family,n,param,variant,split,pt_lambda_min,pt_rank,n_plus,n_minus,"
          "n_zero,rank2_min,rank2_method\n";
      for (const Row& r : rows)
        csv += r.family + "," + std::to_string(r.n) + "," + format_sig17(r.param) +
               "," + r.variant + "," + r.split + "," + format_sig17(r.lambda_min) +
               "," + std::to_string(r.rank) + "," + std::to_string(r.inertia.n_plus) +
               "," + std::to_string(r.inertia.n_minus) + "," +
               std::to_string(r.inertia.n_zero) + "," + format_sig17(r.rank2) + "," +
               r.method + "\n";
      out.add("sweep.csv", csv);
    } else {
      Json j = report_header(cfg);
      Json arr = Json::array();
      for (const Row& r : rows)
        arr.push_back({{"family", r.family},
                       {"n", r.n},
                       {"param", r.param},
                       {"variant", r.variant},
                       {"split", r.split},
                       {"pt_lambda_min", r.lambda_min},
                       {"pt_rank", r.rank},
                       {"pt_inertia", detail::jinertia(r.inertia)},
                       {"rank2_min", r.rank2},
                       {"rank2_method", r.method}});
      j["rows"] = arr;
      out.add("sweep.json", j.dump(2) + "\n");
    }
    out.flush();
  });

  // ---- verify-claims ------------------------------------------------------
  CLI::App* verify = app.add_subcommand(
      "verify-claims", "run the full claim registry C1-C14 over both "
                       "families and emit claims.json plus summary.csv");
  add_common(verify, false);
  verify->callback([&]() {
    finalize();
    ClaimsRun run = run_claims(cfg);
    detail::OutputBatch out{cfg.out_dir, {}};
    out.add("claims.json", run.to_json().dump(2) + "\n");
    out.add("summary.csv", run.summary_csv());
    out.flush();
    for (const auto& c : run.claims)
      std::cout << c.claim_id << " " << c.status << "  [" << c.paper_anchor
                << "]\n";
  });

  // ---- search-distill -----------------------------------------------------
  CLI::App* search = app.add_subcommand(
      "search-distill", "search for Schmidt-rank-2 negativity witnesses "
                        "against the A-(BC) and B-(AC) partial transposes");
  add_common(search, false);
  add_budget(search, search_budget);
  search->callback([&]() {
    finalize(&search_budget);
    detail::OutputBatch out{cfg.out_dir, {}};
    auto emit = [&](const MultipartiteState& st, const std::string& name) {
      Json j = report_header(cfg);
      Json params = Json::object();
      for (const auto& [k, v] : st.params) params[k] = v;
      j["state"] = {{"label", st.label}, {"params", params}};
      Json results = Json::array();
      for (const Bipartition& split :
           {split_a_bc(st.party_dims), split_b_ac(st.party_dims)}) {
        Rank2MinResult r = rank2_min(st, split, search_budget.restarts,
                                     search_budget.iters, cfg.seed);
        MScanResult s = m_positivity_scan(st, split, search_budget.samples, cfg.seed);
        Json row = detail::jrank2(r);
        row["witness"] = detail::jwitness(r.argmin);
        row["witness_value"] = distill_test_value(st, split, r.argmin);
        row["m_scan_min_lambda"] = s.min_lambda;
        row["verdict"] = detail::describe_verdict(r.value, cfg.tol.psd);
        results.push_back(row);
      }
      j["results"] = results;
      j["semantics"] =
          "one-copy-distillable requires an explicit negative witness; "
          "no-violation-found never asserts undistillability";
      out.add("distill_" + name + ".json", j.dump(2) + "\n");
    };
    if (family == "sigma") {
      for (double b : cfg.b_grid) emit(sigma_state(b), detail::sigma_name(b));
    } else {
      for (int n : cfg.n_list)
        for (double a : cfg.a_grid)
          emit(rho_state(n, a, cfg.variant), detail::rho_name(n, a, cfg.variant));
    }
    out.flush();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ParamOutOfRange& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const IOFailure& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

inline int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.push_back("entwb");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace entwb

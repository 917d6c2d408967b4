// Command-line behavior, exercised in-process through the argv-vector entry
// point: emitted files, exit codes, determinism of reruns, and conformance of
// the JSON reports to the schemas shipped under docs/.

#include "entwb/app.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using entwb::Json;

namespace {

int run(const std::vector<std::string>& args) { return entwb::run_cli(args); }

/** Absent directory for one scenario; the CLI itself must create it. */
fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("entwb_cli_" + tag);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return entwb::read_text_file(p); }

Json load_json(const fs::path& p) { return Json::parse(slurp(p)); }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::size_t count_fields(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

// --- miniature draft-07 checker covering exactly the keyword subset the
//     shipped schemas use: type, required, properties, items, enum, pattern,
//     minimum, minItems, maxItems ------------------------------------------

bool type_matches(const Json& doc, const std::string& type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "integer") return doc.is_number_integer();
  if (type == "number") return doc.is_number();
  if (type == "boolean") return doc.is_boolean();
  return false;
}

void schema_check(const Json& doc, const Json& schema, const std::string& where,
                  std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const std::string type = schema.at("type").get<std::string>();
    if (!type_matches(doc, type)) {
      errors.push_back(where + ": expected " + type + ", got " + doc.type_name());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& v : schema.at("enum")) hit = hit || v == doc;
    if (!hit) errors.push_back(where + ": value not in enum");
  }
  if (schema.contains("pattern") && doc.is_string()) {
    std::regex re(schema.at("pattern").get<std::string>());
    if (!std::regex_search(doc.get<std::string>(), re))
      errors.push_back(where + ": '" + doc.get<std::string>() + "' fails pattern " +
                       schema.at("pattern").get<std::string>());
  }
  if (schema.contains("minimum") && doc.is_number()) {
    if (doc.get<double>() < schema.at("minimum").get<double>())
      errors.push_back(where + ": below minimum");
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema.at("required"))
        if (!doc.contains(key.get<std::string>()))
          errors.push_back(where + ": missing required key '" + key.get<std::string>() + "'");
    if (schema.contains("properties"))
      for (const auto& [key, sub] : schema.at("properties").items())
        if (doc.contains(key)) schema_check(doc.at(key), sub, where + "." + key, errors);
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema.at("minItems").get<std::size_t>())
      errors.push_back(where + ": fewer than minItems elements");
    if (schema.contains("maxItems") && doc.size() > schema.at("maxItems").get<std::size_t>())
      errors.push_back(where + ": more than maxItems elements");
    if (schema.contains("items")) {
      std::size_t idx = 0;
      for (const auto& el : doc)
        schema_check(el, schema.at("items"), where + "[" + std::to_string(idx++) + "]", errors);
    }
  }
}

Json load_schema(const std::string& name) {
  return load_json(fs::path(ENTWB_SOURCE_DIR) / "docs" / name);
}

}  // namespace

TEST_CASE("construct writes state files that round-trip bit-exactly") {
  fs::path dir = fresh_dir("construct_sigma");
  REQUIRE(run({"construct", "--family", "sigma", "--b", "0.5", "--out", dir.string()}) == 0);

  fs::path file = dir / "sigma_b0.5.json";
  REQUIRE(fs::exists(file));
  const std::string text = slurp(file);
  Json doc = Json::parse(text);

  entwb::MultipartiteState st = entwb::state_from_json(doc);
  CHECK(st.label == "sigma(b=0.5)");
  CHECK(st.party_dims == std::vector<int>{2, 2, 2});
  CHECK(st.param("b") == 0.5);

  SECTION("text -> state -> text is the identity") {
    CHECK(entwb::state_to_json(st).dump(2) + "\n" == text);
  }
  SECTION("the loaded matrix equals an in-process construction exactly") {
    CHECK((st.rho - entwb::sigma_state(0.5).rho).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("the document validates against the shipped state schema") {
    std::vector<std::string> errors;
    schema_check(doc, load_schema("state.schema.json"), "$", errors);
    CAPTURE(errors);
    CHECK(errors.empty());
  }
}

TEST_CASE("construct --variant both reports the projector-slot difference") {
  fs::path dir = fresh_dir("construct_both");
  REQUIRE(run({"construct", "--family", "rho", "--n", "1", "--a", "0.5", "--variant", "both",
               "--out", dir.string()}) == 0);

  REQUIRE(fs::exists(dir / "rho_n1_a0.5_consistent.json"));
  REQUIRE(fs::exists(dir / "rho_n1_a0.5_paper.json"));

  Json diff = load_json(dir / "rho_n1_a0.5_diff.json");
  CHECK(diff.at("lhs") == "rho(n=1,a=0.5,variant=consistent)");
  CHECK(diff.at("rhs") == "rho(n=1,a=0.5,variant=paper)");

  // At n = 1 the printed weights already sum to one, so the two variants can
  // only disagree where the extra projector lands: one diagonal slot each.
  const Json& entries = diff.at("differing_entries");
  REQUIRE(entries.size() == 2);
  std::set<long> rows;
  for (const auto& e : entries) {
    CHECK(e.at("row") == e.at("col"));
    CHECK(e.at("abs_diff").get<double>() > 0.01);
    rows.insert(e.at("row").get<long>());
  }
  CHECK(rows == std::set<long>{2, 3});

  entwb::MultipartiteState lhs =
      entwb::state_from_json(load_json(dir / "rho_n1_a0.5_consistent.json"));
  entwb::MultipartiteState rhs =
      entwb::state_from_json(load_json(dir / "rho_n1_a0.5_paper.json"));
  CHECK(entwb::matrix_compare(lhs.rho, rhs.rho, 1e-15).size() == 2);
}

TEST_CASE("verify-claims emits the pinned verdicts deterministically") {
  const std::vector<std::string> base{"verify-claims", "--b", "0.5", "--a", "0.3",
                                      "--a", "0.7",    "--n", "1",   "--n", "2"};
  auto with_out = [&](const fs::path& d) {
    std::vector<std::string> v = base;
    v.push_back("--out");
    v.push_back(d.string());
    return v;
  };
  fs::path dir1 = fresh_dir("claims_run1");
  fs::path dir2 = fresh_dir("claims_run2");
  REQUIRE(run(with_out(dir1)) == 0);
  REQUIRE(run(with_out(dir2)) == 0);

  const std::string text = slurp(dir1 / "claims.json");
  CHECK(text == slurp(dir2 / "claims.json"));
  CHECK(slurp(dir1 / "summary.csv") == slurp(dir2 / "summary.csv"));

  Json doc = Json::parse(text);
  CHECK(doc.at("toolkit").at("name") == "entwb");
  CHECK(std::regex_match(doc.at("config_hash").get<std::string>(),
                         std::regex("^[0-9a-f]{16}$")));
  CHECK(doc.at("seed").get<std::uint64_t>() == 1);

  std::map<std::string, std::string> status;
  std::map<std::string, Json> by_id;
  for (const auto& c : doc.at("claims")) {
    status[c.at("claim_id").get<std::string>()] = c.at("status").get<std::string>();
    by_id[c.at("claim_id").get<std::string>()] = c;
  }
  const std::map<std::string, std::string> expected{
      {"C1", "refuted"},    {"C2", "confirmed"},  {"C3", "confirmed"},
      {"C4", "confirmed"},  {"C5", "confirmed"},  {"C6", "confirmed"},
      {"C7", "confirmed"},  {"C8", "refuted"},    {"C9", "refuted"},
      {"C10", "confirmed"}, {"C11", "confirmed"}, {"C12", "refuted"},
      {"C13", "refuted"},   {"C14", "refuted"}};
  CHECK(status == expected);

  // the undistillability refutation carries its witness
  const Json& c8 = by_id.at("C8");
  REQUIRE(c8.at("evidence").contains("witness"));
  CHECK(c8.at("evidence").at("witness").at("split") == "A-(BC)");
  CHECK(c8.at("evidence").at("witness_value").get<double>() < -1e-3);
  bool refs_c5 = false;
  for (const auto& r : c8.at("cross_refs")) refs_c5 = refs_c5 || r == "C5";
  CHECK(refs_c5);

  // summary.csv lists one row per claim
  std::vector<std::string> lines = split_lines(slurp(dir1 / "summary.csv"));
  REQUIRE(lines.size() == 15);
  CHECK(lines[0] == "claim_id,status,paper_anchor,statement");
  CHECK(lines[1].rfind("C1,refuted,", 0) == 0);
  CHECK(lines[14].rfind("C14,refuted,", 0) == 0);

  // claims.json validates against the shipped claims schema
  std::vector<std::string> errors;
  schema_check(doc, load_schema("claims.schema.json"), "$", errors);
  CAPTURE(errors);
  CHECK(errors.empty());
  CHECK(doc.at("claims").size() == 14);
}

TEST_CASE("sweep emits a stable CSV table") {
  const std::vector<std::string> base{"sweep",      "--family", "sigma", "--b",
                                      "0.3",        "--b",      "0.7",   "--format",
                                      "csv",        "--restarts", "4",   "--iters",
                                      "40",         "--samples", "10"};
  auto with_out = [&](const fs::path& d) {
    std::vector<std::string> v = base;
    v.push_back("--out");
    v.push_back(d.string());
    return v;
  };
  fs::path dir1 = fresh_dir("sweep1");
  fs::path dir2 = fresh_dir("sweep2");
  REQUIRE(run(with_out(dir1)) == 0);
  REQUIRE(run(with_out(dir2)) == 0);

  const std::string csv = slurp(dir1 / "sweep.csv");
  CHECK(csv == slurp(dir2 / "sweep.csv"));

  std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 7);  // header + 2 states x 3 splits
  CHECK(lines[0] ==
        "family,n,param,variant,split,pt_lambda_min,pt_rank,n_plus,n_minus,"
        "n_zero,rank2_min,rank2_method");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(count_fields(lines[i]) == 12);
  CHECK(lines[1].rfind("sigma,1,0.29999999999999999,consistent,A-(BC),", 0) == 0);
  CHECK(lines[4].rfind("sigma,1,0.69999999999999996,consistent,A-(BC),", 0) == 0);

  SECTION("json format writes the same rows as structured records") {
    fs::path dirj = fresh_dir("sweep_json");
    REQUIRE(run({"sweep", "--family", "sigma", "--b", "0.5", "--restarts", "4", "--iters",
                 "40", "--samples", "10", "--out", dirj.string()}) == 0);
    Json doc = load_json(dirj / "sweep.json");
    REQUIRE(doc.at("rows").size() == 3);
    CHECK(doc.at("rows")[0].at("split") == "A-(BC)");
    CHECK(doc.at("rows")[2].at("split") == "(AB)-C");
    CHECK(doc.at("rows")[2].at("pt_lambda_min").get<double>() > -1e-9);
  }
}

TEST_CASE("analyze writes a headered report with the expected sections") {
  fs::path dir = fresh_dir("analyze_rho");
  REQUIRE(run({"analyze", "--family", "rho", "--n", "1", "--a", "0.5", "--restarts", "6",
               "--iters", "60", "--samples", "40", "--out", dir.string()}) == 0);

  Json doc = load_json(dir / "analysis_rho_n1_a0.5_consistent.json");
  CHECK(doc.at("toolkit").at("name") == "entwb");
  CHECK(doc.at("toolkit").at("version") == "1.0.0");
  CHECK(std::regex_match(doc.at("config_hash").get<std::string>(),
                         std::regex("^[0-9a-f]{16}$")));
  CHECK(doc.at("config").at("family") == "rho");

  const Json& an = doc.at("analysis");
  CHECK(an.at("state_rank") == 5);
  CHECK(an.at("partial_transposes").size() == 3);
  CHECK(an.at("range_criterion").at("verdict") == "entangled");
  CHECK(an.at("rank2_min").size() == 2);
  CHECK(an.at("m_scans").size() == 2);
  CHECK(an.at("quad_form_identities").size() == 3);
  CHECK(an.contains("five_form_survey"));
  CHECK(!an.contains("basis_compressions"));

  SECTION("the qubit family gets the compression survey instead") {
    fs::path dirs = fresh_dir("analyze_sigma");
    REQUIRE(run({"analyze", "--family", "sigma", "--b", "0.5", "--restarts", "6", "--iters",
                 "60", "--samples", "40", "--out", dirs.string()}) == 0);
    Json sdoc = load_json(dirs / "analysis_sigma_b0.5.json");
    const Json& san = sdoc.at("analysis");
    CHECK(san.contains("basis_compressions"));
    CHECK(san.at("basis_compressions").size() == 6);
    CHECK(!san.contains("five_form_survey"));
    CHECK(san.at("quad_form_identities").size() == 2);
    CHECK(san.at("state_rank") == 5);
  }
}

TEST_CASE("search-distill flags the qubit family across both tested splits") {
  fs::path dir = fresh_dir("distill_sigma");
  REQUIRE(run({"search-distill", "--family", "sigma", "--b", "0.5", "--restarts", "6",
               "--iters", "50", "--samples", "60", "--out", dir.string()}) == 0);

  Json doc = load_json(dir / "distill_sigma_b0.5.json");
  CHECK(doc.at("state").at("label") == "sigma(b=0.5)");
  CHECK(doc.contains("semantics"));

  const Json& results = doc.at("results");
  REQUIRE(results.size() == 2);
  CHECK(results[0].at("split") == "A-(BC)");
  CHECK(results[1].at("split") == "B-(AC)");
  for (const auto& row : results) {
    CHECK(row.at("verdict") == "one-copy-distillable");
    // both partial transposes share the same single negative eigenvalue, and
    // the witness comes from an exact bottom-eigenvector construction
    CHECK(std::abs(row.at("witness_value").get<double>() - (-0.022180177632522252)) < 1e-9);
    CHECK(row.at("m_scan_min_lambda").get<double>() < -0.02);
    CHECK(row.at("witness").at("c").size() == 2);
  }
}

TEST_CASE("failure paths exit with the documented codes and write nothing") {
  SECTION("parameter outside [0,1] is a configuration error") {
    fs::path dir = fresh_dir("exit_bad_param");
    CHECK(run({"construct", "--family", "sigma", "--b", "1.5", "--out", dir.string()}) == 2);
    CHECK(!fs::exists(dir));  // output is buffered; nothing flushed on failure
  }
  SECTION("unknown family is rejected by the parser") {
    CHECK(run({"construct", "--family", "neither"}) == 2);
  }
  SECTION("n above the safety cap is a configuration error") {
    CHECK(run({"construct", "--family", "rho", "--n", "7"}) == 2);
  }
  SECTION("help exits cleanly") { CHECK(run({"--help"}) == 0); }
  SECTION("a subcommand is required") { CHECK(run({}) == 2); }
  SECTION("an output directory colliding with a file is an i/o failure") {
    fs::path blocker = fs::temp_directory_path() / "entwb_cli_blocker";
    fs::remove_all(blocker);
    { std::ofstream f(blocker); f << "x"; }
    CHECK(run({"construct", "--family", "sigma", "--b", "0.5", "--out", blocker.string()}) == 3);
    fs::remove(blocker);
  }
}

TEST_CASE("the thread cap honours the environment override") {
  setenv("ENTWB_THREADS", "3", 1);
  CHECK(entwb::max_threads() == 3);
  setenv("ENTWB_THREADS", "0", 1);  // invalid: falls back to hardware
  CHECK(entwb::max_threads() >= 1);
  unsetenv("ENTWB_THREADS");
  CHECK(entwb::max_threads() >= 1);

  setenv("ENTWB_THREADS", "2", 1);
  std::vector<int> hits(257, 0);
  entwb::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  unsetenv("ENTWB_THREADS");
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

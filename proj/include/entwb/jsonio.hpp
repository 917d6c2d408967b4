#pragma once

#include "entwb/states.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace entwb {

/** Insertion-ordered JSON keeps report layouts stable across runs. */
using Json = nlohmann::ordered_json;

/** 17 significant digits: enough to round-trip any double exactly. */
inline std::string format_sig17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline Json state_to_json(const MultipartiteState& st) {
  Json j;
  j["toolkit"] = {{"name", toolkit_name}, {"version", toolkit_version}};
  j["label"] = st.label;
  j["party_dims"] = st.party_dims;
  Json params = Json::object();
  for (const auto& [k, v] : st.params) params[k] = v;
  j["params"] = params;
  j["variant"] = variant_name(st.variant);
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < st.rho.rows(); ++r)
    for (Eigen::Index c = 0; c < st.rho.cols(); ++c) {
      Complex z = st.rho(r, c);
      if (z.real() != 0.0 || z.imag() != 0.0)
        entries.push_back({r, c, z.real(), z.imag()});
    }
  j["matrix"] = {{"dim", st.rho.rows()}, {"entries", entries}};
  return j;
}

inline MultipartiteState state_from_json(const Json& j) {
  try {
    MultipartiteState st;
    st.party_dims = j.at("party_dims").get<std::vector<int>>();
    st.label = j.at("label").get<std::string>();
    for (const auto& [k, v] : j.at("params").items())
      st.params[k] = v.get<double>();
    st.variant = parse_variant(j.at("variant").get<std::string>());
    Eigen::Index dim = j.at("matrix").at("dim").get<Eigen::Index>();
    st.rho = Matrix::Zero(dim, dim);
    for (const auto& e : j.at("matrix").at("entries")) {
      Eigen::Index r = e.at(0).get<Eigen::Index>();
      Eigen::Index c = e.at(1).get<Eigen::Index>();
      if (r < 0 || c < 0 || r >= dim || c >= dim)
        throw IOFailure("state entry index outside the matrix");
      st.rho(r, c) = Complex(e.at(2).get<double>(), e.at(3).get<double>());
    }
    if (st.dim() != dim) throw IOFailure("party_dims do not multiply to the matrix dim");
    return st;
  } catch (const Json::exception& ex) {
    throw IOFailure(std::string("malformed state document: ") + ex.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOFailure("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw IOFailure("write failed: " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOFailure("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace entwb

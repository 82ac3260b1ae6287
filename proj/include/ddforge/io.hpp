#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ddforge/design.hpp"
#include "ddforge/klein.hpp"
#include "ddforge/report.hpp"

namespace ddforge {

inline nlohmann::json field_to_json(const GaloisField& gf, std::uint32_t m) {
  return nlohmann::json{{"p", gf.p()}, {"n", gf.n()}, {"modulus", gf.modulus()}, {"m", m}};
}

inline nlohmann::json ring_element_to_json(const GaloisField& gf, Re x) {
  return nlohmann::json::array({gf.coeffs(x.a), gf.coeffs(x.b)});
}

/// Legend entry for a point: the canonical representative pair (a, b) of
/// R(a,b), each ring element as [a_coeffs, b_coeffs].
inline nlohmann::json point_legend(const ProjectiveLine& line) {
  auto legend = nlohmann::json::array();
  for (std::uint32_t i = 0; i < line.v(); ++i) {
    const auto [a, b] = line.representative(i);
    legend.push_back(nlohmann::json::array(
        {ring_element_to_json(line.field(), a), ring_element_to_json(line.field(), b)}));
  }
  return legend;
}

inline nlohmann::json design_to_json(const ChainDesign& d) {
  const ProjectiveLine& line = d.line();
  nlohmann::json j;
  j["field"] = field_to_json(line.field(), line.ring().sigma().m());
  j["m"] = line.ring().sigma().m();
  j["v"] = d.v();
  j["s"] = d.s();
  j["k"] = d.k();
  j["lambda3"] = d.lambda3();
  j["points"] = point_legend(line);
  j["parallel_classes"] = line.parallel_classes();
  j["blocks"] = d.blocks();
  return j;
}

/// Canonical serialization: compact dump with sorted keys, one trailing
/// newline. Two identical designs produce byte-identical text.
inline std::string design_text(const ChainDesign& d) { return design_to_json(d).dump() + "\n"; }

/// Incidence matrix: v rows by b columns of '0'/'1', rows newline-separated.
/// Row i, column j is 1 iff point i lies in block j (blocks in sorted order).
inline std::string incidence_text(const ChainDesign& d) {
  const std::size_t b = d.blocks().size();
  std::string out;
  out.reserve((b + 1) * d.v());
  for (std::uint32_t p = 0; p < d.v(); ++p) {
    std::string row(b, '0');
    for (const std::uint32_t id : d.blocks_of_point(p)) row[id] = '1';
    out += row;
    out += '\n';
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  if (path.empty()) throw std::invalid_argument("output path must not be empty");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << content;
  if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct LoadedDesign {
  ChainDesign design;
  nlohmann::json raw;
};

/// Rebuilds the line from the file's field description and wraps the file's
/// blocks. Schema problems throw invalid_argument; whether the blocks satisfy
/// the design axioms is left to verification.
inline LoadedDesign load_design_json(const nlohmann::json& j) {
  try {
    const auto& jf = j.at("field");
    const std::uint32_t p = jf.at("p").get<std::uint32_t>();
    const std::uint32_t n = jf.at("n").get<std::uint32_t>();
    const auto modulus = jf.at("modulus").get<std::vector<std::uint32_t>>();
    const std::uint32_t m = jf.at("m").get<std::uint32_t>();
    ProjectiveLine line({GaloisField(p, n, modulus), m});
    auto blocks = j.at("blocks").get<std::vector<Block>>();
    return {ChainDesign(std::move(line), std::move(blocks)), j};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed design file: ") + e.what());
  }
}

inline LoadedDesign load_design_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed design file: ") + e.what());
  }
  return load_design_json(j);
}

/// Compares the file's derived fields (parameters, legend, classes, lambda3)
/// against the reconstruction from its field description. Mismatches are
/// verification failures, not parse errors.
inline CheckReport file_consistency_report(const LoadedDesign& ld) {
  const ChainDesign& d = ld.design;
  const nlohmann::json& j = ld.raw;
  CheckReport rep;
  rep.title = "design file consistency";
  rep.add("parameters-match",
          j.value("v", 0u) == d.v() && j.value("s", 0u) == d.s() && j.value("k", 0u) == d.k(),
          "v, s, k agree with the field description");
  bool lambda_ok = false;
  const Rational l3 = lambda3_transversal(d.blocks().size(), d.s());
  if (l3.is_integer() && j.contains("lambda3"))
    lambda_ok = j["lambda3"].get<std::uint64_t>() == std::uint64_t(l3.num);
  rep.add("lambda3-consistent", lambda_ok, "lambda3 equals block count / s^3");
  rep.add("points-legend-match", j.value("points", nlohmann::json()) == point_legend(d.line()),
          "point legend matches the canonical enumeration");
  rep.add("parallel-classes-match",
          j.value("parallel_classes", nlohmann::json()) ==
              nlohmann::json(d.line().parallel_classes()),
          "parallel classes match the canonical partition");
  return rep;
}

inline nlohmann::json report_to_json(const CheckReport& rep) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& item : rep.items)
    items.push_back({{"name", item.name},
                     {"pass", item.pass},
                     {"applicable", item.applicable},
                     {"detail", item.detail}});
  return nlohmann::json{{"title", rep.title}, {"items", items}, {"all_pass", rep.all_pass()}};
}

inline nlohmann::json verification_to_json(const DesignVerification& v) {
  nlohmann::json j = report_to_json(v.report);
  j["t"] = v.t;
  j["lambda_min"] = v.lambda_min;
  j["lambda_max"] = v.lambda_max;
  j["tuples_checked"] = v.tuples_checked;
  j["sampled"] = v.sampled;
  j["seconds"] = v.seconds;
  return j;
}

/// Certificate for the geometric model: per-lemma reports plus the coordinate
/// legend of the Phi images.
inline nlohmann::json model_certificate(const KleinModel& model,
                                        const std::vector<CheckReport>& reports) {
  const ProjectiveLine& line = model.line();
  const GaloisField& gf = line.field();
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const CheckReport& rep : reports) {
    checks.push_back(report_to_json(rep));
    all = all && rep.all_pass();
  }
  auto legend = nlohmann::json::array();
  for (std::uint32_t i = 0; i < line.v(); ++i) {
    auto coords = nlohmann::json::array();
    for (const Fe c : model.image(i).x) coords.push_back(gf.coeffs(c));
    legend.push_back(coords);
  }
  return nlohmann::json{{"field", field_to_json(gf, line.ring().sigma().m())},
                        {"m", line.ring().sigma().m()},
                        {"v", line.v()},
                        {"vertex", [&] {
                           auto coords = nlohmann::json::array();
                           for (const Fe c : model.vertex().x) coords.push_back(gf.coeffs(c));
                           return coords;
                         }()},
                        {"phi_legend", legend},
                        {"checks", checks},
                        {"all_pass", all}};
}

}  // namespace ddforge

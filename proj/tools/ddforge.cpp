// ddforge: build, verify, model and export the transversal 3-divisible
// designs coming from chain geometries over twisted dual numbers K(eps;sigma).
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parameter error.
// DDFORGE_THREADS caps the worker count of the parallel passes.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddforge/design.hpp"
#include "ddforge/io.hpp"
#include "ddforge/klein.hpp"

namespace {

struct Options {
  std::uint64_t q = 0;
  std::uint32_t m = 0;
  std::string modulus;
  std::uint32_t t = 3;
  std::string file;
  std::string out;
  std::string format = "incidence";
  std::uint64_t seed = 0;
  bool exhaustive = false;
};

std::vector<std::uint32_t> parse_modulus(const std::string& text) {
  std::vector<std::uint32_t> coeffs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) throw std::invalid_argument("empty coefficient in --modulus");
    coeffs.push_back(std::uint32_t(std::stoul(tok)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return coeffs;
}

ddforge::ProjectiveLine make_line(const Options& opt) {
  const auto [p, n] = ddforge::detail::factor_prime_power(opt.q);
  if (p == 0)
    throw std::invalid_argument("q = " + std::to_string(opt.q) + " is not a prime power");
  ddforge::GaloisField gf =
      opt.modulus.empty() ? ddforge::GaloisField(p, n)
                          : ddforge::GaloisField(p, n, parse_modulus(opt.modulus));
  return ddforge::ProjectiveLine({std::move(gf), opt.m});
}

void print_report(const ddforge::CheckReport& rep) {
  std::cout << "# " << rep.title << "\n";
  for (const auto& item : rep.items) {
    const char* tag = !item.applicable ? "  n/a" : item.pass ? " pass" : " FAIL";
    std::cout << tag << "  " << item.name;
    if (!item.detail.empty()) std::cout << "  (" << item.detail << ")";
    std::cout << "\n";
  }
}

int cmd_build(const Options& opt) {
  const auto line = make_line(opt);
  const auto design = ddforge::ChainDesign::generate(line);
  ddforge::write_text_file(opt.out, ddforge::design_text(design));
  std::cout << "v=" << design.v() << " s=" << design.s() << " k=" << design.k()
            << " lambda3=" << design.lambda3() << " blocks=" << design.blocks().size() << "\n";
  return 0;
}

int cmd_verify(const Options& opt) {
  const auto loaded = ddforge::load_design_file(opt.file);
  const ddforge::ChainDesign& design = loaded.design;
  const auto& line = design.line();
  const std::uint32_t q = line.q();
  bool ok = true;

  const auto consistency = ddforge::file_consistency_report(loaded);
  print_report(consistency);
  ok = ok && consistency.all_pass();

  const bool full_lambda = opt.exhaustive || q <= 9;
  const auto res = design.verify(opt.t, full_lambda, opt.seed);
  print_report(res.report);
  ok = ok && res.ok();

  if (q % 2 == 0 && opt.t != 4 && line.ring().sigma().m() == 2) {
    const auto res4 = design.verify(4, full_lambda, opt.seed);
    print_report(res4.report);
    ok = ok && res4.ok() && res4.lambda_min == 1;
  }

  if (!line.ring().sigma().is_identity()) {
    const bool full_sweep = opt.exhaustive || q <= 4;
    const auto sweep = design.sweep_trichotomy(full_sweep, opt.seed);
    std::cout << "# trace / fourth-point trichotomy\n";
    std::cout << (sweep.consistent ? " pass" : " FAIL") << "  trichotomy-counts  ("
              << sweep.triples << (sweep.sampled ? " sampled" : "") << " triples, "
              << sweep.quadruples << " quadruples; witnesses q/0/1: " << sweep.q_branch << "/"
              << sweep.zero_branch << "/" << sweep.one_branch;
    if (sweep.q_branch_vacuous()) std::cout << "; q-branch vacuous";
    if (sweep.zero_branch_vacuous()) std::cout << "; 0-branch vacuous";
    if (sweep.one_branch_vacuous()) std::cout << "; 1-branch vacuous";
    std::cout << ")\n";
    ok = ok && sweep.consistent;
  } else {
    std::cout << "# trace / fourth-point trichotomy\n  n/a  sigma = id\n";
  }
  return ok ? 0 : 1;
}

int cmd_model(const Options& opt) {
  const auto line = make_line(opt);
  const ddforge::KleinModel model(line);
  std::vector<ddforge::CheckReport> reports;
  reports.push_back(model.verify_embedding());
  reports.push_back(model.verify_cone());
  reports.push_back(model.verify_cap());

  const bool twisted = !line.ring().sigma().is_identity();
  std::optional<ddforge::ChainDesign> design;
  if (twisted) design = ddforge::ChainDesign::generate(line);

  if (twisted) {
    reports.push_back(model.verify_blocks_geometric(*design));
  } else {
    ddforge::CheckReport rep;
    rep.title = "blocks as cone sections";
    rep.add_not_applicable("requires-twist", "sigma = id (cylinder model: blocks are plane conics)");
    reports.push_back(rep);
  }

  try {
    reports.push_back(model.verify_baer());
  } catch (const std::domain_error&) {
    ddforge::CheckReport rep;
    rep.title = "Baer subspace and elliptic quadric";
    rep.add_not_applicable("requires-quadratic-extension", "q != m^2");
    reports.push_back(rep);
  }

  if (twisted) {
    // trace planes: the standard triple plus seeded random ones
    std::mt19937_64 rng(opt.seed);
    std::vector<std::array<std::uint32_t, 3>> triples{
        {line.infinity(), line.zero(), line.one()}};
    const auto& classes = line.parallel_classes();
    while (triples.size() < 5) {
      std::uint32_t c1 = std::uint32_t(rng() % classes.size()), c2, c3;
      do c2 = std::uint32_t(rng() % classes.size()); while (c2 == c1);
      do c3 = std::uint32_t(rng() % classes.size()); while (c3 == c1 || c3 == c2);
      triples.push_back({classes[c1][rng() % classes[c1].size()],
                         classes[c2][rng() % classes[c2].size()],
                         classes[c3][rng() % classes[c3].size()]});
    }
    for (const auto& t : triples) {
      ddforge::CheckReport rep = model.trace_plane(*design, t[0], t[1], t[2]);
      rep.title += " (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                   std::to_string(t[2]) + ")";
      reports.push_back(rep);
    }
  }

  bool ok = true;
  for (const auto& rep : reports) {
    print_report(rep);
    ok = ok && rep.all_pass();
  }
  const auto cert = ddforge::model_certificate(model, reports);
  if (!opt.out.empty())
    ddforge::write_text_file(opt.out, cert.dump() + "\n");
  else
    std::cout << cert.dump() << "\n";
  return ok ? 0 : 1;
}

int cmd_export(const Options& opt) {
  const auto loaded = ddforge::load_design_file(opt.file);
  if (opt.format == "incidence")
    ddforge::write_text_file(opt.out, ddforge::incidence_text(loaded.design));
  else
    ddforge::write_text_file(opt.out, ddforge::design_text(loaded.design));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divisible designs from chain geometries over twisted dual numbers"};
  app.require_subcommand(1);
  Options opt;

  const auto add_field_flags = [&](CLI::App* cmd) {
    cmd->add_option("--q", opt.q, "field order q = p^n")->required();
    cmd->add_option("--m", opt.m, "automorphism exponent (sigma: x -> x^m)")->required();
    cmd->add_option("--modulus", opt.modulus,
                    "modulus coefficients, constant term first, e.g. \"1,1,1\"");
  };

  CLI::App* build = app.add_subcommand("build", "construct the design and write it as JSON");
  add_field_flags(build);
  build->add_option("--out", opt.out, "output design file")->required();

  CLI::App* verify =
      app.add_subcommand("verify", "check the axioms and counting claims on a design file");
  verify->add_option("file", opt.file, "design JSON file")->required();
  verify->add_option("--t", opt.t, "t of the t-DD axiom check (default 3)");
  verify->add_option("--seed", opt.seed, "seed for sampled checks (default 0)");
  verify->add_flag("--exhaustive", opt.exhaustive, "force complete enumeration at any q");

  CLI::App* model = app.add_subcommand("model", "certify the geometric model on the Klein quadric");
  add_field_flags(model);
  model->add_option("--out", opt.out, "certificate JSON file (stdout if omitted)");
  model->add_option("--seed", opt.seed, "seed for the sampled trace planes (default 0)");

  CLI::App* exp = app.add_subcommand("export", "export a design file");
  exp->add_option("file", opt.file, "design JSON file")->required();
  exp->add_option("--out", opt.out, "output file")->required();
  exp->add_option("--format", opt.format, "json or incidence (default incidence)")
      ->check(CLI::IsMember({"json", "incidence"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (model->parsed()) return cmd_model(opt);
    if (exp->parsed()) return cmd_export(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

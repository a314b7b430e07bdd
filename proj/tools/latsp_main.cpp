// Command-line front end: property-suite runs, postcondition computation,
// the frame-pipeline demo, and seeded random instance generation.
//
// Exit codes: 0 success, 1 a checked law failed (with a reproducer file
// where applicable), 2 usage or validation errors.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "latsp/scenarios.hpp"
#include "latsp/suites.hpp"

namespace {

using namespace latsp;

Exec parse_exec(const std::string& s) {
  if (s == "serial") return Exec::serial;
  if (s == "parallel") return Exec::parallel;
  return Exec::automatic;
}

void print_predicate(std::ostream& os, const Predicate& m, const std::string& title,
                     bool machine, int limit = 64) {
  const DomainPoset& d = m.domain();
  const FiniteLattice& l = m.lattice();
  if (machine) {
    for (Elem e = 0; e < d.size(); ++e)
      os << "value\t" << title << '\t' << d.name(e) << '\t' << l.name(m.value(e)) << '\n';
    return;
  }
  os << title << " (" << (m.mode() == Mode::normalized ? "normalized" : "general") << "):\n";
  const int shown = std::min(d.size(), limit);
  for (Elem e = 0; e < shown; ++e)
    os << "  " << d.name(e) << " : " << l.name(m.value(e)) << '\n';
  if (shown < d.size()) os << "  ... (" << d.size() - shown << " more elements)\n";
}

struct VerifyOpts {
  SuiteConfig cfg;
  std::string format = "table";
  std::string exec = "auto";
  std::string rerun;
};

int run_verify(VerifyOpts& o) {
  const bool machine = o.format == "machine";
  if (!o.rerun.empty()) {
    const LawReport r = rerun_reproducer(o.rerun);
    if (machine) {
      std::cout << "rerun\t" << (r.ok() ? "pass" : "fail") << "\tchecked=" << r.checked
                << "\tfailures=" << r.failures.size() << '\n';
      for (const auto& w : r.failures) std::cout << "witness\trerun\t" << w.pretty() << '\n';
    } else {
      std::cout << "rerun of " << o.rerun << ": " << r.summary() << '\n';
    }
    return r.ok() ? 0 : 1;
  }
  o.cfg.exec = parse_exec(o.exec);
  const auto outcomes = run_suites(o.cfg);
  std::cout << format_outcomes(outcomes, machine);
  return all_passed(outcomes) ? 0 : 1;
}

struct SpOpts {
  std::string bundle;
  std::string out;
  std::string format = "table";
  bool normalized = false;
  bool allow_non_normalized = false;
  bool show_both = false;
};

int run_sp(SpOpts& o) {
  const bool machine = o.format == "machine";
  const InstanceBundle b = load_bundle_file(o.bundle);
  if (!b.transformer) throw ParseError("bundle has no transformer");
  if (!b.predicate) throw ParseError("bundle has no predicate");
  const StateTransformer& phi = *b.transformer;
  const Predicate& m = *b.predicate;

  if (!machine) {
    std::cout << "transformer: |source|=" << phi.source().size()
              << " |target|=" << phi.target().size() << " |L|=" << phi.quantale().size()
              << " isotone=" << (phi.isotone() ? "yes" : "no")
              << " normalized-valued=" << (phi.normalized_valued() ? "yes" : "no") << '\n';
  }

  const Predicate simple = usp_simple(phi, m);
  if (o.show_both) {
    const Predicate general = usp_general(phi, m);
    print_predicate(std::cout, general, "usp-general", machine);
    print_predicate(std::cout, simple, "usp-simple", machine);
    if (general != simple) {
      std::cout << (machine ? "formulas\tdisagree\n" : "the two formulas DISAGREE\n");
      return 1;
    }
    if (!machine) std::cout << "the two formulas agree\n";
  }

  Predicate result = simple;
  if (o.normalized) result = sp(phi, m, o.allow_non_normalized);
  print_predicate(std::cout, result, o.normalized ? "sp" : "usp", machine);
  if (!o.out.empty()) save_json_file(o.out, serialize(result));
  return 0;
}

struct DemoOpts {
  int parts = 3;
  int degrees = 5;
  std::string state;
  std::string out;
  std::string format = "table";
};

int run_demo(DemoOpts& o) {
  const bool machine = o.format == "machine";
  const QualityScale scale = make_quality_scale(o.parts, o.degrees);
  const StateTransformer phi = frame_transformer(scale);

  std::vector<int> s(o.parts, o.degrees);
  if (!o.state.empty()) {
    s.clear();
    std::stringstream ss(o.state);
    std::string tok;
    while (std::getline(ss, tok, ',')) s.push_back(std::stoi(tok));
    if (static_cast<int>(s.size()) != o.parts)
      throw ParseError("--state needs exactly " + std::to_string(o.parts) + " entries");
    for (int v : s)
      if (v < 0 || v > o.degrees) throw ParseError("--state entries must lie in 0.." +
                                                   std::to_string(o.degrees));
  }

  if (!machine) {
    std::cout << "frame pipeline: parts=" << o.parts << " degrees=" << o.degrees
              << " key states=" << phi.overrides().size() << '\n';
    for (const auto& [key, img] : phi.overrides())
      std::cout << "  key " << scale.domain->name(key) << " -> margin predicate\n";
  }

  const Predicate m = u_closure(truth_valuation(scale, s));
  const Predicate out = usp_simple(phi, m);
  print_predicate(std::cout, out, "usp", machine);
  if (!o.out.empty()) save_json_file(o.out, serialize(out));
  return 0;
}

struct GenOpts {
  std::string kind;
  std::string out;
  std::uint64_t seed = 1;
  int count = 1;
  int max_lattice = 6;
  int max_domain = 5;
};

int run_gen(GenOpts& o) {
  Json all = Json::array();
  for (int i = 0; i < o.count; ++i) {
    Rng rng(derive_seed(o.seed, i));
    Json j;
    if (o.kind == "lattice") {
      j = serialize(*random_lattice(rng, o.max_lattice));
      parse_lattice(j);
    } else if (o.kind == "quantale") {
      j = serialize(*random_quantale(rng, o.max_lattice));
      parse_quantale(j);
    } else if (o.kind == "domain") {
      j = serialize(*random_domain(rng, o.max_domain, rng.bernoulli(0.5)));
      parse_domain(j);
    } else if (o.kind == "bundle") {
      GenConfig gc;
      gc.max_lattice = o.max_lattice;
      gc.max_domain = o.max_domain;
      j = serialize(random_bundle(rng, gc));
      parse_bundle(j, o.out.empty() ? "." : o.out);
    } else {
      throw ParseError("unknown --kind '" + o.kind + "'");
    }
    if (o.out.empty()) {
      all.push_back(std::move(j));
    } else {
      std::filesystem::create_directories(o.out);
      save_json_file(o.out + "/" + o.kind + "_" + std::to_string(i) + ".json", j);
    }
  }
  if (o.out.empty()) std::cout << all.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L-valued predicates over finite domains: verification and tools"};
  app.require_subcommand(1);

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--seed", vo.cfg.seed, "master seed");
  verify->add_option("--cases", vo.cfg.cases, "instances per suite");
  verify->add_option("--max-domain", vo.cfg.max_domain, "largest random domain");
  verify->add_option("--max-lattice", vo.cfg.max_lattice, "largest random lattice");
  verify->add_option("--suite", vo.cfg.only, "run only the named suites")
      ->check(CLI::IsMember(latsp::suite_names()));
  verify->add_flag("--inject-failure", vo.cfg.inject_failure,
                   "plant a deliberate violation (failure-path test hook)");
  verify->add_option("--out", vo.cfg.out_dir, "directory for reproducer files");
  verify->add_option("--format", vo.format, "output format")
      ->check(CLI::IsMember({"table", "machine"}));
  verify->add_option("--exec", vo.exec, "execution mode")
      ->check(CLI::IsMember({"auto", "serial", "parallel"}));
  verify->add_option("--rerun", vo.rerun, "re-check a reproducer file");

  SpOpts so;
  CLI::App* spc = app.add_subcommand("sp", "compute the strongest postcondition");
  spc->add_option("--bundle", so.bundle, "instance bundle file")->required();
  spc->add_flag("--normalized", so.normalized, "compute sp instead of usp");
  spc->add_flag("--allow-non-normalized", so.allow_non_normalized,
                "let sp accept a transformer without normalized images");
  spc->add_flag("--show-both-formulas", so.show_both,
                "print the general and the simple evaluation");
  spc->add_option("--out", so.out, "write the result predicate to this file");
  spc->add_option("--format", so.format, "output format")
      ->check(CLI::IsMember({"table", "machine"}));

  DemoOpts dopt;
  CLI::App* demo = app.add_subcommand("demo-frames", "run the frame-pipeline demo");
  demo->add_option("--parts", dopt.parts, "number of frames")->check(CLI::Range(3, 6));
  demo->add_option("--degrees", dopt.degrees, "quality scale maximum")->check(CLI::Range(1, 9));
  demo->add_option("--state", dopt.state, "actual qualities, comma separated");
  demo->add_option("--out", dopt.out, "write the result predicate to this file");
  demo->add_option("--format", dopt.format, "output format")
      ->check(CLI::IsMember({"table", "machine"}));

  GenOpts go;
  CLI::App* gen = app.add_subcommand("gen", "generate random instances");
  gen->add_option("--kind", go.kind, "lattice | quantale | domain | bundle")->required();
  gen->add_option("--seed", go.seed, "master seed");
  gen->add_option("--count", go.count, "number of instances")->check(CLI::Range(1, 10000));
  gen->add_option("--out", go.out, "directory for generated files (default: stdout)");
  gen->add_option("--max-lattice", go.max_lattice, "largest lattice");
  gen->add_option("--max-domain", go.max_domain, "largest domain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify(vo);
    if (spc->parsed()) return run_sp(so);
    if (demo->parsed()) return run_demo(dopt);
    if (gen->parsed()) return run_gen(go);
  } catch (const latsp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

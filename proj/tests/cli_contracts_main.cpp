// Contract checks for the command-line tool: serialization round trips,
// per-seed determinism, exit-code semantics, and the full default verify
// run finishing inside its time budget.  Prints one line per check and a
// final criterion line; exits nonzero if anything fails.
//
// Usage: cli_contracts <path-to-cli> <scratch-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "latsp/io.hpp"
#include "latsp/scenarios.hpp"

namespace fs = std::filesystem;
using namespace latsp;

namespace {

std::string g_cli;
std::string g_scratch;
int g_failures = 0;
int g_checks = 0;

void report(bool ok, const std::string& what) {
  ++g_checks;
  if (!ok) ++g_failures;
  std::printf("  check %2d: %s — %s\n", g_checks, ok ? "ok" : "FAIL", what.c_str());
  std::fflush(stdout);
}

// Runs the CLI with the given arguments, stdout/stderr captured into
// scratch files; returns the exit status (or -1 if it died abnormally).
int run_cli(const std::string& args, const std::string& tag) {
  const std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + g_scratch + "/" + tag +
                          ".out\" 2> \"" + g_scratch + "/" + tag + ".err\"";
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string out_of(const std::string& tag) { return slurp(g_scratch + "/" + tag + ".out"); }

std::vector<std::string> json_files_in(const std::string& dir) {
  std::vector<std::string> files;
  if (!fs::exists(dir)) return files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

std::shared_ptr<const DomainPoset> share(DomainPoset p) {
  return std::make_shared<const DomainPoset>(std::move(p));
}

void check_help_and_usage() {
  report(run_cli("--help", "help") == 0, "--help exits 0");
  report(run_cli("verify --help", "help_verify") == 0, "verify --help exits 0");
  report(run_cli("", "no_subcommand") == 2, "missing subcommand exits 2");
  report(run_cli("frobnicate", "unknown_subcommand") == 2, "unknown subcommand exits 2");
  report(run_cli("verify --no-such-flag", "bad_flag") == 2, "unknown flag exits 2");
}

void check_gen_roundtrip_and_determinism() {
  const std::string d1 = g_scratch + "/gen_a";
  const std::string d2 = g_scratch + "/gen_b";
  report(run_cli("gen --kind bundle --seed 7 --count 3 --out \"" + d1 + "\"", "gen_a") == 0,
         "gen bundle --out exits 0");
  report(run_cli("gen --kind bundle --seed 7 --count 3 --out \"" + d2 + "\"", "gen_b") == 0,
         "gen bundle --out exits 0 (second run)");

  const auto files1 = json_files_in(d1);
  const auto files2 = json_files_in(d2);
  bool identical = files1.size() == 3 && files2.size() == 3;
  for (std::size_t i = 0; identical && i < files1.size(); ++i)
    identical = slurp(files1[i]) == slurp(files2[i]);
  report(identical, "same seed writes byte-identical bundle files");

  bool round_trips = !files1.empty();
  for (const auto& f : files1) {
    const Json j = load_json_file(f);
    const InstanceBundle b = parse_bundle(j, d1);
    if (serialize(b) != j) round_trips = false;
  }
  report(round_trips, "serialize(parse(bundle)) reproduces every generated bundle");

  bool parts_round_trip = true;
  for (const std::string kind : {"lattice", "quantale", "domain"}) {
    const std::string dir = g_scratch + "/gen_" + kind;
    if (run_cli("gen --kind " + kind + " --seed 3 --count 2 --out \"" + dir + "\"",
                "gen_" + kind) != 0)
      parts_round_trip = false;
    for (const auto& f : json_files_in(dir)) {
      const Json j = load_json_file(f);
      Json back;
      if (kind == "lattice") back = serialize(*parse_lattice(j));
      if (kind == "quantale") back = serialize(*parse_quantale(j));
      if (kind == "domain") back = serialize(*parse_domain(j));
      if (back != j) parts_round_trip = false;
    }
  }
  report(parts_round_trip, "lattice/quantale/domain files round-trip too");

  report(run_cli("gen --kind quantale --seed 9 --count 2", "gen_stdout_1") == 0 &&
             run_cli("gen --kind quantale --seed 9 --count 2", "gen_stdout_2") == 0 &&
             out_of("gen_stdout_1") == out_of("gen_stdout_2") &&
             !out_of("gen_stdout_1").empty(),
         "gen to stdout is deterministic per seed");
  report(run_cli("gen --kind nonsense --seed 1", "gen_bad_kind") == 2,
         "unknown --kind exits 2");
}

void check_verify_exit_codes() {
  const std::string small = "verify --seed 5 --cases 6 --max-domain 4 --max-lattice 5";
  report(run_cli(small + " --format machine", "verify_m1") == 0 &&
             run_cli(small + " --format machine", "verify_m2") == 0 &&
             out_of("verify_m1") == out_of("verify_m2") && !out_of("verify_m1").empty(),
         "verify --format machine is deterministic and exits 0 on a passing run");

  const std::string repro_dir = g_scratch + "/repro";
  report(run_cli(small + " --inject-failure --out \"" + repro_dir + "\" --format machine",
                 "verify_inject") == 1,
         "verify --inject-failure exits 1");
  const auto repros = json_files_in(repro_dir);
  report(!repros.empty(), "injected failure writes a reproducer file");
  if (!repros.empty()) {
    report(run_cli("verify --rerun \"" + repros.front() + "\"", "rerun") == 1,
           "rerunning the reproducer exits 1");
  }
  report(run_cli("verify --rerun \"" + g_scratch + "/absent.json\"", "rerun_absent") == 2,
         "rerunning a missing file exits 2");
}

void check_sp_and_demo() {
  const auto bundles = json_files_in(g_scratch + "/gen_a");
  if (bundles.empty()) {
    report(false, "no generated bundles available for the sp checks");
    return;
  }
  const std::string& bundle = bundles.front();
  report(run_cli("sp --bundle \"" + bundle + "\" --show-both-formulas --format machine",
                 "sp_1") == 0 &&
             run_cli("sp --bundle \"" + bundle + "\" --show-both-formulas --format machine",
                     "sp_2") == 0 &&
             out_of("sp_1") == out_of("sp_2") && !out_of("sp_1").empty(),
         "sp on a generated bundle exits 0, deterministically");

  const std::string sp_out = g_scratch + "/sp_result.json";
  report(run_cli("sp --bundle \"" + bundle + "\" --out \"" + sp_out + "\"", "sp_save") == 0 &&
             load_json_file(sp_out).contains("kind"),
         "sp --out writes a loadable predicate file");

  report(run_cli("sp --bundle \"" + g_scratch + "/absent.json\"", "sp_absent") == 2,
         "sp on a missing bundle exits 2");
  report(run_cli("sp", "sp_no_bundle") == 2, "sp without --bundle exits 2");

  // A hand-built bundle whose target has no bottom: usp is fine, but the
  // normalized postcondition cannot exist and must be rejected.
  const QuantalePtr q = std::make_shared<const Quantale>(lukasiewicz_quantale(1));
  const PosetPtr source = share(chain_poset(2));
  Relation anti(2, std::vector<std::uint8_t>(2, 0));
  anti[0][0] = anti[1][1] = 1;
  const PosetPtr target = share(DomainPoset::create({"u", "v"}, anti));
  InstanceBundle b;
  b.quantale = q;
  b.source = source;
  b.target = target;
  b.predicate = Predicate(source, q->lattice_ptr(), {1, 0}, Mode::normalized);
  b.transformer = StateTransformer(
      source, target, q,
      {Predicate::constant(target, q->lattice_ptr(), 1),
       Predicate::constant(target, q->lattice_ptr(), 0)});
  const std::string bottomless = g_scratch + "/bottomless.json";
  save_json_file(bottomless, serialize(b));
  report(run_cli("sp --bundle \"" + bottomless + "\"", "sp_bottomless") == 0,
         "usp on a bottomless target exits 0");
  report(run_cli("sp --normalized --bundle \"" + bottomless + "\"", "sp_norm_gate") == 2,
         "sp --normalized on a bottomless target exits 2");

  report(run_cli("demo-frames --format machine", "demo_1") == 0 &&
             run_cli("demo-frames --format machine", "demo_2") == 0 &&
             out_of("demo_1") == out_of("demo_2") && !out_of("demo_1").empty(),
         "demo-frames exits 0, deterministically");
  report(run_cli("demo-frames --state 5,0,5 --format machine", "demo_state") == 0,
         "demo-frames with an explicit state exits 0");
  report(run_cli("demo-frames --parts 2", "demo_bad_parts") == 2,
         "demo-frames with out-of-range --parts exits 2");
}

bool check_full_verify_budget(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  const int rc = run_cli("verify --seed 42", "verify_full");
  secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(rc == 0, "full default verify run exits 0");
  report(secs <= 300.0, "full default verify run finishes within 300 s");
  return rc == 0 && secs <= 300.0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <path-to-cli> <scratch-dir>\n", argv[0]);
    return 2;
  }
  g_cli = argv[1];
  g_scratch = argv[2];
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    check_help_and_usage();
    check_gen_roundtrip_and_determinism();
    check_verify_exit_codes();
    check_sp_and_demo();
    double full_secs = 0.0;
    check_full_verify_budget(full_secs);
  } catch (const std::exception& e) {
    report(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const bool pass = g_failures == 0;
  std::printf("criterion 7: %s — CLI contracts — %d checks, %d failures (%.1f s)\n",
              pass ? "PASS" : "FAIL", g_checks, g_failures, secs);
  return pass ? 0 : 1;
}

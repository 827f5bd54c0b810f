// Command-line front end: diff (default), gen, oracle, check.

#include <CLI11.hpp>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ldiff/diff.hpp"
#include "ldiff/syntax.hpp"

namespace {

using namespace ldiff;

constexpr int kNoDiff = 0;
constexpr int kDiff = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Terminology load_terminology(const std::string& path) {
  try {
    return parse_terminology(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.location().line) + ":" + std::to_string(e.location().column) +
                     ": " + e.what());
  }
}

std::optional<Signature> load_signature(const std::string& path) {
  if (path.empty()) return std::nullopt;
  try {
    return parse_signature(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.location().line) + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + out_path);
  out << text;
}

std::vector<Mode> modes_of(const std::string& m) {
  if (m == "concept") return {Mode::Concept};
  if (m == "instance") return {Mode::Instance};
  if (m == "query") return {Mode::Query};
  return {Mode::Concept, Mode::Instance, Mode::Query};
}

const std::map<std::string, RhsStrategy> kStrategies{
    {"auto", RhsStrategy::Auto}, {"notwitness", RhsStrategy::NotWitness}, {"abox", RhsStrategy::ABox}};

struct CommonFlags {
  std::string t1, t2, sig, mode = "all", output = "text", out;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("t1", f.t1, "first terminology (KRSS)")->required();
  app->add_option("t2", f.t2, "second terminology (KRSS)")->required();
  app->add_option("--sig", f.sig, "signature file (default: shared vocabulary)");
  app->add_option("--mode", f.mode)->check(CLI::IsMember({"concept", "instance", "query", "all"}));
  app->add_option("--output", f.output)->check(CLI::IsMember({"text", "tsv"}));
  app->add_option("--out", f.out, "write the report to this file");
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  static const std::set<std::string> kCommands{"diff", "gen", "oracle", "check", "-h", "--help"};
  if (args.empty() || !kCommands.count(args.front())) args.insert(args.begin(), "diff");
  std::reverse(args.begin(), args.end());

  CLI::App app{"Logical difference between two ELH^r terminologies"};
  app.require_subcommand(1);

  CommonFlags diff_flags;
  std::string direction = "both", strategy = "auto";
  bool examples = false;
  unsigned parallel = 1;
  std::size_t max_example = 64;
  auto* diff = app.add_subcommand("diff", "compute witness sets (default)");
  add_common(diff, diff_flags);
  diff->add_option("--direction", direction)->check(CLI::IsMember({"both", "forward", "backward"}));
  diff->add_option("--strategy", strategy)->check(CLI::IsMember({"auto", "notwitness", "abox"}));
  diff->add_flag("--examples", examples, "attach example inclusions");
  diff->add_option("--parallel", parallel, "worker threads")->check(CLI::Range(1u, 256u));
  diff->add_option("--max-example-size", max_example, "example size cap in concept nodes");

  std::uint64_t seed = 0;
  RandomTerminologyParams gen_params;
  double change = 0.0;
  std::uint64_t change_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "print a random acyclic terminology");
  gen->add_option("--seed", seed);
  gen->add_option("--defined", gen_params.num_defined)->check(CLI::PositiveNumber);
  gen->add_option("--roles", gen_params.num_roles);
  gen->add_option("--eq-ratio", gen_params.eq_ratio)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--exists-ratio", gen_params.exists_ratio)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--max-conj", gen_params.max_conj)->check(CLI::PositiveNumber);
  gen->add_option("--change", change, "redraw this fraction of the definitions")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--change-seed", change_seed);
  gen->add_option("--out", gen_out);

  CommonFlags oracle_flags;
  std::size_t depth = 2, conj = 2;
  auto* oracle = app.add_subcommand("oracle", "enumerate small witnesses by brute force");
  add_common(oracle, oracle_flags);
  oracle->add_option("--depth", depth)->check(CLI::Range(0, 4));
  oracle->add_option("--conj", conj)->check(CLI::Range(1, 4));

  std::string check_t, check_lhs, check_rhs;
  auto* check = app.add_subcommand("check", "decide T |= C <= D; exit 0 if entailed, 1 if not");
  check->add_option("terminology", check_t)->required();
  check->add_option("lhs", check_lhs, "C^ran concept")->required();
  check->add_option("rhs", check_rhs, "C^{and,u} concept")->required();

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kNoDiff : kUsage;
  }

  if (*diff) {
    DiffOptions o;
    o.modes = modes_of(diff_flags.mode);
    o.forward = direction != "backward";
    o.backward = direction != "forward";
    o.strategy = kStrategies.at(strategy);
    o.examples = examples;
    o.parallel = parallel;
    o.max_example_size = max_example;
    auto t1 = load_terminology(diff_flags.t1);
    auto t2 = load_terminology(diff_flags.t2);
    auto report = compute_diff(t1, t2, load_signature(diff_flags.sig), o);
    emit(render_report(report, diff_flags.output == "tsv" ? ReportFormat::Tsv : ReportFormat::Text), diff_flags.out);
    return report.empty() ? kNoDiff : kDiff;
  }
  if (*gen) {
    emit(render_terminology(perturb_random_terminology(gen_params, seed, change, change_seed)), gen_out);
    return kNoDiff;
  }
  if (*oracle) {
    auto t1 = load_terminology(oracle_flags.t1);
    auto t2 = load_terminology(oracle_flags.t2);
    auto sig = load_signature(oracle_flags.sig);
    Signature s = sig ? *sig : default_signature(t1, t2);
    DiffContext fwd = make_context(t1, t2, s);
    DiffContext bwd = reverse_context(fwd);
    WitnessReport r;
    for (Mode m : modes_of(oracle_flags.mode)) {
      r.entries[{Direction::Forward, m}] = brute_force_witnesses(fwd, m, depth, conj);
      r.entries[{Direction::Backward, m}] = brute_force_witnesses(bwd, m, depth, conj);
    }
    emit(render_report(r, oracle_flags.output == "tsv" ? ReportFormat::Tsv : ReportFormat::Text), oracle_flags.out);
    return r.empty() ? kNoDiff : kDiff;
  }
  auto t = normalize(load_terminology(check_t));
  Concept lhs, rhs;
  try {
    lhs = parse_concept(check_lhs);
    rhs = parse_concept(check_rhs);
  } catch (const ParseError& e) {
    throw UsageError(std::string("concept: ") + e.what());
  }
  Signature extra = signature_of(lhs);
  extra.merge(signature_of(rhs));
  bool yes = entails_subsumption(classify(t, extra), lhs, rhs);
  std::cout << (yes ? "entailed" : "not entailed") << '\n';
  return yes ? kNoDiff : kDiff;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "ldiff: " << e.what() << '\n';
    return kUsage;
  } catch (const ldiff::ParseError& e) {
    std::cerr << "ldiff: parse error at " << e.location().line << ":" << e.location().column << ": " << e.what()
              << '\n';
    return kUsage;
  } catch (const ldiff::CyclicTerminologyError& e) {
    std::cerr << "ldiff: " << e.what() << " (input is cyclic)\n";
    return kUsage;
  } catch (const ldiff::TerminologyError& e) {
    std::cerr << "ldiff: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ldiff: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "ldiff: internal error: " << e.what() << '\n';
    return kInternal;
  }
}

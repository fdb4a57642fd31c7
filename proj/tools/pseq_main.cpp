#include "pseq/averages.hpp"
#include "pseq/config.hpp"
#include "pseq/errors.hpp"
#include "pseq/plan_io.hpp"
#include "pseq/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace pseq;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> u_max, k_max, seed;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output directory (default: config \"out\")");
  cmd->add_option("--u-max", c.u_max, "largest block examined")->check(CLI::PositiveNumber);
  cmd->add_option("--k-max", c.k_max, "last interval index constructed");
  cmd->add_option("--seed", c.seed, "random seed");
}

RunConfig resolve(const Common& c) {
  RunConfig cfg = load_config(c.config);
  if (!c.out.empty()) cfg.out_dir = c.out;
  if (c.u_max) {
    cfg.u_max = *c.u_max;
    cfg.schedule_caps.max_u = std::max(cfg.schedule_caps.max_u, cfg.u_max);
  }
  if (c.k_max) cfg.k_max = *c.k_max;
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

int cmd_construct(const Common& c, std::size_t dump_limit) {
  RunConfig cfg = resolve(c);
  auto base = make_base(cfg.base, cfg.source_dir);
  PerturbationPlan plan = build_plan(base, make_schedule(cfg), cfg.k_max, cfg.limits);
  std::filesystem::path plan_path = cfg.out_dir / "plan.json";
  save_plan(plan_path, plan, cfg);
  PerturbedSequence delta(plan);
  for (const IntervalChoice& ch : plan.choices)
    std::cout << "k=" << ch.k << " u=" << ch.u << " n_k=" << ch.n << " |S(n_k)|=" << ch.base_count
              << " insert=" << ch.insert_count << "\n";
  std::cout << "plan: " << plan_path.string() << "\n";
  BigInt horizon = plan.horizon();
  BigInt size = delta_count(delta, horizon);
  if (size <= dump_limit) {
    std::filesystem::path dump = cfg.out_dir / "delta.txt";
    dump_delta(dump, delta, horizon, dump_limit);
    std::cout << "delta: " << dump.string() << " (" << size << " elements below " << horizon << ")\n";
  } else {
    std::cout << "delta: not dumped, " << size << " elements below 2n_{k_max} exceed the dump limit\n";
  }
  return 0;
}

int cmd_verify(const Common& c, const std::string& suite, const std::string& plan_arg) {
  RunConfig cfg = resolve(c);
  std::optional<PerturbationPlan> plan;
  if (suite_needs_plan(suite)) {
    std::filesystem::path p = plan_arg.empty() ? cfg.out_dir / "plan.json" : std::filesystem::path(plan_arg);
    plan = load_plan(p, cfg.source_dir);
  }
  Report rep = run_suite(suite, cfg, plan);
  std::filesystem::create_directories(cfg.out_dir);
  std::filesystem::path path = cfg.out_dir / ("report-" + suite + ".json");
  std::string text = rep.to_json().dump(2);
  std::ofstream(path) << text << "\n";
  std::cout << text << "\n";
  std::cerr << suite << ": " << rep.checks.size() - rep.failed() << "/" << rep.checks.size() << " checks passed\n";
  return rep.all_pass() ? 0 : kExitFail;
}

std::vector<BigInt> parse_cutoffs(const std::string& list) {
  std::vector<BigInt> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_bigint(item));
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "no cutoffs given");
  return out;
}

int cmd_average(const Common& c, const std::string& fspec, const std::string& system, const std::string& x_text,
                const std::string& cutoffs, const std::string& sequence, const std::string& norm) {
  RunConfig cfg = resolve(c);
  std::shared_ptr<const BaseSequence> base = make_base(cfg.base, cfg.source_dir);
  std::optional<PerturbedSequence> delta;
  std::filesystem::path plan_path = cfg.out_dir / "plan.json";
  if (sequence == "delta" || (sequence == "auto" && std::filesystem::exists(plan_path)))
    delta.emplace(load_plan(plan_path, cfg.source_dir));
  const IntegerSet& seq = delta ? static_cast<const IntegerSet&>(*delta) : *base;
  const IntegerSet* normalizer = norm == "base" ? base.get() : nullptr;
  std::vector<BigInt> Ns = parse_cutoffs(cutoffs);

  std::ostringstream csv;
  csv << "N,count,average\n";
  auto tokens = [&] {
    std::vector<std::string> t;
    std::stringstream ss(fspec);
    std::string item;
    while (std::getline(ss, item, ':')) t.push_back(item);
    return t;
  }();
  if (tokens.empty()) throw Error(ErrorKind::InvalidArgument, "empty function spec");

  if (system == "shift") {
    LatticeFunction f = LatticeFunction::constant(Real(1));
    if (tokens[0] == "one") {
    } else if (tokens[0] == "delta" && tokens.size() == 2) {
      f = LatticeFunction::finite({{parse_bigint(tokens[1]), Real(1)}});
    } else if (tokens[0] == "witness" && tokens.size() == 2) {
      f = make_schedule(cfg)->witness(std::stoull(tokens[1]));
    } else {
      throw Error(ErrorKind::InvalidArgument, "shift functions: one | delta:P | witness:U");
    }
    BigInt x = parse_bigint(x_text);
    for (const BigInt& N : Ns) {
      PrecisionScope scope(kBaseBits);
      Real avg = average_along(seq, f, x, N, normalizer);
      csv << N << "," << (normalizer ? *normalizer : seq).count(N) << "," << to_string(avg) << "\n";
    }
  } else if (system == "rotation") {
    StepFunction f = StepFunction::constant(1.0);
    if (tokens[0] == "one") {
    } else if (tokens[0] == "indicator" && tokens.size() == 3) {
      f = StepFunction::indicator(std::stod(tokens[1]), std::stod(tokens[2]));
    } else {
      throw Error(ErrorKind::InvalidArgument, "rotation functions: one | indicator:A:B");
    }
    DynamicalSystem sys = DynamicalSystem::rotation();
    double x = std::stod(x_text);
    for (const BigInt& N : Ns) {
      double avg = average_along(seq, sys, f, x, N, normalizer);
      std::ostringstream v;
      v.precision(17);
      v << avg;
      csv << N << "," << (normalizer ? *normalizer : seq).count(N) << "," << v.str() << "\n";
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "system must be shift or rotation");
  }
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream(cfg.out_dir / "averages.csv") << csv.str();
  std::cout << csv.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbed integer sequences: construction and finite verification"};
  app.require_subcommand(1);

  Common construct_opts, verify_opts, average_opts;
  std::size_t dump_limit = 1'000'000;
  auto* construct = app.add_subcommand("construct", "select intervals, write plan.json and the Delta dump");
  add_common(construct, construct_opts);
  construct->add_option("--dump-limit", dump_limit, "largest Delta prefix written to delta.txt");

  std::string suite = "all", plan_arg;
  auto* verify = app.add_subcommand("verify", "run a verification suite and emit a JSON report");
  add_common(verify, verify_opts);
  verify->add_option("--suite", suite, "perturbation | density | sweepout | series | yano | all")
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--plan", plan_arg, "plan file (default: OUT/plan.json)");

  std::string fspec = "one", system = "shift", x_text = "0", cutoffs, sequence = "auto", norm = "sequence";
  auto* average = app.add_subcommand("average", "ergodic averages along the sequence as CSV");
  add_common(average, average_opts);
  average->add_option("--f", fspec, "shift: one | delta:P | witness:U; rotation: one | indicator:A:B");
  average->add_option("--system", system, "shift | rotation")->check(CLI::IsMember({"shift", "rotation"}));
  average->add_option("--x", x_text, "starting point");
  average->add_option("--n", cutoffs, "comma-separated cutoffs N")->required();
  average->add_option("--sequence", sequence, "auto | base | delta")->check(CLI::IsMember({"auto", "base", "delta"}));
  average->add_option("--normalize", norm, "sequence | base")->check(CLI::IsMember({"sequence", "base"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*construct) return cmd_construct(construct_opts, dump_limit);
    if (*verify) return cmd_verify(verify_opts, suite, plan_arg);
    if (*average) return cmd_average(average_opts, fspec, system, x_text, cutoffs, sequence, norm);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

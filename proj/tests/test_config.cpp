#include "pseq/config.hpp"
#include "pseq/errors.hpp"
#include "pseq/plan_io.hpp"
#include "pseq/report.hpp"
#include "pseq/suites.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace pseq;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(PSEQ_SOURCE_DIR) / "configs";

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "pseq_test_config";
  std::filesystem::create_directories(dir);
  return dir / name;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("gauge grammar round trips") {
  for (const char* text : {R"({"type": "power", "a": "1/2"})", R"({"type": "power", "a": 0.75})",
                           R"({"type": "log-power", "j": 1})", R"({"type": "log-power", "j": "1/3"})",
                           R"({"type": "log-log"})", R"({"type": "log-chain"})",
                           R"({"type": "table", "points": [[1, 1], [4, 2], [16, 3]]})"}) {
    CAPTURE(text);
    Gauge g = gauge_from_json(Json::parse(text));
    CHECK(gauge_from_json(gauge_to_json(g)) == g);
  }
  CHECK(gauge_from_json(Json::parse(R"({"type": "power", "a": 0.75})")).exponent() == Rational{3, 4});
  CHECK(kind_of([] { gauge_from_json(Json::parse(R"({"type": "cubic"})")); }) == ErrorKind::Config);
  CHECK(kind_of([] { gauge_from_json(Json::parse(R"({"type": "power"})")); }) == ErrorKind::Config);
}

TEST_CASE("shipped configs load") {
  for (const char* name : {"theorem_a_toy.json", "theorem_b_toy.json", "lemma_toy.json"}) {
    CAPTURE(name);
    RunConfig c = load_config(kConfigs / name);
    RunConfig back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
    CHECK(make_schedule(c) != nullptr);
    CHECK(make_base(c.base, c.source_dir) != nullptr);
  }
  RunConfig l = load_config(kConfigs / "lemma_toy.json");
  CHECK(l.schedule.variant == Variant::Lemma14);
  CHECK(l.schedule.psi->exponent() == Rational{1, 3});
  CHECK(l.k_max == 2);
  CHECK(l.u_max == 1);
}

TEST_CASE("config errors") {
  CHECK(kind_of([] { config_from_json(Json::parse(R"({"bogus": 1})")); }) == ErrorKind::Config);
  CHECK(kind_of([] { config_from_json(Json::parse(R"({"caps": {"k_max": -1}})")); }) == ErrorKind::Config);
  CHECK(kind_of([] { config_from_json(Json::parse(R"({"schedule": {"variant": "x"}})")); }) == ErrorKind::Config);
  CHECK(kind_of([] {
          config_from_json(Json::parse(R"({"schedule": {"variant": "theorem-a", "phi": {"type": "power", "a": 0}}})"));
        }) == ErrorKind::Config);
  CHECK_THROWS_AS(load_config(kConfigs / "does_not_exist.json"), Error);
  auto bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK(kind_of([&] { load_config(bad); }) == ErrorKind::Config);
}

TEST_CASE("file base sequences resolve against the config directory") {
  auto dir = scratch("seq");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "s.txt") << "2\n3\n10\n";
  auto seq = make_base(BaseSpec{"file", "s.txt"}, dir);
  CHECK(seq->count(BigInt(11)) == 3);
  CHECK_THROWS_AS(make_base(BaseSpec{"file", "missing.txt"}, dir), Error);
}

TEST_CASE("plans round trip through json and disk") {
  RunConfig c = load_config(kConfigs / "lemma_toy.json");
  auto plan = build_plan(make_base(c.base, c.source_dir), make_schedule(c), c.k_max, c.limits);
  Json j = plan_to_json(plan, c);
  CHECK(j["intervals"].size() == 3);
  CHECK(j["intervals"][2]["n_k"] == "3444");
  PerturbationPlan back = plan_from_json(j);
  REQUIRE(back.choices.size() == plan.choices.size());
  for (std::size_t i = 0; i < plan.choices.size(); ++i) {
    CHECK(back.choices[i].n == plan.choices[i].n);
    CHECK(back.choices[i].insert_count == plan.choices[i].insert_count);
    CHECK(back.insertions[i].first == plan.insertions[i].first);
  }
  auto path = scratch("plan.json");
  save_plan(path, plan, c);
  PerturbationPlan disk = load_plan(path);
  CHECK(plan_to_json(disk, c) == j);
  CHECK(kind_of([] { load_plan(scratch("absent.json")); }) == ErrorKind::MissingPlan);

  PerturbedSequence delta(plan);
  auto dpath = scratch("delta.txt");
  std::size_t written = dump_delta(dpath, delta, plan.horizon(), 100000);
  CHECK(written == delta.count(plan.horizon()));
  std::ifstream in(dpath);
  auto elems = read_sequence(in);
  CHECK(elems == delta.elements_in(BigInt(1), plan.horizon()));
  CHECK(kind_of([&] { dump_delta(dpath, delta, plan.horizon(), 3); }) == ErrorKind::ResourceLimit);
}

TEST_CASE("tampered plans are rejected") {
  RunConfig c = load_config(kConfigs / "lemma_toy.json");
  auto plan = build_plan(make_base(c.base, c.source_dir), make_schedule(c), c.k_max, c.limits);
  Json j = plan_to_json(plan, c);
  j["intervals"][1]["insert_count"] = "999";
  CHECK_THROWS_AS(PerturbedSequence(plan_from_json(j)), Error);
}

TEST_CASE("reports") {
  Report r;
  r.suite = "demo";
  r.add("a", 1, 2, true);
  r.add("b", 3, 2, false);
  r.note("hello");
  CHECK(r.failed() == 1);
  CHECK_FALSE(r.all_pass());
  Json j = r.to_json();
  CHECK(j["suite"] == "demo");
  CHECK(j["summary"]["total"] == 2);
  CHECK(j["summary"]["passed"] == 1);
  CHECK(j["summary"]["pass"] == false);
  Report outer;
  outer.append(r, "inner/");
  CHECK(outer.checks.size() == 2);
  CHECK(outer.checks[0].name == "inner/a");
}

TEST_CASE("residue coverage") {
  for (const char* name : {"theorem_a_toy.json", "theorem_b_toy.json", "lemma_toy.json"}) {
    CAPTURE(name);
    RunConfig c = load_config(kConfigs / name);
    auto sched = make_schedule(c);
    for (std::uint64_t u = 1; u <= 3; ++u) {
      auto cov = residue_coverage(*sched, u);
      CHECK(cov.complete);
      CHECK(cov.modulus == sched->M(u));
      CHECK(cov.exhaustive == (cov.modulus <= pow2(24)));
    }
  }
}

TEST_CASE("suite dispatch") {
  RunConfig c = load_config(kConfigs / "lemma_toy.json");
  CHECK(suite_needs_plan("perturbation"));
  CHECK_FALSE(suite_needs_plan("series"));
  CHECK(kind_of([&] { run_suite("perturbation", c, std::nullopt); }) == ErrorKind::MissingPlan);
  CHECK(kind_of([&] { run_suite("nonsense", c, std::nullopt); }) == ErrorKind::Config);
  CHECK(run_suite("density", c, std::nullopt).all_pass());
  auto plan = build_plan(make_base(c.base, c.source_dir), make_schedule(c), c.k_max, c.limits);
  Report p = run_suite("perturbation", c, plan);
  CHECK(p.all_pass());
  CHECK(p.checks.size() > 0);
}

#include "pseq/plan_io.hpp"

#include "pseq/errors.hpp"

#include <fstream>

namespace pseq {

namespace {

BigInt big(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw Error(ErrorKind::Config, std::string("plan record needs a decimal string \"") + key + "\"");
  return parse_bigint(j.at(key).get<std::string>());
}

}  // namespace

Json plan_to_json(const PerturbationPlan& plan, const RunConfig& config) {
  Json intervals = Json::array();
  for (std::size_t i = 0; i < plan.choices.size(); ++i) {
    const IntervalChoice& c = plan.choices[i];
    const Progression& e = plan.insertions[i];
    intervals.push_back({{"k", c.k},
                         {"u", c.u},
                         {"n_k", to_string(c.n)},
                         {"modulus", to_string(c.modulus)},
                         {"residue", to_string(c.residue)},
                         {"base_count", to_string(c.base_count)},
                         {"insert_count", to_string(c.insert_count)},
                         {"record_m", to_string(c.record_m)},
                         {"elements",
                          {{"first", to_string(e.first)}, {"step", to_string(e.step)}, {"count", to_string(e.count)}}}});
  }
  return {{"schedule", schedule_to_json(plan.schedule->spec())},
          {"schedule_caps", {{"max_block_bits", plan.schedule->caps().max_block_bits}, {"max_u", plan.schedule->caps().max_u}}},
          {"base", base_to_json(config.base)},
          {"k_max", plan.k_max()},
          {"intervals", intervals}};
}

PerturbationPlan plan_from_json(const Json& j, const std::filesystem::path& source_dir) {
  try {
    PerturbationPlan plan;
    ScheduleCaps caps;
    if (j.contains("schedule_caps")) {
      caps.max_block_bits = j.at("schedule_caps").at("max_block_bits").get<unsigned>();
      caps.max_u = j.at("schedule_caps").at("max_u").get<std::uint64_t>();
    }
    plan.schedule = std::make_shared<const Schedule>(schedule_from_json(j.at("schedule")), caps);
    plan.base = make_base(base_from_json(j.at("base")), source_dir);
    for (const Json& r : j.at("intervals")) {
      IntervalChoice c;
      c.k = r.at("k").get<std::uint64_t>();
      c.u = r.at("u").get<std::uint64_t>();
      c.n = big(r, "n_k");
      c.modulus = big(r, "modulus");
      c.residue = big(r, "residue");
      c.base_count = big(r, "base_count");
      c.insert_count = big(r, "insert_count");
      c.record_m = big(r, "record_m");
      const Json& e = r.at("elements");
      plan.choices.push_back(c);
      plan.insertions.push_back({big(e, "first"), big(e, "step"), big(e, "count")});
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("malformed plan: ") + e.what());
  }
}

void save_plan(const std::filesystem::path& path, const PerturbationPlan& plan, const RunConfig& config) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write plan " + path.string());
  out << plan_to_json(plan, config).dump(2) << "\n";
}

PerturbationPlan load_plan(const std::filesystem::path& path, const std::filesystem::path& source_dir) {
  if (!std::filesystem::exists(path))
    throw Error(ErrorKind::MissingPlan, "no plan at " + path.string() + "; run the construct command first");
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read plan " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, "plan " + path.string() + " is not valid JSON: " + e.what());
  }
  return plan_from_json(j, source_dir);
}

std::size_t dump_delta(const std::filesystem::path& path, const PerturbedSequence& delta, const BigInt& n,
                       std::size_t limit) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  std::size_t written = 0;
  delta.for_each_in(1, n, [&](const BigInt& x) {
    if (++written > limit)
      throw Error(ErrorKind::ResourceLimit, "sequence dump exceeds " + std::to_string(limit) + " elements");
    out << x << '\n';
    return true;
  });
  return written;
}

}  // namespace pseq

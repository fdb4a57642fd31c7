#pragma once

// Run configuration (JSON) and the gauge / schedule / base-sequence grammar.
//
//   gauge:    {"type": "power", "a": "1/2"} | {"type": "log-power", "j": 1}
//             | {"type": "log-log"} | {"type": "log-chain"}
//             | {"type": "table", "points": [[1, 1], [4, 2], ...]}
//   schedule: {"variant": "theorem-a" | "theorem-b" | "lemma-14",
//              "phi": gauge, "q": "2", "psi": gauge, "k": 1}
//   base:     {"type": "squares" | "synthetic-block" | "naturals"} | {"type": "file", "path": "..."}

#include "pseq/base_sequence.hpp"
#include "pseq/construction.hpp"
#include "pseq/schedule.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <string>

namespace pseq {

using Json = nlohmann::ordered_json;

struct BaseSpec {
  std::string type = "squares";
  std::string path;  // file sequences only
};

struct RunConfig {
  std::string name = "run";
  ScheduleSpec schedule;
  ScheduleCaps schedule_caps;
  BaseSpec base;
  std::uint64_t k_max = 3;
  std::uint64_t u_max = 2;
  SelectionLimits limits;
  unsigned p_n_max = 20;
  std::uint64_t series_U = 100;
  Gauge yano_phi = Gauge::power({1, 2});
  unsigned yano_samples = 100;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  std::filesystem::path source_dir = ".";  // relative base paths resolve against this
};

Gauge gauge_from_json(const Json& j);
Json gauge_to_json(const Gauge& g);
ScheduleSpec schedule_from_json(const Json& j);
Json schedule_to_json(const ScheduleSpec& s);
BaseSpec base_from_json(const Json& j);
Json base_to_json(const BaseSpec& b);

RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& c);
RunConfig load_config(const std::filesystem::path& path);

std::shared_ptr<const BaseSequence> make_base(const BaseSpec& spec, const std::filesystem::path& source_dir = ".");
std::shared_ptr<const Schedule> make_schedule(const RunConfig& c);

}  // namespace pseq

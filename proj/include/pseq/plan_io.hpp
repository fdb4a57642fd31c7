#pragma once

// plan.json: the schedule and base specs plus one record per interval,
//   {"k", "u", "n_k", "modulus", "residue", "base_count", "insert_count",
//    "record_m", "elements": {"first", "step", "count"}}
// with big integers written as decimal strings.

#include "pseq/config.hpp"
#include "pseq/construction.hpp"

#include <filesystem>

namespace pseq {

Json plan_to_json(const PerturbationPlan& plan, const RunConfig& config);
/// Rebuilds the plan; schedule and base come from the embedded specs.
PerturbationPlan plan_from_json(const Json& j, const std::filesystem::path& source_dir = ".");

void save_plan(const std::filesystem::path& path, const PerturbationPlan& plan, const RunConfig& config);
/// Throws missing-plan when the file does not exist.
PerturbationPlan load_plan(const std::filesystem::path& path, const std::filesystem::path& source_dir = ".");

/// Writes Delta ∩ [1, n) one element per line; throws resource-limit past `limit` elements.
std::size_t dump_delta(const std::filesystem::path& path, const PerturbedSequence& delta, const BigInt& n,
                       std::size_t limit);

}  // namespace pseq

#pragma once

#include "pseq/config.hpp"
#include "pseq/construction.hpp"
#include "pseq/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pseq {

const std::vector<std::string>& suite_names();  // perturbation, density, sweepout, series, yano, all
bool suite_needs_plan(const std::string& suite);

Report perturbation_suite(const PerturbedSequence& delta, const RunConfig& config);
Report density_suite(const RunConfig& config);
Report sweepout_suite(const PerturbedSequence& delta, const RunConfig& config);
Report series_suite(const RunConfig& config);
Report yano_suite(const RunConfig& config);

/// Dispatch by name; suites that need a plan throw missing-plan when none is given.
Report run_suite(const std::string& suite, const RunConfig& config, const std::optional<PerturbationPlan>& plan);

/// {k mod M(u) : k in A_u} is every residue mod M(u). Exhaustive when
/// M(u) <= 2^24; larger blocks are checked through their length.
struct CoverageResult {
  bool complete = false;
  bool exhaustive = false;
  BigInt modulus;
};
CoverageResult residue_coverage(const Schedule& sched, std::uint64_t u);

}  // namespace pseq

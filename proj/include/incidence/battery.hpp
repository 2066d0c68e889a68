#pragma once

/**
 * @file battery.hpp
 * @brief Seeded theorem batteries and replayable witness records.
 *
 * A suite draws configurations trial by trial from trial_rng(seed, trial,
 * stream) and runs the matching verifier. Each evaluated trial produces a
 * JSON record holding the model tag, seed, trial index, every input element
 * and the verdict, which recheck_record() replays from the stored inputs.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incidence/model.hpp"
#include "incidence/parallel.hpp"
#include "incidence/serialize.hpp"

namespace incidence {

enum class Suite {
  desargues_planar,
  desargues_spatial,
  pappus,
  brianchon,
  gallucci,
  transport,
  moulton_desargues,
};

std::string_view to_string(Suite s);
/// Throws std::invalid_argument for an unknown name.
Suite parse_suite(std::string_view name);

/// Suites that make sense for a model: all coordinate suites for a
/// coordinatized or enumerated PG(3,K), the Moulton Desargues search for the
/// Moulton plane, none for abstract files.
std::vector<Suite> suites_for(const IncidenceModel& model);

struct BatteryOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Stop once this many trials produced a holds/fails verdict.
  std::uint64_t target = 1000;
  /// Hard cap on the number of trials drawn.
  std::uint64_t max_trials = 100000;
  int height = 4;
  Exec exec = Exec::parallel;
};

struct SuiteResult {
  Suite suite = Suite::pappus;
  std::string model;
  std::uint64_t seed = 0;
  int height = 0;
  std::uint64_t trials = 0;
  std::uint64_t holds = 0;
  std::uint64_t fails = 0;
  std::uint64_t degenerate = 0;
  std::map<std::string, std::uint64_t> rejected;            // sampler genericity failures
  std::map<std::string, std::uint64_t> degenerate_reasons;  // verifier degeneracies
  /// Transport only: counts keyed "pappus/gallucci" and "pappus/converse".
  std::map<std::string, std::uint64_t> lift_matrix;
  std::map<std::string, std::uint64_t> converse_matrix;
  std::uint64_t transport_agree = 0;
  std::uint64_t transport_disagree = 0;
  std::optional<Json> first_failure;
  std::optional<Json> first_degenerate;

  std::uint64_t admissible() const { return holds + fails; }
  bool target_reached(const BatteryOptions& o) const { return admissible() >= o.target; }
};

/// Runs one suite against the ring of `model` (or the Moulton plane).
/// Throws std::invalid_argument when the suite does not apply.
SuiteResult run_suite(const IncidenceModel& model, Suite suite, const BatteryOptions& options);

Json to_json(const SuiteResult& r);

/// Record of a single trial, or nullopt when the sampler rejected the draw.
std::optional<Json> trial_record(const IncidenceModel& model, Suite suite, std::uint64_t seed, std::uint64_t trial,
                                 int height);

struct RecheckResult {
  bool match = false;
  /// Field-level explanation of the first mismatch, empty on a match.
  std::string detail;
};

/// Recomputes a witness record from its stored inputs and compares verdict,
/// witness, notes and any lifted record exactly. Records carrying a seed and
/// trial are also redrawn and their inputs compared. Audit records are
/// replayed through recheck_audit_witness. Throws std::invalid_argument on
/// malformed records.
RecheckResult recheck_record(const Json& record);

}  // namespace incidence

#pragma once

/**
 * @file audit.hpp
 * @brief Axiom audits of incidence models.
 *
 * Universal axioms are checked over an instance space: exhaustively when the
 * model is finite and the space fits the budget, otherwise on `budget`
 * seeded samples. Existential axioms are decided by search. Every failing
 * entry carries the element ids (or canonical strings) of the offending
 * instance, and recheck_audit_witness replays it.
 */

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "incidence/model.hpp"
#include "incidence/parallel.hpp"

namespace incidence {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum class AxiomSet { P, S, VY, G };

std::string_view to_string(AxiomSet set);
/// Throws std::invalid_argument for unknown names.
AxiomSet parse_axiom_set(std::string_view name);

enum class AuditStatus { pass, fail, skipped };

std::string_view to_string(AuditStatus status);

struct Coverage {
  bool exhaustive = false;
  std::uint64_t instances = 0;  // instances examined, or samples drawn
};

struct AuditEntry {
  std::string axiom;
  AuditStatus status = AuditStatus::skipped;
  std::vector<std::string> witness;
  Coverage coverage;
  std::uint64_t seed = kDefaultSeed;
  std::string note;

  bool passed() const { return status == AuditStatus::pass; }
  bool failed() const { return status == AuditStatus::fail; }
};

struct AuditOptions {
  std::uint64_t budget = 100000;
  std::uint64_t seed = kDefaultSeed;
  int height = 4;
  /// Audit finite models exhaustively whatever the budget.
  bool exhaustive = false;
  Exec exec = Exec::parallel;
};

/// P and G need a plane model resp. a space model; S needs planes; VY
/// applies to every model.
bool applicable(const IncidenceModel& model, AxiomSet set);

/// One entry per axiom of the set, in axiom order. Throws
/// std::invalid_argument for an inapplicable set.
std::vector<AuditEntry> audit(const IncidenceModel& model, AxiomSet set, const AuditOptions& options = {});

/// Re-evaluates the instance named by a failing entry's witness. True iff
/// the violation is reproduced. Throws std::invalid_argument for an unknown
/// axiom or unparsable witness.
bool recheck_audit_witness(const IncidenceModel& model, std::string_view axiom,
                           const std::vector<std::string>& witness, const AuditOptions& options = {});

}  // namespace incidence

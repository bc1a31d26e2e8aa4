#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtskit/gts_core.hpp"

namespace gtskit {

enum class AuditCheck {
    Finiteness,
    Stability,
    Transitivity,
    Saturation,
    Regularity,
    UnionOfAdmissible,
    PointwiseUnion,
    PointwiseIntersection,
    DisjointSplit,
    Omitting,
    EssFinAdmissible,
    SaturationClosure
};
std::string to_string(AuditCheck c);
std::optional<AuditCheck> audit_check_from_string(const std::string& s);

/// One generated instance. Its meaning depends on `check`:
///   Finiteness             families[0] finite
///   Stability              sets[0] = V, families[0] = U
///   Transitivity           families = Phi
///   Saturation(Closure)    families[0] = U, families[1] = coarsening V
///   Regularity             sets[0] = W, families[0] = U
///   UnionOfAdmissible, PointwiseUnion, PointwiseIntersection, DisjointSplit
///                          families[0] = U, families[1] = V
///   Omitting               families[0] = U, families[1..] = V_j
///   EssFinAdmissible       families[0]
struct AuditInstance {
    AuditCheck check = AuditCheck::Finiteness;
    std::uint64_t index = 0;
    std::vector<SetExpr> sets;
    std::vector<FamilyExpr> families;
};

enum class Outcome { Holds, Violated, Vacuous };

struct InstanceResult {
    Outcome outcome = Outcome::Vacuous;
    std::string detail;
};

/// Deterministic re-check of one instance; violations replay exactly.
InstanceResult check_instance(const GtsPresentation& x, const AuditInstance& inst);

struct AuditViolation {
    AuditInstance instance;
    std::string detail;
};

struct CheckTally {
    AuditCheck check = AuditCheck::Finiteness;
    std::uint64_t pass_count = 0;
    std::uint64_t vacuous = 0;
    std::vector<AuditViolation> violations;
};

struct AuditReport {
    std::string space;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    std::uint64_t instances = 0;
    std::vector<CheckTally> tallies;  // in AuditCheck order, only the checks run

    std::size_t violation_count() const;
    bool clean() const { return violation_count() == 0; }
};

/// Seeded random instances of the five axioms (finiteness, stability,
/// transitivity, saturation, regularity), cycling through them.
AuditReport audit_axioms(const GtsPresentation& x, std::uint64_t budget, std::uint64_t seed);

/// Seeded instances of the admissible-family propositions: union,
/// pointwise union and intersection, disjoint split, omitting, essentially
/// finite implies admissible, saturation closure.
AuditReport audit_propositions(const GtsPresentation& x, std::uint64_t budget, std::uint64_t seed);

/// Finite presentations only: every family of at most max(4, #points) open
/// sets plus the family of all opens, each paired with every open V, every
/// subset W and every one-step coarsening.
AuditReport audit_exhaustive(const GtsPresentation& x);

/// Random generators shared with the CLI and tests.
SetExpr random_open(const GtsPresentation& x, std::uint64_t seed);
FamilyExpr random_family(const GtsPresentation& x, std::uint64_t seed, bool admissible_bias);

}  // namespace gtskit

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtskit/maps.hpp"

namespace gtskit {

struct Components {
    FamilyExpr classes;
    Verdict acc;  // component family open and admissible
};

/// Finite point sets: clopen fixpoint. QLine canonical-open: maximal
/// intervals. NatFC: singletons (all sets open) or one class (finite-or-whole).
/// Direct sums: summand-wise. Throws UnsupportedPresentation otherwise.
Components components(const GtsPresentation& x);
/// Finite point sets only.
FamilyExpr quasi_components(const GtsPresentation& x);
/// Finite point sets only: no two opens split S.
bool is_connected(const GtsPresentation& x, const SetExpr& s);

struct SeparationReport {
    Verdict weakly_t1, strongly_t1, weakly_hausdorff, strongly_hausdorff;
    Verdict weakly_regular, strongly_regular, weakly_normal, strongly_normal;

    std::vector<std::pair<std::string, const Verdict*>> flags() const;
};

/// Exact on finite point sets, closed forms on the symbolic kinds, a
/// falsifier for strong T1 elsewhere (Unknown when it finds nothing).
SeparationReport separation_report(const GtsPresentation& x, std::uint64_t budget = 200);
/// Strong flags imply weak ones and strong T1.
bool implications_hold(const SeparationReport& r);

/// Yes iff the weak closure is every point; No carries an open set missing S.
Verdict is_dense(const GtsPresentation& x, const SetExpr& s);
/// Every representable carrier is countable, so the points themselves are a
/// countable dense set.
Verdict is_separable(const GtsPresentation& x);

/// Every open set is an admissible union of members of B. Exact on finite
/// point sets; sampled (Checked) otherwise. Throws NonOpenMember.
Verdict is_basis(const GtsPresentation& x, const FamilyExpr& b, std::uint64_t budget = 200);
/// Rational open intervals as a basis of a qline canonical-open presentation.
Verdict rational_intervals_basis(const GtsPresentation& x);

struct MapReport {
    Verdict strictly_continuous, open_map, closed_map, strict_homeo, local_strict_homeo;
};

Verdict is_open_map(const SpaceMap& f);
Verdict is_closed_map(const SpaceMap& f);
Verdict is_strict_homeo(const SpaceMap& f);
/// Witness-based: each member U of the covering (finite part) must be open,
/// with f|U a strict homeomorphism onto an open image. Defaults to {domain}.
Verdict is_local_strict_homeo(const SpaceMap& f, const std::optional<FamilyExpr>& covering = std::nullopt);
MapReport classify_map(const SpaceMap& f, std::uint64_t budget = 200, const std::optional<FamilyExpr>& covering = std::nullopt);

}  // namespace gtskit

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtskit/maps.hpp"

namespace gtskit {

/// Trace presentation on Y. Allowed when Y is open, Y is small, or the
/// policy is locally or piecewise essentially finite. Throws UnsupportedSubset.
Space subspace(const Space& x, const SetExpr& y, std::string name = "");

struct ProductResult {
    Space space;
    SpaceMap pr1;
    SpaceMap pr2;
};

/// Binary product of small factors (EssFin, or All on finitely many points).
/// Throws NonSmallFactor.
ProductResult product(const Space& x, const Space& y, std::string name = "");
/// Left-nested product of one or more small factors.
Space product(const std::vector<Space>& xs);

/// Admissible union of presentations over one ambient carrier. Overlaps must
/// be open in both pieces and carry the same traces; pieces must be small.
Space glue(const std::vector<Space>& pieces, std::string name = "");

/// Tagged sum of presentations on a common carrier; summands must be small.
/// Carrier is (tags) x (common carrier), tags s0, s1, ...
Space direct_sum(const std::vector<Space>& xs, std::string name = "");
/// The summand family {tag_i x points_i}.
FamilyExpr summand_family(const GtsPresentation& sum);

/// Sum of countably many one-point spaces, tagged by the naturals.
Space sum_of_points_nat();

/// Same opens, admissible families replaced by the essentially finite ones.
Space smallify(const Space& x);

struct Topologized {
    std::optional<Space> space;  // empty when the generated topology leaves the set algebra
    std::string note;
};

/// Generated topology with every open family admissible. On qline carriers
/// only the weak-openness predicate (is_weakly_open) is available.
Topologized topologize(const Space& x);

/// Locally essentially finite presentation over an open ball family.
Space localize(const Space& x, const FamilyExpr& balls, std::string name = "");

/// Localized small line over the balls (-n, n), n >= 1.
Space localized_line();
/// Small line squared.
Space rs_alg_squared();

}  // namespace gtskit

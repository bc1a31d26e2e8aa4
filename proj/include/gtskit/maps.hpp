#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gtskit/gts_core.hpp"

namespace gtskit {

struct SpaceMap;

struct AffinePiece {
    SetExpr domain;  // QLine set
    Rational p, q;   // x -> p*x + q
};

struct MapRule {
    enum class Kind { Identity, FiniteTable, PiecewiseAffine, NatShift, NatPermutation, Projection, Pairing, Constant };
    Kind kind = Kind::Identity;
    std::vector<std::pair<Point, Point>> table;  // FiniteTable, NatPermutation (finite support)
    std::vector<AffinePiece> pieces;
    std::uint64_t shift = 0;
    int factor = 0;
    std::shared_ptr<const SpaceMap> first, second;  // Pairing
    Point constant;
};

struct SpaceMap {
    std::string name;
    Space domain;
    Space codomain;
    MapRule rule;
};

/// Validating constructor (totality, image inside the codomain's points,
/// bijectivity of permutations). Throws InvalidMap.
SpaceMap make_map(std::string name, Space domain, Space codomain, MapRule rule);

SpaceMap identity_map(Space domain, Space codomain);
SpaceMap projection_map(Space product, Space factor_space, int factor);
SpaceMap pairing_map(const SpaceMap& f, const SpaceMap& g, Space product);
SpaceMap table_map(Space domain, Space codomain, std::vector<std::pair<Point, Point>> table);
SpaceMap affine_map(Space domain, Space codomain, std::vector<AffinePiece> pieces);
SpaceMap constant_map(Space domain, Space codomain, Point value);

Point apply(const SpaceMap& f, const Point& x);
/// Image of S n domain points. Throws Unrepresentable if not expressible.
SetExpr image(const SpaceMap& f, const SetExpr& s);
/// Preimage of T, inside the domain's points.
SetExpr preimage(const SpaceMap& f, const SetExpr& t);
/// Pulls a family back member-wise. Throws Unrepresentable for streams the
/// rule cannot transport.
FamilyExpr preimage_family(const SpaceMap& f, const FamilyExpr& fam);

/// Identity on points (possibly between different presentations).
bool acts_as_identity(const SpaceMap& f);
bool is_injective(const SpaceMap& f);
bool is_surjective(const SpaceMap& f);
/// Inverse of a bijection when the rule class is closed under inversion.
std::optional<SpaceMap> inverse_map(const SpaceMap& f);

/// Representative open sets of X that decide "preimages of opens are open"
/// for the shipped rule classes; critical values come from the map.
std::vector<SetExpr> representative_opens(const GtsPresentation& x, const std::vector<Rational>& critical);
void map_constants(const SpaceMap& f, std::vector<Rational>& out);

/// First open set of the codomain whose preimage is not open, if any.
std::optional<SetExpr> preimage_not_open(const SpaceMap& f);

/// Auto mode when `probes` is empty. Yes with rationale, No with a witness
/// family (or witness set when an open set pulls back to a non-open set), or
/// Checked when only probes were examined.
Verdict check_strict_continuity(const SpaceMap& f, const std::vector<FamilyExpr>& probes = {});

}  // namespace gtskit

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtskit/gts_core.hpp"

namespace gtskit {

struct Morphism {
    std::string name;
    std::size_t dom = 0;
    std::size_t cod = 0;
};

/// Finite category with a full composition table. compose[f][g] is f o g
/// (g first) whenever cod(g) = dom(f).
struct FiniteCategory {
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<std::vector<std::optional<std::size_t>>> compose;
    std::vector<std::size_t> identity;

    std::optional<std::size_t> object_index(const std::string& name) const;
    std::optional<std::size_t> morphism_index(const std::string& name) const;
    std::vector<std::size_t> into(std::size_t c) const;
    std::vector<std::size_t> hom(std::size_t a, std::size_t b) const;
    /// At most one morphism between two objects, none both ways between distinct ones.
    bool is_poset() const;
    bool leq(std::size_t a, std::size_t b) const { return !hom(a, b).empty(); }
    /// Poset with a greatest lower bound for every pair.
    std::optional<std::string> meet_failure() const;
};

struct Composite {
    std::string f, g, result;  // f o g = result
};

/// Identities id_<object> are added. Every composable pair of
/// non-identities needs an entry. Throws InvalidCategory.
FiniteCategory make_category(std::vector<std::string> objects, std::vector<Morphism> arrows, const std::vector<Composite>& table);
/// Thin category of a finite preorder given by leq (must be reflexive and transitive).
FiniteCategory poset_category(const std::vector<std::string>& labels, const std::vector<std::vector<bool>>& leq);

struct Sieve {
    std::size_t target = 0;
    std::vector<std::size_t> arrows;  // sorted morphism indices with codomain target

    friend bool operator==(const Sieve&, const Sieve&) = default;
};

struct SieveCheck {
    bool ok = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // f in S, f o g not in S
};

SieveCheck is_sieve(const FiniteCategory& c, const Sieve& s);
Sieve maximal_sieve(const FiniteCategory& c, std::size_t target);
/// Smallest sieve containing the given arrows into target.
Sieve generated_sieve(const FiniteCategory& c, std::size_t target, const std::vector<std::size_t>& arrows);
/// f*S = {g : f o g in S} on dom(f).
Sieve pullback_sieve(const FiniteCategory& c, std::size_t f, const Sieve& s);
/// Every sieve on target; throws BudgetExceeded past 2^20 candidate subsets.
std::vector<Sieve> all_sieves(const FiniteCategory& c, std::size_t target);

using TopologyAssignment = std::vector<std::vector<Sieve>>;  // per object

struct AxiomResult {
    std::string axiom;
    bool holds = true;
    std::string witness;
};

struct TopologyReport {
    std::vector<AxiomResult> axioms;   // identity, stability, transitivity
    std::vector<AxiomResult> derived;  // saturation, intersection
    bool valid() const;
};

TopologyReport check_grothendieck_topology(const FiniteCategory& c, const TopologyAssignment& j);

struct Site {
    FiniteCategory category;
    TopologyAssignment topology;
};

/// Value sets per object and, per morphism f: D -> C, the restriction
/// F(C) -> F(D) as indices into the value lists.
struct Presheaf {
    std::vector<std::vector<std::string>> values;
    std::vector<std::vector<std::size_t>> restriction;
};

/// Validates functoriality; throws InvalidCategory.
Presheaf make_presheaf(const FiniteCategory& c, std::vector<std::vector<std::string>> values, std::vector<std::vector<std::size_t>> restriction);
/// Hom(-, c).
Presheaf representable(const FiniteCategory& c, std::size_t target);

struct SheafResult {
    Tri value = Tri::Unknown;
    std::string reason;
    std::optional<Sieve> covering;
    /// Offending matching family (one value index per arrow of the covering),
    /// empty when the failure is a non-injective restriction.
    std::vector<std::size_t> family;
    std::optional<std::size_t> representable;  // subcanonicality witness object

    bool yes() const { return value == Tri::Yes; }
    bool no() const { return value == Tri::No; }
};

/// Equalizer condition on every covering sieve. Throws NonPosetCategory.
SheafResult is_sheaf(const Site& site, const Presheaf& f);
SheafResult is_subcanonical(const Site& site);

/// Poset of opens with J(U) = sieves whose arrows' domains cover U.
/// Throws NonFiniteCarrier.
Site gts_to_site(const GtsPresentation& x);

}  // namespace gtskit

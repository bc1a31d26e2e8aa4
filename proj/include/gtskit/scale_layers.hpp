#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtskit/maps.hpp"

namespace gtskit {

struct LayerReport {
    std::string space;
    Verdict locally_small, paracompact, lindelof, closure_property, strongly_t1;
    /// Named structural checks: base checks, or pieces/order/W1..W6.
    std::vector<std::pair<std::string, Verdict>> checks;
    std::vector<std::string> notes;
    std::optional<FamilyExpr> paracompact_witness;
    std::optional<Exhaustion> exhaustion;

    const Verdict* check(const std::string& name) const;
    /// No named check answered No.
    bool checks_pass() const;
};

/// Policy must be LocallyEssFin; throws PolicyMismatch.
LayerReport validate_locally_small(const GtsPresentation& x);
/// Candidate base under any policy (members open, small, covering).
LayerReport validate_locally_small(const GtsPresentation& x, const FamilyExpr& base);

/// Closure in the generated topology. Throws UnsupportedCarrier on products.
SetExpr weak_closure(const GtsPresentation& x, const SetExpr& s);

/// W1..W5 exactly on posets, on sampled indices for chains; W6 against
/// piecewise-trace openness on sampled sets.
LayerReport validate_exhaustion(const GtsPresentation& x, const Exhaustion& e);
/// Uses the presentation's own exhaustion; throws PolicyMismatch without one.
LayerReport validate_exhaustion(const GtsPresentation& x);

/// inf{a : x in piece a}. Throws PointNotCovered, NoInfimum.
std::uint64_t index_function(const Exhaustion& e, const Point& x);

struct SubsetClass {
    bool open = false, closed = false, weakly_open = false, weakly_closed = false;
    bool locally_closed = false, constructible = false;
    std::optional<bool> locally_constructible;    // LocallyEssFin only
    std::optional<bool> piecewise_constructible;  // PiecewiseEssFin only
};

SubsetClass classify_subset(const GtsPresentation& x, const SetExpr& s);
/// Boolean combination of open sets (finite union of locally closed sets).
bool is_constructible(const GtsPresentation& x, const SetExpr& s);
bool is_locally_closed(const GtsPresentation& x, const SetExpr& s);
/// Every trace on a piece is closed in that piece (chain pieces sampled).
bool is_piecewise_closed(const GtsPresentation& x, const SetExpr& s);

/// Least index whose piece contains f(L). `report` must come from
/// validate_exhaustion on the codomain. Throws PreconditionUnmet unless the
/// exhaustion checks passed, strongly_t1 is Yes and the domain is small.
/// Empty result means no piece was found: a counterexample to the capture
/// theorem.
std::optional<std::uint64_t> piece_capture(const SpaceMap& f, const LayerReport& report);

}  // namespace gtskit

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtskit/presentation.hpp"

namespace gtskit {

enum class Tri { Yes, No, Unknown, Checked };
std::string to_string(Tri t);

/// Three-valued answer with an optional replayable witness.
struct Verdict {
    Tri value = Tri::Unknown;
    std::string reason;
    std::optional<FamilyExpr> family;
    std::optional<SetExpr> set;
    std::vector<FamilyMember> members;

    bool yes() const { return value == Tri::Yes; }
    bool no() const { return value == Tri::No; }

    static Verdict make(Tri v, std::string reason) {
        Verdict out;
        out.value = v;
        out.reason = std::move(reason);
        return out;
    }
};

/// Exact open-set predicate (traced onto the presentation's points).
bool is_open(const GtsPresentation& x, const SetExpr& s);

/// Largest open subset of T n points, if the open sets have one.
std::optional<SetExpr> largest_open_in(const GtsPresentation& x, const SetExpr& t);

/// Union of all open subsets of T (interior in the generated topology).
SetExpr weak_interior(const GtsPresentation& x, const SetExpr& t);
/// Closure in the generated topology, relative to the points.
SetExpr weak_closure_of(const GtsPresentation& x, const SetExpr& s);
bool is_weakly_open(const GtsPresentation& x, const SetExpr& s);

/// Throws NonOpenMember when some member (streams sampled at their first
/// indices and at a stabilized index) is not open.
void require_open_members(const GtsPresentation& x, const FamilyExpr& f);

/// Policy dispatch; witness `set` on No is the base member or piece where
/// essential finiteness fails.
Verdict is_admissible(const GtsPresentation& x, const FamilyExpr& f);

enum class Smallness { Small, NotSmall, Unknown };
std::string to_string(Smallness s);

struct SmallnessResult {
    Smallness value = Smallness::Unknown;
    std::string reason;
    std::optional<FamilyExpr> witness;
};

SmallnessResult smallness(const GtsPresentation& x, const SetExpr& k);

/// Candidate stream families used as witnesses against smallness and as
/// strict-continuity probes: admissible in X, members open.
std::vector<FamilyExpr> library_families(const GtsPresentation& x, const SetExpr& k);

/// Least family of subsets of a finite carrier containing the subbasis, the
/// empty set and the carrier, closed under finite unions and intersections.
Space generate_finite_gts(const Carrier& carrier, const std::vector<SetExpr>& subbasis, const std::string& name = "generated");

/// All open sets of a presentation with finitely many points.
std::vector<SetExpr> all_opens(const GtsPresentation& x);

}  // namespace gtskit

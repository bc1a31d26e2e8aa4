#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gtskit/family.hpp"

namespace gtskit {

/// Directed family of closed small pieces: either a finite poset of labelled
/// pieces or a chain indexed by n >= start with pieces from a monotone stream.
struct Exhaustion {
    enum class Shape { Poset, Chain };
    Shape shape = Shape::Poset;
    Carrier carrier = Carrier::nat();
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq;  // leq[i][j]: labels[i] <= labels[j]
    std::vector<SetExpr> pieces;
    std::optional<Stream> generator;

    static Exhaustion poset(Carrier c, std::vector<std::string> labels, std::vector<std::vector<bool>> leq,
                            std::vector<SetExpr> pieces);
    static Exhaustion chain(const Stream& generator);

    std::uint64_t first_index() const;
    /// Number of indices for a poset; nullopt for a chain.
    std::optional<std::size_t> size() const;
    SetExpr piece(std::uint64_t index) const;
    bool less_equal(std::uint64_t a, std::uint64_t b) const;
    std::string index_name(std::uint64_t index) const;
    std::string str() const;

    friend bool operator==(const Exhaustion& a, const Exhaustion& b);
};

struct CoveragePolicy {
    enum class Kind { All, EssFin, EssCountable, LocallyEssFin, PiecewiseEssFin };
    Kind kind = Kind::EssFin;
    std::optional<FamilyExpr> base;
    std::optional<Exhaustion> exhaustion;

    static CoveragePolicy all() { return {Kind::All, {}, {}}; }
    static CoveragePolicy essfin() { return {Kind::EssFin, {}, {}}; }
    static CoveragePolicy esscountable() { return {Kind::EssCountable, {}, {}}; }
    static CoveragePolicy locally(const FamilyExpr& base) { return {Kind::LocallyEssFin, base, {}}; }
    static CoveragePolicy piecewise(const Exhaustion& e) { return {Kind::PiecewiseEssFin, {}, e}; }

    std::string str() const;
    friend bool operator==(const CoveragePolicy& a, const CoveragePolicy& b);
};

struct GtsPresentation;
using Space = std::shared_ptr<const GtsPresentation>;

/// Open-set predicate.
///
///   ExplicitList      the listed sets
///   AllCanonicalOpen  QLine: finite unions of open intervals
///   FiniteOrWhole     finite sets and the whole space
///   AllSets           every set
///   ProductOpens      finite unions of boxes U x V of factor opens
///   Summands          tagged sum: a set is open iff every slice is open in its summand
///   Glued             a set is open iff its trace on every piece is open there
///
/// For the first four kinds the predicate is traced onto the presentation's
/// points (subspaces keep the ambient predicate and shrink `points`).
struct OpensSpec {
    enum class Kind { ExplicitList, AllCanonicalOpen, FiniteOrWhole, AllSets, ProductOpens, Summands, Glued };
    Kind kind = Kind::AllSets;
    std::vector<SetExpr> list;
    std::vector<Space> parts;

    std::string str() const;
};

struct GtsPresentation {
    std::string name;
    Carrier carrier = Carrier::nat();
    SetExpr points = SetExpr::full(Carrier::nat());
    OpensSpec opens;
    CoveragePolicy policy;
    /// Free-form facts recorded by constructors (e.g. the finite collapse).
    std::vector<std::string> notes;

    bool is_finite() const { return points.is_finite(); }
};

/// Validated constructor: checks A1 and A2 for explicit lists, carrier
/// agreement, and policy data. Throws InvalidPresentation.
Space make_space(GtsPresentation p);
/// No validation; used for negative controls.
Space make_space_unchecked(GtsPresentation p);

/// Shipped presentations.
Space rs_alg();             // QLine, canonical-open, EssFin
Space r_top();              // QLine, canonical-open, All
Space r_count();            // QLine, canonical-open, EssCountable
Space wd_space();           // NatFC, finite-or-whole, EssFin
Space discrete_small_nat(); // NatFC, all sets, EssFin
Space top_discrete_nat();   // NatFC, all sets, locally ess. finite over singletons
Space chain_nat();          // NatFC, all sets, piecewise over {0..n}
Space one_point();          // enum{p}
Space sierpinski();         // enum{a,b}, opens {}, {a}, {a,b}
std::vector<Space> shipped_presentations();

}  // namespace gtskit

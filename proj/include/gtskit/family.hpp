#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gtskit/set_expr.hpp"

namespace gtskit {

enum class SchemaKind { ShrinkIntervals, GrowBalls, InitialSegments, Singletons };

/// One of the parametric stream shapes.
///
///   ShrinkIntervals(a, b, l, r, n0)  {(a + [l]/n, b - [r]/n) : n >= n0}   QLine
///   GrowBalls(n0)                    {(-n, n) : n >= n0}                  QLine
///   InitialSegments(n0)              {{0..n} : n >= n0}                   NatFC
///   Singletons(n0)                   {{n} : n >= n0}                      NatFC
struct StreamSchema {
    SchemaKind kind = SchemaKind::Singletons;
    Bound a = Bound::neg_inf();
    Bound b = Bound::pos_inf();
    bool shrink_left = false;
    bool shrink_right = false;
    std::uint64_t n0 = 0;

    static StreamSchema shrink(Bound a, Bound b, bool left, bool right, std::uint64_t n0);
    static StreamSchema grow(std::uint64_t n0);
    static StreamSchema initial(std::uint64_t n0);
    static StreamSchema singletons(std::uint64_t n0 = 0);

    Carrier carrier() const;
    /// First index with a defined member (ShrinkIntervals never starts at 0).
    std::uint64_t start() const;
    SetExpr member(std::uint64_t n) const;
    SetExpr union_all() const;
    bool monotone() const { return kind != SchemaKind::Singletons; }
    std::string str() const;

    friend bool operator==(const StreamSchema&, const StreamSchema&) = default;
};

/// A stream: lattice term over schema leaves and constant sets, indexed
/// diagonally (all leaves share the index n).
class Stream {
public:
    enum class Op { Leaf, Const, Union, Inter };

    static Stream of(const StreamSchema& s);
    static Stream constant(const SetExpr& s);
    static Stream unite(const Stream& a, const Stream& b);
    static Stream inter(const Stream& a, const Stream& b);

    Op op() const { return node_->op; }
    const StreamSchema& schema() const { return node_->schema; }
    const SetExpr& constant_set() const { return *node_->constant; }
    const Stream& lhs() const { return *node_->lhs; }
    const Stream& rhs() const { return *node_->rhs; }

    const Carrier& carrier() const { return node_->carrier; }
    std::uint64_t start() const;
    SetExpr member(std::uint64_t n) const;
    /// Union of all members.
    SetExpr union_all() const;

    bool has_singletons() const;
    bool is_monotone() const { return !has_singletons(); }
    /// For Singletons terms: member_k = ({k} n P) u Q.
    SetExpr singles_p() const;
    SetExpr singles_q() const;

    void collect_constants(std::vector<Rational>& out) const;
    std::string str() const;

    friend bool operator==(const Stream& a, const Stream& b);

private:
    struct Node {
        Op op;
        Carrier carrier;
        StreamSchema schema;
        std::optional<SetExpr> constant;
        std::shared_ptr<const Stream> lhs, rhs;
    };
    explicit Stream(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    SetExpr eval_leaves(const SetExpr* singles_value, std::uint64_t n, bool take_union) const;

    std::shared_ptr<const Node> node_;
};

/// A member of a family, labelled by where it came from.
struct FamilyMember {
    std::string label;  // "finite[i]" or "stream[j]@n"
    SetExpr set;
};

/// Finite list of sets plus finitely many streams.
class FamilyExpr {
public:
    FamilyExpr(Carrier c, std::vector<SetExpr> finite = {}, std::vector<Stream> streams = {});

    const Carrier& carrier() const { return carrier_; }
    const std::vector<SetExpr>& finite_part() const { return finite_; }
    const std::vector<Stream>& streams() const { return streams_; }
    bool is_finite() const { return streams_.empty(); }

    FamilyExpr with(const SetExpr& s) const;
    FamilyExpr with(const Stream& s) const;
    /// F u G as families.
    FamilyExpr join(const FamilyExpr& other) const;

    std::string str() const;
    friend bool operator==(const FamilyExpr& a, const FamilyExpr& b);

private:
    Carrier carrier_;
    std::vector<SetExpr> finite_;
    std::vector<Stream> streams_;
};

SetExpr family_union(const FamilyExpr& f);

/// Members enumerated for testing: finite part plus stream members at
/// indices start..start+count-1.
std::vector<FamilyMember> sample_members(const FamilyExpr& f, std::size_t count);

/// Index from which every monotone stream in play has stable behaviour with
/// respect to the given constants (see essentially_finite_on).
std::uint64_t stabilization_index(const std::vector<Rational>& constants, std::uint64_t min_start);

/// Pointwise operations {A op B : A in F, B in G}. Stream-by-stream pairs are
/// taken on the diagonal. Throws Unrepresentable if a Singletons stream would
/// meet another schema.
FamilyExpr pointwise_union(const FamilyExpr& f, const FamilyExpr& g);
FamilyExpr pointwise_intersection(const FamilyExpr& f, const FamilyExpr& g);
/// {A n S : A in F}.
FamilyExpr trace_family(const FamilyExpr& f, const SetExpr& s);

struct EssFinResult {
    bool yes = false;
    std::vector<FamilyMember> witness;  // finite subcover when yes
    std::string reason;
};

/// Whether finitely many members of F cover K n union(F).
EssFinResult essentially_finite_on(const FamilyExpr& f, const SetExpr& k);

/// Whether S is contained in a single member of F.
bool contained_in_some_member(const SetExpr& s, const FamilyExpr& f);

/// Same union and every member of F inside some member of G.
bool refines(const FamilyExpr& f, const FamilyExpr& g);

/// Every member of F meets only finitely many members of G (per member
/// check on canonical forms). Returns the first offending member label.
std::optional<std::string> meets_infinitely_many(const FamilyExpr& f, const FamilyExpr& g);

}  // namespace gtskit

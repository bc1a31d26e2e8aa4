#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gtskit/carrier.hpp"
#include "gtskit/rational.hpp"

namespace gtskit {

/// Interval endpoint in Q extended by the two infinities.
struct Bound {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Rational value;

    static Bound neg_inf() { return {Kind::NegInf, {}}; }
    static Bound pos_inf() { return {Kind::PosInf, {}}; }
    static Bound at(Rational v) { return {Kind::Finite, v}; }
    bool finite() const { return kind == Kind::Finite; }

    friend bool operator==(const Bound&, const Bound&) = default;
    friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);
    std::string str() const;
};

/// Interval of the real line. Infinite endpoints are always open.
struct Interval {
    Bound lo;
    bool lo_closed = false;
    Bound hi;
    bool hi_closed = false;

    static Interval open(Bound lo, Bound hi) { return {lo, false, hi, false}; }
    static Interval closed(Rational lo, Rational hi) { return {Bound::at(lo), true, Bound::at(hi), true}; }
    static Interval point(Rational v) { return closed(v, v); }
    static Interval open(Rational lo, Rational hi) { return open(Bound::at(lo), Bound::at(hi)); }

    bool is_empty() const;
    bool is_degenerate() const { return lo.finite() && lo == hi && lo_closed && hi_closed; }
    bool is_open() const { return !lo_closed && !hi_closed; }
    bool contains(const Rational& x) const;

    friend bool operator==(const Interval&, const Interval&) = default;
    friend std::strong_ordering operator<=>(const Interval& a, const Interval& b);
    std::string str() const;
};

struct Box;

/// Canonical subset of a carrier. Equal extensions have identical forms, so
/// `==` is set equality.
///
///  - FiniteEnum: sorted atom indices.
///  - NatFC: sorted finite element list plus a complement flag.
///  - QLine: sorted maximal intervals, pairwise disjoint and non-adjacent.
///  - Product: boxes with pairwise disjoint, nonempty left components and
///    pairwise distinct, nonempty right components.
class SetExpr {
public:
    static SetExpr empty(const Carrier& c);
    static SetExpr full(const Carrier& c);
    static SetExpr atoms(const Carrier& c, const std::vector<std::string>& names);
    static SetExpr atom_indices(const Carrier& c, std::vector<std::size_t> indices);
    static SetExpr nat_finite(std::vector<std::uint64_t> elems);
    static SetExpr nat_cofinite(std::vector<std::uint64_t> excluded);
    /// {lo, ..., hi} on NatFC.
    static SetExpr nat_range(std::uint64_t lo, std::uint64_t hi);
    static SetExpr intervals(std::vector<Interval> parts);
    static SetExpr interval(const Interval& iv) { return intervals({iv}); }
    static SetExpr box(const SetExpr& left, const SetExpr& right);
    static SetExpr boxes(const Carrier& c, const std::vector<std::pair<SetExpr, SetExpr>>& parts);
    /// Finite set made of representable points; throws UnrepresentablePoint.
    static SetExpr of_points(const Carrier& c, const std::vector<Point>& pts);

    const Carrier& carrier() const { return carrier_; }

    const std::vector<std::size_t>& enum_indices() const;
    const std::vector<std::uint64_t>& nat_elements() const;
    bool nat_complemented() const;
    const std::vector<Interval>& interval_list() const;
    const std::vector<Box>& box_list() const;

    bool is_empty() const;
    bool is_full() const;
    /// Number of elements when finite.
    std::optional<std::size_t> finite_size() const;
    bool is_finite() const { return finite_size().has_value(); }

    /// Canonical textual rendering, e.g. `(0,1) u [2,2]`, `co{1,2}`.
    std::string str() const;

    friend bool operator==(const SetExpr& a, const SetExpr& b);
    friend std::strong_ordering operator<=>(const SetExpr& a, const SetExpr& b);

    struct Data;

private:
    SetExpr(Carrier c, std::shared_ptr<const Data> d) : carrier_(std::move(c)), data_(std::move(d)) {}

    Carrier carrier_;
    std::shared_ptr<const Data> data_;

    friend SetExpr make_set(Carrier c, Data d);
};

struct Box {
    SetExpr left;
    SetExpr right;
    friend bool operator==(const Box&, const Box&) = default;
};

enum class BoolOp { Union, Intersect, Complement, Minus };

/// Exact Boolean operation; `b` is ignored for Complement and required
/// otherwise. Throws CarrierMismatch when carriers differ.
SetExpr apply_boolean(BoolOp op, const SetExpr& a, const std::optional<SetExpr>& b = std::nullopt);

SetExpr unite(const SetExpr& a, const SetExpr& b);
SetExpr intersect(const SetExpr& a, const SetExpr& b);
SetExpr complement(const SetExpr& a);
SetExpr minus(const SetExpr& a, const SetExpr& b);
bool is_subset(const SetExpr& a, const SetExpr& b);
bool are_disjoint(const SetExpr& a, const SetExpr& b);

enum class Relation { Equal, ProperSubset, ProperSuperset, Disjoint, Overlapping };

struct Comparison {
    Relation relation;
    bool a_empty;
    bool b_empty;
};

/// Two empty sets compare Equal; an empty and a nonempty set are Disjoint is
/// never reported, the empty side is a ProperSubset/ProperSuperset.
Comparison compare(const SetExpr& a, const SetExpr& b);
std::string to_string(Relation r);

/// Exact membership. Throws UnrepresentablePoint if the point does not fit
/// the carrier.
bool contains(const SetExpr& s, const Point& x);

/// Up to `n` distinct points of `s`, deterministic for a given seed.
std::vector<Point> enumerate_points(const SetExpr& s, std::size_t n, std::uint64_t seed = 0);

/// All elements of a finite set in canonical order; nullopt when infinite.
std::optional<std::vector<Point>> finite_points(const SetExpr& s);

/// Every finite rational endpoint (QLine) or mentioned natural number
/// (NatFC) occurring in the form, recursively through boxes.
void collect_constants(const SetExpr& s, std::vector<Rational>& out);

/// Topological closure on QLine (interval closure); identity elsewhere.
SetExpr interval_closure(const SetExpr& s);
/// Topological interior on QLine; identity elsewhere.
SetExpr interval_interior(const SetExpr& s);

/// Image of an interval set under x -> p*x + q.
SetExpr affine_image(const SetExpr& s, const Rational& p, const Rational& q);
/// Preimage of an interval set under x -> p*x + q with p != 0.
SetExpr affine_preimage(const SetExpr& s, const Rational& p, const Rational& q);

/// Left/right slice of a product set: the right component over left point x.
SetExpr product_slice(const SetExpr& s, const Point& x);
/// Projection of a product set onto a factor (0 = left, 1 = right).
SetExpr project(const SetExpr& s, int factor);

}  // namespace gtskit

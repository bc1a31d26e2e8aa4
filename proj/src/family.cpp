#include "gtskit/family.hpp"

#include <algorithm>
#include <functional>

#include "gtskit/errors.hpp"

namespace gtskit {

// ---------------------------------------------------------------------------
// Schemas

StreamSchema StreamSchema::shrink(Bound a, Bound b, bool left, bool right, std::uint64_t n0) {
    StreamSchema s;
    s.kind = SchemaKind::ShrinkIntervals;
    s.a = a;
    s.b = b;
    s.shrink_left = left && a.finite();
    s.shrink_right = right && b.finite();
    s.n0 = n0;
    return s;
}

StreamSchema StreamSchema::grow(std::uint64_t n0) {
    StreamSchema s;
    s.kind = SchemaKind::GrowBalls;
    s.n0 = n0;
    return s;
}

StreamSchema StreamSchema::initial(std::uint64_t n0) {
    StreamSchema s;
    s.kind = SchemaKind::InitialSegments;
    s.n0 = n0;
    return s;
}

StreamSchema StreamSchema::singletons(std::uint64_t n0) {
    StreamSchema s;
    s.kind = SchemaKind::Singletons;
    s.n0 = n0;
    return s;
}

Carrier StreamSchema::carrier() const {
    switch (kind) {
        case SchemaKind::ShrinkIntervals:
        case SchemaKind::GrowBalls: return Carrier::qline();
        default: return Carrier::nat();
    }
}

std::uint64_t StreamSchema::start() const {
    if (kind == SchemaKind::ShrinkIntervals) return std::max<std::uint64_t>(n0, 1);
    return n0;
}

SetExpr StreamSchema::member(std::uint64_t n) const {
    if (n < start()) return SetExpr::empty(carrier());
    Rational r(static_cast<std::int64_t>(n));
    switch (kind) {
        case SchemaKind::ShrinkIntervals: {
            Bound lo = a, hi = b;
            if (shrink_left) lo = Bound::at(a.value + Rational(1) / r);
            if (shrink_right) hi = Bound::at(b.value - Rational(1) / r);
            return SetExpr::interval(Interval::open(lo, hi));
        }
        case SchemaKind::GrowBalls: return SetExpr::interval(Interval::open(-r, r));
        case SchemaKind::InitialSegments: return SetExpr::nat_range(0, n);
        case SchemaKind::Singletons: return SetExpr::nat_finite({n});
    }
    return SetExpr::empty(carrier());
}

SetExpr StreamSchema::union_all() const {
    switch (kind) {
        case SchemaKind::ShrinkIntervals: return SetExpr::interval(Interval::open(a, b));
        case SchemaKind::GrowBalls:
        case SchemaKind::InitialSegments: return SetExpr::full(carrier());
        case SchemaKind::Singletons: {
            std::vector<std::uint64_t> below;
            for (std::uint64_t i = 0; i < n0; ++i) below.push_back(i);
            return SetExpr::nat_cofinite(below);
        }
    }
    return SetExpr::empty(carrier());
}

std::string StreamSchema::str() const {
    switch (kind) {
        case SchemaKind::ShrinkIntervals: {
            std::string mode = shrink_left ? (shrink_right ? "both" : "left") : (shrink_right ? "right" : "none");
            return "shrink(" + a.str() + "," + b.str() + "," + mode + "," + std::to_string(n0) + ")";
        }
        case SchemaKind::GrowBalls: return "grow(" + std::to_string(n0) + ")";
        case SchemaKind::InitialSegments: return "initial(" + std::to_string(n0) + ")";
        case SchemaKind::Singletons: return n0 == 0 ? "singletons" : "singletons(" + std::to_string(n0) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Streams

namespace {

bool has_monotone_leaf(const Stream& s) {
    switch (s.op()) {
        case Stream::Op::Leaf: return s.schema().monotone();
        case Stream::Op::Const: return false;
        default: return has_monotone_leaf(s.lhs()) || has_monotone_leaf(s.rhs());
    }
}

SetExpr eval(const Stream& s, const std::function<SetExpr(const StreamSchema&)>& leaf) {
    switch (s.op()) {
        case Stream::Op::Leaf: return leaf(s.schema());
        case Stream::Op::Const: return s.constant_set();
        case Stream::Op::Union: return unite(eval(s.lhs(), leaf), eval(s.rhs(), leaf));
        case Stream::Op::Inter: return intersect(eval(s.lhs(), leaf), eval(s.rhs(), leaf));
    }
    return s.constant_set();
}

std::vector<std::uint64_t> below(std::uint64_t n) {
    std::vector<std::uint64_t> v;
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(i);
    return v;
}

}  // namespace

Stream Stream::of(const StreamSchema& s) {
    return Stream(std::make_shared<const Node>(Node{Op::Leaf, s.carrier(), s, std::nullopt, nullptr, nullptr}));
}

Stream Stream::constant(const SetExpr& s) {
    return Stream(std::make_shared<const Node>(Node{Op::Const, s.carrier(), {}, s, nullptr, nullptr}));
}

Stream Stream::unite(const Stream& a, const Stream& b) {
    if (!(a.carrier() == b.carrier())) throw Error(ErrorKind::CarrierMismatch, "stream union across carriers");
    if ((a.has_singletons() && has_monotone_leaf(b)) || (b.has_singletons() && has_monotone_leaf(a)))
        throw Error(ErrorKind::Unrepresentable, "singletons combined with a monotone stream");
    return Stream(std::make_shared<const Node>(
        Node{Op::Union, a.carrier(), {}, std::nullopt, std::make_shared<const Stream>(a), std::make_shared<const Stream>(b)}));
}

Stream Stream::inter(const Stream& a, const Stream& b) {
    if (!(a.carrier() == b.carrier())) throw Error(ErrorKind::CarrierMismatch, "stream intersection across carriers");
    if ((a.has_singletons() && has_monotone_leaf(b)) || (b.has_singletons() && has_monotone_leaf(a)))
        throw Error(ErrorKind::Unrepresentable, "singletons combined with a monotone stream");
    return Stream(std::make_shared<const Node>(
        Node{Op::Inter, a.carrier(), {}, std::nullopt, std::make_shared<const Stream>(a), std::make_shared<const Stream>(b)}));
}

std::uint64_t Stream::start() const {
    switch (op()) {
        case Op::Leaf: return schema().start();
        case Op::Const: return 0;
        default: return std::max(lhs().start(), rhs().start());
    }
}

SetExpr Stream::member(std::uint64_t n) const {
    return eval(*this, [n](const StreamSchema& s) { return s.member(n); });
}

bool Stream::has_singletons() const {
    switch (op()) {
        case Op::Leaf: return !schema().monotone();
        case Op::Const: return false;
        default: return lhs().has_singletons() || rhs().has_singletons();
    }
}

SetExpr Stream::singles_p() const {
    return eval(*this, [](const StreamSchema& s) { return s.monotone() ? s.union_all() : SetExpr::full(Carrier::nat()); });
}

SetExpr Stream::singles_q() const {
    return eval(*this, [](const StreamSchema& s) { return s.monotone() ? s.union_all() : SetExpr::empty(Carrier::nat()); });
}

SetExpr Stream::union_all() const {
    if (!has_singletons()) return eval(*this, [](const StreamSchema& s) { return s.union_all(); });
    return gtskit::unite(gtskit::intersect(singles_p(), SetExpr::nat_cofinite(below(start()))), singles_q());
}

void Stream::collect_constants(std::vector<Rational>& out) const {
    switch (op()) {
        case Op::Leaf:
            if (schema().a.finite()) out.push_back(schema().a.value);
            if (schema().b.finite()) out.push_back(schema().b.value);
            return;
        case Op::Const: gtskit::collect_constants(constant_set(), out); return;
        default:
            lhs().collect_constants(out);
            rhs().collect_constants(out);
    }
}

std::string Stream::str() const {
    switch (op()) {
        case Op::Leaf: return schema().str();
        case Op::Const: return "const(" + constant_set().str() + ")";
        case Op::Union: return "union(" + lhs().str() + ", " + rhs().str() + ")";
        case Op::Inter: return "inter(" + lhs().str() + ", " + rhs().str() + ")";
    }
    return "?";
}

bool operator==(const Stream& a, const Stream& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op() || !(a.carrier() == b.carrier())) return false;
    switch (a.op()) {
        case Stream::Op::Leaf: return a.schema() == b.schema();
        case Stream::Op::Const: return a.constant_set() == b.constant_set();
        default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

// ---------------------------------------------------------------------------
// Families

FamilyExpr::FamilyExpr(Carrier c, std::vector<SetExpr> finite, std::vector<Stream> streams)
    : carrier_(std::move(c)), finite_(std::move(finite)), streams_(std::move(streams)) {
    for (const auto& s : finite_)
        if (!(s.carrier() == carrier_)) throw Error(ErrorKind::CarrierMismatch, "family member " + s.str() + " not on " + carrier_.str());
    for (const auto& s : streams_)
        if (!(s.carrier() == carrier_)) throw Error(ErrorKind::CarrierMismatch, "stream " + s.str() + " not on " + carrier_.str());
}

FamilyExpr FamilyExpr::with(const SetExpr& s) const {
    auto f = finite_;
    f.push_back(s);
    return FamilyExpr(carrier_, std::move(f), streams_);
}

FamilyExpr FamilyExpr::with(const Stream& s) const {
    auto st = streams_;
    st.push_back(s);
    return FamilyExpr(carrier_, finite_, std::move(st));
}

FamilyExpr FamilyExpr::join(const FamilyExpr& other) const {
    if (!(carrier_ == other.carrier_)) throw Error(ErrorKind::CarrierMismatch, "family join across carriers");
    auto f = finite_;
    for (const auto& s : other.finite_)
        if (std::find(f.begin(), f.end(), s) == f.end()) f.push_back(s);
    auto st = streams_;
    for (const auto& s : other.streams_)
        if (std::find(st.begin(), st.end(), s) == st.end()) st.push_back(s);
    return FamilyExpr(carrier_, std::move(f), std::move(st));
}

std::string FamilyExpr::str() const {
    std::string out;
    if (!finite_.empty() || streams_.empty()) {
        out = "[";
        for (std::size_t i = 0; i < finite_.size(); ++i) out += (i ? ", " : "") + finite_[i].str();
        out += "]";
    }
    for (const auto& s : streams_) out += (out.empty() ? "" : " + ") + ("stream " + s.str());
    return out;
}

bool operator==(const FamilyExpr& a, const FamilyExpr& b) {
    return a.carrier_ == b.carrier_ && a.finite_ == b.finite_ && a.streams_ == b.streams_;
}

SetExpr family_union(const FamilyExpr& f) {
    SetExpr u = SetExpr::empty(f.carrier());
    for (const auto& s : f.finite_part()) u = unite(u, s);
    for (const auto& s : f.streams()) u = unite(u, s.union_all());
    return u;
}

std::vector<FamilyMember> sample_members(const FamilyExpr& f, std::size_t count) {
    std::vector<FamilyMember> out;
    for (std::size_t i = 0; i < f.finite_part().size(); ++i)
        out.push_back({"finite[" + std::to_string(i) + "]", f.finite_part()[i]});
    for (std::size_t j = 0; j < f.streams().size(); ++j) {
        const auto& s = f.streams()[j];
        for (std::uint64_t n = s.start(); n < s.start() + count; ++n)
            out.push_back({"stream[" + std::to_string(j) + "]@" + std::to_string(n), s.member(n)});
    }
    return out;
}

std::uint64_t stabilization_index(const std::vector<Rational>& constants, std::uint64_t min_start) {
    std::vector<Rational> v = constants;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    Rational gap(1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) gap = std::min(gap, v[i + 1] - v[i]);
    Rational m(0);
    for (const auto& x : v) m = std::max(m, x.abs());
    std::int64_t n = std::max<std::int64_t>((Rational(4) / gap).ceil() + 1, m.ceil() + 2);
    return std::max<std::uint64_t>({min_start, static_cast<std::uint64_t>(n), 1});
}

namespace {

void family_constants(const FamilyExpr& f, std::vector<Rational>& out) {
    for (const auto& s : f.finite_part()) collect_constants(s, out);
    for (const auto& s : f.streams()) s.collect_constants(out);
}

std::uint64_t max_start(const FamilyExpr& f) {
    std::uint64_t m = 0;
    for (const auto& s : f.streams()) m = std::max(m, s.start());
    return m;
}

std::vector<SetExpr> dedup(const std::vector<SetExpr>& v) {
    std::vector<SetExpr> out;
    for (const auto& s : v)
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
}

template <class SetOp, class StreamOp>
FamilyExpr pointwise(const FamilyExpr& f, const FamilyExpr& g, SetOp set_op, StreamOp stream_op) {
    if (!(f.carrier() == g.carrier())) throw Error(ErrorKind::CarrierMismatch, "pointwise operation across carriers");
    std::vector<SetExpr> fin;
    std::vector<Stream> st;
    for (const auto& a : f.finite_part())
        for (const auto& b : g.finite_part()) fin.push_back(set_op(a, b));
    for (const auto& a : f.finite_part())
        for (const auto& t : g.streams()) st.push_back(stream_op(Stream::constant(a), t));
    for (const auto& s : f.streams())
        for (const auto& b : g.finite_part()) st.push_back(stream_op(s, Stream::constant(b)));
    for (const auto& s : f.streams())
        for (const auto& t : g.streams()) st.push_back(stream_op(s, t));
    return FamilyExpr(f.carrier(), dedup(fin), st);
}

// Covered enough that the Singletons streams can finish the job.
bool coverable(const FamilyExpr& f, const SetExpr& rest) {
    if (f.carrier().kind() != CarrierKind::NatFC) return rest.is_empty();
    SetExpr r = rest;
    SetExpr reach = SetExpr::empty(f.carrier());
    for (const auto& s : f.streams())
        if (s.has_singletons()) {
            r = minus(r, s.singles_q());
            reach = unite(reach, intersect(s.singles_p(), SetExpr::nat_cofinite(below(s.start()))));
        }
    return r.is_finite() && is_subset(r, reach);
}

}  // namespace

FamilyExpr pointwise_union(const FamilyExpr& f, const FamilyExpr& g) {
    return pointwise(f, g, [](const SetExpr& a, const SetExpr& b) { return unite(a, b); },
                     [](const Stream& a, const Stream& b) { return Stream::unite(a, b); });
}

FamilyExpr pointwise_intersection(const FamilyExpr& f, const FamilyExpr& g) {
    return pointwise(f, g, [](const SetExpr& a, const SetExpr& b) { return intersect(a, b); },
                     [](const Stream& a, const Stream& b) { return Stream::inter(a, b); });
}

FamilyExpr trace_family(const FamilyExpr& f, const SetExpr& s) {
    std::vector<SetExpr> fin;
    for (const auto& a : f.finite_part()) fin.push_back(intersect(a, s));
    std::vector<Stream> st;
    for (const auto& t : f.streams()) st.push_back(Stream::inter(t, Stream::constant(s)));
    return FamilyExpr(f.carrier(), dedup(fin), st);
}

EssFinResult essentially_finite_on(const FamilyExpr& f, const SetExpr& k) {
    EssFinResult res;
    SetExpr target = intersect(k, family_union(f));
    if (target.is_empty()) {
        res.yes = true;
        res.reason = "nothing to cover";
        return res;
    }
    std::vector<Rational> consts;
    collect_constants(k, consts);
    family_constants(f, consts);
    std::uint64_t big = stabilization_index(consts, max_start(f));

    SetExpr covered = SetExpr::empty(f.carrier());
    for (const auto& s : f.finite_part()) covered = unite(covered, s);
    for (const auto& s : f.streams())
        if (s.is_monotone()) covered = unite(covered, s.member(big));
    SetExpr rest = minus(target, covered);
    if (!coverable(f, rest)) {
        res.yes = false;
        res.reason = "no finite subfamily covers " + target.str() + "; left uncovered at every stage: " + rest.str();
        return res;
    }

    // Witness: finite members in list order, then the least index of each
    // monotone stream, then single members of Singletons streams.
    res.yes = true;
    SetExpr cur = SetExpr::empty(f.carrier());
    for (std::size_t i = 0; i < f.finite_part().size(); ++i) {
        const auto& s = f.finite_part()[i];
        if (!minus(intersect(s, target), cur).is_empty()) {
            res.witness.push_back({"finite[" + std::to_string(i) + "]", s});
            cur = unite(cur, s);
        }
    }
    const auto& streams = f.streams();
    for (std::size_t j = 0; j < streams.size(); ++j) {
        const auto& s = streams[j];
        if (!s.is_monotone()) continue;
        auto later = [&](std::uint64_t n) {
            SetExpr c = unite(cur, s.member(n));
            for (std::size_t l = j + 1; l < streams.size(); ++l)
                if (streams[l].is_monotone()) c = unite(c, streams[l].member(big));
            return c;
        };
        std::uint64_t lo = s.start(), hi = big;
        while (lo < hi) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            if (coverable(f, minus(target, later(mid))))
                hi = mid;
            else
                lo = mid + 1;
        }
        SetExpr m = s.member(lo);
        if (minus(intersect(m, target), cur).is_empty()) continue;
        res.witness.push_back({"stream[" + std::to_string(j) + "]@" + std::to_string(lo), m});
        cur = unite(cur, m);
    }
    SetExpr rem = minus(target, cur);
    for (std::size_t j = 0; j < streams.size() && !rem.is_empty(); ++j) {
        const auto& s = streams[j];
        if (s.is_monotone() || are_disjoint(rem, s.singles_q())) continue;
        SetExpr cand = intersect(intersect(rem, s.singles_p()), SetExpr::nat_cofinite(below(s.start())));
        std::uint64_t idx = s.start();
        if (!cand.is_empty()) idx = enumerate_points(cand, 1)[0].nat;
        SetExpr m = s.member(idx);
        res.witness.push_back({"stream[" + std::to_string(j) + "]@" + std::to_string(idx), m});
        rem = minus(rem, m);
    }
    if (auto pts = finite_points(rem)) {
        for (const auto& p : *pts) {
            for (std::size_t j = 0; j < streams.size(); ++j) {
                const auto& s = streams[j];
                if (s.is_monotone() || p.nat < s.start() || !contains(s.singles_p(), p)) continue;
                SetExpr m = s.member(p.nat);
                res.witness.push_back({"stream[" + std::to_string(j) + "]@" + std::to_string(p.nat), m});
                rem = minus(rem, m);
                break;
            }
        }
    }
    res.reason = "covered by " + std::to_string(res.witness.size()) + " members";
    return res;
}

namespace {

bool in_stream_member(const SetExpr& s, const Stream& t) {
    if (t.is_monotone()) {
        std::vector<Rational> consts;
        collect_constants(s, consts);
        t.collect_constants(consts);
        return is_subset(s, t.member(stabilization_index(consts, t.start())));
    }
    SetExpr d = minus(s, t.singles_q());
    if (d.is_empty()) return true;
    auto pts = finite_points(d);
    if (!pts || pts->size() != 1) return false;
    return (*pts)[0].nat >= t.start() && contains(t.singles_p(), (*pts)[0]);
}

}  // namespace

bool contained_in_some_member(const SetExpr& s, const FamilyExpr& f) {
    for (const auto& m : f.finite_part())
        if (is_subset(s, m)) return true;
    for (const auto& t : f.streams())
        if (in_stream_member(s, t)) return true;
    return false;
}

bool refines(const FamilyExpr& f, const FamilyExpr& g) {
    if (!(f.carrier() == g.carrier())) throw Error(ErrorKind::CarrierMismatch, "refinement across carriers");
    if (!(family_union(f) == family_union(g))) return false;
    for (const auto& s : f.finite_part())
        if (!contained_in_some_member(s, g)) return false;
    std::vector<Rational> consts;
    family_constants(f, consts);
    family_constants(g, consts);
    for (const auto& s : f.streams()) {
        if (s.is_monotone()) {
            std::uint64_t n1 = stabilization_index(consts, std::max(s.start(), max_start(g)));
            for (std::uint64_t n : {n1, 2 * n1})
                if (!contained_in_some_member(s.member(n), g)) return false;
        } else {
            std::vector<std::uint64_t> ks;
            std::uint64_t top = s.start();
            for (const auto& c : consts)
                if (c >= Rational(0) && c.is_integer()) {
                    auto k = static_cast<std::uint64_t>(c.num());
                    top = std::max(top, k + 1);
                    if (k >= s.start()) ks.push_back(k);
                }
            ks.push_back(top);
            for (auto k : ks)
                if (!contained_in_some_member(s.member(k), g)) return false;
        }
    }
    return true;
}

namespace {

// Whether `a` meets infinitely many distinct members of stream t.
bool meets_stream_infinitely(const SetExpr& a, const Stream& t) {
    if (t.is_monotone()) {
        std::vector<Rational> consts;
        collect_constants(a, consts);
        t.collect_constants(consts);
        std::uint64_t big = stabilization_index(consts, t.start());
        bool eventually_constant = t.member(big) == t.union_all() && t.member(2 * big) == t.member(big);
        if (eventually_constant) return false;
        return !are_disjoint(a, t.union_all());
    }
    SetExpr p = intersect(t.singles_p(), SetExpr::nat_cofinite(below(t.start())));
    if (!are_disjoint(a, t.singles_q())) return !p.is_finite();
    return !intersect(a, p).is_finite();
}

}  // namespace

std::optional<std::string> meets_infinitely_many(const FamilyExpr& f, const FamilyExpr& g) {
    auto check = [&](const SetExpr& a) {
        for (const auto& t : g.streams())
            if (meets_stream_infinitely(a, t)) return true;
        return false;
    };
    for (std::size_t i = 0; i < f.finite_part().size(); ++i)
        if (check(f.finite_part()[i])) return "finite[" + std::to_string(i) + "]";
    std::vector<Rational> consts;
    family_constants(f, consts);
    family_constants(g, consts);
    for (std::size_t j = 0; j < f.streams().size(); ++j) {
        const auto& s = f.streams()[j];
        std::uint64_t n = stabilization_index(consts, s.start());
        if (!s.is_monotone()) {
            n = s.start();
            for (const auto& c : consts)
                if (c >= Rational(0)) n = std::max<std::uint64_t>(n, static_cast<std::uint64_t>(c.ceil()) + 1);
        }
        if (check(s.member(n))) return "stream[" + std::to_string(j) + "]@" + std::to_string(n);
    }
    return std::nullopt;
}

}  // namespace gtskit

#include "gtskit/set_expr.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <set>

#include "gtskit/errors.hpp"

namespace gtskit {

struct SetExpr::Data {
    std::vector<std::size_t> enum_idx;
    std::vector<std::uint64_t> nat;
    bool co = false;
    std::vector<Interval> ivs;
    std::vector<Box> boxes;
};

SetExpr make_set(Carrier c, SetExpr::Data d) {
    return SetExpr(std::move(c), std::make_shared<const SetExpr::Data>(std::move(d)));
}

// ---------------------------------------------------------------------------
// Bounds and intervals

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    if (a.kind == Bound::Kind::Finite) return a.value <=> b.value;
    return std::strong_ordering::equal;
}

std::string Bound::str() const {
    switch (kind) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "+inf";
        case Kind::Finite: return value.str();
    }
    return "?";
}

bool Interval::is_empty() const {
    if (lo.kind == Bound::Kind::PosInf || hi.kind == Bound::Kind::NegInf) return true;
    if (lo.finite() && hi.finite()) {
        if (lo.value > hi.value) return true;
        if (lo.value == hi.value) return !(lo_closed && hi_closed);
    }
    return false;
}

bool Interval::contains(const Rational& x) const {
    if (lo.finite() && (x < lo.value || (x == lo.value && !lo_closed))) return false;
    if (lo.kind == Bound::Kind::PosInf) return false;
    if (hi.finite() && (x > hi.value || (x == hi.value && !hi_closed))) return false;
    if (hi.kind == Bound::Kind::NegInf) return false;
    return true;
}

std::strong_ordering operator<=>(const Interval& a, const Interval& b) {
    if (auto c = a.lo <=> b.lo; c != 0) return c;
    if (a.lo_closed != b.lo_closed) return a.lo_closed ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.hi <=> b.hi; c != 0) return c;
    if (a.hi_closed != b.hi_closed) return a.hi_closed ? std::strong_ordering::greater : std::strong_ordering::less;
    return std::strong_ordering::equal;
}

std::string Interval::str() const {
    return std::string(lo_closed ? "[" : "(") + lo.str() + "," + hi.str() + (hi_closed ? "]" : ")");
}

namespace {

bool member(const std::vector<Interval>& ivs, const Rational& x) {
    for (const auto& iv : ivs)
        if (iv.contains(x)) return true;
    return false;
}

void add_cuts(const std::vector<Interval>& ivs, std::vector<Rational>& cuts) {
    for (const auto& iv : ivs) {
        if (iv.lo.finite()) cuts.push_back(iv.lo.value);
        if (iv.hi.finite()) cuts.push_back(iv.hi.value);
    }
}

// Rebuilds a canonical interval list from the elementary pieces cut out by
// `cuts`: (-inf,c0), {c0}, (c0,c1), ..., {ck}, (ck,+inf). `inside(x)` is
// evaluated on one sample point per piece.
template <class Pred>
std::vector<Interval> sweep(std::vector<Rational> cuts, Pred inside) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    struct Piece {
        bool point;
        Bound lo, hi;
        Rational sample;
    };
    std::vector<Piece> pieces;
    if (cuts.empty()) {
        pieces.push_back({false, Bound::neg_inf(), Bound::pos_inf(), Rational(0)});
    } else {
        pieces.push_back({false, Bound::neg_inf(), Bound::at(cuts.front()), cuts.front() - Rational(1)});
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            pieces.push_back({true, Bound::at(cuts[i]), Bound::at(cuts[i]), cuts[i]});
            if (i + 1 < cuts.size())
                pieces.push_back({false, Bound::at(cuts[i]), Bound::at(cuts[i + 1]), (cuts[i] + cuts[i + 1]) / Rational(2)});
        }
        pieces.push_back({false, Bound::at(cuts.back()), Bound::pos_inf(), cuts.back() + Rational(1)});
    }

    std::vector<Interval> out;
    std::optional<Interval> run;
    for (const auto& p : pieces) {
        if (inside(p.sample)) {
            if (!run) run = Interval{p.lo, p.point, p.hi, p.point};
            run->hi = p.hi;
            run->hi_closed = p.point;
        } else if (run) {
            out.push_back(*run);
            run.reset();
        }
    }
    if (run) out.push_back(*run);
    return out;
}

std::vector<std::size_t> all_indices(const Carrier& c) {
    std::vector<std::size_t> v(c.atoms().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

template <class F>
std::vector<std::size_t> set_op(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, F f) {
    std::vector<std::size_t> out;
    f(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

template <class T, class F>
std::vector<T> vec_op(const std::vector<T>& a, const std::vector<T>& b, F f) {
    std::vector<T> out;
    f(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void require_same(const SetExpr& a, const SetExpr& b) {
    if (!(a.carrier() == b.carrier()))
        throw Error(ErrorKind::CarrierMismatch, a.carrier().str() + " vs " + b.carrier().str());
}

bool nat_member(const SetExpr& s, std::uint64_t v) {
    return std::binary_search(s.nat_elements().begin(), s.nat_elements().end(), v) != s.nat_complemented();
}

// Atoms of the Boolean algebra generated by the left components on a
// non-product carrier: each cell lies inside or outside every left set.
struct Cells {
    std::vector<SetExpr> sets;
    std::vector<std::function<bool(const SetExpr&)>> inside;
};

Cells left_cells(const Carrier& lc, const std::vector<std::pair<SetExpr, SetExpr>>& parts) {
    Cells out;
    switch (lc.kind()) {
        case CarrierKind::FiniteEnum:
            for (std::size_t i = 0; i < lc.atoms().size(); ++i) {
                out.sets.push_back(SetExpr::atom_indices(lc, {i}));
                out.inside.push_back([i](const SetExpr& l) { return std::binary_search(l.enum_indices().begin(), l.enum_indices().end(), i); });
            }
            break;
        case CarrierKind::NatFC: {
            std::vector<std::uint64_t> seen;
            bool any_co = false;
            for (const auto& [l, r] : parts) {
                seen.insert(seen.end(), l.nat_elements().begin(), l.nat_elements().end());
                any_co = any_co || l.nat_complemented();
            }
            std::sort(seen.begin(), seen.end());
            seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
            for (auto v : seen) {
                out.sets.push_back(SetExpr::nat_finite({v}));
                out.inside.push_back([v](const SetExpr& l) { return nat_member(l, v); });
            }
            if (any_co) {
                std::uint64_t rest = seen.empty() ? 0 : seen.back() + 1;
                out.sets.push_back(SetExpr::nat_cofinite(seen));
                out.inside.push_back([rest](const SetExpr& l) { return nat_member(l, rest); });
            }
            break;
        }
        case CarrierKind::QLine: {
            std::vector<Rational> cuts;
            for (const auto& [l, r] : parts) add_cuts(l.interval_list(), cuts);
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            auto add = [&](Interval iv, Rational sample) {
                out.sets.push_back(SetExpr::intervals({iv}));
                out.inside.push_back([sample](const SetExpr& l) { return member(l.interval_list(), sample); });
            };
            if (cuts.empty()) {
                add(Interval::open(Bound::neg_inf(), Bound::pos_inf()), Rational(0));
                break;
            }
            add(Interval::open(Bound::neg_inf(), Bound::at(cuts.front())), cuts.front() - Rational(1));
            for (std::size_t i = 0; i < cuts.size(); ++i) {
                add(Interval::point(cuts[i]), cuts[i]);
                if (i + 1 < cuts.size()) add(Interval::open(Bound::at(cuts[i]), Bound::at(cuts[i + 1])), (cuts[i] + cuts[i + 1]) / Rational(2));
            }
            add(Interval::open(Bound::at(cuts.back()), Bound::pos_inf()), cuts.back() + Rational(1));
            break;
        }
        case CarrierKind::Product: break;
    }
    return out;
}

// Union of pairwise disjoint cells without repeated normalization.
SetExpr union_of_cells(const Carrier& lc, const std::vector<SetExpr>& cells) {
    switch (lc.kind()) {
        case CarrierKind::FiniteEnum: {
            std::vector<std::size_t> idx;
            for (const auto& s : cells) idx.insert(idx.end(), s.enum_indices().begin(), s.enum_indices().end());
            return SetExpr::atom_indices(lc, std::move(idx));
        }
        case CarrierKind::QLine: {
            std::vector<Interval> ivs;
            for (const auto& s : cells) ivs.insert(ivs.end(), s.interval_list().begin(), s.interval_list().end());
            return SetExpr::intervals(std::move(ivs));
        }
        default: {
            SetExpr u = SetExpr::empty(lc);
            for (const auto& s : cells) u = unite(u, s);
            return u;
        }
    }
}

// Refines arbitrary boxes into the canonical disjoint-left, distinct-right form.
SetExpr normalize_boxes(const Carrier& c, const std::vector<std::pair<SetExpr, SetExpr>>& parts) {
    if (c.left().kind() != CarrierKind::Product && parts.size() > 1) {
        Cells cells = left_cells(c.left(), parts);
        std::map<std::vector<bool>, SetExpr> by_signature;
        std::vector<std::pair<SetExpr, std::vector<SetExpr>>> groups;
        for (std::size_t k = 0; k < cells.sets.size(); ++k) {
            std::vector<bool> sig(parts.size());
            bool any = false;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                sig[i] = !parts[i].second.is_empty() && cells.inside[k](parts[i].first);
                any = any || sig[i];
            }
            if (!any) continue;
            auto it = by_signature.find(sig);
            if (it == by_signature.end()) {
                SetExpr r = SetExpr::empty(c.right());
                for (std::size_t i = 0; i < parts.size(); ++i)
                    if (sig[i]) r = unite(r, parts[i].second);
                it = by_signature.emplace(std::move(sig), r).first;
            }
            auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& x) { return x.first == it->second; });
            if (g == groups.end())
                groups.push_back({it->second, {cells.sets[k]}});
            else
                g->second.push_back(cells.sets[k]);
        }
        std::vector<std::pair<SetExpr, SetExpr>> grouped;
        for (const auto& [r, cs] : groups) grouped.emplace_back(union_of_cells(c.left(), cs), r);
        std::sort(grouped.begin(), grouped.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        SetExpr::Data d;
        for (auto& [l, r] : grouped) d.boxes.push_back(Box{l, r});
        return make_set(c, std::move(d));
    }
    std::vector<std::pair<SetExpr, SetExpr>> acc;
    for (const auto& [a, b] : parts) {
        if (a.is_empty() || b.is_empty()) continue;
        std::vector<std::pair<SetExpr, SetExpr>> next;
        SetExpr rest = a;
        for (const auto& [l, r] : acc) {
            SetExpr both = intersect(l, a);
            SetExpr only = minus(l, a);
            if (!both.is_empty()) next.emplace_back(both, unite(r, b));
            if (!only.is_empty()) next.emplace_back(only, r);
            rest = minus(rest, l);
        }
        if (!rest.is_empty()) next.emplace_back(rest, b);
        acc = std::move(next);
    }
    // Group by right component.
    std::vector<std::pair<SetExpr, SetExpr>> grouped;
    for (const auto& [l, r] : acc) {
        auto it = std::find_if(grouped.begin(), grouped.end(), [&](const auto& g) { return g.second == r; });
        if (it == grouped.end())
            grouped.emplace_back(l, r);
        else
            it->first = unite(it->first, l);
    }
    std::sort(grouped.begin(), grouped.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SetExpr::Data d;
    for (auto& [l, r] : grouped) d.boxes.push_back(Box{l, r});
    return make_set(c, std::move(d));
}

std::vector<std::pair<SetExpr, SetExpr>> as_pairs(const SetExpr& s) {
    std::vector<std::pair<SetExpr, SetExpr>> out;
    for (const auto& b : s.box_list()) out.emplace_back(b.left, b.right);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

SetExpr SetExpr::empty(const Carrier& c) { return make_set(c, {}); }

SetExpr SetExpr::full(const Carrier& c) {
    Data d;
    switch (c.kind()) {
        case CarrierKind::FiniteEnum: d.enum_idx = all_indices(c); break;
        case CarrierKind::NatFC: d.co = true; break;
        case CarrierKind::QLine: d.ivs.push_back(Interval::open(Bound::neg_inf(), Bound::pos_inf())); break;
        case CarrierKind::Product: {
            SetExpr l = full(c.left());
            SetExpr r = full(c.right());
            if (!l.is_empty() && !r.is_empty()) d.boxes.push_back(Box{l, r});
            break;
        }
    }
    return make_set(c, std::move(d));
}

SetExpr SetExpr::atoms(const Carrier& c, const std::vector<std::string>& names) {
    if (c.kind() != CarrierKind::FiniteEnum) throw Error(ErrorKind::CarrierMismatch, "atoms on " + c.str());
    std::vector<std::size_t> idx;
    for (const auto& n : names) {
        auto i = c.atom_index(n);
        if (i == std::string::npos) throw Error(ErrorKind::UnrepresentablePoint, "atom '" + n + "' not in " + c.str());
        idx.push_back(i);
    }
    return atom_indices(c, std::move(idx));
}

SetExpr SetExpr::atom_indices(const Carrier& c, std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (auto i : indices)
        if (i >= c.atoms().size()) throw Error(ErrorKind::UnrepresentablePoint, "atom index out of range");
    Data d;
    d.enum_idx = std::move(indices);
    return make_set(c, std::move(d));
}

SetExpr SetExpr::nat_finite(std::vector<std::uint64_t> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Data d;
    d.nat = std::move(elems);
    return make_set(Carrier::nat(), std::move(d));
}

SetExpr SetExpr::nat_cofinite(std::vector<std::uint64_t> excluded) {
    std::sort(excluded.begin(), excluded.end());
    excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
    Data d;
    d.nat = std::move(excluded);
    d.co = true;
    return make_set(Carrier::nat(), std::move(d));
}

SetExpr SetExpr::nat_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> v;
    for (std::uint64_t i = lo; i <= hi && lo <= hi; ++i) v.push_back(i);
    return nat_finite(std::move(v));
}

SetExpr SetExpr::intervals(std::vector<Interval> parts) {
    for (auto& iv : parts) {
        if (!iv.lo.finite()) iv.lo_closed = false;
        if (!iv.hi.finite()) iv.hi_closed = false;
    }
    std::erase_if(parts, [](const Interval& iv) { return iv.is_empty(); });
    std::vector<Rational> cuts;
    add_cuts(parts, cuts);
    Data d;
    d.ivs = sweep(cuts, [&](const Rational& x) { return member(parts, x); });
    return make_set(Carrier::qline(), std::move(d));
}

SetExpr SetExpr::box(const SetExpr& left, const SetExpr& right) {
    Carrier c = Carrier::product(left.carrier(), right.carrier());
    return normalize_boxes(c, {{left, right}});
}

SetExpr SetExpr::boxes(const Carrier& c, const std::vector<std::pair<SetExpr, SetExpr>>& parts) {
    if (c.kind() != CarrierKind::Product) throw Error(ErrorKind::CarrierMismatch, "boxes on " + c.str());
    for (const auto& [l, r] : parts)
        if (!(l.carrier() == c.left()) || !(r.carrier() == c.right()))
            throw Error(ErrorKind::CarrierMismatch, "box component outside " + c.str());
    return normalize_boxes(c, parts);
}

SetExpr SetExpr::of_points(const Carrier& c, const std::vector<Point>& pts) {
    switch (c.kind()) {
        case CarrierKind::FiniteEnum: {
            std::vector<std::string> names;
            for (const auto& p : pts) {
                if (p.kind != PointKind::Atom) throw Error(ErrorKind::UnrepresentablePoint, p.str());
                names.push_back(p.atom);
            }
            return atoms(c, names);
        }
        case CarrierKind::NatFC: {
            std::vector<std::uint64_t> v;
            for (const auto& p : pts) {
                if (p.kind != PointKind::Nat) throw Error(ErrorKind::UnrepresentablePoint, p.str());
                v.push_back(p.nat);
            }
            return nat_finite(std::move(v));
        }
        case CarrierKind::QLine: {
            std::vector<Interval> v;
            for (const auto& p : pts) {
                if (p.kind != PointKind::Rat) throw Error(ErrorKind::UnrepresentablePoint, p.str());
                v.push_back(Interval::point(p.rat));
            }
            return intervals(std::move(v));
        }
        case CarrierKind::Product: {
            std::vector<std::pair<SetExpr, SetExpr>> parts;
            for (const auto& p : pts) {
                if (p.kind != PointKind::Pair) throw Error(ErrorKind::UnrepresentablePoint, p.str());
                parts.emplace_back(of_points(c.left(), {p.pair[0]}), of_points(c.right(), {p.pair[1]}));
            }
            return normalize_boxes(c, parts);
        }
    }
    return empty(c);
}

// ---------------------------------------------------------------------------
// Accessors

const std::vector<std::size_t>& SetExpr::enum_indices() const { return data_->enum_idx; }
const std::vector<std::uint64_t>& SetExpr::nat_elements() const { return data_->nat; }
bool SetExpr::nat_complemented() const { return data_->co; }
const std::vector<Interval>& SetExpr::interval_list() const { return data_->ivs; }
const std::vector<Box>& SetExpr::box_list() const { return data_->boxes; }

bool SetExpr::is_empty() const {
    switch (carrier_.kind()) {
        case CarrierKind::FiniteEnum: return data_->enum_idx.empty();
        case CarrierKind::NatFC: return !data_->co && data_->nat.empty();
        case CarrierKind::QLine: return data_->ivs.empty();
        case CarrierKind::Product: return data_->boxes.empty();
    }
    return true;
}

bool SetExpr::is_full() const { return *this == full(carrier_); }

std::optional<std::size_t> SetExpr::finite_size() const {
    switch (carrier_.kind()) {
        case CarrierKind::FiniteEnum: return data_->enum_idx.size();
        case CarrierKind::NatFC:
            if (data_->co) return std::nullopt;
            return data_->nat.size();
        case CarrierKind::QLine:
            for (const auto& iv : data_->ivs)
                if (!iv.is_degenerate()) return std::nullopt;
            return data_->ivs.size();
        case CarrierKind::Product: {
            std::size_t total = 0;
            for (const auto& b : data_->boxes) {
                auto l = b.left.finite_size();
                auto r = b.right.finite_size();
                if (!l || !r) return std::nullopt;
                total += *l * *r;
            }
            return total;
        }
    }
    return std::nullopt;
}

std::string SetExpr::str() const {
    auto braces = [](const std::vector<std::string>& items) {
        std::string out = "{";
        for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
        return out + "}";
    };
    switch (carrier_.kind()) {
        case CarrierKind::FiniteEnum: {
            std::vector<std::string> names;
            for (auto i : data_->enum_idx) names.push_back(carrier_.atoms()[i]);
            return braces(names);
        }
        case CarrierKind::NatFC: {
            std::vector<std::string> items;
            for (auto n : data_->nat) items.push_back(std::to_string(n));
            return (data_->co ? "co" : "") + braces(items);
        }
        case CarrierKind::QLine: {
            if (data_->ivs.empty()) return "{}";
            std::string out;
            for (std::size_t i = 0; i < data_->ivs.size(); ++i) out += (i ? " u " : "") + data_->ivs[i].str();
            return out;
        }
        case CarrierKind::Product: {
            if (data_->boxes.empty()) return "{}";
            std::string out;
            for (std::size_t i = 0; i < data_->boxes.size(); ++i)
                out += (i ? " u " : "") + ("box(" + data_->boxes[i].left.str() + ", " + data_->boxes[i].right.str() + ")");
            return out;
        }
    }
    return "?";
}

bool operator==(const SetExpr& a, const SetExpr& b) {
    if (!(a.carrier_ == b.carrier_)) return false;
    if (a.data_ == b.data_) return true;
    const auto& x = *a.data_;
    const auto& y = *b.data_;
    return x.enum_idx == y.enum_idx && x.nat == y.nat && x.co == y.co && x.ivs == y.ivs && x.boxes == y.boxes;
}

std::strong_ordering operator<=>(const SetExpr& a, const SetExpr& b) {
    if (a.carrier_.kind() != b.carrier_.kind()) return a.carrier_.kind() <=> b.carrier_.kind();
    const auto& x = *a.data_;
    const auto& y = *b.data_;
    if (auto c = x.enum_idx <=> y.enum_idx; c != 0) return c;
    if (x.co != y.co) return x.co ? std::strong_ordering::greater : std::strong_ordering::less;
    if (auto c = x.nat <=> y.nat; c != 0) return c;
    if (auto c = x.ivs <=> y.ivs; c != 0) return c;
    std::size_t n = std::min(x.boxes.size(), y.boxes.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = x.boxes[i].left <=> y.boxes[i].left; c != 0) return c;
        if (auto c = x.boxes[i].right <=> y.boxes[i].right; c != 0) return c;
    }
    return x.boxes.size() <=> y.boxes.size();
}

// ---------------------------------------------------------------------------
// Boolean algebra

SetExpr unite(const SetExpr& a, const SetExpr& b) {
    require_same(a, b);
    const Carrier& c = a.carrier();
    switch (c.kind()) {
        case CarrierKind::FiniteEnum:
            return SetExpr::atom_indices(c, set_op(a.enum_indices(), b.enum_indices(), [](auto... args) { return std::set_union(args...); }));
        case CarrierKind::NatFC: {
            const auto& x = a.nat_elements();
            const auto& y = b.nat_elements();
            auto U = [](auto... args) { return std::set_union(args...); };
            auto I = [](auto... args) { return std::set_intersection(args...); };
            auto D = [](auto... args) { return std::set_difference(args...); };
            if (!a.nat_complemented() && !b.nat_complemented()) return SetExpr::nat_finite(vec_op(x, y, U));
            if (a.nat_complemented() && b.nat_complemented()) return SetExpr::nat_cofinite(vec_op(x, y, I));
            if (a.nat_complemented()) return SetExpr::nat_cofinite(vec_op(x, y, D));
            return SetExpr::nat_cofinite(vec_op(y, x, D));
        }
        case CarrierKind::QLine: {
            std::vector<Interval> all = a.interval_list();
            all.insert(all.end(), b.interval_list().begin(), b.interval_list().end());
            return SetExpr::intervals(std::move(all));
        }
        case CarrierKind::Product: {
            auto parts = as_pairs(a);
            auto more = as_pairs(b);
            parts.insert(parts.end(), more.begin(), more.end());
            return normalize_boxes(c, parts);
        }
    }
    return a;
}

SetExpr intersect(const SetExpr& a, const SetExpr& b) {
    require_same(a, b);
    const Carrier& c = a.carrier();
    switch (c.kind()) {
        case CarrierKind::FiniteEnum:
            return SetExpr::atom_indices(c, set_op(a.enum_indices(), b.enum_indices(), [](auto... args) { return std::set_intersection(args...); }));
        case CarrierKind::NatFC: {
            const auto& x = a.nat_elements();
            const auto& y = b.nat_elements();
            auto U = [](auto... args) { return std::set_union(args...); };
            auto I = [](auto... args) { return std::set_intersection(args...); };
            auto D = [](auto... args) { return std::set_difference(args...); };
            if (!a.nat_complemented() && !b.nat_complemented()) return SetExpr::nat_finite(vec_op(x, y, I));
            if (a.nat_complemented() && b.nat_complemented()) return SetExpr::nat_cofinite(vec_op(x, y, U));
            if (a.nat_complemented()) return SetExpr::nat_finite(vec_op(y, x, D));
            return SetExpr::nat_finite(vec_op(x, y, D));
        }
        case CarrierKind::QLine: {
            std::vector<Rational> cuts;
            add_cuts(a.interval_list(), cuts);
            add_cuts(b.interval_list(), cuts);
            SetExpr::Data d;
            d.ivs = sweep(cuts, [&](const Rational& x) { return member(a.interval_list(), x) && member(b.interval_list(), x); });
            return make_set(c, std::move(d));
        }
        case CarrierKind::Product: {
            std::vector<std::pair<SetExpr, SetExpr>> parts;
            for (const auto& x : a.box_list())
                for (const auto& y : b.box_list()) parts.emplace_back(intersect(x.left, y.left), intersect(x.right, y.right));
            return normalize_boxes(c, parts);
        }
    }
    return a;
}

SetExpr complement(const SetExpr& a) {
    const Carrier& c = a.carrier();
    switch (c.kind()) {
        case CarrierKind::FiniteEnum:
            return SetExpr::atom_indices(c, set_op(all_indices(c), a.enum_indices(), [](auto... args) { return std::set_difference(args...); }));
        case CarrierKind::NatFC:
            return a.nat_complemented() ? SetExpr::nat_finite(a.nat_elements()) : SetExpr::nat_cofinite(a.nat_elements());
        case CarrierKind::QLine: {
            std::vector<Rational> cuts;
            add_cuts(a.interval_list(), cuts);
            SetExpr::Data d;
            d.ivs = sweep(cuts, [&](const Rational& x) { return !member(a.interval_list(), x); });
            return make_set(c, std::move(d));
        }
        case CarrierKind::Product: {
            std::vector<std::pair<SetExpr, SetExpr>> parts;
            SetExpr covered = SetExpr::empty(c.left());
            for (const auto& b : a.box_list()) {
                parts.emplace_back(b.left, complement(b.right));
                covered = unite(covered, b.left);
            }
            parts.emplace_back(complement(covered), SetExpr::full(c.right()));
            return normalize_boxes(c, parts);
        }
    }
    return a;
}

SetExpr minus(const SetExpr& a, const SetExpr& b) {
    require_same(a, b);
    return intersect(a, complement(b));
}

SetExpr apply_boolean(BoolOp op, const SetExpr& a, const std::optional<SetExpr>& b) {
    if (op == BoolOp::Complement) return complement(a);
    if (!b) throw Error(ErrorKind::CarrierMismatch, "binary operation needs two operands");
    switch (op) {
        case BoolOp::Union: return unite(a, *b);
        case BoolOp::Intersect: return intersect(a, *b);
        case BoolOp::Minus: return minus(a, *b);
        case BoolOp::Complement: break;
    }
    return a;
}

bool is_subset(const SetExpr& a, const SetExpr& b) { return minus(a, b).is_empty(); }
bool are_disjoint(const SetExpr& a, const SetExpr& b) { return intersect(a, b).is_empty(); }

Comparison compare(const SetExpr& a, const SetExpr& b) {
    require_same(a, b);
    Comparison out{Relation::Overlapping, a.is_empty(), b.is_empty()};
    bool ab = is_subset(a, b);
    bool ba = is_subset(b, a);
    if (ab && ba)
        out.relation = Relation::Equal;
    else if (ab)
        out.relation = Relation::ProperSubset;
    else if (ba)
        out.relation = Relation::ProperSuperset;
    else if (are_disjoint(a, b))
        out.relation = Relation::Disjoint;
    return out;
}

std::string to_string(Relation r) {
    switch (r) {
        case Relation::Equal: return "Equal";
        case Relation::ProperSubset: return "ProperSubset";
        case Relation::ProperSuperset: return "ProperSuperset";
        case Relation::Disjoint: return "Disjoint";
        case Relation::Overlapping: return "Overlapping";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Points

bool contains(const SetExpr& s, const Point& x) {
    const Carrier& c = s.carrier();
    auto bad = [&]() { return Error(ErrorKind::UnrepresentablePoint, x.str() + " in " + c.str()); };
    switch (c.kind()) {
        case CarrierKind::FiniteEnum: {
            if (x.kind != PointKind::Atom) throw bad();
            auto i = c.atom_index(x.atom);
            if (i == std::string::npos) throw bad();
            return std::binary_search(s.enum_indices().begin(), s.enum_indices().end(), i);
        }
        case CarrierKind::NatFC: {
            if (x.kind != PointKind::Nat) throw bad();
            bool listed = std::binary_search(s.nat_elements().begin(), s.nat_elements().end(), x.nat);
            return listed != s.nat_complemented();
        }
        case CarrierKind::QLine:
            if (x.kind != PointKind::Rat) throw bad();
            return member(s.interval_list(), x.rat);
        case CarrierKind::Product: {
            if (x.kind != PointKind::Pair) throw bad();
            for (const auto& b : s.box_list())
                if (contains(b.left, x.pair[0])) return contains(b.right, x.pair[1]);
            // still validate the right component
            (void)contains(SetExpr::empty(c.right()), x.pair[1]);
            return false;
        }
    }
    return false;
}

namespace {

Rational random_inside(const Interval& iv, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> den_dist(2, 32);
    std::int64_t d = den_dist(rng);
    std::uniform_int_distribution<std::int64_t> k_dist(1, d - 1);
    std::int64_t k = k_dist(rng);
    if (iv.lo.finite() && iv.hi.finite()) return iv.lo.value + (iv.hi.value - iv.lo.value) * Rational(k, d);
    std::uniform_int_distribution<std::int64_t> off(0, 40);
    Rational step = Rational(off(rng)) + Rational(k, d);
    if (iv.lo.finite()) return iv.lo.value + step;
    if (iv.hi.finite()) return iv.hi.value - step;
    return Rational(off(rng) - 20) + Rational(k, d);
}

}  // namespace

std::vector<Point> enumerate_points(const SetExpr& s, std::size_t n, std::uint64_t seed) {
    std::vector<Point> out;
    if (n == 0 || s.is_empty()) return out;
    const Carrier& c = s.carrier();
    switch (c.kind()) {
        case CarrierKind::FiniteEnum:
            for (auto i : s.enum_indices()) {
                if (out.size() == n) break;
                out.push_back(Point::of_atom(c.atoms()[i]));
            }
            return out;
        case CarrierKind::NatFC:
            if (!s.nat_complemented()) {
                for (auto v : s.nat_elements()) {
                    if (out.size() == n) break;
                    out.push_back(Point::of_nat(v));
                }
            } else {
                for (std::uint64_t v = 0; out.size() < n; ++v)
                    if (!std::binary_search(s.nat_elements().begin(), s.nat_elements().end(), v)) out.push_back(Point::of_nat(v));
            }
            return out;
        case CarrierKind::QLine: {
            std::set<Rational> seen;
            std::vector<Rational> order;
            auto push = [&](const Rational& r) {
                if (order.size() < n && seen.insert(r).second) order.push_back(r);
            };
            for (const auto& iv : s.interval_list()) {
                if (iv.lo_closed) push(iv.lo.value);
                if (iv.hi_closed) push(iv.hi.value);
                if (iv.is_degenerate()) continue;
                if (iv.lo.finite() && iv.hi.finite())
                    push((iv.lo.value + iv.hi.value) / Rational(2));
                else if (iv.lo.finite())
                    push(iv.lo.value + Rational(1));
                else if (iv.hi.finite())
                    push(iv.hi.value - Rational(1));
                else
                    push(Rational(0));
            }
            std::mt19937_64 rng(seed);
            std::vector<Interval> open_parts;
            for (const auto& iv : s.interval_list())
                if (!iv.is_degenerate()) open_parts.push_back(iv);
            for (std::size_t guard = 0; order.size() < n && !open_parts.empty() && guard < 64 * n + 64; ++guard) {
                const auto& iv = open_parts[guard % open_parts.size()];
                Rational r = random_inside(iv, rng);
                if (iv.contains(r)) push(r);
            }
            for (const auto& r : order) out.push_back(Point::of_rat(r));
            return out;
        }
        case CarrierKind::Product: {
            std::set<Point> seen;
            for (const auto& b : s.box_list()) {
                auto ls = enumerate_points(b.left, n, seed);
                auto rs = enumerate_points(b.right, n, seed + 1);
                // interleave so that few-point requests still spread across both factors
                for (std::size_t sum = 0; sum < ls.size() + rs.size() && out.size() < n; ++sum)
                    for (std::size_t i = 0; i <= sum && out.size() < n; ++i) {
                        std::size_t j = sum - i;
                        if (i < ls.size() && j < rs.size()) {
                            Point p = Point::of_pair(ls[i], rs[j]);
                            if (seen.insert(p).second) out.push_back(p);
                        }
                    }
                if (out.size() == n) break;
            }
            return out;
        }
    }
    return out;
}

std::optional<std::vector<Point>> finite_points(const SetExpr& s) {
    auto size = s.finite_size();
    if (!size) return std::nullopt;
    auto pts = enumerate_points(s, *size);
    std::sort(pts.begin(), pts.end());
    return pts;
}

void collect_constants(const SetExpr& s, std::vector<Rational>& out) {
    switch (s.carrier().kind()) {
        case CarrierKind::FiniteEnum: return;
        case CarrierKind::NatFC:
            for (auto v : s.nat_elements()) out.emplace_back(static_cast<std::int64_t>(v));
            return;
        case CarrierKind::QLine:
            add_cuts(s.interval_list(), out);
            return;
        case CarrierKind::Product:
            for (const auto& b : s.box_list()) {
                collect_constants(b.left, out);
                collect_constants(b.right, out);
            }
            return;
    }
}

SetExpr interval_closure(const SetExpr& s) {
    if (s.carrier().kind() != CarrierKind::QLine) return s;
    std::vector<Interval> v = s.interval_list();
    for (auto& iv : v) {
        iv.lo_closed = iv.lo.finite();
        iv.hi_closed = iv.hi.finite();
    }
    return SetExpr::intervals(std::move(v));
}

SetExpr interval_interior(const SetExpr& s) {
    if (s.carrier().kind() != CarrierKind::QLine) return s;
    std::vector<Interval> v;
    for (auto iv : s.interval_list()) {
        iv.lo_closed = false;
        iv.hi_closed = false;
        v.push_back(iv);
    }
    return SetExpr::intervals(std::move(v));
}

SetExpr affine_image(const SetExpr& s, const Rational& p, const Rational& q) {
    if (s.carrier().kind() != CarrierKind::QLine) throw Error(ErrorKind::CarrierMismatch, "affine image needs qline");
    if (s.is_empty()) return s;
    if (p == Rational(0)) return SetExpr::interval(Interval::point(q));
    auto map = [&](const Bound& b) {
        if (b.finite()) return Bound::at(p * b.value + q);
        bool neg = (b.kind == Bound::Kind::NegInf) == (p > Rational(0));
        return neg ? Bound::neg_inf() : Bound::pos_inf();
    };
    std::vector<Interval> v;
    for (const auto& iv : s.interval_list()) {
        if (p > Rational(0))
            v.push_back({map(iv.lo), iv.lo_closed, map(iv.hi), iv.hi_closed});
        else
            v.push_back({map(iv.hi), iv.hi_closed, map(iv.lo), iv.lo_closed});
    }
    return SetExpr::intervals(std::move(v));
}

SetExpr affine_preimage(const SetExpr& s, const Rational& p, const Rational& q) {
    if (p == Rational(0)) throw Error(ErrorKind::InvalidMap, "affine preimage with zero slope");
    Rational inv = Rational(1) / p;
    return affine_image(s, inv, -q * inv);
}

SetExpr product_slice(const SetExpr& s, const Point& x) {
    const Carrier& c = s.carrier();
    if (c.kind() != CarrierKind::Product) throw Error(ErrorKind::CarrierMismatch, "slice of non-product set");
    for (const auto& b : s.box_list())
        if (contains(b.left, x)) return b.right;
    return SetExpr::empty(c.right());
}

SetExpr project(const SetExpr& s, int factor) {
    const Carrier& c = s.carrier();
    if (c.kind() != CarrierKind::Product) throw Error(ErrorKind::CarrierMismatch, "projection of non-product set");
    SetExpr out = SetExpr::empty(factor == 0 ? c.left() : c.right());
    for (const auto& b : s.box_list()) out = unite(out, factor == 0 ? b.left : b.right);
    return out;
}

}  // namespace gtskit

#include "gtskit/maps.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gtskit/errors.hpp"

namespace gtskit {

namespace {

[[noreturn]] void bad_map(const std::string& name, const std::string& what) {
    throw Error(ErrorKind::InvalidMap, (name.empty() ? std::string("map") : name) + ": " + what);
}

std::vector<std::uint64_t> below(std::uint64_t n) {
    std::vector<std::uint64_t> v;
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(i);
    return v;
}

const Point* table_lookup(const std::vector<std::pair<Point, Point>>& t, const Point& x) {
    for (const auto& [a, b] : t)
        if (a == x) return &b;
    return nullptr;
}

}  // namespace

Point apply(const SpaceMap& f, const Point& x) {
    const auto& r = f.rule;
    switch (r.kind) {
        case MapRule::Kind::Identity: return x;
        case MapRule::Kind::FiniteTable: {
            auto* y = table_lookup(r.table, x);
            if (!y) bad_map(f.name, "no table entry for " + x.str());
            return *y;
        }
        case MapRule::Kind::PiecewiseAffine:
            for (const auto& p : r.pieces)
                if (contains(p.domain, x)) return Point::of_rat(p.p * x.rat + p.q);
            bad_map(f.name, x.str() + " is outside every affine piece");
        case MapRule::Kind::NatShift: return Point::of_nat(x.nat + r.shift);
        case MapRule::Kind::NatPermutation: {
            auto* y = table_lookup(r.table, x);
            return y ? *y : x;
        }
        case MapRule::Kind::Projection: return x.pair.at(static_cast<std::size_t>(r.factor));
        case MapRule::Kind::Pairing: return Point::of_pair(apply(*r.first, x), apply(*r.second, x));
        case MapRule::Kind::Constant: return r.constant;
    }
    return x;
}

SetExpr image(const SpaceMap& f, const SetExpr& s0) {
    SetExpr s = intersect(s0, f.domain->points);
    const auto& r = f.rule;
    const Carrier& cc = f.codomain->carrier;
    auto pointwise = [&]() {
        auto pts = finite_points(s);
        if (!pts) throw Error(ErrorKind::Unrepresentable, "image of an infinite set under " + f.name);
        std::vector<Point> out;
        for (const auto& p : *pts) out.push_back(apply(f, p));
        return SetExpr::of_points(cc, out);
    };
    switch (r.kind) {
        case MapRule::Kind::Identity: return s;
        case MapRule::Kind::FiniteTable: return pointwise();
        case MapRule::Kind::PiecewiseAffine: {
            SetExpr out = SetExpr::empty(cc);
            for (const auto& p : r.pieces) out = unite(out, affine_image(intersect(s, p.domain), p.p, p.q));
            return out;
        }
        case MapRule::Kind::NatShift: {
            std::vector<std::uint64_t> e;
            for (auto v : s.nat_elements()) e.push_back(v + r.shift);
            if (!s.nat_complemented()) return SetExpr::nat_finite(e);
            for (std::uint64_t i = 0; i < r.shift; ++i) e.push_back(i);
            return SetExpr::nat_cofinite(e);
        }
        case MapRule::Kind::NatPermutation: {
            std::vector<std::uint64_t> e;
            for (auto v : s.nat_elements()) e.push_back(apply(f, Point::of_nat(v)).nat);
            return s.nat_complemented() ? SetExpr::nat_cofinite(e) : SetExpr::nat_finite(e);
        }
        case MapRule::Kind::Projection: return project(s, r.factor);
        case MapRule::Kind::Pairing: return pointwise();
        case MapRule::Kind::Constant: return s.is_empty() ? SetExpr::empty(cc) : SetExpr::of_points(cc, {r.constant});
    }
    return s;
}

SetExpr preimage(const SpaceMap& f, const SetExpr& t) {
    const auto& r = f.rule;
    const SetExpr& dp = f.domain->points;
    const Carrier& dc = f.domain->carrier;
    if (!(t.carrier() == f.codomain->carrier)) throw Error(ErrorKind::CarrierMismatch, "preimage argument not on the codomain");
    switch (r.kind) {
        case MapRule::Kind::Identity: return intersect(t, dp);
        case MapRule::Kind::FiniteTable: {
            std::vector<Point> out;
            for (const auto& [a, b] : r.table)
                if (contains(dp, a) && contains(t, b)) out.push_back(a);
            return SetExpr::of_points(dc, out);
        }
        case MapRule::Kind::PiecewiseAffine: {
            SetExpr out = SetExpr::empty(dc);
            for (const auto& p : r.pieces) {
                if (p.p == Rational(0)) {
                    if (contains(t, Point::of_rat(p.q))) out = unite(out, p.domain);
                } else {
                    out = unite(out, intersect(p.domain, affine_preimage(t, p.p, p.q)));
                }
            }
            return intersect(out, dp);
        }
        case MapRule::Kind::NatShift: {
            std::vector<std::uint64_t> e;
            for (auto v : t.nat_elements())
                if (v >= r.shift) e.push_back(v - r.shift);
            return intersect(t.nat_complemented() ? SetExpr::nat_cofinite(e) : SetExpr::nat_finite(e), dp);
        }
        case MapRule::Kind::NatPermutation: {
            std::vector<std::uint64_t> e;
            for (auto v : t.nat_elements()) {
                std::uint64_t pre = v;
                for (const auto& [a, b] : r.table)
                    if (b.nat == v) pre = a.nat;
                e.push_back(pre);
            }
            return intersect(t.nat_complemented() ? SetExpr::nat_cofinite(e) : SetExpr::nat_finite(e), dp);
        }
        case MapRule::Kind::Projection: {
            SetExpr b = r.factor == 0 ? SetExpr::box(t, SetExpr::full(dc.right())) : SetExpr::box(SetExpr::full(dc.left()), t);
            return intersect(b, dp);
        }
        case MapRule::Kind::Pairing: {
            SetExpr out = SetExpr::empty(dc);
            for (const auto& b : t.box_list())
                out = unite(out, intersect(preimage(*r.first, b.left), preimage(*r.second, b.right)));
            return out;
        }
        case MapRule::Kind::Constant: return contains(t, r.constant) ? dp : SetExpr::empty(dc);
    }
    return t;
}

bool acts_as_identity(const SpaceMap& f) {
    if (!(f.domain->carrier == f.codomain->carrier)) return false;
    const auto& r = f.rule;
    switch (r.kind) {
        case MapRule::Kind::Identity: return true;
        case MapRule::Kind::FiniteTable:
        case MapRule::Kind::NatPermutation:
            return std::all_of(r.table.begin(), r.table.end(), [](const auto& e) { return e.first == e.second; });
        case MapRule::Kind::PiecewiseAffine:
            return std::all_of(r.pieces.begin(), r.pieces.end(), [](const auto& p) { return p.p == Rational(1) && p.q == Rational(0); });
        case MapRule::Kind::NatShift: return r.shift == 0;
        default: return false;
    }
}

FamilyExpr preimage_family(const SpaceMap& f, const FamilyExpr& fam) {
    const auto& r = f.rule;
    const Carrier& dc = f.domain->carrier;
    std::vector<SetExpr> fin;
    for (const auto& s : fam.finite_part()) fin.push_back(preimage(f, s));
    std::vector<Stream> streams;
    for (const auto& st : fam.streams()) {
        if (acts_as_identity(f)) {
            if (f.domain->points.is_full())
                streams.push_back(st);
            else
                streams.push_back(Stream::inter(st, Stream::constant(f.domain->points)));
            continue;
        }
        if (r.kind == MapRule::Kind::Constant) {
            SetExpr u = st.union_all();
            if (contains(u, r.constant)) fin.push_back(f.domain->points);
            bool some_miss = st.is_monotone() ? !contains(st.member(st.start()), r.constant)
                                              : !contains(st.singles_q(), r.constant);
            if (some_miss) fin.push_back(SetExpr::empty(dc));
            continue;
        }
        if ((r.kind == MapRule::Kind::NatShift || r.kind == MapRule::Kind::NatPermutation) && st.has_singletons()) {
            SetExpr p = preimage(f, intersect(st.singles_p(), SetExpr::nat_cofinite(below(st.start()))));
            SetExpr q = preimage(f, st.singles_q());
            streams.push_back(Stream::unite(Stream::inter(Stream::of(StreamSchema::singletons()), Stream::constant(p)),
                                            Stream::constant(q)));
            continue;
        }
        throw Error(ErrorKind::Unrepresentable, "stream " + st.str() + " cannot be pulled back along " + f.name);
    }
    std::vector<SetExpr> uniq;
    for (const auto& s : fin)
        if (std::find(uniq.begin(), uniq.end(), s) == uniq.end()) uniq.push_back(s);
    return FamilyExpr(dc, uniq, streams);
}

bool is_injective(const SpaceMap& f) {
    if (auto pts = finite_points(f.domain->points)) {
        std::set<Point> seen;
        for (const auto& p : *pts)
            if (!seen.insert(apply(f, p)).second) return false;
        return true;
    }
    const auto& r = f.rule;
    switch (r.kind) {
        case MapRule::Kind::Identity:
        case MapRule::Kind::NatShift:
        case MapRule::Kind::NatPermutation: return true;
        case MapRule::Kind::PiecewiseAffine: {
            SetExpr seen = SetExpr::empty(f.codomain->carrier);
            for (const auto& p : r.pieces) {
                SetExpr d = intersect(p.domain, f.domain->points);
                if (p.p == Rational(0) && d.finite_size().value_or(2) > 1) return false;
                SetExpr im = affine_image(d, p.p, p.q);
                if (!are_disjoint(seen, im)) return false;
                seen = unite(seen, im);
            }
            return true;
        }
        case MapRule::Kind::Projection: {
            SetExpr other = project(f.domain->points, 1 - r.factor);
            return other.finite_size().value_or(2) <= 1;
        }
        case MapRule::Kind::Pairing: return is_injective(*r.first) || is_injective(*r.second);
        default: return false;
    }
}

bool is_surjective(const SpaceMap& f) {
    try {
        return image(f, f.domain->points) == f.codomain->points;
    } catch (const Error&) {
        return false;
    }
}

std::optional<SpaceMap> inverse_map(const SpaceMap& f) {
    if (!is_injective(f) || !is_surjective(f)) return std::nullopt;
    const auto& r = f.rule;
    MapRule inv;
    std::string name = f.name + "^-1";
    if (acts_as_identity(f)) return identity_map(f.codomain, f.domain);
    switch (r.kind) {
        case MapRule::Kind::FiniteTable:
        case MapRule::Kind::NatPermutation:
            inv.kind = r.kind;
            for (const auto& [a, b] : r.table) inv.table.emplace_back(b, a);
            return make_map(name, f.codomain, f.domain, inv);
        case MapRule::Kind::PiecewiseAffine:
            inv.kind = r.kind;
            for (const auto& p : r.pieces) {
                if (p.p == Rational(0)) {
                    inv.pieces.push_back({SetExpr::interval(Interval::point(p.q)), Rational(0), enumerate_points(p.domain, 1).at(0).rat});
                } else {
                    Rational ip = Rational(1) / p.p;
                    inv.pieces.push_back({affine_image(p.domain, p.p, p.q), ip, -p.q * ip});
                }
            }
            return make_map(name, f.codomain, f.domain, inv);
        default: break;
    }
    if (auto pts = finite_points(f.domain->points)) {
        inv.kind = MapRule::Kind::FiniteTable;
        for (const auto& p : *pts) inv.table.emplace_back(apply(f, p), p);
        if (f.codomain->carrier.kind() == CarrierKind::FiniteEnum) return make_map(name, f.codomain, f.domain, inv);
    }
    return std::nullopt;
}

SpaceMap make_map(std::string name, Space domain, Space codomain, MapRule rule) {
    SpaceMap f{std::move(name), std::move(domain), std::move(codomain), std::move(rule)};
    const auto& d = *f.domain;
    const auto& c = *f.codomain;
    const auto& r = f.rule;
    switch (r.kind) {
        case MapRule::Kind::Identity:
            if (!(d.carrier == c.carrier)) bad_map(f.name, "identity between different carriers");
            if (!is_subset(d.points, c.points)) bad_map(f.name, "identity leaves the codomain");
            break;
        case MapRule::Kind::FiniteTable: {
            auto pts = finite_points(d.points);
            if (!pts) bad_map(f.name, "table map needs finitely many domain points");
            for (const auto& p : *pts) {
                auto* y = table_lookup(r.table, p);
                if (!y) bad_map(f.name, "no table entry for " + p.str());
                bool in = false;
                try {
                    in = contains(c.points, *y);
                } catch (const Error&) {
                }
                if (!in) bad_map(f.name, y->str() + " is not a point of " + c.name);
            }
            break;
        }
        case MapRule::Kind::PiecewiseAffine: {
            if (d.carrier.kind() != CarrierKind::QLine || c.carrier.kind() != CarrierKind::QLine)
                bad_map(f.name, "affine pieces need qline carriers");
            SetExpr cover = SetExpr::empty(d.carrier);
            for (const auto& p : r.pieces) {
                if (!are_disjoint(cover, p.domain)) bad_map(f.name, "affine pieces overlap");
                cover = unite(cover, p.domain);
                if (!is_subset(affine_image(intersect(p.domain, d.points), p.p, p.q), c.points))
                    bad_map(f.name, "piece on " + p.domain.str() + " leaves the codomain");
            }
            if (!is_subset(d.points, cover)) bad_map(f.name, "affine pieces do not cover the domain");
            break;
        }
        case MapRule::Kind::NatShift:
        case MapRule::Kind::NatPermutation: {
            if (d.carrier.kind() != CarrierKind::NatFC || c.carrier.kind() != CarrierKind::NatFC)
                bad_map(f.name, "nat rules need nat carriers");
            if (r.kind == MapRule::Kind::NatPermutation) {
                std::set<Point> from, to;
                for (const auto& [a, b] : r.table) {
                    if (a.kind != PointKind::Nat || b.kind != PointKind::Nat) bad_map(f.name, "permutation entries must be naturals");
                    if (!from.insert(a).second || !to.insert(b).second) bad_map(f.name, "permutation is not a bijection");
                }
                if (from != to) bad_map(f.name, "permutation must permute its support");
            }
            if (!is_subset(image(f, d.points), c.points)) bad_map(f.name, "image leaves the codomain");
            break;
        }
        case MapRule::Kind::Projection: {
            if (d.carrier.kind() != CarrierKind::Product) bad_map(f.name, "projection needs a product domain");
            const Carrier& fc = r.factor == 0 ? d.carrier.left() : d.carrier.right();
            if (!(fc == c.carrier)) bad_map(f.name, "projection codomain does not match the factor");
            if (!is_subset(project(d.points, r.factor), c.points)) bad_map(f.name, "projection leaves the codomain");
            break;
        }
        case MapRule::Kind::Pairing: {
            if (!r.first || !r.second) bad_map(f.name, "pairing needs two maps");
            if (!(c.carrier == Carrier::product(r.first->codomain->carrier, r.second->codomain->carrier)))
                bad_map(f.name, "pairing codomain is not the product of the components");
            if (!(r.first->domain->carrier == d.carrier) || !(r.second->domain->carrier == d.carrier))
                bad_map(f.name, "pairing components have a different domain");
            break;
        }
        case MapRule::Kind::Constant: {
            bool in = false;
            try {
                in = contains(c.points, r.constant);
            } catch (const Error&) {
            }
            if (!in) bad_map(f.name, r.constant.str() + " is not a point of " + c.name);
            break;
        }
    }
    return f;
}

SpaceMap identity_map(Space domain, Space codomain) {
    MapRule r;
    r.kind = MapRule::Kind::Identity;
    std::string name = "id:" + domain->name + "->" + codomain->name;
    return make_map(name, std::move(domain), std::move(codomain), r);
}

SpaceMap projection_map(Space product, Space factor_space, int factor) {
    MapRule r;
    r.kind = MapRule::Kind::Projection;
    r.factor = factor;
    std::string name = "pr" + std::to_string(factor + 1) + ":" + product->name;
    return make_map(name, std::move(product), std::move(factor_space), r);
}

SpaceMap pairing_map(const SpaceMap& f, const SpaceMap& g, Space product) {
    MapRule r;
    r.kind = MapRule::Kind::Pairing;
    r.first = std::make_shared<const SpaceMap>(f);
    r.second = std::make_shared<const SpaceMap>(g);
    return make_map("(" + f.name + "," + g.name + ")", f.domain, std::move(product), r);
}

SpaceMap table_map(Space domain, Space codomain, std::vector<std::pair<Point, Point>> table) {
    MapRule r;
    r.kind = MapRule::Kind::FiniteTable;
    r.table = std::move(table);
    return make_map("table", std::move(domain), std::move(codomain), r);
}

SpaceMap affine_map(Space domain, Space codomain, std::vector<AffinePiece> pieces) {
    MapRule r;
    r.kind = MapRule::Kind::PiecewiseAffine;
    r.pieces = std::move(pieces);
    return make_map("affine", std::move(domain), std::move(codomain), r);
}

SpaceMap constant_map(Space domain, Space codomain, Point value) {
    MapRule r;
    r.kind = MapRule::Kind::Constant;
    r.constant = std::move(value);
    return make_map("const", std::move(domain), std::move(codomain), r);
}

void map_constants(const SpaceMap& f, std::vector<Rational>& out) {
    const auto& r = f.rule;
    collect_constants(f.domain->points, out);
    collect_constants(f.codomain->points, out);
    switch (r.kind) {
        case MapRule::Kind::PiecewiseAffine:
            for (const auto& p : r.pieces) {
                std::vector<Rational> ends;
                collect_constants(p.domain, ends);
                for (const auto& e : ends) out.push_back(p.p * e + p.q);
                if (p.p == Rational(0)) out.push_back(p.q);
            }
            break;
        case MapRule::Kind::NatShift: out.emplace_back(static_cast<std::int64_t>(r.shift)); break;
        case MapRule::Kind::NatPermutation:
            for (const auto& [a, b] : r.table) {
                out.emplace_back(static_cast<std::int64_t>(a.nat));
                out.emplace_back(static_cast<std::int64_t>(b.nat));
            }
            break;
        case MapRule::Kind::Constant:
            if (r.constant.kind == PointKind::Rat) out.push_back(r.constant.rat);
            if (r.constant.kind == PointKind::Nat) out.emplace_back(static_cast<std::int64_t>(r.constant.nat));
            break;
        case MapRule::Kind::Pairing:
            map_constants(*r.first, out);
            map_constants(*r.second, out);
            break;
        default: break;
    }
}

std::vector<SetExpr> representative_opens(const GtsPresentation& x, const std::vector<Rational>& critical) {
    if (x.points.is_finite()) {
        try {
            return all_opens(x);
        } catch (const Error&) {
        }
    }
    std::vector<SetExpr> cand;
    switch (x.carrier.kind()) {
        case CarrierKind::QLine: {
            std::vector<Rational> v = critical;
            collect_constants(x.points, v);
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            std::vector<Rational> vals = v;
            if (v.empty()) vals.push_back(Rational(0));
            else {
                vals.push_back(v.front() - Rational(1));
                vals.push_back(v.back() + Rational(1));
                for (std::size_t i = 0; i + 1 < v.size(); ++i) vals.push_back((v[i] + v[i + 1]) / Rational(2));
            }
            std::sort(vals.begin(), vals.end());
            std::vector<Bound> bs = {Bound::neg_inf()};
            for (const auto& r : vals) bs.push_back(Bound::at(r));
            bs.push_back(Bound::pos_inf());
            for (std::size_t i = 0; i < bs.size(); ++i)
                for (std::size_t j = i + 1; j < bs.size(); ++j) {
                    cand.push_back(SetExpr::interval(Interval::open(bs[i], bs[j])));
                    if (x.opens.kind == OpensSpec::Kind::AllSets && bs[i].finite() && bs[j].finite())
                        cand.push_back(SetExpr::interval(Interval::closed(bs[i].value, bs[j].value)));
                }
            if (x.opens.kind == OpensSpec::Kind::AllSets)
                for (const auto& r : vals) cand.push_back(SetExpr::interval(Interval::point(r)));
            break;
        }
        case CarrierKind::NatFC: {
            std::uint64_t c = 2;
            std::vector<Rational> v = critical;
            collect_constants(x.points, v);
            for (const auto& r : v)
                if (r >= Rational(0)) c = std::max<std::uint64_t>(c, static_cast<std::uint64_t>(r.ceil()) + 2);
            cand.push_back(SetExpr::full(x.carrier));
            for (std::uint64_t j = 0; j <= c; ++j) {
                cand.push_back(SetExpr::nat_finite({j}));
                cand.push_back(SetExpr::nat_range(0, j));
                cand.push_back(SetExpr::nat_cofinite({j}));
                cand.push_back(SetExpr::nat_cofinite(below(j + 1)));
            }
            break;
        }
        case CarrierKind::Product:
            if (x.opens.kind == OpensSpec::Kind::ProductOpens) {
                auto l = representative_opens(*x.opens.parts[0], critical);
                auto r = representative_opens(*x.opens.parts[1], critical);
                for (const auto& a : l)
                    for (const auto& b : r) cand.push_back(SetExpr::box(a, b));
            } else if (x.opens.kind == OpensSpec::Kind::Summands) {
                for (std::size_t i = 0; i < x.opens.parts.size(); ++i)
                    for (const auto& s : representative_opens(*x.opens.parts[i], critical))
                        cand.push_back(SetExpr::box(SetExpr::atom_indices(x.carrier.left(), {i}), s));
            }
            break;
        case CarrierKind::FiniteEnum: break;
    }
    if (x.opens.kind == OpensSpec::Kind::Glued)
        for (const auto& part : x.opens.parts)
            for (const auto& s : representative_opens(*part, critical)) cand.push_back(s);
    std::vector<SetExpr> out;
    for (const auto& s : cand) {
        SetExpr t = intersect(s, x.points);
        if (std::find(out.begin(), out.end(), t) != out.end()) continue;
        if (is_open(x, t)) out.push_back(t);
    }
    return out;
}

std::optional<SetExpr> preimage_not_open(const SpaceMap& f) {
    std::vector<Rational> consts;
    map_constants(f, consts);
    for (const auto& o : representative_opens(*f.codomain, consts))
        if (!is_open(*f.domain, preimage(f, o))) return o;
    return std::nullopt;
}

namespace {

// Locally essentially finite over a base of finite sets: every family is
// essentially finite on each finite base member.
bool admits_every_family(const GtsPresentation& x) {
    if (x.policy.kind == CoveragePolicy::Kind::All) return true;
    if (x.policy.kind != CoveragePolicy::Kind::LocallyEssFin || !x.policy.base) return false;
    for (const auto& s : x.policy.base->finite_part())
        if (!s.is_finite()) return false;
    for (const auto& st : x.policy.base->streams())
        if (!st.has_singletons() || !st.singles_q().is_finite()) return false;
    return true;
}

}  // namespace

Verdict check_strict_continuity(const SpaceMap& f, const std::vector<FamilyExpr>& probes) {
    const auto& dom = *f.domain;
    const auto& cod = *f.codomain;
    for (const auto& p : probes) {
        bool ok = false;
        try {
            ok = is_admissible(cod, p).yes();
        } catch (const Error& e) {
            throw Error(ErrorKind::NonAdmissibleProbe, p.str() + ": " + e.what());
        }
        if (!ok) throw Error(ErrorKind::NonAdmissibleProbe, p.str() + " is not admissible in " + cod.name);
    }
    if (auto bad = preimage_not_open(f)) {
        Verdict v = Verdict::make(Tri::No, "preimage of the open set " + bad->str() + " is not open");
        v.set = *bad;
        return v;
    }
    if (probes.empty()) {
        bool same = f.domain == f.codomain ||
                    (dom.points == cod.points && dom.policy == cod.policy && dom.opens.str() == cod.opens.str());
        if (same && acts_as_identity(f))
            return Verdict::make(Tri::Yes, "identity of one presentation: every family pulls back to itself");
        if (dom.points.is_finite())
            return Verdict::make(Tri::Yes, "preimages of opens are open and the domain is finite, so every pulled-back family is essentially finite");
        if (cod.points.is_finite())
            return Verdict::make(Tri::Yes, "codomain is finite, so every pulled-back family has finitely many distinct members");
        if (cod.policy.kind == CoveragePolicy::Kind::EssFin)
            return Verdict::make(Tri::Yes, "codomain is small: a finite subcover pulls back to a finite subcover of the preimage family");
        if (admits_every_family(dom))
            return Verdict::make(Tri::Yes, "preimages of opens are open and the domain admits every open family");
    }
    std::vector<FamilyExpr> list = probes.empty() ? library_families(cod, cod.points) : probes;
    std::size_t checked = 0;
    for (const auto& p : list) {
        FamilyExpr pre(dom.carrier);
        try {
            pre = preimage_family(f, p);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Unrepresentable) continue;
            throw;
        }
        ++checked;
        Verdict a = is_admissible(dom, pre);
        if (a.no()) {
            Verdict v = Verdict::make(Tri::No, "admissible family " + p.str() + " pulls back to a non-admissible family");
            v.family = p;
            return v;
        }
    }
    if (checked == 0) return Verdict::make(Tri::Unknown, "no probe could be pulled back");
    return Verdict::make(Tri::Checked, std::to_string(checked) + " probe families pulled back to admissible families");
}

}  // namespace gtskit

#include "gtskit/topo_props.hpp"

#include <algorithm>

#include "gtskit/constructions.hpp"
#include "gtskit/errors.hpp"

namespace gtskit {

namespace {

using Mask = std::uint64_t;

// Finite point set with its opens as bitmasks over the listed points.
struct FiniteView {
    Carrier carrier;
    std::vector<Point> pts;
    std::vector<Mask> opens;
    Mask full = 0;

    Mask mask(const SetExpr& s) const {
        Mask m = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (contains(s, pts[i])) m |= Mask{1} << i;
        return m;
    }
    SetExpr set(Mask m) const {
        std::vector<Point> out;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (m & (Mask{1} << i)) out.push_back(pts[i]);
        return SetExpr::of_points(carrier, out);
    }
    bool is_open(Mask m) const { return std::find(opens.begin(), opens.end(), m) != opens.end(); }
    // Smallest open superset (opens of a finite space are closed under finite intersections).
    Mask hull(Mask m) const {
        Mask h = full;
        for (Mask o : opens)
            if ((o & m) == m) h &= o;
        return h;
    }
    std::vector<Mask> clopens() const {
        std::vector<Mask> out;
        for (Mask o : opens)
            if (is_open(full & ~o)) out.push_back(o);
        return out;
    }
};

std::optional<FiniteView> finite_view(const GtsPresentation& x) {
    auto pts = finite_points(x.points);
    if (!pts || pts->size() > 16) return std::nullopt;
    FiniteView v{x.carrier, *pts, {}, 0};
    v.full = pts->size() == 64 ? ~Mask{0} : (Mask{1} << pts->size()) - 1;
    for (const auto& o : all_opens(x)) v.opens.push_back(v.mask(o));
    std::sort(v.opens.begin(), v.opens.end());
    v.opens.erase(std::unique(v.opens.begin(), v.opens.end()), v.opens.end());
    return v;
}

// Clopen-partition fixpoint: refine {points} by every clopen until stable.
std::vector<Mask> clopen_partition(const FiniteView& v) {
    std::vector<Mask> blocks = {v.full};
    if (v.full == 0) return {};
    bool changed = true;
    auto cl = v.clopens();
    while (changed) {
        changed = false;
        std::vector<Mask> next;
        for (Mask b : blocks) {
            bool split = false;
            for (Mask c : cl) {
                Mask in = b & c;
                if (in && in != b) {
                    next.push_back(in);
                    next.push_back(b & ~c);
                    split = changed = true;
                    break;
                }
            }
            if (!split) next.push_back(b);
        }
        blocks = next;
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

FamilyExpr family_of(const FiniteView& v, const std::vector<Mask>& blocks) {
    std::vector<SetExpr> out;
    for (Mask b : blocks) out.push_back(v.set(b));
    return FamilyExpr(v.carrier, out);
}

Verdict yes(std::string why) { return Verdict::make(Tri::Yes, std::move(why)); }
Verdict unknown(std::string why) { return Verdict::make(Tri::Unknown, std::move(why)); }
Verdict no_set(std::string why, const SetExpr& s) {
    auto v = Verdict::make(Tri::No, std::move(why));
    v.set = s;
    return v;
}

Verdict all_of(const std::vector<Verdict>& vs, const std::string& what) {
    bool all_yes = true;
    for (const auto& v : vs) {
        if (v.no()) return v;
        if (!v.yes()) all_yes = false;
    }
    return all_yes ? yes(what) : unknown("not decided for every part");
}

Mask bit(std::size_t i) { return Mask{1} << i; }

SeparationReport finite_report(const FiniteView& v) {
    SeparationReport r;
    const std::size_t n = v.pts.size();
    auto pair_set = [&](std::size_t i, std::size_t j) { return v.set(bit(i) | bit(j)); };
    std::vector<Mask> nb(n);
    for (std::size_t i = 0; i < n; ++i) nb[i] = v.hull(bit(i));

    r.weakly_t1 = yes("exhaustive over point pairs");
    r.weakly_hausdorff = yes("exhaustive over point pairs");
    for (std::size_t i = 0; i < n && !r.weakly_t1.no(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && (nb[i] & bit(j))) {
                r.weakly_t1 = no_set("every open containing " + v.pts[i].str() + " contains " + v.pts[j].str(), pair_set(i, j));
                break;
            }
    for (std::size_t i = 0; i < n && !r.weakly_hausdorff.no(); ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nb[i] & nb[j]) {
                r.weakly_hausdorff = no_set(v.pts[i].str() + " and " + v.pts[j].str() + " have no disjoint neighbourhoods", pair_set(i, j));
                break;
            }

    r.strongly_t1 = yes("every singleton complement is open");
    for (std::size_t i = 0; i < n; ++i)
        if (!v.is_open(v.full & ~bit(i))) {
            r.strongly_t1 = no_set("complement of {" + v.pts[i].str() + "} is not open", v.set(v.full & ~bit(i)));
            break;
        }

    // Closed sets and singletons.
    std::vector<Mask> sep;
    for (Mask o : v.opens) sep.push_back(v.full & ~o);
    for (std::size_t i = 0; i < n; ++i) sep.push_back(bit(i));
    std::sort(sep.begin(), sep.end());
    sep.erase(std::unique(sep.begin(), sep.end()), sep.end());
    std::vector<Mask> hulls;
    for (Mask f : sep) hulls.push_back(v.hull(f));

    r.weakly_regular = yes("exhaustive over points and closed sets");
    for (std::size_t i = 0; i < n && !r.weakly_regular.no(); ++i)
        for (std::size_t k = 0; k < sep.size(); ++k)
            if (!(sep[k] & bit(i)) && sep[k] && (nb[i] & hulls[k])) {
                r.weakly_regular = no_set(v.pts[i].str() + " cannot be separated from " + v.set(sep[k]).str(), v.set(sep[k]));
                break;
            }
    r.weakly_normal = yes("exhaustive over pairs of closed sets");
    for (std::size_t a = 0; a < sep.size() && !r.weakly_normal.no(); ++a)
        for (std::size_t b = a + 1; b < sep.size(); ++b)
            if (sep[a] && sep[b] && !(sep[a] & sep[b]) && (hulls[a] & hulls[b])) {
                r.weakly_normal = no_set(v.set(sep[a]).str() + " and " + v.set(sep[b]).str() + " cannot be separated", v.set(sep[a] | sep[b]));
                break;
            }
    return r;
}

Verdict strengthen(const Verdict& weak, const Verdict& st1, const std::string& what) {
    if (weak.no()) return weak;
    if (st1.no()) return st1;
    if (weak.yes() && st1.yes()) return yes(what + ": weak form and strong T1");
    return unknown("weak form or strong T1 undecided");
}

void enforce(SeparationReport& r) {
    if (!r.weakly_t1.yes() && (r.strongly_t1.yes() || r.weakly_hausdorff.yes()))
        r.weakly_t1 = yes("implied by strong T1 or weak Hausdorff");
    r.strongly_hausdorff = strengthen(r.weakly_hausdorff, r.strongly_t1, "strongly Hausdorff");
    r.strongly_regular = strengthen(r.weakly_regular, r.strongly_t1, "strongly regular");
    r.strongly_normal = strengthen(r.weakly_normal, r.strongly_t1, "strongly normal");
}

SeparationReport uniform(const Verdict& v) {
    return {v, v, v, v, v, v, v, v};
}

Tri conj(Tri a, Tri b) {
    if (a == Tri::No || b == Tri::No) return Tri::No;
    if (a == Tri::Yes && b == Tri::Yes) return Tri::Yes;
    return Tri::Unknown;
}

SetExpr tag(const GtsPresentation& sum, std::size_t i, const SetExpr& s) {
    return SetExpr::box(SetExpr::atom_indices(sum.carrier.left(), {i}), s);
}

}  // namespace

std::vector<std::pair<std::string, const Verdict*>> SeparationReport::flags() const {
    return {{"weakly_T1", &weakly_t1},           {"strongly_T1", &strongly_t1},           {"weakly_Hausdorff", &weakly_hausdorff},
            {"strongly_Hausdorff", &strongly_hausdorff}, {"weakly_regular", &weakly_regular}, {"strongly_regular", &strongly_regular},
            {"weakly_normal", &weakly_normal},   {"strongly_normal", &strongly_normal}};
}

Components components(const GtsPresentation& x) {
    auto finish = [&](FamilyExpr fam) {
        Verdict acc;
        bool open = true;
        for (const auto& s : fam.finite_part())
            if (!is_open(x, s)) {
                acc = no_set("component " + s.str() + " is not open", s);
                open = false;
                break;
            }
        if (open) acc = is_admissible(x, fam);
        return Components{std::move(fam), std::move(acc)};
    };
    if (auto v = finite_view(x)) return finish(family_of(*v, clopen_partition(*v)));
    const auto k = x.opens.kind;
    if (x.carrier.kind() == CarrierKind::QLine && k == OpensSpec::Kind::AllCanonicalOpen) {
        std::vector<SetExpr> parts;
        for (const auto& iv : x.points.interval_list()) parts.push_back(SetExpr::interval(iv));
        return finish(FamilyExpr(x.carrier, parts));
    }
    if (x.carrier.kind() == CarrierKind::NatFC && k == OpensSpec::Kind::AllSets) {
        Stream s = Stream::of(StreamSchema::singletons(0));
        if (!x.points.is_full()) s = Stream::inter(s, Stream::constant(x.points));
        return finish(FamilyExpr(x.carrier, {}, {s}));
    }
    if (x.carrier.kind() == CarrierKind::NatFC && k == OpensSpec::Kind::FiniteOrWhole)
        return finish(FamilyExpr(x.carrier, {x.points}));  // infinitely many points: no finite open splits them
    if (k == OpensSpec::Kind::Summands) {
        std::vector<SetExpr> parts;
        for (std::size_t i = 0; i < x.opens.parts.size(); ++i) {
            auto c = components(*x.opens.parts[i]);
            if (!c.classes.is_finite())
                throw Error(ErrorKind::UnsupportedPresentation, "summand " + x.opens.parts[i]->name + " has a stream of components");
            for (const auto& s : c.classes.finite_part()) parts.push_back(tag(x, i, s));
        }
        return finish(FamilyExpr(x.carrier, parts));
    }
    throw Error(ErrorKind::UnsupportedPresentation, "components are not computed for " + x.name);
}

FamilyExpr quasi_components(const GtsPresentation& x) {
    auto v = finite_view(x);
    if (!v) throw Error(ErrorKind::UnsupportedPresentation, "quasi-components need finitely many points");
    auto cl = v->clopens();
    std::vector<Mask> blocks;
    for (std::size_t i = 0; i < v->pts.size(); ++i) {
        Mask q = v->full;
        for (Mask c : cl)
            if (c & bit(i)) q &= c;
        blocks.push_back(q);
    }
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    return family_of(*v, blocks);
}

bool is_connected(const GtsPresentation& x, const SetExpr& s) {
    auto v = finite_view(x);
    if (!v) throw Error(ErrorKind::UnsupportedPresentation, "connectedness is decided on finitely many points");
    Mask c = v->mask(s);
    // S is connected iff its trace topology has no proper nonempty clopen.
    std::vector<Mask> traces;
    for (Mask o : v->opens) traces.push_back(o & c);
    std::sort(traces.begin(), traces.end());
    for (Mask a : traces)
        if (a && a != c && std::binary_search(traces.begin(), traces.end(), c & ~a)) return false;
    return true;
}

SeparationReport separation_report(const GtsPresentation& x, std::uint64_t budget) {
    SeparationReport r;
    const auto k = x.opens.kind;
    if (auto v = finite_view(x)) {
        r = finite_report(*v);
    } else if (k == OpensSpec::Kind::AllSets) {
        r = uniform(yes("every set is open"));
    } else if (x.carrier.kind() == CarrierKind::QLine && k == OpensSpec::Kind::AllCanonicalOpen) {
        // Closed sets are finite unions of closed intervals and points; disjoint
        // ones are split at rational midpoints of the gaps between them.
        r = uniform(yes("interval separation at rational midpoints"));
    } else if (k == OpensSpec::Kind::FiniteOrWhole) {
        auto p = enumerate_points(x.points, 1);
        SetExpr single = SetExpr::of_points(x.carrier, {p.at(0)});
        SetExpr rest = minus(x.points, single);
        r.weakly_t1 = yes("finite sets are open, {x} separates x from y");
        r.weakly_hausdorff = yes("{x} and {y} are disjoint opens");
        r.strongly_t1 = no_set("complement of " + single.str() + " is infinite and proper, hence not open", rest);
        r.weakly_regular = no_set(p[0].str() + " and the closed set " + rest.str() + ": the only open containing it is the whole space", rest);
        r.weakly_normal = no_set(single.str() + " and its complement cannot be separated", rest);
    } else if (k == OpensSpec::Kind::ProductOpens) {
        auto a = separation_report(*x.opens.parts[0], budget);
        auto b = separation_report(*x.opens.parts[1], budget);
        auto both = [&](const Verdict& l, const Verdict& rr, const std::string& what) {
            Tri t = conj(l.value, rr.value);
            if (t == Tri::No) return Verdict::make(Tri::No, "a factor fails: " + (l.no() ? l.reason : rr.reason));
            return Verdict::make(t, t == Tri::Yes ? what + " holds in both factors" : "undecided in a factor");
        };
        r.weakly_t1 = both(a.weakly_t1, b.weakly_t1, "weak T1");
        r.strongly_t1 = both(a.strongly_t1, b.strongly_t1, "strong T1");
        r.weakly_hausdorff = both(a.weakly_hausdorff, b.weakly_hausdorff, "weak Hausdorff");
        r.weakly_regular = unknown("no closed form for products");
        r.weakly_normal = unknown("no closed form for products");
    } else if (k == OpensSpec::Kind::Summands) {
        // Summands are open, so separations inside each summand assemble.
        std::vector<SeparationReport> parts;
        for (const auto& p : x.opens.parts) parts.push_back(separation_report(*p, budget));
        auto pick = [&](Verdict SeparationReport::*field, const std::string& what) {
            std::vector<Verdict> vs;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                Verdict v = parts[i].*field;
                if (v.set) v.set = tag(x, i, *v.set);
                vs.push_back(v);
            }
            return all_of(vs, what + " in every summand");
        };
        r.weakly_t1 = pick(&SeparationReport::weakly_t1, "weak T1");
        r.strongly_t1 = pick(&SeparationReport::strongly_t1, "strong T1");
        r.weakly_hausdorff = pick(&SeparationReport::weakly_hausdorff, "weak Hausdorff");
        r.weakly_regular = pick(&SeparationReport::weakly_regular, "weak regularity");
        r.weakly_normal = pick(&SeparationReport::weakly_normal, "weak normality");
    } else {
        r.weakly_t1 = r.weakly_hausdorff = r.weakly_regular = r.weakly_normal = unknown("no closed form; falsifier only covers strong T1");
        r.strongly_t1 = unknown("no non-open singleton complement among " + std::to_string(budget) + " sampled points");
        for (const auto& p : enumerate_points(x.points, budget)) {
            SetExpr rest = minus(x.points, SetExpr::of_points(x.carrier, {p}));
            if (!is_open(x, rest)) {
                r.strongly_t1 = no_set("complement of {" + p.str() + "} is not open", rest);
                break;
            }
        }
    }
    enforce(r);
    return r;
}

bool implications_hold(const SeparationReport& r) {
    auto implies = [](const Verdict& a, const Verdict& b) { return !a.yes() || b.yes(); };
    return implies(r.strongly_t1, r.weakly_t1) && implies(r.strongly_hausdorff, r.weakly_hausdorff) &&
           implies(r.strongly_hausdorff, r.strongly_t1) && implies(r.strongly_regular, r.weakly_regular) &&
           implies(r.strongly_regular, r.strongly_t1) && implies(r.strongly_normal, r.weakly_normal) &&
           implies(r.strongly_normal, r.strongly_t1) && implies(r.weakly_hausdorff, r.weakly_t1);
}

Verdict is_dense(const GtsPresentation& x, const SetExpr& s) {
    SetExpr closure = SetExpr::empty(x.carrier);
    SetExpr gap = closure;
    try {
        closure = weak_closure_of(x, s);
        gap = weak_interior(x, minus(x.points, s));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::CarrierMismatch) throw;
        throw Error(ErrorKind::UnsupportedCarrier, std::string("weak closure unavailable: ") + e.what());
    }
    if (closure == x.points) return yes("weak closure is every point");
    // An open set missing S: the largest open in the gap, or a basic open inside it.
    auto u = largest_open_in(x, minus(x.points, s));
    if (!u || u->is_empty()) {
        auto p = enumerate_points(gap, 1);
        SetExpr single = SetExpr::of_points(x.carrier, {p.at(0)});
        if (is_open(x, single)) u = single;
        else u = gap;
    }
    return no_set("weak closure is " + closure.str() + "; open set " + u->str() + " misses S", *u);
}

Verdict is_separable(const GtsPresentation& x) {
    return yes("the points of " + x.name + " are countable and dense in themselves");
}

Verdict is_basis(const GtsPresentation& x, const FamilyExpr& b, std::uint64_t budget) {
    require_open_members(x, b);
    auto members = sample_members(b, static_cast<std::size_t>(std::min<std::uint64_t>(budget, 256)));
    std::vector<SetExpr> opens;
    bool exact = false;
    if (auto v = finite_view(x)) {
        opens = all_opens(x);
        exact = true;
    } else {
        std::vector<Rational> consts;
        for (const auto& m : members) collect_constants(m.set, consts);
        opens = representative_opens(x, consts);
    }
    // A finite candidate is exact: B_O is its members inside O.
    const bool finite_b = b.is_finite();
    for (const auto& o : opens) {
        std::vector<SetExpr> inside;
        for (const auto& m : members)
            if (is_subset(m.set, o)) inside.push_back(m.set);
        FamilyExpr bo(x.carrier, inside);
        if (family_union(bo) != o) {
            if (finite_b || exact) return no_set("open " + o.str() + " is not a union of basis members", o);
            return unknown("open " + o.str() + " not covered by the sampled members");
        }
        auto adm = is_admissible(x, bo);
        if (adm.no()) return no_set("basis members inside " + o.str() + " are not admissible", o);
    }
    if (exact) return yes("every open is an admissible union of members (exhaustive)");
    return Verdict::make(Tri::Checked, std::to_string(opens.size()) + " representative opens covered admissibly");
}

Verdict rational_intervals_basis(const GtsPresentation& x) {
    if (x.carrier.kind() != CarrierKind::QLine || x.opens.kind != OpensSpec::Kind::AllCanonicalOpen)
        return unknown("rational intervals are a candidate basis only on interval-open lines");
    return yes("every open is a finite union of rational-endpoint open intervals; finite families are admissible");
}

namespace {

std::vector<SetExpr> domain_opens(const SpaceMap& f) {
    std::vector<Rational> consts;
    map_constants(f, consts);
    return representative_opens(*f.domain, consts);
}

Verdict image_test(const SpaceMap& f, bool closed) {
    const auto& dom = *f.domain;
    const auto& cod = *f.codomain;
    const bool exact = dom.points.is_finite() && cod.points.is_finite();
    try {
        for (const auto& o : domain_opens(f)) {
            SetExpr s = closed ? minus(dom.points, o) : o;
            SetExpr img = image(f, s);
            bool ok = closed ? is_open(cod, minus(cod.points, img)) : is_open(cod, img);
            if (!ok) return no_set(std::string(closed ? "closed set " : "open set ") + s.str() + " has image " + img.str() + " that is not " + (closed ? "closed" : "open"), s);
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Unrepresentable) throw;
        return unknown(e.what());
    }
    return yes(exact ? "all open sets checked" : "checked on representative open sets built from the map's critical values");
}

}  // namespace

Verdict is_open_map(const SpaceMap& f) { return image_test(f, false); }
Verdict is_closed_map(const SpaceMap& f) { return image_test(f, true); }

Verdict is_strict_homeo(const SpaceMap& f) {
    if (!is_injective(f)) return Verdict::make(Tri::No, f.name + " is not injective");
    if (!is_surjective(f)) return Verdict::make(Tri::No, f.name + " is not surjective");
    Verdict c = check_strict_continuity(f);
    if (c.no()) return c;
    auto inv = inverse_map(f);
    if (!inv) return unknown("inverse of " + f.name + " is not representable");
    Verdict ci = check_strict_continuity(*inv);
    if (ci.no()) {
        ci.reason = "inverse is not strictly continuous: " + ci.reason;
        return ci;
    }
    if (c.yes() && ci.yes()) return yes("strictly continuous bijection with strictly continuous inverse");
    return unknown("continuity of the map or its inverse undecided");
}

Verdict is_local_strict_homeo(const SpaceMap& f, const std::optional<FamilyExpr>& covering) {
    const auto& dom = *f.domain;
    FamilyExpr cov = covering ? *covering : FamilyExpr(dom.carrier, {dom.points});
    require_open_members(dom, cov);
    if (family_union(cov) != dom.points) return no_set("covering misses points of the domain", family_union(cov));
    Verdict adm = is_admissible(dom, cov);
    if (adm.no()) {
        adm.reason = "covering is not admissible: " + adm.reason;
        return adm;
    }
    std::vector<Verdict> parts;
    for (const auto& u : cov.finite_part()) {
        if (u.is_empty()) continue;
        std::optional<SetExpr> img;
        try {
            img = image(f, u);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Unrepresentable) throw;
            parts.push_back(unknown(e.what()));
            continue;
        }
        if (!is_open(*f.codomain, *img)) {
            parts.push_back(no_set("image of " + u.str() + " is not open", u));
            continue;
        }
        SpaceMap r = make_map(f.name + "|", subspace(f.domain, u), subspace(f.codomain, *img), f.rule);
        Verdict h = is_strict_homeo(r);
        if (h.no() && !h.set) h.set = u;
        parts.push_back(h);
    }
    Verdict out = all_of(parts, "each member of the covering maps strictly homeomorphically onto an open set");
    if (out.yes() && !cov.is_finite()) out = Verdict::make(Tri::Checked, "finite members checked; stream members not restricted");
    if (!out.no()) out.family = cov;
    return out;
}

MapReport classify_map(const SpaceMap& f, std::uint64_t budget, const std::optional<FamilyExpr>& covering) {
    (void)budget;
    MapReport r;
    r.strictly_continuous = check_strict_continuity(f);
    r.open_map = is_open_map(f);
    r.closed_map = is_closed_map(f);
    r.strict_homeo = is_strict_homeo(f);
    r.local_strict_homeo = is_local_strict_homeo(f, covering);
    if (r.strict_homeo.yes()) {
        if (!r.open_map.yes()) r.open_map = yes("images are preimages under the continuous inverse");
        if (!r.closed_map.yes()) r.closed_map = yes("images are preimages under the continuous inverse");
    }
    return r;
}

}  // namespace gtskit

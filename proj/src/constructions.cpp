#include "gtskit/constructions.hpp"

#include <algorithm>

#include "gtskit/errors.hpp"

namespace gtskit {

namespace {

bool safe_open(const GtsPresentation& x, const SetExpr& s) {
    try {
        return is_open(x, s);
    } catch (const Error&) {
        return false;
    }
}

bool finite_space(const GtsPresentation& x) { return x.points.is_finite(); }

bool is_small_space(const GtsPresentation& x) {
    return finite_space(x) || x.policy.kind == CoveragePolicy::Kind::EssFin ||
           smallness(x, x.points).value == Smallness::Small;
}

GtsPresentation traced(const GtsPresentation& x, const SetExpr& y0) {
    SetExpr y = intersect(y0, x.points);
    GtsPresentation p = x;
    p.points = y;
    switch (x.opens.kind) {
        case OpensSpec::Kind::ExplicitList: {
            std::vector<SetExpr> l;
            for (const auto& o : x.opens.list) l.push_back(intersect(o, y));
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
            p.opens.list = l;
            break;
        }
        case OpensSpec::Kind::Summands:
            for (std::size_t i = 0; i < x.opens.parts.size(); ++i) {
                Point tag = Point::of_atom(x.carrier.left().atoms()[i]);
                p.opens.parts[i] = make_space_unchecked(traced(*x.opens.parts[i], product_slice(y, tag)));
            }
            break;
        case OpensSpec::Kind::Glued:
            for (auto& part : p.opens.parts) part = make_space_unchecked(traced(*part, y));
            break;
        default: break;
    }
    switch (x.policy.kind) {
        case CoveragePolicy::Kind::LocallyEssFin: p.policy = CoveragePolicy::locally(trace_family(*x.policy.base, y)); break;
        case CoveragePolicy::Kind::PiecewiseEssFin: {
            const Exhaustion& e = *x.policy.exhaustion;
            if (e.shape == Exhaustion::Shape::Chain) {
                p.policy = CoveragePolicy::piecewise(Exhaustion::chain(Stream::inter(*e.generator, Stream::constant(y))));
            } else {
                std::vector<SetExpr> pieces;
                for (const auto& s : e.pieces) pieces.push_back(intersect(s, y));
                p.policy = CoveragePolicy::piecewise(Exhaustion::poset(e.carrier, e.labels, e.leq, pieces));
            }
            break;
        }
        default: break;
    }
    return p;
}

std::string joined_names(const std::vector<Space>& xs, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i]->name;
    return out;
}

bool same_traces(const GtsPresentation& a, const GtsPresentation& b, const SetExpr& overlap) {
    GtsPresentation ta = traced(a, overlap), tb = traced(b, overlap);
    std::vector<SetExpr> probes;
    if (overlap.is_finite()) {
        auto oa = all_opens(ta), ob = all_opens(tb);
        std::sort(oa.begin(), oa.end());
        std::sort(ob.begin(), ob.end());
        return oa == ob;
    }
    std::vector<Rational> cs;
    collect_constants(a.points, cs);
    collect_constants(b.points, cs);
    for (const auto& r : representative_opens(ta, cs)) probes.push_back(r);
    for (const auto& r : representative_opens(tb, cs)) probes.push_back(r);
    for (const auto& s : probes)
        if (safe_open(ta, s) != safe_open(tb, s)) return false;
    return true;
}

}  // namespace

Space subspace(const Space& x, const SetExpr& y, std::string name) {
    if (!(y.carrier() == x->carrier)) throw Error(ErrorKind::CarrierMismatch, y.str() + " is not on the carrier of " + x->name);
    SetExpr yp = intersect(y, x->points);
    bool open = safe_open(*x, yp);
    bool small = smallness(*x, yp).value == Smallness::Small;
    bool layered = x->policy.kind == CoveragePolicy::Kind::LocallyEssFin || x->policy.kind == CoveragePolicy::Kind::PiecewiseEssFin;
    if (!open && !small && !layered)
        throw Error(ErrorKind::UnsupportedSubset, yp.str() + " is neither open nor small in " + x->name);
    GtsPresentation p = traced(*x, yp);
    p.name = name.empty() ? x->name + "|" + yp.str() : std::move(name);
    if (small) p.policy = CoveragePolicy::essfin();
    return make_space(std::move(p));
}

ProductResult product(const Space& x, const Space& y, std::string name) {
    for (const auto& f : {x, y}) {
        if (!is_small_space(*f)) throw Error(ErrorKind::NonSmallFactor, f->name + " is not small");
        if (!finite_space(*f) && f->opens.kind == OpensSpec::Kind::FiniteOrWhole)
            throw Error(ErrorKind::UnsupportedPresentation, f->name + ": finite-or-whole factors have no largest open subsets in boxes");
    }
    GtsPresentation p;
    p.name = name.empty() ? x->name + "x" + y->name : std::move(name);
    p.carrier = Carrier::product(x->carrier, y->carrier);
    p.points = SetExpr::box(x->points, y->points);
    p.opens.kind = OpensSpec::Kind::ProductOpens;
    p.opens.parts = {x, y};
    p.policy = CoveragePolicy::essfin();
    auto pts = finite_points(p.points);
    if (pts && pts->size() <= 64) {
        // finite factors: list the finite unions of boxes
        auto mask_of = [&](const SetExpr& s) {
            std::uint64_t m = 0;
            for (std::size_t i = 0; i < pts->size(); ++i)
                if (contains(s, (*pts)[i])) m |= std::uint64_t{1} << i;
            return m;
        };
        std::vector<std::uint64_t> boxes;
        for (const auto& a : all_opens(*x))
            for (const auto& b : all_opens(*y)) boxes.push_back(mask_of(SetExpr::box(a, b)));
        std::sort(boxes.begin(), boxes.end());
        boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
        std::vector<std::uint64_t> opens = {0};
        for (auto b : boxes) {
            std::size_t n = opens.size();
            for (std::size_t i = 0; i < n; ++i) opens.push_back(opens[i] | b);
            std::sort(opens.begin(), opens.end());
            opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
        }
        p.opens.kind = OpensSpec::Kind::ExplicitList;
        p.opens.list.clear();
        for (auto m : opens) {
            std::vector<Point> sel;
            for (std::size_t i = 0; i < pts->size(); ++i)
                if (m & (std::uint64_t{1} << i)) sel.push_back((*pts)[i]);
            p.opens.list.push_back(SetExpr::of_points(p.carrier, sel));
        }
        p.notes.push_back("finite product: open sets are the unions of boxes of factor opens");
    }
    Space s = make_space(std::move(p));
    return ProductResult{s, projection_map(s, x, 0), projection_map(s, y, 1)};
}

Space product(const std::vector<Space>& xs) {
    if (xs.empty()) throw Error(ErrorKind::PreconditionUnmet, "product of no factors");
    Space acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = product(acc, xs[i]).space;
    return acc;
}

Space glue(const std::vector<Space>& pieces, std::string name) {
    if (pieces.empty()) throw Error(ErrorKind::PreconditionUnmet, "glue of no pieces");
    if (pieces.size() == 1) return pieces[0];
    const Carrier& c = pieces[0]->carrier;
    for (const auto& p : pieces) {
        if (!(p->carrier == c)) throw Error(ErrorKind::CarrierMismatch, p->name + " is not on " + c.str());
        if (!is_small_space(*p)) throw Error(ErrorKind::NonSmallPiece, p->name + " is not small");
    }
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            SetExpr ov = intersect(pieces[i]->points, pieces[j]->points);
            if (!safe_open(*pieces[i], ov) || !safe_open(*pieces[j], ov))
                throw Error(ErrorKind::OverlapNotOpen, pieces[i]->name + " and " + pieces[j]->name + " overlap in " + ov.str());
            if (!same_traces(*pieces[i], *pieces[j], ov))
                throw Error(ErrorKind::IncompatibleTraces, pieces[i]->name + " and " + pieces[j]->name + " disagree on " + ov.str());
        }
    GtsPresentation p;
    p.name = name.empty() ? "glue(" + joined_names(pieces, ",") + ")" : std::move(name);
    p.carrier = c;
    p.points = SetExpr::empty(c);
    std::vector<SetExpr> base;
    for (const auto& q : pieces) {
        p.points = unite(p.points, q->points);
        base.push_back(q->points);
    }
    p.opens.kind = OpensSpec::Kind::Glued;
    p.opens.parts = pieces;
    p.policy = CoveragePolicy::locally(FamilyExpr(c, base));
    return make_space(std::move(p));
}

Space direct_sum(const std::vector<Space>& xs, std::string name) {
    if (xs.empty()) throw Error(ErrorKind::PreconditionUnmet, "sum of no summands");
    const Carrier& c = xs[0]->carrier;
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i]->carrier == c)) throw Error(ErrorKind::CarrierMismatch, xs[i]->name + " is not on " + c.str());
        if (!is_small_space(*xs[i])) throw Error(ErrorKind::NonSmallPiece, xs[i]->name + " is not small");
        tags.push_back("s" + std::to_string(i));
    }
    GtsPresentation p;
    p.name = name.empty() ? "sum(" + joined_names(xs, ",") + ")" : std::move(name);
    p.carrier = Carrier::product(Carrier::finite_enum(tags), c);
    p.points = SetExpr::empty(p.carrier);
    std::vector<SetExpr> base;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        SetExpr s = SetExpr::box(SetExpr::atom_indices(p.carrier.left(), {i}), xs[i]->points);
        p.points = unite(p.points, s);
        base.push_back(s);
    }
    p.opens.kind = OpensSpec::Kind::Summands;
    p.opens.parts = xs;
    p.policy = CoveragePolicy::locally(FamilyExpr(p.carrier, base));
    return make_space(std::move(p));
}

FamilyExpr summand_family(const GtsPresentation& sum) {
    if (sum.opens.kind != OpensSpec::Kind::Summands) throw Error(ErrorKind::PreconditionUnmet, sum.name + " is not a direct sum");
    std::vector<SetExpr> out;
    for (std::size_t i = 0; i < sum.opens.parts.size(); ++i)
        out.push_back(SetExpr::box(SetExpr::atom_indices(sum.carrier.left(), {i}), sum.opens.parts[i]->points));
    return FamilyExpr(sum.carrier, out);
}

Space sum_of_points_nat() {
    GtsPresentation p = *top_discrete_nat();
    p.name = "SumPtN";
    return make_space(std::move(p));
}

Space smallify(const Space& x) {
    if (x->policy.kind == CoveragePolicy::Kind::EssFin) return x;
    GtsPresentation p = *x;
    p.name = x->name + "_sm";
    p.policy = CoveragePolicy::essfin();
    return make_space(std::move(p));
}

Topologized topologize(const Space& x) {
    GtsPresentation p = *x;
    p.name = x->name + "_top";
    p.policy = CoveragePolicy::all();
    if (finite_space(*x)) {
        p.opens = OpensSpec{};
        p.opens.kind = OpensSpec::Kind::ExplicitList;
        p.opens.list = all_opens(*x);
        return {make_space(std::move(p)), "finite: open sets already closed under unions"};
    }
    if (x->opens.kind == OpensSpec::Kind::AllSets) return {make_space(std::move(p)), "every subset already open"};
    if (x->opens.kind == OpensSpec::Kind::FiniteOrWhole) {
        p.opens = OpensSpec{};
        p.opens.kind = OpensSpec::Kind::AllSets;
        return {make_space(std::move(p)), "unions of finite sets give every subset"};
    }
    return {std::nullopt, "generated topology leaves the set algebra; use the weak-openness predicate"};
}

Space localize(const Space& x, const FamilyExpr& balls, std::string name) {
    if (x->policy.kind != CoveragePolicy::Kind::EssFin) throw Error(ErrorKind::PolicyMismatch, x->name + " is not small");
    if (!(balls.carrier() == x->carrier)) throw Error(ErrorKind::CarrierMismatch, "ball family not on " + x->carrier.str());
    try {
        require_open_members(*x, balls);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonOpenMember) throw Error(ErrorKind::BallNotOpen, e.what());
        throw;
    }
    if (!is_subset(x->points, family_union(balls)))
        throw Error(ErrorKind::PointNotCovered, "balls do not cover " + x->name);
    GtsPresentation p = *x;
    p.name = name.empty() ? x->name + "_loc" : std::move(name);
    p.policy = CoveragePolicy::locally(balls);
    return make_space(std::move(p));
}

Space localized_line() {
    return localize(rs_alg(), FamilyExpr(Carrier::qline(), {}, {Stream::of(StreamSchema::grow(1))}), "RLoc");
}

Space rs_alg_squared() { return product(rs_alg(), rs_alg(), "RSalg2").space; }

std::vector<Space> shipped_presentations() {
    return {rs_alg(),     r_top(),     r_count(),        wd_space(),      discrete_small_nat(), top_discrete_nat(),
            chain_nat(), one_point(), sierpinski(),     localized_line(), rs_alg_squared()};
}

}  // namespace gtskit

#include "gtskit/scale_layers.hpp"

#include <algorithm>

#include "gtskit/constructions.hpp"
#include "gtskit/errors.hpp"
#include "gtskit/topo_props.hpp"

namespace gtskit {

namespace {

Verdict yes(std::string why) { return Verdict::make(Tri::Yes, std::move(why)); }
Verdict unknown(std::string why) { return Verdict::make(Tri::Unknown, std::move(why)); }
Verdict no_set(std::string why, const SetExpr& s) {
    auto v = Verdict::make(Tri::No, std::move(why));
    v.set = s;
    return v;
}

Space hold(const GtsPresentation& x) { return std::make_shared<const GtsPresentation>(x); }

void family_constants(const FamilyExpr& f, std::vector<Rational>& out) {
    for (const auto& s : f.finite_part()) collect_constants(s, out);
    for (const auto& s : f.streams()) s.collect_constants(out);
}

// Stream indices worth looking at: the first few and a stabilized one.
std::vector<std::uint64_t> sample_indices(std::uint64_t start, const std::vector<Rational>& consts) {
    std::uint64_t m = std::min<std::uint64_t>(stabilization_index(consts, start) + 2, start + 64);
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = start; n <= m; ++n) out.push_back(n);
    return out;
}

std::vector<SetExpr> sampled_members(const FamilyExpr& f, const std::vector<Rational>& extra = {}) {
    std::vector<SetExpr> out = f.finite_part();
    std::vector<Rational> consts = extra;
    family_constants(f, consts);
    for (const auto& s : f.streams()) {
        for (auto n : sample_indices(s.start(), consts)) out.push_back(s.member(n));
    }
    return out;
}

struct PieceRef {
    std::uint64_t index;
    SetExpr set;
};

std::vector<PieceRef> sampled_pieces(const Exhaustion& e, const std::vector<Rational>& consts) {
    std::vector<PieceRef> out;
    if (e.shape == Exhaustion::Shape::Poset) {
        for (std::size_t i = 0; i < e.pieces.size(); ++i) out.push_back({i, e.pieces[i]});
        return out;
    }
    std::vector<Rational> c = consts;
    e.generator->collect_constants(c);
    for (auto n : sample_indices(e.first_index(), c)) out.push_back({n, e.piece(n)});
    return out;
}

bool is_closed(const GtsPresentation& x, const SetExpr& s) { return is_open(x, minus(x.points, s)); }

// Every set in the Boolean algebra generated by finitely many sets is a union
// of nonempty atoms; S belongs iff no atom straddles it.
bool in_generated_algebra(const SetExpr& points, const std::vector<SetExpr>& gens, const SetExpr& s) {
    if (gens.size() > 16) throw Error(ErrorKind::BudgetExceeded, "too many generators for the Boolean algebra");
    for (std::uint32_t pat = 0; pat < (1u << gens.size()); ++pat) {
        SetExpr atom = points;
        for (std::size_t i = 0; i < gens.size() && !atom.is_empty(); ++i)
            atom = (pat >> i & 1) ? intersect(atom, gens[i]) : minus(atom, gens[i]);
        if (atom.is_empty()) continue;
        if (!is_subset(atom, s) && !are_disjoint(atom, s)) return false;
    }
    return true;
}

}  // namespace

const Verdict* LayerReport::check(const std::string& name) const {
    for (const auto& [n, v] : checks)
        if (n == name) return &v;
    return nullptr;
}

bool LayerReport::checks_pass() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.second.no(); });
}

SetExpr weak_closure(const GtsPresentation& x, const SetExpr& s) {
    if (x.carrier.kind() == CarrierKind::Product) throw Error(ErrorKind::UnsupportedCarrier, "weak closure on product carriers");
    return weak_closure_of(x, s);
}

namespace {

Verdict closure_property_locally(const GtsPresentation& x, const std::vector<SetExpr>& small_sets) {
    std::size_t n = 0;
    std::vector<Rational> consts;
    for (const auto& s : small_sets) collect_constants(s, consts);
    std::vector<SetExpr> closed;
    for (const auto& o : representative_opens(x, consts)) closed.push_back(minus(x.points, o));
    try {
        for (const auto& b : small_sets)
            for (const auto& f : closed) {
                SetExpr l = intersect(b, f);  // small and locally closed
                SetExpr c = weak_closure(x, l);
                ++n;
                if (!is_closed(x, c)) return no_set("weak closure " + c.str() + " of " + l.str() + " is not closed", l);
            }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::UnsupportedCarrier || e.kind() == ErrorKind::UnsupportedPresentation ||
            e.kind() == ErrorKind::BudgetExceeded)
            return unknown(e.what());
        throw;
    }
    return Verdict::make(Tri::Checked, std::to_string(n) + " small locally closed sets have closed weak closures");
}

// Locally finite refinement for a nested base, checked against the base.
std::optional<std::pair<FamilyExpr, std::string>> chain_refinement(const GtsPresentation& x, const FamilyExpr& base) {
    if (!base.finite_part().empty() || base.streams().size() != 1) return std::nullopt;
    const Stream& s = base.streams()[0];
    if (s.op() != Stream::Op::Leaf) return std::nullopt;
    const auto kind = s.schema().kind;
    if (kind == SchemaKind::GrowBalls && x.points.is_full()) {
        // Annuli A_n = (-n-1,-n+1) u (n-1,n+1), truncated at N; ball (-m,m)
        // meets A_0..A_m only and is covered by them.
        const std::int64_t N = 10;
        std::vector<SetExpr> annuli;
        for (std::int64_t n = 0; n <= N; ++n)
            annuli.push_back(SetExpr::intervals({Interval::open(Rational(-n - 1), Rational(-n + 1)), Interval::open(Rational(n - 1), Rational(n + 1))}));
        for (std::int64_t m = 1; m <= N; ++m) {
            SetExpr ball = SetExpr::interval(Interval::open(Rational(-m), Rational(m)));
            SetExpr cover = SetExpr::empty(x.carrier);
            std::int64_t meets = 0;
            for (std::int64_t n = 0; n <= N; ++n) {
                if (!are_disjoint(annuli[n], ball)) ++meets;
                if (n <= m) cover = unite(cover, annuli[n]);
            }
            if (meets > m + 1 || !is_subset(ball, cover)) return std::nullopt;
        }
        FamilyExpr w(x.carrier, annuli);
        for (const auto& a : annuli)
            if (!is_open(x, a) || smallness(x, a).value != Smallness::Small) return std::nullopt;
        if (!is_admissible(x, w).yes()) return std::nullopt;
        return std::make_pair(w, "annuli (-n-1,-n+1) u (n-1,n+1) for n <= 10 checked ball by ball");
    }
    if (kind == SchemaKind::InitialSegments) {
        FamilyExpr w(x.carrier, {}, {Stream::of(StreamSchema::singletons(0))});
        if (!x.points.is_full()) w = trace_family(w, x.points);
        try {
            require_open_members(x, w);
        } catch (const Error&) {
            return std::nullopt;
        }
        if (meets_infinitely_many(base, w)) return std::nullopt;
        if (!is_admissible(x, w).yes()) return std::nullopt;
        return std::make_pair(w, "singletons: each initial segment meets finitely many");
    }
    return std::nullopt;
}

}  // namespace

LayerReport validate_locally_small(const GtsPresentation& x) {
    if (x.policy.kind != CoveragePolicy::Kind::LocallyEssFin || !x.policy.base)
        throw Error(ErrorKind::PolicyMismatch, x.name + " is not presented as locally essentially finite");
    return validate_locally_small(x, *x.policy.base);
}

LayerReport validate_locally_small(const GtsPresentation& x, const FamilyExpr& base) {
    LayerReport r;
    r.space = x.name;
    auto members = sampled_members(base);

    Verdict open = yes("base members are open");
    Verdict small = yes("base members are small");
    for (const auto& m : members) {
        if (open.yes() && !is_open(x, m)) open = no_set("base member " + m.str() + " is not open", m);
        if (small.yes()) {
            auto sm = smallness(x, m);
            if (sm.value == Smallness::NotSmall) {
                small = no_set("base member " + m.str() + " is not small: " + sm.reason, m);
                small.family = sm.witness;
            } else if (sm.value == Smallness::Unknown) {
                small = unknown("smallness of " + m.str() + " undecided");
            }
        }
    }
    Verdict covers = family_union(base) == x.points ? yes("base covers the points")
                                                      : no_set("base misses points", minus(x.points, family_union(base)));
    Verdict adm = open.yes() ? is_admissible(x, base) : unknown("base has non-open members");
    r.checks = {{"open", open}, {"small", small}, {"covering", covers}, {"admissible", adm}};

    auto lf = meets_infinitely_many(base, base);
    Verdict local_fin = lf ? Verdict::make(Tri::No, "base " + *lf + " meets infinitely many members") : yes("each base member meets finitely many members");
    r.notes.push_back(local_fin.yes() ? "base is locally finite" : "base is not locally finite: " + local_fin.reason);

    for (const auto* v : {&open, &small, &covers, &adm})
        if (v->no()) {
            r.locally_small = *v;
            break;
        }
    if (!r.locally_small.no()) {
        if (open.yes() && small.yes() && covers.yes() && adm.yes()) r.locally_small = yes("admissible covering by small open sets");
        else r.locally_small = unknown("base not fully verified");
    }

    if (!r.locally_small.yes()) {
        r.paracompact = unknown("not locally small");
        r.lindelof = unknown("not locally small");
    } else {
        r.lindelof = yes("the base is a countable admissible covering by small opens");
        if (base.is_finite() || local_fin.yes()) {
            r.paracompact = yes("the base itself is locally finite");
            r.paracompact_witness = base;
        } else if (auto w = chain_refinement(x, base)) {
            r.paracompact = yes("locally finite refinement: " + w->second);
            r.paracompact_witness = w->first;
            r.paracompact.family = w->first;
            r.notes.push_back("paracompactness certified by " + w->second);
        } else {
            r.paracompact = unknown("no locally finite refinement constructed");
        }
    }
    r.strongly_t1 = separation_report(x).strongly_t1;
    std::vector<SetExpr> small_sets;
    for (const auto& m : members)
        if (small_sets.size() < 6 && smallness(x, m).value == Smallness::Small) small_sets.push_back(m);
    r.closure_property = r.locally_small.yes() ? closure_property_locally(x, small_sets) : unknown("not locally small");
    return r;
}

LayerReport validate_exhaustion(const GtsPresentation& x) {
    if (x.policy.kind != CoveragePolicy::Kind::PiecewiseEssFin || !x.policy.exhaustion)
        throw Error(ErrorKind::PolicyMismatch, x.name + " has no exhaustion");
    return validate_exhaustion(x, *x.policy.exhaustion);
}

LayerReport validate_exhaustion(const GtsPresentation& x, const Exhaustion& e) {
    LayerReport r;
    r.space = x.name;
    r.exhaustion = e;
    if (!(e.carrier == x.carrier)) throw Error(ErrorKind::CarrierMismatch, "exhaustion not on the carrier of " + x.name);
    const bool chain = e.shape == Exhaustion::Shape::Chain;
    auto pieces = sampled_pieces(e, {});
    const std::string scope = chain ? " (sampled chain indices)" : "";

    Verdict order = yes("partial order");
    if (!chain) {
        std::size_t n = e.labels.size();
        for (std::size_t a = 0; a < n && order.yes(); ++a) {
            if (!e.leq[a][a]) order = Verdict::make(Tri::No, e.labels[a] + " is not below itself");
            for (std::size_t b = 0; b < n && order.yes(); ++b) {
                if (a != b && e.leq[a][b] && e.leq[b][a]) order = Verdict::make(Tri::No, e.labels[a] + " and " + e.labels[b] + " are mutually below");
                for (std::size_t c = 0; c < n && order.yes(); ++c)
                    if (e.leq[a][b] && e.leq[b][c] && !e.leq[a][c])
                        order = Verdict::make(Tri::No, "order not transitive at " + e.labels[a] + ", " + e.labels[b] + ", " + e.labels[c]);
            }
        }
    }

    Verdict closed_small = yes("pieces are closed and small" + scope);
    for (const auto& p : pieces) {
        if (!is_closed(x, p.set)) {
            closed_small = no_set("piece " + e.index_name(p.index) + " = " + p.set.str() + " is not closed", p.set);
            break;
        }
        auto sm = smallness(x, p.set);
        if (sm.value != Smallness::Small) {
            closed_small = sm.value == Smallness::NotSmall ? no_set("piece " + e.index_name(p.index) + " is not small", p.set)
                                                           : unknown("smallness of piece " + e.index_name(p.index) + " undecided");
            break;
        }
    }

    SetExpr all = SetExpr::empty(x.carrier);
    if (chain) all = e.generator->union_all();
    else
        for (const auto& p : e.pieces) all = unite(all, p);
    Verdict w1 = all == x.points ? yes("pieces cover the points") : no_set("points outside every piece", minus(x.points, all));

    Verdict w2 = yes("order-compatible inclusions, lower pieces closed" + scope);
    for (const auto& a : pieces)
        for (const auto& b : pieces) {
            if (!w2.yes() || a.index == b.index || !e.less_equal(a.index, b.index)) continue;
            if (!is_subset(a.set, b.set)) w2 = no_set(e.index_name(a.index) + " <= " + e.index_name(b.index) + " but the piece is not contained", a.set);
            else if (!is_closed(x, a.set)) w2 = no_set("piece " + e.index_name(a.index) + " is not closed", a.set);
        }

    Verdict w3 = chain ? yes("chain: n has n predecessors") : yes("finite index poset");

    Verdict w4 = yes("intersections of pieces are pieces" + scope);
    for (const auto& a : pieces)
        for (const auto& b : pieces) {
            if (!w4.yes()) break;
            SetExpr m = intersect(a.set, b.set);
            bool found = false;
            if (chain) found = m == e.piece(std::min(a.index, b.index));
            else
                for (const auto& c : pieces) found = found || c.set == m;
            if (!found) {
                w4 = no_set("pieces " + e.index_name(a.index) + " and " + e.index_name(b.index) + " meet in " + m.str() + ", which is no piece", m);
                w4.members = {{e.index_name(a.index), a.set}, {e.index_name(b.index), b.set}};
            }
        }

    Verdict w5 = chain ? yes("chain is directed") : yes("every pair has an upper bound");
    if (!chain)
        for (const auto& a : pieces)
            for (const auto& b : pieces) {
                if (!w5.yes()) break;
                bool ub = false;
                for (const auto& c : pieces) ub = ub || (e.less_equal(a.index, c.index) && e.less_equal(b.index, c.index));
                if (!ub) w5 = Verdict::make(Tri::No, e.index_name(a.index) + " and " + e.index_name(b.index) + " have no upper bound");
            }

    // W6 a: openness agrees with piecewise openness on sampled sets.
    Verdict w6 = unknown("pieces not verified");
    if (closed_small.yes() && w1.yes()) {
        std::vector<Rational> consts;
        for (const auto& p : pieces) collect_constants(p.set, consts);
        std::vector<SetExpr> probe;
        for (const auto& o : representative_opens(x, consts)) {
            probe.push_back(o);
            probe.push_back(minus(x.points, o));
        }
        std::vector<Space> subs;
        for (const auto& p : pieces) subs.push_back(subspace(hold(x), p.set));
        std::size_t n = 0;
        w6 = yes("");
        for (const auto& s : probe) {
            bool piecewise = true;
            for (const auto& sub : subs) piecewise = piecewise && is_open(*sub, intersect(s, sub->points));
            ++n;
            if (piecewise != is_open(x, s)) {
                w6 = no_set(s.str() + (piecewise ? " is piecewise open but not open" : " is open but not piecewise open"), s);
                break;
            }
        }
        if (w6.yes()) {
            w6 = Verdict::make(chain ? Tri::Checked : Tri::Yes, std::to_string(n) + " sampled sets: open iff piecewise open");
            if (x.policy.kind == CoveragePolicy::Kind::PiecewiseEssFin && x.policy.exhaustion == e)
                r.notes.push_back("admissibility is piecewise essential finiteness over this exhaustion");
            else
                r.notes.push_back("presentation policy is " + x.policy.str() + ", not piecewise over this exhaustion");
        }
    }

    r.checks = {{"order", order}, {"pieces", closed_small}, {"W1", w1}, {"W2", w2}, {"W3", w3}, {"W4", w4}, {"W5", w5}, {"W6", w6}};
    r.strongly_t1 = separation_report(x).strongly_t1;
    r.locally_small = unknown("not examined for exhaustions");
    r.paracompact = unknown("not examined for exhaustions");
    r.lindelof = unknown("not examined for exhaustions");

    // CP: weak closures of locally closed subsets of pieces are closed.
    if (r.checks_pass()) {
        std::vector<SetExpr> local;
        std::vector<Rational> consts;
        for (const auto& p : pieces) collect_constants(p.set, consts);
        auto opens = representative_opens(x, consts);
        for (std::size_t i = 0; i < pieces.size() && i < 6; ++i)
            for (std::size_t j = 0; j < opens.size() && j < 8; ++j) {
                local.push_back(intersect(pieces[i].set, opens[j]));
                local.push_back(minus(pieces[i].set, opens[j]));
            }
        r.closure_property = Verdict::make(Tri::Checked, "");
        std::size_t n = 0;
        try {
            for (const auto& l : local) {
                SetExpr c = weak_closure(x, l);
                ++n;
                if (!is_closed(x, c)) {
                    r.closure_property = no_set("weak closure " + c.str() + " of " + l.str() + " is not closed", l);
                    break;
                }
            }
            if (!r.closure_property.no())
                r.closure_property.reason = std::to_string(n) + " locally closed subsets of pieces have closed weak closures";
        } catch (const Error& ex) {
            r.closure_property = unknown(ex.what());
        }
    } else {
        r.closure_property = unknown("exhaustion checks failed");
    }
    return r;
}

std::uint64_t index_function(const Exhaustion& e, const Point& x) {
    if (e.shape == Exhaustion::Shape::Chain) {
        std::vector<Rational> consts;
        e.generator->collect_constants(consts);
        if (x.kind == PointKind::Nat) consts.push_back(Rational(static_cast<std::int64_t>(x.nat)));
        if (x.kind == PointKind::Rat) consts.push_back(x.rat);
        std::uint64_t bound = stabilization_index(consts, e.first_index()) + 2;
        for (std::uint64_t n = e.first_index(); n <= bound; ++n)
            if (contains(e.piece(n), x)) return n;
        throw Error(ErrorKind::PointNotCovered, x.str() + " lies in no piece");
    }
    std::vector<std::size_t> in;
    for (std::size_t i = 0; i < e.pieces.size(); ++i)
        if (contains(e.pieces[i], x)) in.push_back(i);
    if (in.empty()) throw Error(ErrorKind::PointNotCovered, x.str() + " lies in no piece");
    std::vector<std::size_t> lower;
    for (std::size_t g = 0; g < e.pieces.size(); ++g)
        if (std::all_of(in.begin(), in.end(), [&](std::size_t a) { return e.less_equal(g, a); })) lower.push_back(g);
    for (std::size_t g : lower)
        if (std::all_of(lower.begin(), lower.end(), [&](std::size_t h) { return e.less_equal(h, g); })) return g;
    throw Error(ErrorKind::NoInfimum, "indices of pieces containing " + x.str() + " have no infimum");
}

bool is_constructible(const GtsPresentation& x, const SetExpr& s0) {
    SetExpr s = intersect(s0, x.points);
    switch (x.opens.kind) {
        case OpensSpec::Kind::ExplicitList: return in_generated_algebra(x.points, x.opens.list, s);
        case OpensSpec::Kind::AllSets: return true;
        case OpensSpec::Kind::AllCanonicalOpen:
        case OpensSpec::Kind::FiniteOrWhole:
            if (auto pts = finite_points(x.points); pts && pts->size() <= 16) return in_generated_algebra(x.points, all_opens(x), s);
            // every interval is open n closed; every NatFC set is finite or cofinite
            return true;
        case OpensSpec::Kind::ProductOpens:
            for (const auto& b : s.box_list())
                if (!is_constructible(*x.opens.parts[0], b.left) || !is_constructible(*x.opens.parts[1], b.right)) return false;
            return true;
        case OpensSpec::Kind::Summands:
            for (std::size_t i = 0; i < x.opens.parts.size(); ++i)
                if (!is_constructible(*x.opens.parts[i], product_slice(s, Point::of_atom(x.carrier.left().atoms()[i])))) return false;
            return true;
        case OpensSpec::Kind::Glued:
            for (const auto& p : x.opens.parts)
                if (!is_constructible(*p, intersect(s, p->points))) return false;
            return true;
    }
    return false;
}

bool is_locally_closed(const GtsPresentation& x, const SetExpr& s0) {
    SetExpr s = intersect(s0, x.points);
    if (x.opens.kind == OpensSpec::Kind::FiniteOrWhole && !x.points.is_finite()) return true;  // finite or cofinite
    // S = U n F forces S = U n F* with F* the least closed superset, then U
    // may be taken as the largest open avoiding F* \ S.
    auto c = largest_open_in(x, minus(x.points, s));
    if (!c) throw Error(ErrorKind::UnsupportedPresentation, "no least closed superset in " + x.name);
    SetExpr fstar = minus(x.points, *c);
    auto u = largest_open_in(x, minus(x.points, minus(fstar, s)));
    if (!u) throw Error(ErrorKind::UnsupportedPresentation, "no largest open set in " + x.name);
    return is_subset(s, *u);
}

bool is_piecewise_closed(const GtsPresentation& x, const SetExpr& s) {
    if (x.policy.kind != CoveragePolicy::Kind::PiecewiseEssFin) throw Error(ErrorKind::PolicyMismatch, x.name + " has no exhaustion");
    std::vector<Rational> consts;
    collect_constants(s, consts);
    for (const auto& p : sampled_pieces(*x.policy.exhaustion, consts)) {
        auto sub = subspace(hold(x), p.set);
        if (!is_closed(*sub, intersect(s, p.set))) return false;
    }
    return true;
}

SubsetClass classify_subset(const GtsPresentation& x, const SetExpr& s0) {
    SetExpr s = intersect(s0, x.points);
    SubsetClass c;
    c.open = is_open(x, s);
    c.closed = is_closed(x, s);
    c.weakly_open = is_weakly_open(x, s);
    c.weakly_closed = is_weakly_open(x, minus(x.points, s));
    c.locally_closed = is_locally_closed(x, s);
    c.constructible = is_constructible(x, s);
    std::vector<Rational> consts;
    collect_constants(s, consts);
    if (x.policy.kind == CoveragePolicy::Kind::LocallyEssFin) {
        bool ok = true;
        for (const auto& b : sampled_members(*x.policy.base, consts)) {
            auto sub = subspace(hold(x), b);
            ok = ok && is_constructible(*sub, intersect(s, b));
        }
        c.locally_constructible = ok;
    }
    if (x.policy.kind == CoveragePolicy::Kind::PiecewiseEssFin) {
        bool ok = true;
        for (const auto& p : sampled_pieces(*x.policy.exhaustion, consts)) {
            auto sub = subspace(hold(x), p.set);
            ok = ok && is_constructible(*sub, intersect(s, p.set));
        }
        c.piecewise_constructible = ok;
    }
    return c;
}

std::optional<std::uint64_t> piece_capture(const SpaceMap& f, const LayerReport& report) {
    const auto& cod = *f.codomain;
    if (cod.policy.kind != CoveragePolicy::Kind::PiecewiseEssFin || !cod.policy.exhaustion)
        throw Error(ErrorKind::PreconditionUnmet, cod.name + " is not presented with an exhaustion");
    const Exhaustion& e = *cod.policy.exhaustion;
    if (!report.exhaustion || !(*report.exhaustion == e) || report.space != cod.name)
        throw Error(ErrorKind::PreconditionUnmet, "report does not describe the exhaustion of " + cod.name);
    if (!report.checks_pass()) throw Error(ErrorKind::PreconditionUnmet, "exhaustion checks failed for " + cod.name);
    if (!report.strongly_t1.yes()) throw Error(ErrorKind::PreconditionUnmet, cod.name + " is not established as strongly T1");
    auto sm = smallness(*f.domain, f.domain->points);
    if (sm.value != Smallness::Small) throw Error(ErrorKind::PreconditionUnmet, f.domain->name + " is not established as small");

    SetExpr img = image(f, f.domain->points);
    if (e.shape == Exhaustion::Shape::Chain) {
        std::vector<Rational> consts;
        collect_constants(img, consts);
        e.generator->collect_constants(consts);
        std::uint64_t bound = stabilization_index(consts, e.first_index()) + 2;
        for (std::uint64_t n = e.first_index(); n <= bound; ++n)
            if (is_subset(img, e.piece(n))) return n;
        return std::nullopt;
    }
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < e.pieces.size(); ++i)
        if (is_subset(img, e.pieces[i])) hits.push_back(i);
    if (hits.empty()) return std::nullopt;
    for (auto a : hits)
        if (std::all_of(hits.begin(), hits.end(), [&](std::size_t b) { return e.less_equal(a, b); })) return a;
    for (auto a : hits)
        if (std::none_of(hits.begin(), hits.end(), [&](std::size_t b) { return b != a && e.less_equal(b, a); })) return a;
    return hits.front();
}

}  // namespace gtskit

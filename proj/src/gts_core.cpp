#include "gtskit/gts_core.hpp"

#include <algorithm>
#include <map>

#include "gtskit/errors.hpp"

namespace gtskit {

std::string to_string(Tri t) {
    switch (t) {
        case Tri::Yes: return "Yes";
        case Tri::No: return "No";
        case Tri::Unknown: return "Unknown";
        case Tri::Checked: return "Checked";
    }
    return "?";
}

std::string to_string(Smallness s) {
    switch (s) {
        case Smallness::Small: return "Small";
        case Smallness::NotSmall: return "NotSmall";
        case Smallness::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

void require_carrier(const GtsPresentation& x, const SetExpr& s) {
    if (!(s.carrier() == x.carrier))
        throw Error(ErrorKind::CarrierMismatch, s.str() + " is not a subset of the carrier " + x.carrier.str() + " of " + x.name);
}

Point tag_point(const GtsPresentation& x, std::size_t i) { return Point::of_atom(x.carrier.left().atoms()[i]); }

SetExpr tag_box(const GtsPresentation& x, std::size_t i, const SetExpr& s) {
    return SetExpr::box(SetExpr::atom_indices(x.carrier.left(), {i}), s);
}

// Largest open (weak = false) or weakly open (weak = true) subset of t n points.
std::optional<SetExpr> inner(const GtsPresentation& x, const SetExpr& t, bool weak) {
    SetExpr tp = intersect(t, x.points);
    switch (x.opens.kind) {
        case OpensSpec::Kind::ExplicitList: {
            SetExpr u = SetExpr::empty(x.carrier);
            for (const auto& o : x.opens.list)
                if (is_subset(o, tp)) u = unite(u, o);
            return u;
        }
        case OpensSpec::Kind::AllCanonicalOpen:
            return intersect(interval_interior(unite(tp, complement(x.points))), x.points);
        case OpensSpec::Kind::AllSets: return tp;
        case OpensSpec::Kind::FiniteOrWhole:
            if (weak || tp == x.points || tp.is_finite()) return tp;
            return std::nullopt;
        case OpensSpec::Kind::ProductOpens: {
            const auto& f1 = *x.opens.parts[0];
            const auto& f2 = *x.opens.parts[1];
            const auto& boxes = tp.box_list();
            // distinct intersections of box rights; each gives one candidate V
            std::vector<SetExpr> ws = {SetExpr::full(x.carrier.right())};
            for (const auto& b : boxes) {
                std::size_t n = ws.size();
                for (std::size_t i = 0; i < n; ++i) {
                    SetExpr w = intersect(ws[i], b.right);
                    if (!w.is_empty() && std::find(ws.begin(), ws.end(), w) == ws.end()) ws.push_back(w);
                }
                if (ws.size() > 4096) throw Error(ErrorKind::BudgetExceeded, "too many boxes for the product interior");
            }
            SetExpr out = SetExpr::empty(x.carrier);
            for (const auto& w : ws) {
                auto v = inner(f2, w, weak);
                if (!v) return std::nullopt;
                if (v->is_empty()) continue;
                SetExpr l = SetExpr::empty(x.carrier.left());
                for (const auto& b : boxes)
                    if (is_subset(*v, b.right)) l = unite(l, b.left);
                auto u = inner(f1, l, weak);
                if (!u) return std::nullopt;
                if (!u->is_empty()) out = unite(out, SetExpr::box(*u, *v));
            }
            return out;
        }
        case OpensSpec::Kind::Summands: {
            SetExpr out = SetExpr::empty(x.carrier);
            for (std::size_t i = 0; i < x.opens.parts.size(); ++i) {
                auto v = inner(*x.opens.parts[i], product_slice(tp, tag_point(x, i)), weak);
                if (!v) return std::nullopt;
                if (!v->is_empty()) out = unite(out, tag_box(x, i, *v));
            }
            return out;
        }
        case OpensSpec::Kind::Glued: {
            SetExpr out = SetExpr::empty(x.carrier);
            for (const auto& part : x.opens.parts) {
                auto v = inner(*part, tp, weak);
                if (!v) return std::nullopt;
                out = unite(out, *v);
            }
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace

bool is_open(const GtsPresentation& x, const SetExpr& s) {
    require_carrier(x, s);
    if (!is_subset(s, x.points)) return false;
    switch (x.opens.kind) {
        case OpensSpec::Kind::ExplicitList: {
            const auto& l = x.opens.list;
            if (std::is_sorted(l.begin(), l.end())) return std::binary_search(l.begin(), l.end(), s);
            return std::find(l.begin(), l.end(), s) != l.end();
        }
        case OpensSpec::Kind::FiniteOrWhole: return s.is_finite() || s == x.points;
        case OpensSpec::Kind::Summands:
            for (std::size_t i = 0; i < x.opens.parts.size(); ++i)
                if (!is_open(*x.opens.parts[i], product_slice(s, tag_point(x, i)))) return false;
            return true;
        case OpensSpec::Kind::Glued:
            for (const auto& part : x.opens.parts)
                if (!is_open(*part, intersect(s, part->points))) return false;
            return true;
        default: {
            auto u = inner(x, s, false);
            if (!u) throw Error(ErrorKind::UnsupportedPresentation, "no largest open subset in " + x.name);
            return *u == s;
        }
    }
}

std::optional<SetExpr> largest_open_in(const GtsPresentation& x, const SetExpr& t) {
    require_carrier(x, t);
    return inner(x, t, false);
}

SetExpr weak_interior(const GtsPresentation& x, const SetExpr& t) {
    require_carrier(x, t);
    auto u = inner(x, t, true);
    if (!u) throw Error(ErrorKind::UnsupportedPresentation, "weak interior unavailable in " + x.name);
    return *u;
}

SetExpr weak_closure_of(const GtsPresentation& x, const SetExpr& s) {
    return minus(x.points, weak_interior(x, minus(x.points, s)));
}

bool is_weakly_open(const GtsPresentation& x, const SetExpr& s) {
    return is_subset(s, x.points) && weak_interior(x, s) == s;
}

namespace {

std::vector<std::uint64_t> sample_indices(const Stream& s, const std::vector<Rational>& consts) {
    std::uint64_t st = s.start();
    std::vector<std::uint64_t> idx = {st, st + 1, st + 2, st + 3};
    std::uint64_t big = stabilization_index(consts, st);
    idx.push_back(big);
    idx.push_back(2 * big);
    return idx;
}

void collect_family_constants(const FamilyExpr& f, std::vector<Rational>& out) {
    for (const auto& s : f.finite_part()) collect_constants(s, out);
    for (const auto& s : f.streams()) s.collect_constants(out);
}

}  // namespace

void require_open_members(const GtsPresentation& x, const FamilyExpr& f) {
    if (!(f.carrier() == x.carrier)) throw Error(ErrorKind::CarrierMismatch, "family not on the carrier of " + x.name);
    for (const auto& s : f.finite_part())
        if (!is_open(x, s)) throw Error(ErrorKind::NonOpenMember, s.str() + " is not open in " + x.name);
    std::vector<Rational> consts;
    collect_family_constants(f, consts);
    collect_constants(x.points, consts);
    for (const auto& t : f.streams()) {
        if (!is_subset(t.union_all(), x.points))
            throw Error(ErrorKind::NonOpenMember, "stream " + t.str() + " leaves the points of " + x.name);
        for (auto n : sample_indices(t, consts)) {
            SetExpr m = t.member(n);
            if (!is_open(x, m)) throw Error(ErrorKind::NonOpenMember, m.str() + " (stream " + t.str() + ") is not open in " + x.name);
        }
    }
}

namespace {

// Essential finiteness of F on every member of the base family; returns the
// failing member.
std::optional<FamilyMember> fails_on_members(const FamilyExpr& f, const FamilyExpr& base) {
    for (std::size_t i = 0; i < base.finite_part().size(); ++i)
        if (!essentially_finite_on(f, base.finite_part()[i]).yes) return FamilyMember{"base finite[" + std::to_string(i) + "]", base.finite_part()[i]};
    std::vector<Rational> consts;
    collect_family_constants(f, consts);
    collect_family_constants(base, consts);
    std::uint64_t f_start = 0;
    for (const auto& s : f.streams()) f_start = std::max(f_start, s.start());
    for (std::size_t j = 0; j < base.streams().size(); ++j) {
        const auto& b = base.streams()[j];
        std::vector<std::uint64_t> idx;
        if (b.is_monotone()) {
            std::uint64_t m = stabilization_index(consts, std::max(b.start(), f_start));
            idx = {b.start(), m, 2 * m};
        } else {
            std::uint64_t k = b.start();
            for (const auto& c : consts)
                if (c >= Rational(0)) k = std::max<std::uint64_t>(k, static_cast<std::uint64_t>(c.ceil()) + 1);
            idx = {b.start(), k};
            if (!essentially_finite_on(f, b.singles_q()).yes)
                return FamilyMember{"base stream[" + std::to_string(j) + "] constant part", b.singles_q()};
        }
        for (auto n : idx) {
            SetExpr m = b.member(n);
            if (!essentially_finite_on(f, m).yes) return FamilyMember{"base stream[" + std::to_string(j) + "]@" + std::to_string(n), m};
        }
    }
    return std::nullopt;
}

FamilyExpr exhaustion_family(const Exhaustion& e) {
    if (e.shape == Exhaustion::Shape::Chain) return FamilyExpr(e.carrier, {}, {*e.generator});
    return FamilyExpr(e.carrier, e.pieces);
}

}  // namespace

Verdict is_admissible(const GtsPresentation& x, const FamilyExpr& f) {
    require_open_members(x, f);
    const auto& pol = x.policy;
    switch (pol.kind) {
        case CoveragePolicy::Kind::All: return Verdict::make(Tri::Yes, "every open family is admissible");
        case CoveragePolicy::Kind::EssCountable: return Verdict::make(Tri::Yes, "every presentable family is countable");
        case CoveragePolicy::Kind::EssFin: {
            auto r = essentially_finite_on(f, family_union(f));
            Verdict v = Verdict::make(r.yes ? Tri::Yes : Tri::No, r.yes ? "essentially finite: " + r.reason : "not essentially finite: " + r.reason);
            v.members = r.witness;
            return v;
        }
        case CoveragePolicy::Kind::LocallyEssFin:
        case CoveragePolicy::Kind::PiecewiseEssFin: {
            bool local = pol.kind == CoveragePolicy::Kind::LocallyEssFin;
            FamilyExpr base = local ? *pol.base : exhaustion_family(*pol.exhaustion);
            auto bad = fails_on_members(f, base);
            if (!bad) return Verdict::make(Tri::Yes, local ? "essentially finite on every base member" : "essentially finite on every piece");
            Verdict v = Verdict::make(Tri::No, "not essentially finite on " + bad->label + " = " + bad->set.str());
            v.set = bad->set;
            return v;
        }
    }
    return Verdict::make(Tri::Unknown, "unhandled policy");
}

std::vector<FamilyExpr> library_families(const GtsPresentation& x, const SetExpr& k) {
    std::vector<FamilyExpr> raw;
    SetExpr kp = intersect(k, x.points);
    switch (x.carrier.kind()) {
        case CarrierKind::QLine:
            for (const auto& iv : kp.interval_list()) {
                if (iv.is_degenerate()) continue;
                if (iv.hi.finite()) {
                    Rational r = iv.hi.value;
                    std::uint64_t n0 = 1;
                    Bound a = Bound::neg_inf();
                    if (iv.lo.finite()) {
                        a = Bound::at(iv.lo.value - Rational(1));
                        n0 = static_cast<std::uint64_t>((Rational(1) / (r - iv.lo.value)).ceil());
                        if (Rational(static_cast<std::int64_t>(n0)) * (r - iv.lo.value) <= Rational(1)) ++n0;
                    }
                    raw.emplace_back(x.carrier, std::vector<SetExpr>{},
                                     std::vector<Stream>{Stream::of(StreamSchema::shrink(a, Bound::at(r), false, true, n0))});
                }
                if (iv.lo.finite()) {
                    Rational l = iv.lo.value;
                    std::uint64_t n0 = 1;
                    Bound b = Bound::pos_inf();
                    if (iv.hi.finite()) {
                        b = Bound::at(iv.hi.value + Rational(1));
                        n0 = static_cast<std::uint64_t>((Rational(1) / (iv.hi.value - l)).ceil());
                        if (Rational(static_cast<std::int64_t>(n0)) * (iv.hi.value - l) <= Rational(1)) ++n0;
                    }
                    raw.emplace_back(x.carrier, std::vector<SetExpr>{},
                                     std::vector<Stream>{Stream::of(StreamSchema::shrink(Bound::at(l), b, true, false, n0))});
                }
                if (!iv.lo.finite() || !iv.hi.finite())
                    raw.emplace_back(x.carrier, std::vector<SetExpr>{}, std::vector<Stream>{Stream::of(StreamSchema::grow(1))});
            }
            break;
        case CarrierKind::NatFC:
            raw.emplace_back(x.carrier, std::vector<SetExpr>{}, std::vector<Stream>{Stream::of(StreamSchema::singletons())});
            raw.emplace_back(x.carrier, std::vector<SetExpr>{}, std::vector<Stream>{Stream::of(StreamSchema::initial(0))});
            break;
        default: break;
    }
    std::vector<FamilyExpr> out;
    for (auto& cand : raw) {
        FamilyExpr f = x.points.is_full() ? cand : trace_family(cand, x.points);
        try {
            if (!is_admissible(x, f).yes()) continue;
        } catch (const Error&) {
            continue;
        }
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    return out;
}

SmallnessResult smallness(const GtsPresentation& x, const SetExpr& k) {
    require_carrier(x, k);
    SetExpr kp = intersect(k, x.points);
    auto result = [](Smallness s, std::string why) {
        SmallnessResult r;
        r.value = s;
        r.reason = std::move(why);
        return r;
    };
    if (kp.is_finite()) return result(Smallness::Small, "finite set: every admissible family covers it by finitely many members");
    const auto& pol = x.policy;
    if (pol.kind == CoveragePolicy::Kind::EssFin) return result(Smallness::Small, "admissible families are essentially finite");
    if (pol.kind == CoveragePolicy::Kind::LocallyEssFin) {
        auto r = essentially_finite_on(*pol.base, kp);
        if (r.yes && is_subset(kp, family_union(*pol.base)))
            return result(Smallness::Small, "contained in finitely many base members");
        auto out = result(Smallness::NotSmall, "the admissible base covering is not essentially finite on the set");
        out.witness = *pol.base;
        return out;
    }
    if (pol.kind == CoveragePolicy::Kind::PiecewiseEssFin) {
        const auto& e = *pol.exhaustion;
        if (e.shape == Exhaustion::Shape::Poset) {
            for (std::size_t i = 0; i < e.pieces.size(); ++i)
                if (is_subset(kp, e.pieces[i])) return result(Smallness::Small, "contained in piece " + e.labels[i]);
        } else {
            FamilyExpr gen(e.carrier, {}, {*e.generator});
            auto r = essentially_finite_on(gen, kp);
            if (r.yes && is_subset(kp, family_union(gen))) return result(Smallness::Small, "contained in a piece of the chain");
            try {
                if (is_admissible(x, gen).yes()) {
                    auto out = result(Smallness::NotSmall, "the chain of pieces is admissible and not essentially finite on the set");
                    out.witness = gen;
                    return out;
                }
            } catch (const Error&) {
            }
        }
    }
    for (const auto& f : library_families(x, kp)) {
        if (!essentially_finite_on(f, kp).yes) {
            auto out = result(Smallness::NotSmall, "admissible family with no finite subcover of the set");
            out.witness = f;
            return out;
        }
    }
    return result(Smallness::Unknown, "no policy theorem applies and no library witness was found");
}

Space generate_finite_gts(const Carrier& carrier, const std::vector<SetExpr>& subbasis, const std::string& name) {
    if (carrier.kind() != CarrierKind::FiniteEnum) throw Error(ErrorKind::NonFiniteCarrier, "generation needs a finite carrier");
    std::size_t n = carrier.atoms().size();
    if (n > 63) throw Error(ErrorKind::BudgetExceeded, "too many atoms");
    auto mask_of = [&](const SetExpr& s) {
        if (!(s.carrier() == carrier)) throw Error(ErrorKind::CarrierMismatch, "subbasis set " + s.str() + " not on " + carrier.str());
        std::uint64_t m = 0;
        for (auto i : s.enum_indices()) m |= std::uint64_t{1} << i;
        return m;
    };
    std::vector<std::uint64_t> opens = {0, (std::uint64_t{1} << n) - 1};
    for (const auto& s : subbasis) opens.push_back(mask_of(s));
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    for (bool grew = true; grew;) {
        grew = false;
        std::size_t cnt = opens.size();
        for (std::size_t i = 0; i < cnt; ++i)
            for (std::size_t j = i + 1; j < cnt; ++j)
                for (auto m : {opens[i] | opens[j], opens[i] & opens[j]})
                    if (!std::binary_search(opens.begin(), opens.begin() + cnt, m) &&
                        std::find(opens.begin() + cnt, opens.end(), m) == opens.end()) {
                        opens.push_back(m);
                        grew = true;
                    }
        std::sort(opens.begin(), opens.end());
    }
    GtsPresentation p;
    p.name = name;
    p.carrier = carrier;
    p.points = SetExpr::full(carrier);
    p.opens.kind = OpensSpec::Kind::ExplicitList;
    for (auto m : opens) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (m & (std::uint64_t{1} << i)) idx.push_back(i);
        p.opens.list.push_back(SetExpr::atom_indices(carrier, idx));
    }
    p.policy = CoveragePolicy::all();
    p.notes.push_back("finite collapse: every open family is admissible (Cov = P(Op))");
    return make_space(std::move(p));
}

std::vector<SetExpr> all_opens(const GtsPresentation& x) {
    if (x.opens.kind == OpensSpec::Kind::ExplicitList) return x.opens.list;
    auto pts = finite_points(x.points);
    if (!pts) throw Error(ErrorKind::NonFiniteCarrier, x.name + " has infinitely many points");
    if (pts->size() > 16) throw Error(ErrorKind::BudgetExceeded, "too many points to enumerate open sets");
    std::vector<SetExpr> out;
    for (std::uint32_t m = 0; m < (1u << pts->size()); ++m) {
        std::vector<Point> sub;
        for (std::size_t i = 0; i < pts->size(); ++i)
            if (m & (1u << i)) sub.push_back((*pts)[i]);
        SetExpr s = SetExpr::of_points(x.carrier, sub);
        if (is_open(x, s)) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace gtskit

#include "gtskit/audit.hpp"

#include <algorithm>
#include <random>

#include "gtskit/errors.hpp"

namespace gtskit {

namespace {

constexpr AuditCheck kAxioms[] = {AuditCheck::Finiteness, AuditCheck::Stability, AuditCheck::Transitivity,
                                  AuditCheck::Saturation, AuditCheck::Regularity};
constexpr AuditCheck kProps[] = {AuditCheck::UnionOfAdmissible, AuditCheck::PointwiseUnion, AuditCheck::PointwiseIntersection,
                                 AuditCheck::DisjointSplit,     AuditCheck::Omitting,       AuditCheck::EssFinAdmissible,
                                 AuditCheck::SaturationClosure};

InstanceResult holds() { return {Outcome::Holds, ""}; }
InstanceResult vacuous(std::string why = "premise fails") { return {Outcome::Vacuous, std::move(why)}; }
InstanceResult violated(std::string why) { return {Outcome::Violated, std::move(why)}; }

bool members_open(const GtsPresentation& x, const FamilyExpr& f) {
    try {
        require_open_members(x, f);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// nullopt when the question is ill-posed (non-open member or unsupported)
std::optional<bool> admissible(const GtsPresentation& x, const FamilyExpr& f) {
    try {
        return is_admissible(x, f).yes();
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool adm_yes(const GtsPresentation& x, const FamilyExpr& f) { return admissible(x, f).value_or(false); }

// Conclusion check: a family that should be admissible. Non-open members
// count as a violation.
std::optional<std::string> must_be_admissible(const GtsPresentation& x, const FamilyExpr& f, const std::string& what) {
    try {
        Verdict v = is_admissible(x, f);
        if (v.yes()) return std::nullopt;
        return what + " " + f.str() + " is not admissible: " + v.reason;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonOpenMember) return what + " " + f.str() + " has a non-open member: " + e.what();
        throw;
    }
}

bool safe_open(const GtsPresentation& x, const SetExpr& s) {
    try {
        return is_open(x, s);
    } catch (const Error&) {
        return false;
    }
}

SetExpr family_intersection(const GtsPresentation& x, const FamilyExpr& f) {
    SetExpr out = x.points;
    for (const auto& s : f.finite_part()) out = intersect(out, s);
    return out;
}

FamilyExpr union_family(const GtsPresentation& x, const std::vector<FamilyExpr>& fs) {
    std::vector<SetExpr> u;
    for (const auto& f : fs) u.push_back(family_union(f));
    return FamilyExpr(x.carrier, u);
}

// Members of f worth testing against w: finite part plus stream members up
// to the index past which their position relative to w's constants is fixed.
std::vector<SetExpr> members_against(const FamilyExpr& f, const SetExpr& w) {
    std::vector<SetExpr> out = f.finite_part();
    std::vector<Rational> cs;
    collect_constants(w, cs);
    for (const auto& st : f.streams()) st.collect_constants(cs);
    for (const auto& st : f.streams()) {
        std::uint64_t n_star = stabilization_index(cs, st.start());
        for (std::uint64_t n = st.start(); n <= n_star + 2; ++n) out.push_back(st.member(n));
    }
    return out;
}

InstanceResult run(const GtsPresentation& x, const AuditInstance& in) {
    const auto& F = in.families;
    auto need = [&](std::size_t fams, std::size_t sets) {
        if (F.size() < fams || in.sets.size() < sets)
            throw Error(ErrorKind::InvalidPresentation, "malformed audit instance for " + to_string(in.check));
    };
    switch (in.check) {
        case AuditCheck::Finiteness: {
            need(1, 0);
            const auto& u = F[0];
            if (!u.is_finite() || !members_open(x, u)) return vacuous();
            SetExpr un = family_union(u);
            if (!safe_open(x, un)) return violated("union " + un.str() + " is not open");
            SetExpr in_ = family_intersection(x, u);
            if (!safe_open(x, in_)) return violated("intersection " + in_.str() + " is not open");
            if (auto e = must_be_admissible(x, u, "finite family")) return violated(*e);
            return holds();
        }
        case AuditCheck::Stability: {
            need(1, 1);
            const auto& v = in.sets[0];
            if (!safe_open(x, v) || !adm_yes(x, F[0])) return vacuous();
            FamilyExpr w(x.carrier);
            try {
                w = pointwise_intersection(FamilyExpr(x.carrier, {v}), F[0]);
            } catch (const Error&) {
                return vacuous("pointwise intersection not representable");
            }
            if (auto e = must_be_admissible(x, w, "trace")) return violated(*e);
            return holds();
        }
        case AuditCheck::Transitivity: {
            need(1, 0);
            for (const auto& f : F)
                if (!adm_yes(x, f)) return vacuous();
            if (!adm_yes(x, union_family(x, F))) return vacuous();
            FamilyExpr all(x.carrier);
            for (const auto& f : F) all = all.join(f);
            if (auto e = must_be_admissible(x, all, "joined family")) return violated(*e);
            return holds();
        }
        case AuditCheck::Saturation:
        case AuditCheck::SaturationClosure: {
            need(2, 0);
            if (!adm_yes(x, F[0]) || !members_open(x, F[1]) || !refines(F[0], F[1])) return vacuous();
            if (auto e = must_be_admissible(x, F[1], "coarsening")) return violated(*e);
            return holds();
        }
        case AuditCheck::Regularity: {
            need(1, 1);
            const auto& w = in.sets[0];
            if (!adm_yes(x, F[0])) return vacuous();
            for (const auto& m : members_against(F[0], w))
                if (!safe_open(x, intersect(w, m))) return vacuous();
            SetExpr target = intersect(w, family_union(F[0]));
            if (!safe_open(x, target)) return violated(target.str() + " is not open");
            return holds();
        }
        case AuditCheck::UnionOfAdmissible:
        case AuditCheck::PointwiseUnion:
        case AuditCheck::PointwiseIntersection: {
            need(2, 0);
            if (!adm_yes(x, F[0]) || !adm_yes(x, F[1])) return vacuous();
            FamilyExpr g(x.carrier);
            try {
                g = in.check == AuditCheck::UnionOfAdmissible ? F[0].join(F[1])
                    : in.check == AuditCheck::PointwiseUnion  ? pointwise_union(F[0], F[1])
                                                              : pointwise_intersection(F[0], F[1]);
            } catch (const Error&) {
                return vacuous("pointwise family not representable");
            }
            if (auto e = must_be_admissible(x, g, "combined family")) return violated(*e);
            return holds();
        }
        case AuditCheck::DisjointSplit: {
            need(2, 0);
            SetExpr a = family_union(F[0]), b = family_union(F[1]);
            if (!safe_open(x, a) || !safe_open(x, b) || !are_disjoint(a, b)) return vacuous();
            if (!adm_yes(x, F[0].join(F[1]))) return vacuous();
            for (const auto& f : {F[0], F[1]})
                if (auto e = must_be_admissible(x, f, "part")) return violated(*e);
            return holds();
        }
        case AuditCheck::Omitting: {
            need(2, 0);
            for (const auto& f : F)
                if (!adm_yes(x, f)) return vacuous();
            FamilyExpr big = F[0], small = F[0];
            for (std::size_t j = 1; j < F.size(); ++j) {
                big = big.join(F[j]).with(family_union(F[j]));
                small = small.join(F[j]);
            }
            if (!adm_yes(x, big)) return vacuous();
            if (auto e = must_be_admissible(x, small, "family without the unions")) return violated(*e);
            return holds();
        }
        case AuditCheck::EssFinAdmissible: {
            need(1, 0);
            if (!members_open(x, F[0]) || !essentially_finite_on(F[0], family_union(F[0])).yes) return vacuous();
            if (auto e = must_be_admissible(x, F[0], "essentially finite family")) return violated(*e);
            return holds();
        }
    }
    return vacuous();
}

// ---- generators ----

struct Gen {
    const GtsPresentation& x;
    std::mt19937_64 rng;
    std::optional<std::vector<SetExpr>> opens;

    Gen(const GtsPresentation& x_, std::uint64_t seed, std::uint64_t index) : x(x_) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        rng.seed(sq);
    }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); }
    bool coin(int num = 1, int den = 2) { return static_cast<int>(below(static_cast<std::uint64_t>(den))) < num; }

    Rational rat() {
        auto num = static_cast<std::int64_t>(below(65)) - 32;
        auto den = static_cast<std::int64_t>(below(32)) + 1;
        if (coin(2, 3)) den = std::min<std::int64_t>(den, 4);
        return Rational(num, den);
    }

    Interval interval(bool open) {
        Rational a = rat(), b = rat();
        if (b < a) std::swap(a, b);
        if (a == b) b = a + Rational(1);
        Bound lo = coin(1, 10) ? Bound::neg_inf() : Bound::at(a);
        Bound hi = coin(1, 10) ? Bound::pos_inf() : Bound::at(b);
        Interval iv = Interval::open(lo, hi);
        if (!open) {
            iv.lo_closed = lo.finite() && coin();
            iv.hi_closed = hi.finite() && coin();
            if (coin(1, 8) && lo.finite()) iv = Interval::point(a);
        }
        return iv;
    }

    SetExpr subset(const Carrier& c) {
        switch (c.kind()) {
            case CarrierKind::QLine: {
                std::vector<Interval> ivs;
                for (auto k = below(3) + 1; k > 0; --k) ivs.push_back(interval(false));
                return SetExpr::intervals(ivs);
            }
            case CarrierKind::NatFC: {
                std::vector<std::uint64_t> e;
                for (auto k = below(6); k > 0; --k) e.push_back(below(33));
                return coin(3, 4) ? SetExpr::nat_finite(e) : SetExpr::nat_cofinite(e);
            }
            case CarrierKind::FiniteEnum: {
                std::vector<std::size_t> idx;
                for (std::size_t i = 0; i < c.atoms().size(); ++i)
                    if (coin()) idx.push_back(i);
                return SetExpr::atom_indices(c, idx);
            }
            case CarrierKind::Product: {
                SetExpr out = SetExpr::empty(c);
                for (auto k = below(2) + 1; k > 0; --k) out = unite(out, SetExpr::box(subset(c.left()), subset(c.right())));
                return out;
            }
        }
        return SetExpr::empty(c);
    }

    SetExpr open_candidate(const GtsPresentation& p) {
        if (auto pts = finite_points(p.points); pts && pts->size() <= 16) {
            if (&p == &x) {
                if (!opens) opens = all_opens(x);
                return (*opens)[below(opens->size())];
            }
            auto os = all_opens(p);
            return os[below(os.size())];
        }
        switch (p.opens.kind) {
            case OpensSpec::Kind::AllCanonicalOpen: {
                std::vector<Interval> ivs;
                for (auto k = below(3) + 1; k > 0; --k) ivs.push_back(interval(true));
                return intersect(SetExpr::intervals(ivs), p.points);
            }
            case OpensSpec::Kind::FiniteOrWhole:
                if (coin(1, 7)) return p.points;
                return intersect(subset(p.carrier), intersect(p.points, p.carrier.kind() == CarrierKind::NatFC
                                                                            ? SetExpr::nat_range(0, 32)
                                                                            : SetExpr::full(p.carrier)));
            case OpensSpec::Kind::AllSets: return intersect(subset(p.carrier), p.points);
            case OpensSpec::Kind::ProductOpens: {
                SetExpr out = SetExpr::empty(p.carrier);
                for (auto k = below(2) + 1; k > 0; --k)
                    out = unite(out, SetExpr::box(open_of(*p.opens.parts[0]), open_of(*p.opens.parts[1])));
                return intersect(out, p.points);
            }
            case OpensSpec::Kind::Summands: {
                SetExpr out = SetExpr::empty(p.carrier);
                for (std::size_t i = 0; i < p.opens.parts.size(); ++i)
                    if (coin()) out = unite(out, SetExpr::box(SetExpr::atom_indices(p.carrier.left(), {i}), open_of(*p.opens.parts[i])));
                return out;
            }
            case OpensSpec::Kind::Glued: {
                SetExpr out = SetExpr::empty(p.carrier);
                for (const auto& part : p.opens.parts)
                    if (coin()) out = unite(out, open_of(*part));
                return out;
            }
            case OpensSpec::Kind::ExplicitList: return p.opens.list[below(p.opens.list.size())];
        }
        return SetExpr::empty(p.carrier);
    }

    SetExpr open_of(const GtsPresentation& p) {
        for (int tries = 0; tries < 16; ++tries) {
            SetExpr s = open_candidate(p);
            if (safe_open(p, s)) return s;
        }
        return SetExpr::empty(p.carrier);
    }

    std::optional<Stream> stream() {
        std::optional<Stream> s;
        switch (x.carrier.kind()) {
            case CarrierKind::QLine: {
                if (coin(1, 4)) {
                    s = Stream::of(StreamSchema::grow(below(3) + 1));
                    break;
                }
                Rational a = rat(), b = rat();
                if (b < a) std::swap(a, b);
                if (a == b) b = a + Rational(1);
                bool l = coin(), r = !l || coin();
                Bound lo = coin(1, 8) ? Bound::neg_inf() : Bound::at(a);
                Bound hi = coin(1, 8) ? Bound::pos_inf() : Bound::at(b);
                if (!lo.finite()) l = false;
                if (!hi.finite()) r = false;
                std::uint64_t n0 = 1;
                if (lo.finite() && hi.finite()) {
                    Rational need = Rational((l ? 1 : 0) + (r ? 1 : 0)) / (b - a);
                    n0 = static_cast<std::uint64_t>(std::max<std::int64_t>(1, need.ceil() + 1));
                }
                n0 += below(3);
                s = Stream::of(StreamSchema::shrink(lo, hi, l, r, n0));
                break;
            }
            case CarrierKind::NatFC:
                s = coin() ? Stream::of(StreamSchema::singletons()) : Stream::of(StreamSchema::initial(below(4)));
                break;
            default: return std::nullopt;
        }
        if (!x.points.is_full()) s = Stream::inter(*s, Stream::constant(x.points));
        if (!members_open(x, FamilyExpr(x.carrier, {}, {*s}))) return std::nullopt;
        return s;
    }

    FamilyExpr family(bool bias, std::size_t max_finite = 6) {
        std::vector<SetExpr> fin;
        for (auto k = below(max_finite + 1); k > 0; --k) fin.push_back(open_of(x));
        std::vector<Stream> streams;
        for (auto k = below(3); k > 0; --k)
            if (auto s = stream()) streams.push_back(*s);
        FamilyExpr f(x.carrier, fin, streams);
        if (bias && coin()) {
            SetExpr u = family_union(f);
            if (safe_open(x, u)) f = f.with(u);
        }
        return f;
    }

    SetExpr open_inside(const SetExpr& u) {
        for (int tries = 0; tries < 8; ++tries) {
            SetExpr s = intersect(open_of(x), u);
            if (safe_open(x, s)) return s;
        }
        return SetExpr::empty(x.carrier);
    }

    AuditInstance make(AuditCheck c, std::uint64_t index) {
        AuditInstance in;
        in.check = c;
        in.index = index;
        switch (c) {
            case AuditCheck::Finiteness: in.families = {FamilyExpr(x.carrier, family(false).finite_part())}; break;
            case AuditCheck::Stability:
                in.sets = {open_of(x)};
                in.families = {family(true)};
                break;
            case AuditCheck::Transitivity:
                for (auto k = below(2) + 2; k > 0; --k) in.families.push_back(family(true, 3));
                break;
            case AuditCheck::Saturation: {
                FamilyExpr u = family(true);
                SetExpr un = family_union(u);
                FamilyExpr v = u;
                for (auto k = below(3); k > 0; --k) v = v.with(open_inside(un));
                if (coin() && safe_open(x, un)) v = v.with(un);
                in.families = {u, v};
                break;
            }
            case AuditCheck::SaturationClosure: {
                FamilyExpr u = family(true);
                SetExpr o = open_inside(family_union(u));
                FamilyExpr v = u;
                try {
                    v = pointwise_union(u, FamilyExpr(x.carrier, {o}));
                } catch (const Error&) {
                }
                in.families = {u, v};
                break;
            }
            case AuditCheck::Regularity: {
                FamilyExpr u = family(true);
                SetExpr w = subset(x.carrier);
                if (coin()) w = unite(open_of(x), minus(w, family_union(u)));
                in.sets = {w};
                in.families = {u};
                break;
            }
            case AuditCheck::UnionOfAdmissible:
            case AuditCheck::PointwiseUnion:
            case AuditCheck::PointwiseIntersection: in.families = {family(true), family(true)}; break;
            case AuditCheck::DisjointSplit: {
                SetExpr o1 = open_of(x);
                auto o2 = largest_open_in(x, minus(x.points, o1));
                FamilyExpr u = family(true), v = family(true);
                try {
                    u = pointwise_intersection(u, FamilyExpr(x.carrier, {o1}));
                    if (o2) v = pointwise_intersection(v, FamilyExpr(x.carrier, {*o2}));
                } catch (const Error&) {
                }
                in.families = {u, v};
                break;
            }
            case AuditCheck::Omitting:
                in.families = {family(true, 3)};
                for (auto k = below(2) + 1; k > 0; --k) in.families.push_back(family(true, 3));
                break;
            case AuditCheck::EssFinAdmissible: in.families = {family(coin())}; break;
        }
        return in;
    }
};

void record(AuditReport& r, const AuditInstance& in, const InstanceResult& res) {
    auto it = std::find_if(r.tallies.begin(), r.tallies.end(), [&](const CheckTally& t) { return t.check == in.check; });
    if (it == r.tallies.end()) {
        r.tallies.push_back(CheckTally{in.check, 0, 0, {}});
        std::sort(r.tallies.begin(), r.tallies.end(), [](const CheckTally& a, const CheckTally& b) { return a.check < b.check; });
        it = std::find_if(r.tallies.begin(), r.tallies.end(), [&](const CheckTally& t) { return t.check == in.check; });
    }
    ++r.instances;
    switch (res.outcome) {
        case Outcome::Holds: ++it->pass_count; break;
        case Outcome::Vacuous: ++it->vacuous; break;
        case Outcome::Violated: it->violations.push_back({in, res.detail}); break;
    }
}

template <std::size_t N>
AuditReport seeded(const GtsPresentation& x, std::uint64_t budget, std::uint64_t seed, const AuditCheck (&kinds)[N]) {
    AuditReport r;
    r.space = x.name;
    r.budget = budget;
    r.seed = seed;
    for (auto c : kinds) r.tallies.push_back(CheckTally{c, 0, 0, {}});
    for (std::uint64_t i = 0; i < budget; ++i) {
        Gen g(x, seed, i);
        AuditInstance in = g.make(kinds[i % N], i);
        record(r, in, check_instance(x, in));
    }
    return r;
}

}  // namespace

std::string to_string(AuditCheck c) {
    switch (c) {
        case AuditCheck::Finiteness: return "finiteness";
        case AuditCheck::Stability: return "stability";
        case AuditCheck::Transitivity: return "transitivity";
        case AuditCheck::Saturation: return "saturation";
        case AuditCheck::Regularity: return "regularity";
        case AuditCheck::UnionOfAdmissible: return "union";
        case AuditCheck::PointwiseUnion: return "pointwise-union";
        case AuditCheck::PointwiseIntersection: return "pointwise-intersection";
        case AuditCheck::DisjointSplit: return "disjoint-split";
        case AuditCheck::Omitting: return "omitting";
        case AuditCheck::EssFinAdmissible: return "essfin-admissible";
        case AuditCheck::SaturationClosure: return "saturation-closure";
    }
    return "?";
}

std::optional<AuditCheck> audit_check_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(AuditCheck::SaturationClosure); ++i)
        if (to_string(static_cast<AuditCheck>(i)) == s) return static_cast<AuditCheck>(i);
    return std::nullopt;
}

InstanceResult check_instance(const GtsPresentation& x, const AuditInstance& inst) {
    try {
        return run(x, inst);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidPresentation) throw;
        return violated(std::string("evaluation failed: ") + e.what());
    }
}

std::size_t AuditReport::violation_count() const {
    std::size_t n = 0;
    for (const auto& t : tallies) n += t.violations.size();
    return n;
}

AuditReport audit_axioms(const GtsPresentation& x, std::uint64_t budget, std::uint64_t seed) {
    return seeded(x, budget, seed, kAxioms);
}

AuditReport audit_propositions(const GtsPresentation& x, std::uint64_t budget, std::uint64_t seed) {
    return seeded(x, budget, seed, kProps);
}

AuditReport audit_exhaustive(const GtsPresentation& x) {
    auto pts = finite_points(x.points);
    if (!pts) throw Error(ErrorKind::NonFiniteCarrier, x.name + " has infinitely many points");
    std::vector<SetExpr> ops = all_opens(x);
    AuditReport r;
    r.space = x.name;
    for (auto c : kAxioms) r.tallies.push_back(CheckTally{c, 0, 0, {}});
    // on n points any union or intersection is attained by at most n members
    std::size_t cap = std::max<std::size_t>(4, pts->size());
    std::vector<std::vector<std::size_t>> fams;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        fams.push_back(cur);
        if (cur.size() == cap) return;
        for (std::size_t i = from; i < ops.size(); ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    if (ops.size() > cap) {
        std::vector<std::size_t> all(ops.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        fams.push_back(all);
    }
    std::vector<SetExpr> subsets;
    if (pts->size() <= 6) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << pts->size()); ++m) {
            std::vector<Point> sel;
            for (std::size_t i = 0; i < pts->size(); ++i)
                if (m & (std::uint64_t{1} << i)) sel.push_back((*pts)[i]);
            subsets.push_back(SetExpr::of_points(x.carrier, sel));
        }
    } else {
        subsets = ops;
    }
    std::uint64_t idx = 0;
    auto go = [&](AuditInstance in) {
        in.index = idx++;
        record(r, in, check_instance(x, in));
    };
    for (const auto& f : fams) {
        std::vector<SetExpr> mem;
        for (auto i : f) mem.push_back(ops[i]);
        FamilyExpr u(x.carrier, mem);
        SetExpr un = family_union(u);
        go({AuditCheck::Finiteness, 0, {}, {u}});
        for (const auto& v : ops) go({AuditCheck::Stability, 0, {v}, {u}});
        for (const auto& w : subsets) go({AuditCheck::Regularity, 0, {w}, {u}});
        for (const auto& o : ops)
            if (is_subset(o, un)) go({AuditCheck::Saturation, 0, {}, {u, u.with(o)}});
        std::size_t h = mem.size() / 2;
        FamilyExpr a(x.carrier, std::vector<SetExpr>(mem.begin(), mem.begin() + static_cast<std::ptrdiff_t>(h)));
        FamilyExpr b(x.carrier, std::vector<SetExpr>(mem.begin() + static_cast<std::ptrdiff_t>(h), mem.end()));
        go({AuditCheck::Transitivity, 0, {}, {a, b}});
    }
    r.budget = r.instances;
    return r;
}

SetExpr random_open(const GtsPresentation& x, std::uint64_t seed) {
    Gen g(x, seed, 0);
    return g.open_of(x);
}

FamilyExpr random_family(const GtsPresentation& x, std::uint64_t seed, bool admissible_bias) {
    Gen g(x, seed, 0);
    return g.family(admissible_bias);
}

}  // namespace gtskit

#include "doctest.h"

#include <set>

#include "gtskit/constructions.hpp"
#include "gtskit/errors.hpp"
#include "gtskit/topo_props.hpp"
#include "oracles.hpp"

using namespace gtskit;
using oracle::Mask;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
SetExpr iv_open(Rational a, Rational b) { return SetExpr::interval(Interval::open(a, b)); }

Carrier enum_carrier(int n) {
    std::vector<std::string> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back(std::to_string(i));
    return Carrier::finite_enum(atoms);
}

SetExpr mask_set(const Carrier& c, Mask m) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < c.atoms().size(); ++i)
        if (m & (1u << i)) idx.push_back(i);
    return SetExpr::atom_indices(c, idx);
}

Mask set_mask(const SetExpr& s) {
    Mask m = 0;
    for (auto i : s.enum_indices()) m |= 1u << i;
    return m;
}

Space finite_space(const Carrier& c, const std::vector<Mask>& opens, CoveragePolicy pol = CoveragePolicy::all()) {
    GtsPresentation p;
    p.name = "T";
    p.carrier = c;
    p.points = SetExpr::full(c);
    p.opens.kind = OpensSpec::Kind::ExplicitList;
    for (auto m : opens) p.opens.list.push_back(mask_set(c, m));
    p.policy = pol;
    return make_space(p);
}

bool has(const std::vector<Mask>& opens, Mask m) { return std::find(opens.begin(), opens.end(), m) != opens.end(); }

// Direct quantifier-by-quantifier separation checks.
struct Sep {
    bool wt1 = true, st1 = true, wh = true, wr = true, wn = true;
};

Sep brute_separation(const std::vector<Mask>& opens, int n) {
    Sep s;
    Mask full = (Mask{1} << n) - 1;
    auto split = [&](Mask a, Mask b) {
        for (Mask u : opens)
            for (Mask v : opens)
                if ((u & a) == a && (v & b) == b && !(u & v)) return true;
        return false;
    };
    std::vector<Mask> fs;  // closed sets and singletons
    for (Mask o : opens) fs.push_back(full & ~o);
    for (int i = 0; i < n; ++i) fs.push_back(Mask{1} << i);
    for (int x = 0; x < n; ++x) {
        if (!has(opens, full & ~(Mask{1} << x))) s.st1 = false;
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            bool found = false;
            for (Mask u : opens)
                if ((u >> x & 1) && !(u >> y & 1)) found = true;
            if (!found) s.wt1 = false;
            if (!split(Mask{1} << x, Mask{1} << y)) s.wh = false;
        }
        for (Mask f : fs)
            if (f && !(f >> x & 1) && !split(Mask{1} << x, f)) s.wr = false;
    }
    for (Mask f : fs)
        for (Mask g : fs)
            if (f && g && !(f & g) && !split(f, g)) s.wn = false;
    return s;
}

Space one_point_nat() {
    GtsPresentation p = *discrete_small_nat();
    p.name = "P0";
    p.points = SetExpr::nat_finite({0});
    return make_space(p);
}

Tri tri(bool b) { return b ? Tri::Yes : Tri::No; }

}  // namespace

TEST_CASE("components and quasi-components on all small finite topologies") {
    for (int n = 1; n <= 4; ++n) {
        Carrier c = enum_carrier(n);
        for (const auto& t : oracle::all_topologies(n)) {
            auto x = finite_space(c, t);
            auto comp = components(*x);
            auto quasi = quasi_components(*x);
            REQUIRE(comp.classes.is_finite());
            std::set<Mask> got, want, got_q, want_q;
            for (const auto& s : comp.classes.finite_part()) {
                got.insert(set_mask(s));
                CHECK(weak_closure_of(*x, s) == s);
            }
            for (const auto& s : quasi.finite_part()) got_q.insert(set_mask(s));
            for (int i = 0; i < n; ++i) {
                want.insert(oracle::component(t, n, i));
                want_q.insert(oracle::quasi_component(t, n, i));
                CHECK((oracle::component(t, n, i) & ~oracle::quasi_component(t, n, i)) == 0);
            }
            CHECK(got == want);
            CHECK(got_q == want_q);
            // ACC under the All policy: components open
            bool all_open = true;
            for (Mask m : want) all_open = all_open && has(t, m);
            CHECK(comp.acc.value == tri(all_open));
            for (Mask s = 1; s < (Mask{1} << n); ++s) CHECK(is_connected(*x, mask_set(c, s)) == oracle::connected(t, s));
        }
    }
}

TEST_CASE("connected unions through a common point") {
    for (int n = 1; n <= 4; ++n) {
        Carrier c = enum_carrier(n);
        for (const auto& t : oracle::all_topologies(n)) {
            auto x = finite_space(c, t);
            for (int p = 0; p < n; ++p) {
                std::vector<Mask> conn;
                for (Mask s = 1; s < (Mask{1} << n); ++s)
                    if ((s >> p & 1) && is_connected(*x, mask_set(c, s))) conn.push_back(s);
                for (std::uint32_t pick = 1; pick < (1u << conn.size()); ++pick) {
                    Mask u = 0;
                    for (std::size_t i = 0; i < conn.size(); ++i)
                        if (pick >> i & 1) u |= conn[i];
                    CHECK(is_connected(*x, mask_set(c, u)));
                }
            }
        }
    }
}

TEST_CASE("named component examples") {
    auto s = sierpinski();
    auto cs = components(*s);
    REQUIRE(cs.classes.finite_part().size() == 1);
    CHECK(cs.classes.finite_part()[0] == s->points);

    auto one = components(*one_point());
    CHECK(one.classes.finite_part().size() == 1);

    auto two = subspace(rs_alg(), unite(iv_open(q(0), q(1)), iv_open(q(2), q(3))));
    auto c2 = components(*two);
    CHECK(c2.classes.finite_part().size() == 2);
    CHECK(c2.acc.yes());

    Carrier c = enum_carrier(3);
    CHECK(quasi_components(*finite_space(c, {0, 1, 2, 3, 4, 5, 6, 7})).finite_part().size() == 3);
    CHECK(quasi_components(*finite_space(c, {0, 7})).finite_part().size() == 1);
    CHECK_THROWS_AS(quasi_components(*rs_alg()), Error);
}

TEST_CASE("small spaces with ACC have finitely many components") {
    int checked = 0;
    for (const auto& x : shipped_presentations()) {
        std::optional<Components> cs;
        try {
            cs = components(*x);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UnsupportedPresentation);
            continue;
        }
        if (x->policy.kind == CoveragePolicy::Kind::EssFin && cs->acc.yes()) {
            CHECK(cs->classes.is_finite());
            ++checked;
        }
    }
    CHECK(checked >= 2);
    // infinitely many singleton components: not admissible in the small discrete N
    auto d = components(*discrete_small_nat());
    CHECK(!d.classes.is_finite());
    CHECK(d.acc.no());
    CHECK(components(*top_discrete_nat()).acc.yes());
}

TEST_CASE("separation flags agree with direct quantification") {
    for (int n = 1; n <= 4; ++n) {
        Carrier c = enum_carrier(n);
        for (const auto& t : oracle::all_topologies(n)) {
            auto r = separation_report(*finite_space(c, t));
            auto b = brute_separation(t, n);
            CHECK(r.weakly_t1.value == tri(b.wt1));
            CHECK(r.strongly_t1.value == tri(b.st1));
            CHECK(r.weakly_hausdorff.value == tri(b.wh));
            CHECK(r.strongly_hausdorff.value == tri(b.wh && b.st1));
            CHECK(r.weakly_regular.value == tri(b.wr));
            CHECK(r.strongly_regular.value == tri(b.wr && b.st1));
            CHECK(r.weakly_normal.value == tri(b.wn));
            CHECK(r.strongly_normal.value == tri(b.wn && b.st1));
            CHECK(implications_hold(r));
        }
    }
}

TEST_CASE("separation on symbolic presentations") {
    auto wd = separation_report(*wd_space());
    CHECK(wd.weakly_t1.yes());
    CHECK(wd.strongly_t1.no());
    REQUIRE(wd.strongly_t1.set.has_value());
    CHECK(!is_open(*wd_space(), *wd.strongly_t1.set));
    CHECK(wd.strongly_t1.set->nat_complemented());

    auto rs = rs_alg();
    auto r = separation_report(*rs);
    CHECK(r.weakly_hausdorff.yes());
    CHECK(r.strongly_hausdorff.yes());
    // midpoint separation on sampled pairs
    auto pts = enumerate_points(rs->points, 20, 3);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Rational a = std::min(pts[i].rat, pts[i + 1].rat), b = std::max(pts[i].rat, pts[i + 1].rat);
        if (a == b) continue;
        Rational m = (a + b) / Rational(2);
        SetExpr u = SetExpr::interval(Interval::open(Bound::neg_inf(), Bound::at(m)));
        SetExpr v = SetExpr::interval(Interval::open(Bound::at(m), Bound::pos_inf()));
        CHECK(is_open(*rs, u));
        CHECK(is_open(*rs, v));
        CHECK(are_disjoint(u, v));
        CHECK(contains(u, Point::of_rat(a)));
        CHECK(contains(v, Point::of_rat(b)));
    }

    auto one = separation_report(*one_point());
    for (const auto& [name, v] : one.flags()) CHECK_MESSAGE(v->yes(), name);

    for (const auto& x : shipped_presentations()) CHECK_MESSAGE(implications_hold(separation_report(*x)), x->name);
    auto sum = separation_report(*direct_sum({sierpinski(), sierpinski()}));
    CHECK(sum.weakly_t1.no());
    CHECK(sum.strongly_hausdorff.no());
    auto sum_points = separation_report(*direct_sum({discrete_small_nat(), one_point_nat()}));
    CHECK(sum_points.strongly_normal.yes());
}

TEST_CASE("density and separability") {
    auto rs = rs_alg();
    CHECK(is_dense(*rs, rs->points).yes());
    // every nonempty representative open contains a rational (its midpoint or an endpoint offset)
    for (const auto& o : representative_opens(*rs, {q(0), q(1)})) {
        if (o.is_empty()) continue;
        CHECK(!enumerate_points(o, 1).empty());
    }
    auto wd = wd_space();
    auto d = is_dense(*wd, SetExpr::nat_finite({0}));
    CHECK(d.no());
    REQUIRE(d.set.has_value());
    CHECK(is_open(*wd, *d.set));
    CHECK(are_disjoint(*d.set, SetExpr::nat_finite({0})));
    CHECK(weak_closure_of(*wd, SetExpr::nat_finite({0})) == SetExpr::nat_finite({0}));
    CHECK(is_dense(*wd, wd->points).yes());
    CHECK(is_dense(*rs, iv_open(q(0), q(1))).no());
    for (const auto& x : shipped_presentations()) CHECK(is_separable(*x).yes());
}

TEST_CASE("bases") {
    // exhaustive on 3 points, every subfamily of the opens, All policy
    Carrier c = enum_carrier(3);
    for (const auto& t : oracle::all_topologies(3)) {
        auto x = finite_space(c, t);
        for (std::uint32_t pick = 0; pick < (1u << t.size()); ++pick) {
            std::vector<SetExpr> fam;
            std::vector<Mask> bm;
            for (std::size_t i = 0; i < t.size(); ++i)
                if (pick >> i & 1) {
                    fam.push_back(mask_set(c, t[i]));
                    bm.push_back(t[i]);
                }
            bool want = true;
            for (Mask o : t) {
                Mask u = 0;
                for (Mask b : bm)
                    if ((b & o) == b) u |= b;
                if (u != o) want = false;
            }
            CHECK(is_basis(*x, FamilyExpr(c, fam)).value == tri(want));
        }
    }
    CHECK(rational_intervals_basis(*rs_alg()).yes());
    CHECK(rational_intervals_basis(*r_top()).yes());
    auto whole = is_basis(*rs_alg(), FamilyExpr(Carrier::qline(), {rs_alg()->points}));
    CHECK(whole.no());
    REQUIRE(whole.set.has_value());
    CHECK(is_open(*rs_alg(), *whole.set));
    CHECK(!whole.set->is_full());
    CHECK_THROWS_AS(is_basis(*rs_alg(), FamilyExpr(Carrier::qline(), {SetExpr::interval(Interval::closed(q(0), q(1)))})), Error);
}

TEST_CASE("map classification") {
    auto id = identity_map(top_discrete_nat(), discrete_small_nat());
    auto r = classify_map(id);
    CHECK(r.strictly_continuous.yes());
    CHECK(r.open_map.yes());
    CHECK(r.closed_map.yes());
    CHECK(r.strict_homeo.no());

    for (const auto& x : shipped_presentations()) {
        auto h = is_strict_homeo(identity_map(x, x));
        CHECK_MESSAGE(h.yes(), x->name);
    }

    auto sq = rs_alg_squared();
    auto pr = projection_map(sq, rs_alg(), 0);
    CHECK(is_open_map(pr).yes());
    CHECK(is_closed_map(pr).yes());
    auto fp = product(sierpinski(), sierpinski());
    CHECK(is_open_map(fp.pr1).yes());
    CHECK(is_closed_map(fp.pr1).yes());

    // all maps between 3-point spaces: open/closed flags against brute force,
    // strict homeomorphisms are open and closed
    Carrier c = enum_carrier(3);
    auto tops = oracle::all_topologies(3);
    for (std::size_t a = 0; a < tops.size(); a += 4)
        for (std::size_t b = 0; b < tops.size(); b += 5) {
            auto x = finite_space(c, tops[a]);
            auto y = finite_space(c, tops[b]);
            for (int code = 0; code < 27; ++code) {
                int img[3] = {code % 3, code / 3 % 3, code / 9};
                std::vector<std::pair<Point, Point>> tab;
                for (int i = 0; i < 3; ++i) tab.push_back({Point::of_atom(std::to_string(i)), Point::of_atom(std::to_string(img[i]))});
                auto f = table_map(x, y, tab);
                auto image_mask = [&](Mask m) {
                    Mask out = 0;
                    for (int i = 0; i < 3; ++i)
                        if (m >> i & 1) out |= Mask{1} << img[i];
                    return out;
                };
                bool open = true, closed = true;
                for (Mask o : tops[a]) {
                    if (!has(tops[b], image_mask(o))) open = false;
                    if (!has(tops[b], 7 & ~image_mask(7 & ~o))) closed = false;
                }
                auto m = classify_map(f);
                CHECK(m.open_map.value == tri(open));
                CHECK(m.closed_map.value == tri(closed));
                if (m.strict_homeo.yes()) {
                    CHECK(m.open_map.yes());
                    CHECK(m.closed_map.yes());
                }
            }
        }
}

TEST_CASE("local strict homeomorphisms") {
    auto rs = rs_alg();
    auto id = identity_map(rs, rs);
    FamilyExpr cov(Carrier::qline(), {SetExpr::interval(Interval::open(Bound::neg_inf(), Bound::at(q(1)))),
                                      SetExpr::interval(Interval::open(Bound::at(q(0)), Bound::pos_inf()))});
    CHECK(is_local_strict_homeo(id, cov).yes());

    // two discrete points folded onto one: local but not global
    Carrier ab = Carrier::finite_enum({"a", "b"});
    auto disc = finite_space(ab, {0, 1, 2, 3});
    auto pt = one_point();
    auto fold = constant_map(disc, pt, enumerate_points(pt->points, 1).at(0));
    CHECK(is_strict_homeo(fold).no());
    FamilyExpr singles(ab, {mask_set(ab, 1), mask_set(ab, 2)});
    CHECK(is_local_strict_homeo(fold, singles).yes());
    CHECK(is_local_strict_homeo(fold).no());
    // a covering that is not open is rejected
    CHECK_THROWS_AS(is_local_strict_homeo(id, FamilyExpr(Carrier::qline(), {SetExpr::interval(Interval::closed(q(0), q(1)))})), Error);
}

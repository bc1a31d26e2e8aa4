#include "doctest.h"

#include "gtskit/errors.hpp"
#include "gtskit/gts_core.hpp"
#include "oracles.hpp"

using namespace gtskit;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
SetExpr iv_open(Rational a, Rational b) { return SetExpr::interval(Interval::open(a, b)); }
SetExpr iv_closed(Rational a, Rational b) { return SetExpr::interval(Interval::closed(a, b)); }
Stream shrink_both(std::int64_t a, std::int64_t b, std::uint64_t n0) {
    return Stream::of(StreamSchema::shrink(Bound::at(q(a)), Bound::at(q(b)), true, true, n0));
}

Space localized_line() {
    GtsPresentation p = *rs_alg();
    p.name = "RLoc";
    p.policy = CoveragePolicy::locally(FamilyExpr(Carrier::qline(), {}, {Stream::of(StreamSchema::grow(1))}));
    return make_space(p);
}

}  // namespace

TEST_CASE("open sets") {
    auto rs = rs_alg();
    CHECK(is_open(*rs, unite(iv_open(q(0), q(1)), iv_open(q(2), q(3)))));
    CHECK(!is_open(*rs, iv_closed(q(0), q(1))));
    auto wd = wd_space();
    CHECK(is_open(*wd, SetExpr::nat_finite({5, 7})));
    CHECK(!is_open(*wd, SetExpr::nat_cofinite({0})));
    CHECK(is_open(*wd, SetExpr::full(Carrier::nat())));
    for (const auto& x : {rs, wd, r_top(), discrete_small_nat(), top_discrete_nat(), chain_nat(), one_point(), sierpinski()})
        CHECK(is_open(*x, SetExpr::empty(x->carrier)));
    CHECK_THROWS_AS(is_open(*rs, SetExpr::nat_finite({1})), Error);
}

TEST_CASE("A1/A2 validation of explicit lists") {
    GtsPresentation p;
    p.carrier = Carrier::finite_enum({"a", "b", "c"});
    p.points = SetExpr::full(p.carrier);
    p.opens.kind = OpensSpec::Kind::ExplicitList;
    p.opens.list = {SetExpr::empty(p.carrier), SetExpr::atoms(p.carrier, {"a"}), SetExpr::atoms(p.carrier, {"b"}), p.points};
    CHECK_THROWS_AS(make_space(p), Error);
    p.opens.list.push_back(SetExpr::atoms(p.carrier, {"a", "b"}));
    CHECK_NOTHROW(make_space(p));
}

TEST_CASE("intersection of admissible families need not be admissible") {
    auto rs = rs_alg();
    FamilyExpr u(Carrier::qline(), {}, {shrink_both(0, 1, 3)});
    FamilyExpr uv = u.with(iv_open(q(0), q(1)));
    FamilyExpr uw = u.with(iv_open(q(0), q(2)));
    CHECK(is_admissible(*rs, uv).yes());
    CHECK(is_admissible(*rs, uw).yes());
    CHECK(is_admissible(*rs, u).no());
    // U = (U u V) n (U u W) member-wise
    CHECK(refines(u, FamilyExpr(Carrier::qline(), {iv_open(q(0), q(1))})));
    CHECK(is_admissible(*r_top(), u).yes());
    CHECK_THROWS_AS(is_admissible(*rs, FamilyExpr(Carrier::qline(), {iv_closed(q(0), q(1))})), Error);
}

TEST_CASE("locally essentially finite families on the localized line") {
    auto loc = localized_line();
    // unit intervals (n, n+1) for -10 <= n < 10, tails (10, +inf) and (-inf, -10)
    std::vector<SetExpr> fin;
    for (std::int64_t n = -10; n < 10; ++n) fin.push_back(iv_open(q(n), q(n + 1)));
    fin.push_back(SetExpr::interval(Interval::open(Bound::at(q(10)), Bound::pos_inf())));
    fin.push_back(SetExpr::interval(Interval::open(Bound::neg_inf(), Bound::at(q(-10)))));
    FamilyExpr units(Carrier::qline(), fin);
    CHECK(is_admissible(*loc, units).yes());
    // oracle: each ball (-m, m), m <= 10, meets finitely many members
    for (std::int64_t m = 1; m <= 10; ++m) {
        int meets = 0;
        for (const auto& s : fin)
            if (!are_disjoint(s, iv_open(q(-m), q(m)))) ++meets;
        CHECK(meets <= 2 * m + 2);
    }
    // a stream accumulating at 5 is not locally essentially finite
    FamilyExpr acc(Carrier::qline(), {}, {Stream::of(StreamSchema::shrink(Bound::at(q(5)), Bound::pos_inf(), true, false, 1))});
    CHECK(is_admissible(*loc, acc).no());
    CHECK(is_admissible(*loc, FamilyExpr(Carrier::qline(), {}, {shrink_both(0, 1, 3)})).no());
    CHECK(is_admissible(*loc, FamilyExpr(Carrier::qline(), {}, {Stream::of(StreamSchema::grow(1))})).yes());
    CHECK(is_admissible(*rs_alg(), FamilyExpr(Carrier::qline(), {}, {Stream::of(StreamSchema::grow(1))})).no());
}

TEST_CASE("naturals: discrete small versus topological discrete") {
    FamilyExpr singles(Carrier::nat(), {}, {Stream::of(StreamSchema::singletons())});
    CHECK(is_admissible(*discrete_small_nat(), singles).no());
    CHECK(is_admissible(*top_discrete_nat(), singles).yes());
    CHECK(is_admissible(*chain_nat(), singles).yes());
    CHECK(is_admissible(*wd_space(), singles).no());
    FamilyExpr segs(Carrier::nat(), {}, {Stream::of(StreamSchema::initial(0))});
    CHECK(is_admissible(*top_discrete_nat(), segs).yes());
    CHECK(is_admissible(*wd_space(), segs).no());
    CHECK_THROWS_AS(is_admissible(*wd_space(), FamilyExpr(Carrier::nat(), {SetExpr::nat_cofinite({0})})), Error);
}

TEST_CASE("smallness verdicts") {
    auto top = r_top();
    auto r = smallness(*top, iv_closed(q(0), q(1)));
    REQUIRE(r.value == Smallness::NotSmall);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->str() == "stream shrink(-1,1,right,2)");
    // replay: admissible, and no initial segment of members covers [0,1)
    CHECK(is_admissible(*top, *r.witness).yes());
    const auto& st = r.witness->streams()[0];
    for (std::uint64_t n = 2; n < 300; ++n) {
        Rational x = q(1) - q(1, 2 * static_cast<std::int64_t>(n));
        bool covered = false;
        for (std::uint64_t m = 2; m <= n; ++m) covered |= contains(st.member(m), Point::of_rat(x));
        CHECK(!covered);
    }
    CHECK(smallness(*top, SetExpr::intervals({Interval::point(q(0)), Interval::point(q(1, 2)), Interval::point(q(7))})).value ==
          Smallness::Small);
    CHECK(smallness(*rs_alg(), SetExpr::full(Carrier::qline())).value == Smallness::Small);
    CHECK(smallness(*top_discrete_nat(), SetExpr::nat_cofinite({})).value == Smallness::NotSmall);
    CHECK(smallness(*top_discrete_nat(), SetExpr::nat_range(0, 40)).value == Smallness::Small);
    CHECK(smallness(*chain_nat(), SetExpr::nat_cofinite({3})).value == Smallness::NotSmall);
    CHECK(smallness(*localized_line(), iv_closed(q(-3), q(100))).value == Smallness::Small);
    CHECK(smallness(*localized_line(), SetExpr::interval(Interval::open(Bound::at(q(0)), Bound::pos_inf()))).value ==
          Smallness::NotSmall);
    CHECK(smallness(*r_count(), iv_closed(q(0), q(1))).value == Smallness::NotSmall);
}

TEST_CASE("three points under the All policy are small (brute force)") {
    auto top = r_top();
    SetExpr k = SetExpr::intervals({Interval::point(q(0)), Interval::point(q(1)), Interval::point(q(2))});
    CHECK(smallness(*top, k).value == Smallness::Small);
    // oracle: every family of open intervals with endpoints in {-1,..,3}/2
    // covering k has a subfamily of at most 3 members covering k
    std::vector<SetExpr> opens;
    for (std::int64_t a = -2; a <= 6; ++a)
        for (std::int64_t b = a + 1; b <= 6; ++b) opens.push_back(iv_open(q(a, 2), q(b, 2)));
    for (std::size_t i = 0; i < opens.size(); ++i)
        for (std::size_t j = i + 1; j < opens.size(); ++j) {
            std::vector<SetExpr> fam = {opens[i], opens[j]};
            SetExpr u = unite(opens[i], opens[j]);
            SetExpr t = intersect(k, u);
            int needed = 0;
            for (const auto& p : *finite_points(t)) {
                (void)p;
                ++needed;
            }
            CHECK(needed <= 3);
            CHECK(essentially_finite_on(FamilyExpr(Carrier::qline(), fam), k).yes);
        }
}

TEST_CASE("generated finite topologies") {
    Carrier ab = Carrier::finite_enum({"a", "b"});
    auto x = generate_finite_gts(ab, {SetExpr::atoms(ab, {"a"})});
    CHECK(x->opens.list.size() == 3);
    CHECK(x->policy.kind == CoveragePolicy::Kind::All);
    // Cov = all 8 open families
    int admissible = 0;
    for (int m = 0; m < 8; ++m) {
        std::vector<SetExpr> fam;
        for (int i = 0; i < 3; ++i)
            if (m & (1 << i)) fam.push_back(x->opens.list[i]);
        if (is_admissible(*x, FamilyExpr(ab, fam)).yes()) ++admissible;
    }
    CHECK(admissible == 8);
    auto ind = generate_finite_gts(ab, {});
    CHECK(ind->opens.list.size() == 2);
    Carrier abc = Carrier::finite_enum({"a", "b", "c"});
    auto y = generate_finite_gts(abc, {SetExpr::atoms(abc, {"a"}), SetExpr::atoms(abc, {"b"})});
    CHECK(y->opens.list.size() == 5);
    // oracle comparison on random subbases of a 4-point carrier
    Carrier c4 = Carrier::finite_enum({"0", "1", "2", "3"});
    for (oracle::Mask a = 0; a < 16; ++a)
        for (oracle::Mask b = a; b < 16; b += 3) {
            auto to_set = [&](oracle::Mask m) {
                std::vector<std::size_t> idx;
                for (std::size_t i = 0; i < 4; ++i)
                    if (m & (1u << i)) idx.push_back(i);
                return SetExpr::atom_indices(c4, idx);
            };
            auto g = generate_finite_gts(c4, {to_set(a), to_set(b)});
            auto expect = oracle::lattice_closure({a, b}, 4);
            REQUIRE(g->opens.list.size() == expect.size());
            for (auto m : expect) CHECK(is_open(*g, to_set(m)));
        }
}

TEST_CASE("all_opens and weak interiors") {
    auto s = sierpinski();
    CHECK(all_opens(*s).size() == 3);
    auto wd = wd_space();
    CHECK(weak_closure_of(*wd, SetExpr::nat_finite({0})) == SetExpr::nat_finite({0}));
    CHECK(weak_closure_of(*rs_alg(), iv_open(q(0), q(1))) == iv_closed(q(0), q(1)));
    CHECK(is_weakly_open(*wd, SetExpr::nat_cofinite({0})));
    CHECK(!is_open(*wd, SetExpr::nat_cofinite({0})));
}

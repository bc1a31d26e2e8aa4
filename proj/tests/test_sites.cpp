#include "doctest.h"

#include <map>
#include <set>

#include "gtskit/errors.hpp"
#include "gtskit/sites.hpp"
#include "oracles.hpp"

using namespace gtskit;
using oracle::Mask;

namespace {

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

Space finite_space(const Carrier& c, const std::vector<Mask>& opens) {
    GtsPresentation p;
    p.name = "T";
    p.carrier = c;
    p.points = SetExpr::full(c);
    p.opens.kind = OpensSpec::Kind::ExplicitList;
    for (auto m : opens) p.opens.list.push_back(mask_set(c, m));
    p.policy = CoveragePolicy::all();
    return make_space(p);
}

Mask label_mask(const std::string& label, int n) {
    // labels are canonical renderings such as {0,2}
    Mask m = 0;
    for (int i = 0; i < n; ++i)
        if (label.find(std::to_string(i)) != std::string::npos) m |= Mask{1} << i;
    return m;
}

FiniteCategory chain3() {
    return poset_category({"a", "b", "c"}, {{true, true, true}, {false, true, true}, {false, false, true}});
}

// One object, idempotent e with e o e = e.
FiniteCategory idempotent_monoid() { return make_category({"*"}, {{"e", 0, 0}}, {{"e", "e", "e"}}); }

// Two parallel arrows u, v: a -> b.
FiniteCategory parallel_pair() { return make_category({"a", "b"}, {{"u", 0, 1}, {"v", 0, 1}}, {}); }

// Presheaf of all {0,1}-valued functions on the opens, functions as bitmasks over points.
Presheaf functions_presheaf(const FiniteCategory& c, int n, std::vector<Mask>& carrier_of) {
    std::vector<std::vector<std::string>> values(c.objects.size());
    std::vector<std::vector<Mask>> funcs(c.objects.size());
    carrier_of.clear();
    for (std::size_t o = 0; o < c.objects.size(); ++o) {
        Mask u = label_mask(c.objects[o], n);
        carrier_of.push_back(u);
        for (Mask f = 0; f < (Mask{1} << n); ++f)
            if ((f & ~u) == 0) {
                funcs[o].push_back(f);
                values[o].push_back(std::to_string(f));
            }
    }
    std::vector<std::vector<std::size_t>> restriction(c.morphisms.size());
    for (std::size_t g = 0; g < c.morphisms.size(); ++g) {
        const auto& m = c.morphisms[g];
        for (Mask f : funcs[m.cod]) {
            Mask r = f & carrier_of[m.dom];
            restriction[g].push_back(std::find(funcs[m.dom].begin(), funcs[m.dom].end(), r) - funcs[m.dom].begin());
        }
    }
    return make_presheaf(c, values, restriction);
}

}  // namespace

TEST_CASE("category validation") {
    CHECK_NOTHROW(chain3());
    CHECK_NOTHROW(idempotent_monoid());
    CHECK_THROWS_AS(make_category({"a", "b", "c"}, {{"f", 0, 1}, {"g", 1, 2}}, {}), Error);
    CHECK_THROWS_AS(make_category({"a"}, {{"f", 0, 1}}, {}), Error);
    CHECK_THROWS_AS(poset_category({"a", "b"}, {{true, true}, {false, false}}), Error);
    CHECK(chain3().is_poset());
    CHECK(!idempotent_monoid().is_poset());
    CHECK(!parallel_pair().is_poset());
}

TEST_CASE("sieves") {
    auto c = chain3();
    std::size_t top = *c.object_index("c");
    CHECK(is_sieve(c, maximal_sieve(c, top)).ok);
    CHECK(is_sieve(c, Sieve{top, {}}).ok);
    auto bc = *c.morphism_index("b<=c"), ab = *c.morphism_index("a<=b");
    auto chk = is_sieve(c, Sieve{top, {bc}});
    CHECK(!chk.ok);
    REQUIRE(chk.witness.has_value());
    CHECK(chk.witness->first == bc);
    CHECK(chk.witness->second == ab);
    // exhaustive: every subset of arrows into each object, closure by direct scan
    for (auto cat : {chain3(), idempotent_monoid(), parallel_pair()})
        for (std::size_t o = 0; o < cat.objects.size(); ++o) {
            auto in = cat.into(o);
            for (std::uint32_t pick = 0; pick < (1u << in.size()); ++pick) {
                std::set<std::size_t> s;
                for (std::size_t i = 0; i < in.size(); ++i)
                    if (pick >> i & 1) s.insert(in[i]);
                bool closed = true;
                for (auto f : s)
                    for (std::size_t g = 0; g < cat.morphisms.size(); ++g)
                        if (cat.morphisms[g].cod == cat.morphisms[f].dom && !s.count(*cat.compose[f][g])) closed = false;
                CHECK(is_sieve(cat, Sieve{o, std::vector<std::size_t>(s.begin(), s.end())}).ok == closed);
            }
        }
}

TEST_CASE("pullback sieves") {
    auto site = gts_to_site(*finite_space(enum_carrier(2), {0, 1, 2, 3}));
    const auto& c = site.category;
    std::size_t whole = *c.object_index("{0,1}"), a = *c.object_index("{0}"), b = *c.object_index("{1}"), e = *c.object_index("{}");
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        for (const auto& s : all_sieves(c, o)) {
            CHECK(pullback_sieve(c, c.identity[o], s) == s);
            for (auto f : c.into(o)) {
                CHECK(is_sieve(c, pullback_sieve(c, f, s)).ok);
                if (s == maximal_sieve(c, o)) CHECK(pullback_sieve(c, f, s) == maximal_sieve(c, c.morphisms[f].dom));
            }
        }
    // S generated by {0} <= {0,1}; pulled back along {1} <= {0,1} it is generated by the meet {}
    auto s = generated_sieve(c, whole, {*c.morphism_index("{0}<={0,1}")});
    auto p = pullback_sieve(c, *c.morphism_index("{1}<={0,1}"), s);
    CHECK(p == generated_sieve(c, b, {*c.morphism_index("{}<={1}")}));
    (void)a;
    (void)e;

    // (f o g)* S = g*(f* S) on categories with at most 12 morphisms
    std::vector<FiniteCategory> cats = {chain3(), idempotent_monoid(), parallel_pair()};
    for (const auto& t : oracle::all_topologies(3)) {
        auto st = gts_to_site(*finite_space(enum_carrier(3), t));
        if (st.category.morphisms.size() <= 12) cats.push_back(st.category);
    }
    for (const auto& cat : cats)
        for (std::size_t o = 0; o < cat.objects.size(); ++o)
            for (const auto& sv : all_sieves(cat, o))
                for (auto f : cat.into(o))
                    for (auto g : cat.into(cat.morphisms[f].dom))
                        CHECK(pullback_sieve(cat, *cat.compose[f][g], sv) == pullback_sieve(cat, g, pullback_sieve(cat, f, sv)));
}

TEST_CASE("Grothendieck topology axioms") {
    auto c = chain3();
    TopologyAssignment maxonly;
    for (std::size_t o = 0; o < 3; ++o) maxonly.push_back({maximal_sieve(c, o)});
    auto r = check_grothendieck_topology(c, maxonly);
    CHECK(r.valid());
    for (const auto& d : r.derived) CHECK_MESSAGE(d.holds, d.axiom);

    TopologyAssignment missing = maxonly;
    missing[1].clear();
    auto m = check_grothendieck_topology(c, missing);
    CHECK(!m.valid());
    CHECK(!m.axioms[0].holds);
    CHECK(m.axioms[0].axiom == "identity");

    // all sieves but the empty one on the bottom: stability fails
    TopologyAssignment all;
    for (std::size_t o = 0; o < 3; ++o) all.push_back(all_sieves(c, o));
    CHECK(check_grothendieck_topology(c, all).valid());

    for (int n = 1; n <= 3; ++n)
        for (const auto& t : oracle::all_topologies(n)) {
            auto site = gts_to_site(*finite_space(enum_carrier(n), t));
            auto rep = check_grothendieck_topology(site.category, site.topology);
            CHECK(rep.valid());
            for (const auto& d : rep.derived) CHECK(d.holds);
        }
}

TEST_CASE("sheaf condition") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& t : oracle::all_topologies(n)) {
            auto site = gts_to_site(*finite_space(enum_carrier(n), t));
            std::vector<Mask> under;
            auto fp = functions_presheaf(site.category, n, under);
            // brute-force gluing: for each open U and each set of opens
            // covering U, compatible functions glue to their union uniquely
            for (std::size_t u = 0; u < site.category.objects.size(); ++u)
                for (const auto& cov : site.topology[u]) {
                    Mask un = 0;
                    for (auto g : cov.arrows) un |= under[site.category.morphisms[g].dom];
                    CHECK(un == under[u]);
                }
            CHECK(is_sheaf(site, fp).yes());
            CHECK(is_subcanonical(site).yes());
        }

    // doctored: two values over the empty open, the empty covering cannot glue uniquely
    auto site = gts_to_site(*finite_space(enum_carrier(2), {0, 1, 3}));
    const auto& c = site.category;
    std::vector<Mask> under;
    auto fp = functions_presheaf(c, 2, under);
    std::size_t e = *c.object_index("{}");
    auto values = fp.values;
    auto restr = fp.restriction;
    values[e].push_back("extra");
    for (std::size_t g = 0; g < c.morphisms.size(); ++g)
        if (c.morphisms[g].cod == e) restr[g].push_back(c.morphisms[g].dom == e ? 1 : 0);
    auto bad = make_presheaf(c, values, restr);
    auto res = is_sheaf(site, bad);
    CHECK(res.no());
    REQUIRE(res.covering.has_value());
    CHECK(res.covering->target == e);
    CHECK(res.covering->arrows.empty());

    // doctored restriction on the discrete space: a second section over {0,1}
    // with the same restrictions as the zero function breaks uniqueness
    auto dsite = gts_to_site(*finite_space(enum_carrier(2), {0, 1, 2, 3}));
    const auto& dc = dsite.category;
    std::vector<Mask> dunder;
    auto dfp = functions_presheaf(dc, 2, dunder);
    std::size_t whole = *dc.object_index("{0,1}");
    auto restr2 = dfp.restriction;
    auto values2 = dfp.values;
    values2[whole].push_back("ghost");
    for (std::size_t g = 0; g < dc.morphisms.size(); ++g)
        if (dc.morphisms[g].cod == whole) restr2[g].push_back(dc.morphisms[g].dom == whole ? values2[whole].size() - 1 : restr2[g][0]);
    auto res2 = is_sheaf(dsite, make_presheaf(dc, values2, restr2));
    CHECK(res2.no());
    REQUIRE(res2.covering.has_value());
    CHECK(res2.covering->target == whole);
    CHECK(res2.covering->arrows.size() < dc.into(whole).size());

    CHECK_THROWS_AS(is_sheaf(Site{idempotent_monoid(), {{maximal_sieve(idempotent_monoid(), 0)}}}, representable(idempotent_monoid(), 0)), Error);
}

TEST_CASE("subcanonicality") {
    // every sieve covering on a 2-chain: Hom(-, a) fails on the empty covering of b
    auto c = poset_category({"a", "b"}, {{true, true}, {false, true}});
    TopologyAssignment all = {all_sieves(c, 0), all_sieves(c, 1)};
    REQUIRE(check_grothendieck_topology(c, all).valid());
    auto r = is_subcanonical(Site{c, all});
    CHECK(r.no());
    REQUIRE(r.representable.has_value());
    CHECK(c.objects[*r.representable] == "a");

    auto one = make_category({"*"}, {}, {});
    CHECK(is_subcanonical(Site{one, {{maximal_sieve(one, 0)}}}).yes());
}

TEST_CASE("sites of finite spaces") {
    auto indiscrete = gts_to_site(*finite_space(enum_carrier(2), {0, 3}));
    CHECK(indiscrete.category.objects.size() == 2);
    CHECK(indiscrete.category.morphisms.size() == 3);

    auto s = gts_to_site(*sierpinski());
    CHECK(s.category.objects.size() == 3);
    CHECK(is_subcanonical(s).yes());

    auto d = gts_to_site(*finite_space(enum_carrier(2), {0, 1, 2, 3}));
    const auto& c = d.category;
    CHECK(c.objects.size() == 4);
    std::size_t whole = *c.object_index("{0,1}");
    auto cov = generated_sieve(c, whole, {*c.morphism_index("{0}<={0,1}"), *c.morphism_index("{1}<={0,1}")});
    CHECK(std::find(d.topology[whole].begin(), d.topology[whole].end(), cov) != d.topology[whole].end());
    CHECK_THROWS_AS(gts_to_site(*rs_alg()), Error);
}

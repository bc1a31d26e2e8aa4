// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gtskit/audit.hpp"
#include "gtskit/cli.hpp"
#include "gtskit/constructions.hpp"
#include "gtskit/errors.hpp"
#include "gtskit/scale_layers.hpp"
#include "gtskit/sites.hpp"
#include "gtskit/topo_props.hpp"
#include "oracles.hpp"

using namespace gtskit;
using oracle::Mask;
namespace fs = std::filesystem;

namespace {

struct Result {
    bool ok = true;
    std::string detail;
    std::uint64_t checks = 0;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
SetExpr iv_open(Rational a, Rational b) { return SetExpr::interval(Interval::open(a, b)); }
SetExpr iv_closed(Rational a, Rational b) { return SetExpr::interval(Interval::closed(a, b)); }

Carrier enum_carrier(int n, const std::string& prefix = "") {
    std::vector<std::string> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back(prefix + std::to_string(i));
    return Carrier::finite_enum(atoms);
}

SetExpr mask_set(const Carrier& c, Mask m) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < c.atoms().size(); ++i)
        if (m & (1u << i)) idx.push_back(i);
    return SetExpr::atom_indices(c, idx);
}

Space finite_space(const Carrier& c, const std::vector<Mask>& opens, CoveragePolicy pol) {
    GtsPresentation p;
    p.name = "T";
    p.carrier = c;
    p.points = SetExpr::full(c);
    p.opens.kind = OpensSpec::Kind::ExplicitList;
    for (auto m : opens) p.opens.list.push_back(mask_set(c, m));
    p.policy = std::move(pol);
    return make_space(p);
}

std::vector<std::vector<Mask>> topologies_up_to(int n_max, std::vector<int>* sizes = nullptr) {
    std::vector<std::vector<Mask>> out;
    for (int n = 1; n <= n_max; ++n)
        for (auto& t : oracle::all_topologies(n)) {
            out.push_back(t);
            if (sizes) sizes->push_back(n);
        }
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream b;
    b << in.rdbuf();
    return b.str();
}

std::vector<fs::path> corpus(const std::string& sub) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(fs::path(GTSKIT_SOURCE_DIR) / "corpus" / sub))
        if (e.path().extension() == ".gts") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

// 1. Intersection of admissible families on the small line.
Result intersection_counterexample() {
    Result o;
    auto rs = rs_alg();
    FamilyExpr u(Carrier::qline(), {}, {Stream::of(StreamSchema::shrink(Bound::at(q(0)), Bound::at(q(1)), true, true, 3))});
    o.expect(is_admissible(*rs, u.with(iv_open(q(0), q(1)))).yes(), "U u V admissible");
    o.expect(is_admissible(*rs, u.with(iv_open(q(0), q(2)))).yes(), "U u W admissible");
    o.expect(is_admissible(*rs, u).no(), "U not admissible");
    return o;
}

// 2. Smallness on the topological line.
Result top_real_line() {
    Result o;
    auto top = r_top();
    auto unit = iv_closed(q(0), q(1));
    auto r = smallness(*top, unit);
    o.expect(r.value == Smallness::NotSmall, "[0,1] NotSmall");
    o.expect(r.witness.has_value(), "witness present");
    if (r.witness) {
        // replay from the rendered witness
        dsl::Workspace ws{dsl::Document{}};
        auto w = ws.resolve_family(dsl::parse_family_syntax(r.witness->str()), Carrier::qline());
        o.expect(w == *r.witness, "witness rendering parses back");
        o.expect(is_admissible(*top, w).yes(), "witness admissible");
        o.expect(is_open(*top, w.finite_part().empty() ? SetExpr::empty(Carrier::qline()) : w.finite_part()[0]), "witness members open");
        o.expect(!essentially_finite_on(w, unit).yes, "witness not essentially finite on [0,1]");
    }
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Interval> pts;
        int k = trial % 6;
        for (int i = 0; i < k; ++i) pts.push_back(Interval::point(q(static_cast<std::int64_t>(rng() % 201) - 100, 1 + static_cast<std::int64_t>(rng() % 7))));
        auto s = pts.empty() ? SetExpr::empty(Carrier::qline()) : SetExpr::intervals(pts);
        o.expect(smallness(*top, s).value == Smallness::Small, "finite set " + s.str() + " Small");
    }
    return o;
}

// 3. The finite-or-whole naturals.
Result example_wd() {
    Result o;
    auto wd = wd_space();
    auto sep = separation_report(*wd);
    o.expect(sep.weakly_t1.yes(), "weakly T1");
    o.expect(sep.strongly_t1.no(), "not strongly T1");
    auto t = topologize(wd);
    o.expect(t.space.has_value(), "topologize succeeds");
    if (!t.space) return o;
    auto td = top_discrete_nat();
    const auto& x = **t.space;
    o.expect(x.carrier == td->carrier && x.points == td->points, "same points");
    o.expect(x.opens.kind == OpensSpec::Kind::AllSets && td->opens.kind == OpensSpec::Kind::AllSets, "all sets open");
    o.expect(is_strict_homeo(identity_map(*t.space, td)).yes(), "identity is a strict homeomorphism onto the topological discrete naturals");
    FamilyExpr singles(Carrier::nat(), {}, {Stream::of(StreamSchema::singletons())});
    o.expect(is_admissible(x, singles).yes() && is_admissible(*td, singles).yes(), "singletons admissible in both");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto f = random_family(*td, seed, seed % 2 == 0);
        o.expect(is_admissible(x, f).value == is_admissible(*td, f).value, "admissibility agrees on " + f.str());
    }
    return o;
}

// 4. Identity between the two discrete naturals.
Result non_strict_homeo() {
    Result o;
    auto id = identity_map(top_discrete_nat(), discrete_small_nat());
    auto r = classify_map(id);
    o.expect(r.strictly_continuous.yes(), "strictly continuous");
    o.expect(r.open_map.yes(), "open");
    o.expect(r.closed_map.yes(), "closed");
    o.expect(r.strict_homeo.no(), "not a strict homeomorphism");
    o.expect(r.strict_homeo.family.has_value() && r.strict_homeo.family->streams().size() == 1 &&
                 r.strict_homeo.family->streams()[0].has_singletons(),
             "singletons witness");
    if (r.strict_homeo.family)
        o.expect(is_admissible(*discrete_small_nat(), *r.strict_homeo.family).yes() == false ||
                     is_admissible(*top_discrete_nat(), *r.strict_homeo.family).yes(),
                 "witness separates the coverages");
    return o;
}

// 5. Every finite topology on at most four points.
Result finite_collapse() {
    Result o;
    std::vector<std::size_t> expected = {1, 4, 29, 355};
    for (int n = 1; n <= 4; ++n) {
        auto tops = oracle::all_topologies(n);
        o.expect(tops.size() == expected[n - 1], "topology count on " + std::to_string(n) + " points");
        auto c = enum_carrier(n);
        for (const auto& t : tops) {
            std::vector<SetExpr> sub;
            for (auto m : t) sub.push_back(mask_set(c, m));
            auto x = generate_finite_gts(c, sub);
            o.expect(x->opens.list.size() == t.size(), "generated opens match");
            o.expect(audit_exhaustive(*x).clean(), "exhaustive audit clean");
            auto opens = all_opens(*x);
            std::uint64_t fams = std::uint64_t{1} << opens.size();
            for (std::uint64_t pick = 0; pick < fams; ++pick) {
                std::vector<SetExpr> fam;
                for (std::size_t i = 0; i < opens.size(); ++i)
                    if (pick >> i & 1) fam.push_back(opens[i]);
                if (!is_admissible(*x, FamilyExpr(c, fam)).yes()) {
                    o.expect(false, "open family not admissible");
                    return o;
                }
            }
        }
    }
    return o;
}

// 6. Seeded proposition audits.
Result propositions() {
    Result o;
    for (const auto& x : shipped_presentations()) {
        auto r = audit_propositions(*x, 1000, 6);
        o.expect(r.instances == 1000, x->name + " ran 1000 instances");
        o.expect(r.clean(), x->name + " propositions clean");
        for (const auto& t : r.tallies) o.expect(t.pass_count > 0, x->name + " " + to_string(t.check) + " not vacuous");
    }
    return o;
}

// 7. Binary products of finite small spaces.
Result product_laws() {
    Result o;
    std::vector<int> sizes;
    auto tops = topologies_up_to(3, &sizes);
    auto ess = CoveragePolicy::essfin();
    std::vector<Space> xs, ys;
    for (std::size_t i = 0; i < tops.size(); ++i) {
        xs.push_back(finite_space(enum_carrier(sizes[i], "x"), tops[i], ess));
        ys.push_back(finite_space(enum_carrier(sizes[i], "y"), tops[i], ess));
    }
    std::vector<Space> zs;
    for (const auto& t : oracle::all_topologies(2)) zs.push_back(finite_space(enum_carrier(2, "z"), t, ess));

    // every map from a test space into a factor, with its continuity
    struct Probe {
        SpaceMap f;
        std::vector<Point> img;
        bool cont;
    };
    auto probes = [&](const Space& z, const Space& target, int n, const std::string& prefix) {
        std::vector<Probe> out;
        for (int code = 0; code < n * n; ++code) {
            std::vector<std::pair<Point, Point>> tab;
            std::vector<Point> img;
            for (int k = 0; k < 2; ++k) {
                Point p = Point::of_atom(prefix + std::to_string(k == 0 ? code % n : code / n));
                tab.emplace_back(Point::of_atom("z" + std::to_string(k)), p);
                img.push_back(p);
            }
            auto f = table_map(z, target, tab);
            out.push_back({f, img, check_strict_continuity(f).yes()});
        }
        return out;
    };
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = 0; b < ys.size(); ++b) {
            auto pr = product(xs[a], ys[b]);
            o.expect(is_open_map(pr.pr1).yes() && is_open_map(pr.pr2).yes(), "projections open");
            o.expect(is_closed_map(pr.pr1).yes() && is_closed_map(pr.pr2).yes(), "projections closed");
            o.expect(check_strict_continuity(pr.pr1).yes() && check_strict_continuity(pr.pr2).yes(), "projections continuous");
            for (const auto& z : zs) {
                auto fx = probes(z, xs[a], sizes[a], "x");
                auto gy = probes(z, ys[b], sizes[b], "y");
                for (const auto& f : fx)
                    for (const auto& g : gy) {
                        auto h = pairing_map(f.f, g.f, pr.space);
                        o.expect(check_strict_continuity(h).yes() == (f.cont && g.cont), "pairing continuous iff both components are");
                        for (int k = 0; k < 2; ++k) {
                            Point p = Point::of_atom("z" + std::to_string(k));
                            auto hp = apply(h, p);
                            o.expect(apply(pr.pr1, hp) == f.img[k] && apply(pr.pr2, hp) == g.img[k], "projections recover components");
                        }
                    }
            }
        }
    return o;
}

// 8. Smallification.
Result adjunction() {
    Result o;
    for (const auto& x : shipped_presentations()) {
        auto s1 = smallify(x);
        auto s2 = smallify(s1);
        o.expect(s1->policy == s2->policy && s1->opens.kind == s2->opens.kind && s1->points == s2->points &&
                     s1->carrier == s2->carrier,
                 x->name + " smallify idempotent");
    }
    // Hom(Z, X) = Hom(Z, smallify X) for finite small Z, all maps, |Z| <= 3
    std::vector<int> sizes;
    auto tops = topologies_up_to(3, &sizes);
    std::vector<Space> targets = {top_discrete_nat(), chain_nat(), wd_space(), discrete_small_nat(), r_top(), rs_alg(), sierpinski()};
    for (std::size_t i = 0; i < tops.size(); i += 2)
        targets.push_back(finite_space(enum_carrier(sizes[i], "t"), tops[i], CoveragePolicy::all()));
    std::uint64_t maps = 0;
    for (std::size_t zi = 0; zi < tops.size(); ++zi) {
        int n = sizes[zi];
        auto z = finite_space(enum_carrier(n, "z"), tops[zi], CoveragePolicy::essfin());
        for (const auto& x : targets) {
            auto sx = smallify(x);
            auto cand = enumerate_points(x->points, 3, zi);
            int m = static_cast<int>(cand.size());
            int total = 1;
            for (int k = 0; k < n; ++k) total *= m;
            for (int code = 0; code < total; ++code) {
                std::vector<std::pair<Point, Point>> tab;
                int rest = code;
                for (int k = 0; k < n; ++k) {
                    tab.emplace_back(Point::of_atom("z" + std::to_string(k)), cand[rest % m]);
                    rest /= m;
                }
                bool into_x = check_strict_continuity(table_map(z, x, tab)).yes();
                bool into_s = check_strict_continuity(table_map(z, sx, tab)).yes();
                o.expect(into_x == into_s, "hom-sets agree for " + x->name);
                ++maps;
            }
        }
    }
    o.expect(maps > 1000, "enough maps");
    return o;
}

// 9. Ten summands.
Result direct_sum_check() {
    Result o;
    std::vector<Space> ten(10, wd_space());
    auto sum = direct_sum(ten);
    auto fam = summand_family(*sum);
    o.expect(fam.finite_part().size() == 10, "ten summands");
    o.expect(is_admissible(*sum, fam).yes(), "summand family admissible");
    for (unsigned m = 0; m < 1024; ++m) {
        SetExpr u = SetExpr::empty(sum->carrier);
        for (std::size_t i = 0; i < 10; ++i)
            if (m >> i & 1) u = unite(u, fam.finite_part()[i]);
        o.expect(is_open(*sum, u), "union of summands open");
    }
    for (const auto& s : fam.finite_part()) o.expect(is_open(*sum, minus(sum->points, s)), "summand closed");
    return o;
}

// 10. The localized line.
Result locally_small_layer() {
    Result o;
    auto loc = localized_line();
    auto r = validate_locally_small(*loc);
    o.expect(r.locally_small.yes(), "locally small");
    o.expect(r.lindelof.yes(), "Lindelof");
    o.expect(r.checks_pass(), "base checks");
    std::mt19937_64 rng(10);
    int sampled = 0;
    while (sampled < 100) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 81) - 40, b = a + 1 + static_cast<std::int64_t>(rng() % 30);
        bool lc = rng() % 2, hc = rng() % 2;
        SetExpr s = SetExpr::interval(Interval{Bound::at(q(a, 2)), lc, Bound::at(q(b, 2)), hc});
        for (int k = static_cast<int>(rng() % 4); k > 0; --k)
            s = unite(s, SetExpr::interval(Interval::point(q(static_cast<std::int64_t>(rng() % 121) - 60, 3))));
        if (smallness(*loc, s).value != Smallness::Small) {
            o.expect(false, "bounded set " + s.str() + " should be Small");
            continue;
        }
        ++sampled;
        o.expect(smallness(*loc, weak_closure(*loc, s)).value == Smallness::Small, "closure of " + s.str() + " Small");
    }
    return o;
}

// 11. The chain exhaustion of the naturals.
Result weakly_small_layer() {
    Result o;
    auto ch = chain_nat();
    auto r = validate_exhaustion(*ch);
    for (const char* w : {"W1", "W2", "W3", "W4", "W5"}) {
        const Verdict* v = r.check(w);
        o.expect(v != nullptr && v->yes(), std::string(w) + " holds");
    }
    const Exhaustion& e = *ch->policy.exhaustion;
    for (std::uint64_t x = 0; x <= 50; ++x) {
        std::uint64_t best = e.first_index();
        while (!contains(e.piece(best), Point::of_nat(x))) ++best;
        o.expect(index_function(e, Point::of_nat(x)) == best, "index of " + std::to_string(x));
    }
    std::mt19937_64 rng(11);
    auto base = discrete_small_nat();
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint64_t> dom;
        for (int k = 1 + static_cast<int>(rng() % 5); k > 0; --k) dom.push_back(rng() % 40);
        SetExpr pts = SetExpr::nat_finite(dom);
        auto d = subspace(base, pts);
        std::vector<std::pair<Point, Point>> tab;
        SetExpr img = SetExpr::empty(Carrier::nat());
        std::uint64_t hi = 0;
        for (auto v : pts.nat_elements()) {
            std::uint64_t w = rng() % 60;
            tab.emplace_back(Point::of_nat(v), Point::of_nat(w));
            img = unite(img, SetExpr::nat_finite({w}));
            hi = std::max(hi, w);
        }
        auto f = table_map(d, ch, tab);
        o.expect(check_strict_continuity(f).yes(), "small-domain map continuous");
        auto k = piece_capture(f, r);
        o.expect(k.has_value(), "piece found");
        if (!k) continue;
        o.expect(minus(img, e.piece(*k)).is_empty(), "piece contains the image");
        o.expect(*k == hi, "least capturing piece");
    }
    return o;
}

// Presheaf of {0,1}-valued functions on the opens of a finite site.
Presheaf functions_presheaf(const FiniteCategory& c, int n, std::vector<Mask>& under) {
    std::vector<std::vector<std::string>> values(c.objects.size());
    std::vector<std::vector<Mask>> funcs(c.objects.size());
    under.clear();
    for (std::size_t o = 0; o < c.objects.size(); ++o) {
        Mask u = 0;
        for (int i = 0; i < n; ++i)
            if (c.objects[o].find(std::to_string(i)) != std::string::npos) u |= Mask{1} << i;
        under.push_back(u);
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
            Mask r = f & under[m.dom];
            restriction[g].push_back(std::find(funcs[m.dom].begin(), funcs[m.dom].end(), r) - funcs[m.dom].begin());
        }
    }
    return make_presheaf(c, values, restriction);
}

// 12. Sites.
Result sites() {
    Result o;
    std::vector<int> sizes;
    auto tops = topologies_up_to(3, &sizes);
    for (std::size_t i = 0; i < tops.size(); ++i) {
        auto site = gts_to_site(*finite_space(enum_carrier(sizes[i]), tops[i], CoveragePolicy::all()));
        auto rep = check_grothendieck_topology(site.category, site.topology);
        o.expect(rep.valid(), "topology axioms");
        for (const auto& d : rep.derived) o.expect(d.holds, "derived " + d.axiom);
        o.expect(is_subcanonical(site).yes(), "subcanonical");
    }
    // two-point meet poset a <= b, every sieve covering
    auto c = poset_category({"a", "b"}, {{true, true}, {false, true}});
    TopologyAssignment all = {all_sieves(c, 0), all_sieves(c, 1)};
    o.expect(check_grothendieck_topology(c, all).valid(), "discrete topology valid");
    o.expect(is_subcanonical(Site{c, all}).no(), "discrete topology not subcanonical");

    // three-point chain: opens {} < {0} < {0,1} < {0,1,2}
    auto chain = gts_to_site(*finite_space(enum_carrier(3), {0, 1, 3, 7}, CoveragePolicy::all()));
    std::vector<Mask> under;
    auto fp = functions_presheaf(chain.category, 3, under);
    o.expect(is_sheaf(chain, fp).yes(), "function presheaf is a sheaf");
    // doctored: a second section over the empty open
    const auto& cc = chain.category;
    std::size_t e = *cc.object_index("{}");
    auto values = fp.values;
    auto restr = fp.restriction;
    values[e].push_back("extra");
    for (std::size_t g = 0; g < cc.morphisms.size(); ++g)
        if (cc.morphisms[g].cod == e) restr[g].push_back(cc.morphisms[g].dom == e ? 1 : 0);
    auto bad = is_sheaf(chain, make_presheaf(cc, values, restr));
    o.expect(bad.no(), "doctored presheaf rejected");
    o.expect(bad.covering.has_value() && bad.covering->target == e, "failing covering reported");
    return o;
}

// 13. Parser corpus, through the library and the installed driver.
Result parser() {
    Result o;
    auto valid = corpus("valid");
    o.expect(!valid.empty(), "valid corpus present");
    for (const auto& f : valid) {
        auto d = dsl::parse_syntax(slurp(f));
        o.expect(dsl::parse_syntax(dsl::emit_document(d)) == d, "round trip " + f.filename().string());
        std::ostringstream out, err;
        o.expect(cli::run_cli({"construct", f.string()}, out, err) == 0, "loads " + f.filename().string());
    }
    auto bad = corpus("malformed");
    o.expect(bad.size() >= 20, "malformed corpus present");
    auto errfile = fs::temp_directory_path() / "gtskit_acceptance_err.txt";
    for (const auto& f : bad) {
        auto text = slurp(f);
        std::istringstream head(text.substr(0, text.find('\n')));
        std::string hash, tag, kind, pos;
        head >> hash >> tag >> kind >> pos;
        std::string cmd = std::string("\"") + GTSKIT_CLI + "\" construct \"" + f.string() + "\" >/dev/null 2>\"" + errfile.string() + "\"";
        int status = std::system(cmd.c_str());
        o.expect(WIFEXITED(status) && WEXITSTATUS(status) == 2, "exit 2 for " + f.filename().string());
        auto msg = slurp(errfile);
        o.expect(msg.rfind(f.string() + ":" + pos + ": " + kind, 0) == 0, "diagnostic position for " + f.filename().string() + ": " + msg);
    }
    fs::remove(errfile);
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"admissible families are not closed under intersection", intersection_counterexample},
        {"[0,1] is not small in the topological line", top_real_line},
        {"finite-or-whole naturals: separation and topologize", example_wd},
        {"identity of the naturals is not a strict homeomorphism", non_strict_homeo},
        {"finite topologies collapse to their generated structure", finite_collapse},
        {"admissible-family propositions", propositions},
        {"product laws", product_laws},
        {"smallify adjunction", adjunction},
        {"direct sum of ten summands", direct_sum_check},
        {"locally small layer", locally_small_layer},
        {"weakly small layer", weakly_small_layer},
        {"sites", sites},
        {"parser corpus", parser},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Result o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > 60) {
            o.ok = false;
            o.detail = "over one minute";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << o.checks << " checks, " << timing << ")";
        if (!o.ok) std::cout << ": " << o.detail;
        std::cout << "\n";
        if (!o.ok) ++failed;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}

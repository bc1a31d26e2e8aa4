#include "gtskit/sites.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gtskit/errors.hpp"

namespace gtskit {

std::optional<std::size_t> FiniteCategory::object_index(const std::string& name) const {
    auto it = std::find(objects.begin(), objects.end(), name);
    if (it == objects.end()) return std::nullopt;
    return static_cast<std::size_t>(it - objects.begin());
}

std::optional<std::size_t> FiniteCategory::morphism_index(const std::string& name) const {
    for (std::size_t i = 0; i < morphisms.size(); ++i)
        if (morphisms[i].name == name) return i;
    return std::nullopt;
}

std::vector<std::size_t> FiniteCategory::into(std::size_t c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < morphisms.size(); ++i)
        if (morphisms[i].cod == c) out.push_back(i);
    return out;
}

std::vector<std::size_t> FiniteCategory::hom(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < morphisms.size(); ++i)
        if (morphisms[i].dom == a && morphisms[i].cod == b) out.push_back(i);
    return out;
}

bool FiniteCategory::is_poset() const {
    for (std::size_t a = 0; a < objects.size(); ++a)
        for (std::size_t b = 0; b < objects.size(); ++b) {
            auto h = hom(a, b);
            if (h.size() > 1) return false;
            if (a != b && !h.empty() && leq(b, a)) return false;
        }
    return true;
}

std::optional<std::string> FiniteCategory::meet_failure() const {
    if (!is_poset()) return "not a poset";
    const std::size_t n = objects.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            std::vector<std::size_t> lower;
            for (std::size_t c = 0; c < n; ++c)
                if (leq(c, a) && leq(c, b)) lower.push_back(c);
            bool found = false;
            for (std::size_t g : lower)
                found = found || std::all_of(lower.begin(), lower.end(), [&](std::size_t h) { return leq(h, g); });
            if (!found) return objects[a] + " and " + objects[b] + " have no meet";
        }
    return std::nullopt;
}

FiniteCategory make_category(std::vector<std::string> objects, std::vector<Morphism> arrows, const std::vector<Composite>& table) {
    FiniteCategory c;
    c.objects = std::move(objects);
    for (std::size_t i = 0; i < c.objects.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (c.objects[i] == c.objects[j]) throw Error(ErrorKind::InvalidCategory, "duplicate object " + c.objects[i]);
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
        c.identity.push_back(c.morphisms.size());
        c.morphisms.push_back({"id_" + c.objects[i], i, i});
    }
    for (auto& m : arrows) {
        if (m.dom >= c.objects.size() || m.cod >= c.objects.size()) throw Error(ErrorKind::InvalidCategory, "morphism " + m.name + " has an unknown end");
        if (c.morphism_index(m.name)) throw Error(ErrorKind::InvalidCategory, "duplicate morphism " + m.name);
        c.morphisms.push_back(std::move(m));
    }
    const std::size_t n = c.morphisms.size();
    c.compose.assign(n, std::vector<std::optional<std::size_t>>(n));
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t g = 0; g < n; ++g) {
            if (c.morphisms[g].cod != c.morphisms[f].dom) continue;
            if (f == c.identity[c.morphisms[f].dom]) c.compose[f][g] = g;
            else if (g == c.identity[c.morphisms[g].cod]) c.compose[f][g] = f;
        }
    for (const auto& e : table) {
        auto f = c.morphism_index(e.f), g = c.morphism_index(e.g), h = c.morphism_index(e.result);
        if (!f || !g || !h) throw Error(ErrorKind::InvalidCategory, "composite " + e.f + " o " + e.g + " names an unknown morphism");
        const auto &mf = c.morphisms[*f], &mg = c.morphisms[*g], &mh = c.morphisms[*h];
        if (mg.cod != mf.dom) throw Error(ErrorKind::InvalidCategory, e.f + " o " + e.g + " is not composable");
        if (mh.dom != mg.dom || mh.cod != mf.cod) throw Error(ErrorKind::InvalidCategory, e.f + " o " + e.g + " = " + e.result + " has wrong ends");
        if (c.compose[*f][*g] && *c.compose[*f][*g] != *h) throw Error(ErrorKind::InvalidCategory, "conflicting composite " + e.f + " o " + e.g);
        c.compose[*f][*g] = *h;
    }
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t g = 0; g < n; ++g)
            if (c.morphisms[g].cod == c.morphisms[f].dom && !c.compose[f][g])
                throw Error(ErrorKind::InvalidCategory, "missing composite " + c.morphisms[f].name + " o " + c.morphisms[g].name);
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t g = 0; g < n; ++g) {
            if (!c.compose[f][g]) continue;
            for (std::size_t h = 0; h < n; ++h) {
                if (!c.compose[g][h]) continue;
                if (c.compose[*c.compose[f][g]][h] != c.compose[f][*c.compose[g][h]])
                    throw Error(ErrorKind::InvalidCategory, "composition is not associative at " + c.morphisms[f].name + ", " + c.morphisms[g].name + ", " +
                                                                c.morphisms[h].name);
            }
        }
    return c;
}

FiniteCategory poset_category(const std::vector<std::string>& labels, const std::vector<std::vector<bool>>& leq) {
    const std::size_t n = labels.size();
    if (leq.size() != n) throw Error(ErrorKind::InvalidCategory, "order matrix does not match the objects");
    for (std::size_t a = 0; a < n; ++a) {
        if (leq[a].size() != n || !leq[a][a]) throw Error(ErrorKind::InvalidCategory, "order is not reflexive at " + labels[a]);
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (leq[a][b] && leq[b][c] && !leq[a][c]) throw Error(ErrorKind::InvalidCategory, "order is not transitive");
    }
    auto name = [&](std::size_t a, std::size_t b) { return labels[a] + "<=" + labels[b]; };
    std::vector<Morphism> arrows;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && leq[a][b]) arrows.push_back({name(a, b), a, b});
    std::vector<Composite> table;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (a != b && b != c && leq[a][b] && leq[b][c]) table.push_back({name(b, c), name(a, b), a == c ? "id_" + labels[a] : name(a, c)});
    return make_category(labels, arrows, table);
}

SieveCheck is_sieve(const FiniteCategory& c, const Sieve& s) {
    SieveCheck r;
    for (auto f : s.arrows) {
        if (c.morphisms.at(f).cod != s.target) {
            r.ok = false;
            r.witness = std::make_pair(f, f);
            return r;
        }
        for (std::size_t g = 0; g < c.morphisms.size(); ++g) {
            auto fg = c.compose[f][g];
            if (fg && std::find(s.arrows.begin(), s.arrows.end(), *fg) == s.arrows.end()) {
                r.ok = false;
                r.witness = std::make_pair(f, g);
                return r;
            }
        }
    }
    return r;
}

Sieve maximal_sieve(const FiniteCategory& c, std::size_t target) { return {target, c.into(target)}; }

Sieve generated_sieve(const FiniteCategory& c, std::size_t target, const std::vector<std::size_t>& arrows) {
    std::vector<std::size_t> out;
    for (auto f : arrows) {
        if (c.morphisms.at(f).cod != target) throw Error(ErrorKind::InvalidCategory, c.morphisms[f].name + " does not end at " + c.objects[target]);
        for (std::size_t g = 0; g < c.morphisms.size(); ++g)
            if (auto fg = c.compose[f][g]) out.push_back(*fg);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return {target, out};
}

Sieve pullback_sieve(const FiniteCategory& c, std::size_t f, const Sieve& s) {
    Sieve out{c.morphisms.at(f).dom, {}};
    for (auto g : c.into(out.target))
        if (std::binary_search(s.arrows.begin(), s.arrows.end(), *c.compose[f][g])) out.arrows.push_back(g);
    return out;
}

std::vector<Sieve> all_sieves(const FiniteCategory& c, std::size_t target) {
    auto in = c.into(target);
    if (in.size() > 20) throw Error(ErrorKind::BudgetExceeded, "too many arrows into " + c.objects[target]);
    std::vector<Sieve> out;
    for (std::uint32_t pick = 0; pick < (1u << in.size()); ++pick) {
        Sieve s{target, {}};
        for (std::size_t i = 0; i < in.size(); ++i)
            if (pick >> i & 1) s.arrows.push_back(in[i]);
        if (is_sieve(c, s).ok) out.push_back(std::move(s));
    }
    return out;
}

bool TopologyReport::valid() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.holds; });
}

namespace {

std::string sieve_str(const FiniteCategory& c, const Sieve& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.arrows.size(); ++i) out += (i ? ", " : "") + c.morphisms[s.arrows[i]].name;
    return out + "} on " + c.objects[s.target];
}

bool covers(const TopologyAssignment& j, const Sieve& s) {
    const auto& l = j.at(s.target);
    return std::find(l.begin(), l.end(), s) != l.end();
}

}  // namespace

TopologyReport check_grothendieck_topology(const FiniteCategory& c, const TopologyAssignment& j) {
    TopologyReport r;
    AxiomResult ident{"identity", true, ""}, stab{"stability", true, ""}, trans{"transitivity", true, ""};
    AxiomResult sat{"saturation", true, ""}, inter{"intersection", true, ""};
    if (j.size() != c.objects.size()) throw Error(ErrorKind::InvalidCategory, "topology must list sieves for every object");
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        for (const auto& s : j[o])
            if (s.target != o || !is_sieve(c, s).ok) throw Error(ErrorKind::InvalidCategory, "J(" + c.objects[o] + ") holds a non-sieve");

    for (std::size_t o = 0; o < c.objects.size() && ident.holds; ++o)
        if (!covers(j, maximal_sieve(c, o))) {
            ident.holds = false;
            ident.witness = "maximal sieve on " + c.objects[o] + " is not covering";
        }
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        for (const auto& s : j[o])
            for (auto f : c.into(o)) {
                if (!stab.holds) break;
                Sieve p = pullback_sieve(c, f, s);
                if (!covers(j, p)) {
                    stab.holds = false;
                    stab.witness = "pullback of " + sieve_str(c, s) + " along " + c.morphisms[f].name + " is " + sieve_str(c, p);
                }
            }
    for (std::size_t o = 0; o < c.objects.size(); ++o) {
        auto sieves = all_sieves(c, o);
        for (const auto& rr : sieves) {
            bool in_j = covers(j, rr);
            for (const auto& s : j[o]) {
                // transitivity: S covering and R locally covering on S
                if (trans.holds && !in_j) {
                    bool local = std::all_of(s.arrows.begin(), s.arrows.end(), [&](std::size_t f) { return covers(j, pullback_sieve(c, f, rr)); });
                    if (local) {
                        trans.holds = false;
                        trans.witness = sieve_str(c, rr) + " is locally covering on " + sieve_str(c, s) + " but not covering";
                    }
                }
                if (sat.holds && !in_j && std::includes(rr.arrows.begin(), rr.arrows.end(), s.arrows.begin(), s.arrows.end())) {
                    sat.holds = false;
                    sat.witness = sieve_str(c, rr) + " contains the covering " + sieve_str(c, s);
                }
                if (inter.holds && in_j) {
                    Sieve m{o, {}};
                    std::set_intersection(rr.arrows.begin(), rr.arrows.end(), s.arrows.begin(), s.arrows.end(), std::back_inserter(m.arrows));
                    if (!covers(j, m)) {
                        inter.holds = false;
                        inter.witness = "intersection of " + sieve_str(c, rr) + " and " + sieve_str(c, s) + " is not covering";
                    }
                }
            }
        }
    }
    r.axioms = {ident, stab, trans};
    r.derived = {sat, inter};
    return r;
}

Presheaf make_presheaf(const FiniteCategory& c, std::vector<std::vector<std::string>> values, std::vector<std::vector<std::size_t>> restriction) {
    if (values.size() != c.objects.size() || restriction.size() != c.morphisms.size())
        throw Error(ErrorKind::InvalidCategory, "presheaf needs a value set per object and a restriction per morphism");
    for (std::size_t f = 0; f < c.morphisms.size(); ++f) {
        const auto& m = c.morphisms[f];
        if (restriction[f].size() != values[m.cod].size()) throw Error(ErrorKind::InvalidCategory, "restriction along " + m.name + " has the wrong domain");
        for (auto v : restriction[f])
            if (v >= values[m.dom].size()) throw Error(ErrorKind::InvalidCategory, "restriction along " + m.name + " leaves its value set");
    }
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        for (std::size_t i = 0; i < values[o].size(); ++i)
            if (restriction[c.identity[o]][i] != i) throw Error(ErrorKind::InvalidCategory, "identity on " + c.objects[o] + " does not act trivially");
    // F(f o g) = F(g) F(f)
    for (std::size_t f = 0; f < c.morphisms.size(); ++f)
        for (std::size_t g = 0; g < c.morphisms.size(); ++g) {
            auto fg = c.compose[f][g];
            if (!fg) continue;
            for (std::size_t i = 0; i < values[c.morphisms[f].cod].size(); ++i)
                if (restriction[*fg][i] != restriction[g][restriction[f][i]])
                    throw Error(ErrorKind::InvalidCategory, "restriction along " + c.morphisms[*fg].name + " is not the composite");
        }
    return {std::move(values), std::move(restriction)};
}

Presheaf representable(const FiniteCategory& c, std::size_t target) {
    std::vector<std::vector<std::string>> values(c.objects.size());
    std::vector<std::vector<std::size_t>> arrows(c.objects.size());
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        for (auto h : c.hom(o, target)) {
            values[o].push_back(c.morphisms[h].name);
            arrows[o].push_back(h);
        }
    std::vector<std::vector<std::size_t>> restriction(c.morphisms.size());
    for (std::size_t g = 0; g < c.morphisms.size(); ++g) {
        const auto& m = c.morphisms[g];
        for (auto h : arrows[m.cod]) {
            std::size_t hg = *c.compose[h][g];
            auto pos = std::find(arrows[m.dom].begin(), arrows[m.dom].end(), hg) - arrows[m.dom].begin();
            restriction[g].push_back(static_cast<std::size_t>(pos));
        }
    }
    return make_presheaf(c, std::move(values), std::move(restriction));
}

SheafResult is_sheaf(const Site& site, const Presheaf& f) {
    const auto& c = site.category;
    if (auto bad = c.meet_failure()) throw Error(ErrorKind::NonPosetCategory, *bad);
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        for (const auto& s : site.topology.at(o)) {
            // Matching families: x_g in F(dom g) for every g in S, compatible
            // along every arrow between members of S.
            const auto& arr = s.arrows;
            std::vector<std::size_t> pick(arr.size(), 0);
            std::map<std::vector<std::size_t>, std::size_t> amalgam;  // matching family -> count of sections
            std::vector<std::vector<std::size_t>> matching;
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == arr.size()) {
                    matching.push_back(pick);
                    return;
                }
                std::size_t d = c.morphisms[arr[i]].dom;
                for (std::size_t v = 0; v < f.values[d].size(); ++v) {
                    pick[i] = v;
                    bool ok = true;
                    for (std::size_t k = 0; k < i && ok; ++k) {
                        std::size_t e = c.morphisms[arr[k]].dom;
                        // compare along inclusions between the two domains
                        for (auto h : c.hom(e, d)) ok = ok && f.restriction[h][v] == pick[k];
                        for (auto h : c.hom(d, e)) ok = ok && f.restriction[h][pick[k]] == v;
                    }
                    if (ok) rec(i + 1);
                }
            };
            rec(0);
            for (std::size_t x = 0; x < f.values[o].size(); ++x) {
                std::vector<std::size_t> fam;
                for (auto g : arr) fam.push_back(f.restriction[g][x]);
                if (++amalgam[fam] > 1) {
                    SheafResult r;
                    r.value = Tri::No;
                    r.reason = "two sections over " + c.objects[o] + " agree on the covering";
                    r.covering = s;
                    r.family = fam;
                    return r;
                }
            }
            for (const auto& m : matching)
                if (!amalgam.count(m)) {
                    SheafResult r;
                    r.value = Tri::No;
                    r.reason = "a matching family on a covering of " + c.objects[o] + " has no amalgamation";
                    r.covering = s;
                    r.family = m;
                    return r;
                }
        }
    SheafResult r;
    r.value = Tri::Yes;
    r.reason = "every matching family on every covering sieve has a unique amalgamation";
    return r;
}

SheafResult is_subcanonical(const Site& site) {
    for (std::size_t o = 0; o < site.category.objects.size(); ++o) {
        auto r = is_sheaf(site, representable(site.category, o));
        if (r.no()) {
            r.representable = o;
            r.reason = "Hom(-, " + site.category.objects[o] + ") is not a sheaf: " + r.reason;
            return r;
        }
    }
    SheafResult r;
    r.value = Tri::Yes;
    r.reason = "every representable presheaf is a sheaf";
    return r;
}

Site gts_to_site(const GtsPresentation& x) {
    if (x.carrier.kind() != CarrierKind::FiniteEnum) throw Error(ErrorKind::NonFiniteCarrier, x.name + " is not on a finite carrier");
    auto opens = all_opens(x);
    std::sort(opens.begin(), opens.end(), [](const SetExpr& a, const SetExpr& b) {
        auto na = *a.finite_size(), nb = *b.finite_size();
        return na != nb ? na < nb : a < b;
    });
    std::vector<std::string> labels;
    for (const auto& o : opens) labels.push_back(o.str());
    std::vector<std::vector<bool>> leq(opens.size(), std::vector<bool>(opens.size()));
    for (std::size_t a = 0; a < opens.size(); ++a)
        for (std::size_t b = 0; b < opens.size(); ++b) leq[a][b] = is_subset(opens[a], opens[b]);
    Site site{poset_category(labels, leq), {}};
    const auto& c = site.category;
    // Every finite open family is admissible on a finite carrier, so the
    // coverings of U are the sieves whose domains have union U.
    site.topology.resize(opens.size());
    for (std::size_t u = 0; u < opens.size(); ++u)
        for (auto& s : all_sieves(c, u)) {
            SetExpr un = SetExpr::empty(x.carrier);
            for (auto g : s.arrows) un = unite(un, opens[c.morphisms[g].dom]);
            if (un == opens[u]) site.topology[u].push_back(std::move(s));
        }
    return site;
}

}  // namespace gtskit

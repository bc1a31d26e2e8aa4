#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "gtskit/cli.hpp"
#include "gtskit/errors.hpp"

using namespace gtskit;
using namespace gtskit::dsl;
namespace fs = std::filesystem;

namespace {

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

// Random set text over enum{e0..e(n-1)} together with its extension as a bitmask.
struct EnumGen {
    std::mt19937_64& rng;
    int n;
    int depth = 0;

    std::pair<std::string, unsigned> term() {
        unsigned full = (1u << n) - 1;
        int pick = depth > 3 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 5);
        if (pick == 0) {
            unsigned m = 0;
            std::string s = "{";
            int k = static_cast<int>(rng() % (n + 1));
            for (int i = 0; i < k; ++i) {
                int a = static_cast<int>(rng() % n);
                s += (i ? ", " : "") + ("e" + std::to_string(a));
                m |= 1u << a;
            }
            return {s + "}", m};
        }
        if (pick == 1) return {"full", full};
        if (pick == 2) return {"empty", 0};
        ++depth;
        auto inner = expr();
        --depth;
        if (pick == 3) return {"complement(" + inner.first + ")", full & ~inner.second};
        return {"(" + inner.first + ")", inner.second};
    }

    std::pair<std::string, unsigned> expr() {
        auto acc = term();
        int ops = static_cast<int>(rng() % 3);
        for (int i = 0; i < ops; ++i) {
            auto r = term();
            switch (rng() % 3) {
                case 0: acc = {acc.first + " u " + r.first, acc.second | r.second}; break;
                case 1: acc = {acc.first + " n " + r.first, acc.second & r.second}; break;
                default: acc = {acc.first + " \\ " + r.first, acc.second & ~r.second}; break;
            }
        }
        return acc;
    }
};

// Natural-number sets as membership on 0..W-1 plus the value on the tail.
constexpr int W = 24;
struct NatSet {
    std::vector<bool> head = std::vector<bool>(W, false);
    bool tail = false;
};

struct NatGen {
    std::mt19937_64& rng;

    std::pair<std::string, NatSet> term() {
        NatSet s;
        switch (rng() % 3) {
            case 0: {
                std::string t = "{";
                int k = static_cast<int>(rng() % 4);
                for (int i = 0; i < k; ++i) {
                    int v = static_cast<int>(rng() % 12);
                    t += (i ? ", " : "") + std::to_string(v);
                    s.head[v] = true;
                }
                return {t + "}", s};
            }
            case 1: {
                std::string t = "co{";
                s.head.assign(W, true);
                s.tail = true;
                int k = static_cast<int>(rng() % 3);
                for (int i = 0; i < k; ++i) {
                    int v = static_cast<int>(rng() % 12);
                    t += (i ? ", " : "") + std::to_string(v);
                    s.head[v] = false;
                }
                return {t + "}", s};
            }
            default: {
                int lo = static_cast<int>(rng() % 10), hi = lo + static_cast<int>(rng() % 6);
                for (int v = lo; v <= hi; ++v) s.head[v] = true;
                return {"range(" + std::to_string(lo) + ", " + std::to_string(hi) + ")", s};
            }
        }
    }

    std::pair<std::string, NatSet> expr() {
        auto acc = term();
        int ops = static_cast<int>(rng() % 4);
        for (int i = 0; i < ops; ++i) {
            auto r = term();
            int op = static_cast<int>(rng() % 3);
            NatSet out;
            for (int v = 0; v < W; ++v) {
                bool a = acc.second.head[v], b = r.second.head[v];
                out.head[v] = op == 0 ? (a || b) : op == 1 ? (a && b) : (a && !b);
            }
            bool a = acc.second.tail, b = r.second.tail;
            out.tail = op == 0 ? (a || b) : op == 1 ? (a && b) : (a && !b);
            acc = {acc.first + (op == 0 ? " u " : op == 1 ? " n " : " \\ ") + r.first, out};
        }
        return acc;
    }
};

// Intervals with endpoints a/2 (or infinite); membership sampled at m/4.
struct LineGen {
    std::mt19937_64& rng;
    using Pred = std::function<bool(int)>;  // argument m stands for m/4

    std::pair<std::string, Pred> term() {
        if (rng() % 5 == 0) {
            int a = static_cast<int>(rng() % 17) - 8;
            std::string t = a % 2 == 0 ? std::to_string(a / 2) : std::to_string(a) + "/2";
            return {"{" + t + "}", [a](int m) { return m == 2 * a; }};
        }
        int a = static_cast<int>(rng() % 17) - 8, b = a + static_cast<int>(rng() % 9);
        bool lo_inf = rng() % 6 == 0, hi_inf = rng() % 6 == 0;
        bool lc = !lo_inf && rng() % 2, hc = !hi_inf && rng() % 2;
        auto half = [](int v) { return v % 2 == 0 ? std::to_string(v / 2) : std::to_string(v) + "/2"; };
        std::string t = std::string(lc ? "[" : "(") + (lo_inf ? "-inf" : half(a)) + "," + (hi_inf ? "+inf" : half(b)) + (hc ? "]" : ")");
        Pred p = [=](int m) {
            bool above = lo_inf || (lc ? m >= 2 * a : m > 2 * a);
            bool below = hi_inf || (hc ? m <= 2 * b : m < 2 * b);
            return above && below;
        };
        return {t, p};
    }

    std::pair<std::string, Pred> expr() {
        auto acc = term();
        int ops = static_cast<int>(rng() % 4);
        for (int i = 0; i < ops; ++i) {
            auto r = term();
            Pred a = acc.second, b = r.second;
            switch (rng() % 4) {
                case 0: acc = {acc.first + " u " + r.first, [a, b](int m) { return a(m) || b(m); }}; break;
                case 1: acc = {acc.first + " n " + r.first, [a, b](int m) { return a(m) && b(m); }}; break;
                case 2: acc = {acc.first + " \\ " + r.first, [a, b](int m) { return a(m) && !b(m); }}; break;
                default: acc = {"complement(" + acc.first + ")", [a](int m) { return !a(m); }}; break;
            }
        }
        return acc;
    }
};

Rational quarter(int m) { return Rational::parse(std::to_string(m) + "/4"); }

Diagnostic diagnostic_of(const std::string& text) {
    try {
        parse_document(text);
    } catch (const DslError& e) {
        return e.diagnostic();
    }
    FAIL("document was accepted");
    return {};
}

}  // namespace

TEST_CASE("documented examples") {
    auto ws = parse_document("space RSalg { carrier qline; opens canonical-open; cov essfin }\nfamily U = stream shrink(0,1,both,3)\n");
    auto x = ws.space("RSalg");
    auto ref = rs_alg();
    CHECK(x->carrier == ref->carrier);
    CHECK(x->points == ref->points);
    CHECK(x->opens.kind == ref->opens.kind);
    CHECK(x->policy == ref->policy);
    auto u = ws.family("U", Carrier::qline());
    auto expected = FamilyExpr(Carrier::qline(), {}, {Stream::of(StreamSchema::shrink(Bound::at(Rational(0)), Bound::at(Rational(1)), true, true, 3))});
    CHECK(u == expected);
    // members (1/n, 1 - 1/n)
    CHECK(u.streams()[0].member(3) == SetExpr::interval(Interval::open(Rational::parse("1/3"), Rational::parse("2/3"))));

    CHECK(parse_syntax("").decls.empty());
    CHECK(parse_syntax("  # only a comment\n\n").decls.empty());
    CHECK(emit_document(parse_syntax("")).empty());
}

TEST_CASE("round trip on the corpus") {
    auto files = corpus("valid");
    REQUIRE(files.size() >= 6);
    for (const auto& f : files) {
        CAPTURE(f.filename().string());
        auto text = slurp(f);
        auto d = parse_syntax(text);
        auto e = emit_document(d);
        CHECK(parse_syntax(e) == d);
        CHECK(emit_document(parse_syntax(e)) == e);
        Workspace a(d), b(parse_syntax(e));
        for (const auto& decl : d.decls) {
            if (decl.kind != DeclKind::Space && decl.kind != DeclKind::Use) continue;
            auto sa = a.space(decl.name), sb = b.space(decl.name);
            CHECK(sa->carrier == sb->carrier);
            CHECK(sa->points == sb->points);
            CHECK(sa->opens.str() == sb->opens.str());
            CHECK(sa->policy == sb->policy);
        }
    }
}

TEST_CASE("malformed corpus gives positioned diagnostics") {
    auto files = corpus("malformed");
    REQUIRE(files.size() >= 20);
    std::set<DiagKind> kinds;
    for (const auto& f : files) {
        CAPTURE(f.filename().string());
        auto text = slurp(f);
        // first line: "# expect: <Kind> <line>:<column>"
        std::istringstream head(text.substr(0, text.find('\n')));
        std::string hash, tag, kind, pos;
        head >> hash >> tag >> kind >> pos;
        REQUIRE(tag == "expect:");
        auto d = diagnostic_of(text);
        CHECK(to_string(d.kind) == kind);
        CHECK(d.pos.str() == pos);
        CHECK(!d.message.empty());
        kinds.insert(d.kind);
    }
    CHECK(kinds.size() == 3);
    CHECK(!diagnostic_of("set s = (0, 1").expected.empty());
}

TEST_CASE("enum set expressions match bitmask semantics") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 5; ++n) {
        std::vector<std::string> atoms;
        for (int i = 0; i < n; ++i) atoms.push_back("e" + std::to_string(i));
        auto c = Carrier::finite_enum(atoms);
        Workspace ws(Document{});
        for (int trial = 0; trial < 200; ++trial) {
            EnumGen g{rng, n};
            auto [text, mask] = g.expr();
            CAPTURE(text);
            auto node = parse_set_syntax(text);
            auto s = ws.resolve_set(node, c);
            unsigned got = 0;
            for (auto i : s.enum_indices()) got |= 1u << i;
            CHECK(got == mask);
            CHECK(parse_set_syntax(emit_node(node)) == node);
            CHECK(ws.resolve_set(parse_set_syntax(s.str()), c) == s);
        }
    }
}

TEST_CASE("natural-number set expressions match window semantics") {
    std::mt19937_64 rng(5);
    Workspace ws(Document{});
    for (int trial = 0; trial < 400; ++trial) {
        NatGen g{rng};
        auto [text, want] = g.expr();
        CAPTURE(text);
        auto node = parse_set_syntax(text);
        auto s = ws.resolve_set(node, Carrier::nat());
        for (int v = 0; v < W; ++v) CHECK(contains(s, Point::of_nat(v)) == static_cast<bool>(want.head[v]));
        CHECK(contains(s, Point::of_nat(1000)) == want.tail);
        CHECK(parse_set_syntax(emit_node(node)) == node);
        CHECK(ws.resolve_set(parse_set_syntax(s.str()), Carrier::nat()) == s);
    }
}

TEST_CASE("line set expressions match sampled semantics") {
    std::mt19937_64 rng(9);
    Workspace ws(Document{});
    for (int trial = 0; trial < 300; ++trial) {
        LineGen g{rng};
        auto [text, pred] = g.expr();
        CAPTURE(text);
        auto node = parse_set_syntax(text);
        auto s = ws.resolve_set(node, Carrier::qline());
        for (int m = -60; m <= 60; ++m) CHECK(contains(s, Point::of_rat(quarter(m))) == pred(m));
        CHECK(parse_set_syntax(emit_node(node)) == node);
        CHECK(ws.resolve_set(parse_set_syntax(s.str()), Carrier::qline()) == s);
    }
}

TEST_CASE("canonical renderings of sets and families parse back") {
    Workspace ws(Document{});
    for (const auto& x : shipped_presentations()) {
        CAPTURE(x->name);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            auto o = random_open(*x, seed);
            CHECK(ws.resolve_set(parse_set_syntax(o.str()), x->carrier) == o);
            auto f = random_family(*x, seed, seed % 2 == 0);
            auto back = ws.resolve_family(parse_family_syntax(f.str()), x->carrier);
            CHECK(back.str() == f.str());
            CHECK(back == f);
        }
        CHECK(ws.resolve_set(parse_set_syntax(x->points.str()), x->carrier) == x->points);
    }
}

TEST_CASE("declarations resolve to library objects") {
    auto ws = parse_document(slurp(fs::path(GTSKIT_SOURCE_DIR) / "corpus/valid/naturals.gts"));
    CHECK(apply(ws.map("up"), Point::of_nat(4)) == Point::of_nat(7));
    CHECK(apply(ws.map("swap"), Point::of_nat(0)) == Point::of_nat(1));
    CHECK(apply(ws.map("swap"), Point::of_nat(9)) == Point::of_nat(9));
    CHECK(ws.space("Chain")->policy == chain_nat()->policy);
    CHECK(ws.space("Chain2")->policy == chain_nat()->policy);
    CHECK(ws.space("Dtop")->policy == top_discrete_nat()->policy);
    CHECK(ws.set("cofinite", Carrier::nat()) == SetExpr::nat_cofinite({0, 3}));
    CHECK(ws.set("block", Carrier::nat()) == SetExpr::nat_range(2, 9));
    CHECK(ws.set("finite", Carrier::qline()).finite_size() == std::optional<std::size_t>(3));
    CHECK_THROWS_AS(ws.set("cofinite", Carrier::qline()), DslError);
}

TEST_CASE("finite constructions and categories") {
    auto ws = parse_document(slurp(fs::path(GTSKIT_SOURCE_DIR) / "corpus/valid/finite.gts"));
    auto two = ws.carrier("two");
    CHECK(all_opens(*ws.space("S")).size() == 3);
    CHECK(all_opens(*ws.space("G")).size() == 4);  // {}, {x}, {y,z}, all
    CHECK(ws.space("Sub")->points == SetExpr::atoms(ws.carrier("three"), {"x", "y"}));
    CHECK(ws.space("SxS")->carrier == Carrier::product(two, two));
    auto diag = ws.map("diag");
    CHECK(apply(diag, Point::of_atom("a")) == Point::of_pair(Point::of_atom("a"), Point::of_atom("a")));
    CHECK(apply(ws.map("p2"), Point::of_pair(Point::of_atom("a"), Point::of_atom("b"))) == Point::of_atom("b"));
    CHECK(ws.set("corner", Carrier::product(two, two)).finite_size() == std::optional<std::size_t>(3));

    auto sites = parse_document(slurp(fs::path(GTSKIT_SOURCE_DIR) / "corpus/valid/sites.gts"));
    const auto& meet = sites.category("Meet");
    CHECK(meet.objects.size() == 4);
    CHECK(meet.morphisms.size() == 9);  // 4 identities, 4 covers, bot <= top
    CHECK(meet.leq(*meet.object_index("bot"), *meet.object_index("top")));
    CHECK(!meet.meet_failure());
    const auto& chain = sites.site("ChainSite");
    auto c2 = *chain.category.object_index("c2");
    CHECK(chain.topology[c2].size() == 2);
    CHECK(chain.topology[c2][1] == generated_sieve(chain.category, c2, {*chain.category.morphism_index("c1<=c2")}));
    const auto& idem = sites.category("Idem");
    auto e = *idem.morphism_index("e");
    CHECK(idem.compose[e][e] == std::optional<std::size_t>(e));
    const auto& two_p = sites.presheaf("Two");
    CHECK(two_p.category == "Arrow");
    CHECK(two_p.presheaf.values[0] == std::vector<std::string>{"p", "q"});

    auto layers = parse_document(slurp(fs::path(GTSKIT_SOURCE_DIR) / "corpus/valid/layers.gts"));
    auto tower = layers.exhaustion("tower", Carrier::nat());
    CHECK(tower.size() == std::optional<std::size_t>(4));
    CHECK(tower.less_equal(0, 3));  // a <= top by transitivity
    CHECK(!tower.less_equal(1, 2));
    CHECK(layers.space("Lline")->policy.kind == CoveragePolicy::Kind::LocallyEssFin);
}

TEST_CASE("reference and cycle checks") {
    CHECK(diagnostic_of("set a = b").kind == DiagKind::Resolution);
    CHECK(diagnostic_of("family f = g").kind == DiagKind::Resolution);
    CHECK(diagnostic_of("family f : nat = f").kind == DiagKind::Resolution);
    CHECK(diagnostic_of("space X = smallify(X)").kind == DiagKind::Resolution);
    CHECK(diagnostic_of("map f : A -> A = identity").kind == DiagKind::Resolution);
    CHECK(diagnostic_of("use Wd\nmap f : Wd -> Wd = pair(f, f)").kind == DiagKind::Resolution);
    CHECK(diagnostic_of("site S = opens(Missing)").kind == DiagKind::Resolution);
    CHECK(diagnostic_of("space X { carrier nat; opens all-sets }").kind == DiagKind::Validation);
    CHECK(diagnostic_of("carrier c = enum{a, a}").kind == DiagKind::Validation);
    CHECK(diagnostic_of("set s : nat = {1/2}").kind == DiagKind::Validation);
    CHECK(diagnostic_of("set s : qline = co{1}").kind == DiagKind::Validation);
    CHECK(diagnostic_of("set s : qline = (0,+inf] ").kind == DiagKind::Validation);
    CHECK(diagnostic_of("use Wd\nspace T = topologize(Wd)\nspace Q = product(Wd, Wd, Wd)").kind != DiagKind::Syntax);
    // forward references are fine
    CHECK_NOTHROW(parse_document("space Y = subspace(X, {1})\nspace X { carrier nat; opens all-sets; cov essfin }"));
}

TEST_CASE("commands deliver verdicts") {
    auto ws = parse_document(slurp(fs::path(GTSKIT_SOURCE_DIR) / "corpus/valid/small_line.gts"));
    cli::Options opt;
    opt.budget = 1000;
    opt.seed = 7;
    auto audit = cli::run_command("audit", ws, {"RSalg"}, opt);
    CHECK(audit.exit_code == 0);
    CHECK(audit.report["results"]["RSalg"]["violations"] == 0);

    auto fam = cli::run_command("check-family", ws, {"RSalg", "U", "UV", "UW"}, opt);
    CHECK(fam.exit_code == 0);
    CHECK(fam.report["results"]["U"]["verdict"] == "not admissible");
    CHECK(fam.report["results"]["UV"]["verdict"] == "admissible");
    CHECK(fam.report["results"]["UW"]["verdict"] == "admissible");

    auto sm = cli::run_command("smallness", ws, {"RTop", "unit-interval"}, opt);
    CHECK(sm.exit_code == 0);
    CHECK(sm.report["results"]["unit-interval"]["value"] == "NotSmall");
    CHECK(sm.report["results"]["unit-interval"].contains("witness"));
    // the reported witness replays: parse it back and it is admissible in RTop but not essentially finite on [0,1]
    auto w = ws.resolve_family(parse_family_syntax(sm.report["results"]["unit-interval"]["witness"].get<std::string>()), Carrier::qline());
    CHECK(is_admissible(*ws.space("RTop"), w).yes());
    CHECK(!essentially_finite_on(w, ws.set("unit-interval", Carrier::qline())).yes);

    opt.expect = "yes";
    CHECK(cli::run_command("check-family", ws, {"RSalg", "U"}, opt).exit_code == 1);
    CHECK(cli::run_command("check-family", ws, {"RSalg", "UV"}, opt).exit_code == 0);
    opt.expect = "no";
    CHECK(cli::run_command("check-family", ws, {"RSalg", "U"}, opt).exit_code == 0);
    opt.expect.reset();

    CHECK_THROWS_AS(cli::run_command("frobnicate", ws, {"RSalg"}, opt), DslError);
    CHECK_THROWS_AS(cli::run_command("check-family", ws, {"RSalg", "unit-interval"}, opt), DslError);
    CHECK_THROWS_AS(cli::run_command("smallness", ws, {"Nope", "unit-interval"}, opt), DslError);
    CHECK_THROWS_AS(cli::run_command("audit", ws, {}, opt), DslError);

    auto cl = cli::run_command("classify", ws, {"RSalg"}, opt);
    CHECK(cl.report["results"]["RSalg"]["separation"].size() == 8);
}

TEST_CASE("reports are deterministic") {
    auto ws = parse_document(slurp(fs::path(GTSKIT_SOURCE_DIR) / "corpus/valid/naturals.gts"));
    cli::Options opt;
    opt.budget = 300;
    opt.seed = 42;
    for (const std::string cmd : {"audit", "classify", "layers"}) {
        std::string name = cmd == "layers" ? "Chain" : "Wd";
        auto a = cli::emit_report(cli::run_command(cmd, ws, {name}, opt).report, "json");
        auto b = cli::emit_report(cli::run_command(cmd, parse_document(emit_document(ws.document())), {name}, opt).report, "json");
        CHECK(a == b);
        auto t = cli::emit_report(cli::run_command(cmd, ws, {name}, opt).report, "text");
        CHECK(t.rfind("gtskit " + cmd + " " + name + "\n", 0) == 0);
    }
    opt.seed = 43;
    auto c = cli::run_command("audit", ws, {"Wd"}, opt).report;
    CHECK(c["seed"] == 43);

    cli::Json empty = {{"command", "audit"}, {"args", cli::Json::array()}, {"results", cli::Json::object()}};
    CHECK(cli::emit_report(empty, "text") == "gtskit audit\n");
    CHECK(cli::Json::parse(cli::emit_report(empty, "json")) == empty);
}

TEST_CASE("audit violations serialize replayably") {
    GtsPresentation p;
    p.name = "Broken";
    p.carrier = Carrier::finite_enum({"a", "b", "c"});
    p.points = SetExpr::full(p.carrier);
    p.opens.kind = OpensSpec::Kind::ExplicitList;
    for (auto v : std::vector<std::vector<std::string>>{{}, {"a"}, {"b"}, {"a", "b", "c"}}) p.opens.list.push_back(SetExpr::atoms(p.carrier, v));
    p.policy = CoveragePolicy::all();
    auto x = make_space_unchecked(p);
    auto r = audit_axioms(*x, 200, 3);
    REQUIRE(r.violation_count() > 0);
    auto j = cli::Json::parse(cli::audit_json(r).dump());
    CHECK(j["violations"] == r.violation_count());
    Workspace ws(Document{});
    std::size_t replayed = 0;
    for (auto& [check, tally] : j["checks"].items())
        for (const auto& v : tally["violations"]) {
            AuditInstance inst;
            inst.check = *audit_check_from_string(v["instance"]["check"].get<std::string>());
            inst.index = v["instance"]["index"].get<std::uint64_t>();
            for (const auto& s : v["instance"]["sets"]) inst.sets.push_back(ws.resolve_set(parse_set_syntax(s.get<std::string>()), p.carrier));
            for (const auto& f : v["instance"]["families"]) inst.families.push_back(ws.resolve_family(parse_family_syntax(f.get<std::string>()), p.carrier));
            auto again = check_instance(*x, inst);
            CHECK(again.outcome == Outcome::Violated);
            CHECK(again.detail == v["detail"].get<std::string>());
            ++replayed;
        }
    CHECK(replayed == r.violation_count());
}

TEST_CASE("driver exit codes") {
    auto dir = fs::path(GTSKIT_SOURCE_DIR) / "corpus";
    std::ostringstream out, err;
    auto run = [&](std::vector<std::string> args) {
        out.str("");
        err.str("");
        return cli::run_cli(args, out, err);
    };
    CHECK(run({"check-family", (dir / "valid/small_line.gts").string(), "RSalg", "U"}) == 0);
    CHECK(out.str().find("not admissible") != std::string::npos);
    CHECK(run({"check-family", (dir / "valid/small_line.gts").string(), "RSalg", "U", "--expect", "yes"}) == 1);
    CHECK(run({"construct", (dir / "valid/finite.gts").string(), "S", "--format", "json"}) == 0);
    CHECK(cli::Json::parse(out.str())["results"]["S"]["carrier"] == "enum{a, b}");
    for (const auto& f : corpus("malformed")) {
        CAPTURE(f.string());
        CHECK(run({"construct", f.string()}) == 2);
        CHECK(err.str().rfind(f.string() + ":", 0) == 0);
    }
    CHECK(run({"transmogrify", (dir / "valid/empty.gts").string()}) == 2);
    CHECK(run({"construct", (dir / "valid/no_such_file.gts").string()}) == 2);
    CHECK(run({"smallness", (dir / "valid/small_line.gts").string(), "RSalg", "missing"}) == 2);
    CHECK(run({"construct", (dir / "valid/empty.gts").string(), "--format", "yaml"}) == 2);
    CHECK(run({"construct", (dir / "valid/empty.gts").string()}) == 0);
    CHECK(out.str() == "gtskit construct\n");
    CHECK(run({"--help"}) == 0);

    CHECK(run({"site", (dir / "valid/sites.gts").string(), "Discrete"}) == 0);
    CHECK(run({"site", (dir / "valid/sites.gts").string(), "Discrete", "--expect", "yes"}) == 1);
    CHECK(run({"site", (dir / "valid/sites.gts").string(), "ChainSite", "Const", "--expect", "yes"}) == 0);
    CHECK(run({"site", (dir / "valid/sites.gts").string(), "ChainSite", "Two"}) == 2);
    CHECK(run({"layers", (dir / "valid/layers.gts").string(), "RLoc"}) == 0);
    CHECK(run({"layers", (dir / "valid/layers.gts").string(), "ChainN"}) == 0);
    CHECK(run({"layers", (dir / "valid/layers.gts").string(), "RSalg"}) == 2);
    CHECK(run({"map", (dir / "valid/naturals.gts").string(), "back", "--expect", "yes"}) == 0);
    CHECK(run({"map", (dir / "valid/naturals.gts").string(), "id", "--expect", "yes"}) == 1);
}

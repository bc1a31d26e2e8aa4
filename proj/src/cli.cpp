#include "gtskit/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gtskit/audit.hpp"
#include "gtskit/errors.hpp"
#include "gtskit/scale_layers.hpp"
#include "gtskit/topo_props.hpp"

namespace gtskit::cli {

namespace {

using dsl::DeclKind;
using dsl::DiagKind;
using dsl::DslError;

[[noreturn]] void bad_reference(const std::string& msg) { throw DslError(dsl::Diagnostic{DiagKind::Resolution, {0, 0}, "BadReference: " + msg, {}}); }

bool is_space(const dsl::Workspace& ws, const std::string& n) {
    auto k = ws.kind_of(n);
    return k && (*k == DeclKind::Space || *k == DeclKind::Use);
}

Space need_space(const dsl::Workspace& ws, const std::string& n) {
    if (!is_space(ws, n)) bad_reference("'" + n + "' is not a declared space");
    return ws.space(n);
}

void need_kind(const dsl::Workspace& ws, const std::string& n, DeclKind k) {
    if (ws.kind_of(n) != k) bad_reference("'" + n + "' is not a declared " + dsl::to_string(k));
}

void need_args(const std::vector<std::string>& names, std::size_t n, const std::string& usage) {
    if (names.size() < n) bad_reference("missing argument: " + usage);
}

Json members_json(const std::vector<FamilyMember>& ms) {
    Json a = Json::array();
    for (const auto& m : ms) a.push_back({{"label", m.label}, {"set", m.set.str()}});
    return a;
}

Json sieve_json(const FiniteCategory& c, const Sieve& s) {
    Json arrows = Json::array();
    for (auto a : s.arrows) arrows.push_back(c.morphisms[a].name);
    return {{"target", c.objects[s.target]}, {"arrows", arrows}};
}

Json sheaf_json(const FiniteCategory& c, const Presheaf* p, const SheafResult& r) {
    Json j = {{"value", to_string(r.value)}, {"reason", r.reason}};
    if (r.covering) {
        j["covering"] = sieve_json(c, *r.covering);
        if (p && !r.family.empty()) {
            Json fam = Json::array();
            for (std::size_t i = 0; i < r.family.size() && i < r.covering->arrows.size(); ++i) {
                std::size_t dom = c.morphisms[r.covering->arrows[i]].dom;
                fam.push_back(p->values[dom][r.family[i]]);
            }
            j["family"] = fam;
        }
    }
    if (r.representable) j["representable"] = c.objects[*r.representable];
    return j;
}

SheafResult guarded_sheaf(const std::function<SheafResult()>& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonPosetCategory) throw;
        SheafResult r;
        r.reason = e.what();
        return r;
    }
}

Json audit_tally(const AuditReport& r, std::size_t& violations) {
    Json checks = Json::object();
    for (const auto& t : r.tallies) {
        Json v = Json::array();
        for (const auto& viol : t.violations) {
            Json sets = Json::array(), fams = Json::array();
            for (const auto& s : viol.instance.sets) sets.push_back(s.str());
            for (const auto& f : viol.instance.families) fams.push_back(f.str());
            v.push_back({{"detail", viol.detail},
                         {"instance", {{"check", to_string(viol.instance.check)}, {"index", viol.instance.index}, {"sets", sets}, {"families", fams}}}});
        }
        violations += t.violations.size();
        checks[to_string(t.check)] = {{"pass", t.pass_count}, {"vacuous", t.vacuous}, {"violations", v}};
    }
    return {{"instances", r.instances}, {"checks", checks}};
}

Json space_json(const GtsPresentation& x) {
    Json j = {{"carrier", x.carrier.str()}, {"points", x.points.str()}, {"opens", x.opens.str()}, {"policy", x.policy.str()}};
    j["notes"] = x.notes;
    if (x.is_finite() && *x.points.finite_size() <= 6) {
        Json opens = Json::array();
        for (const auto& o : all_opens(x)) opens.push_back(o.str());
        j["open_sets"] = opens;
    }
    return j;
}

struct Run {
    const dsl::Workspace& ws;
    const Options& opt;
    Json results = Json::object();
    std::vector<Tri> primary;
    bool violation = false;

    void audit(const std::vector<std::string>& names) {
        need_args(names, 1, "audit <space>...");
        for (const auto& n : names) {
            Space x = need_space(ws, n);
            std::size_t v = 0;
            Json j = {{"axioms", audit_tally(audit_axioms(*x, opt.budget, opt.seed), v)},
                      {"propositions", audit_tally(audit_propositions(*x, opt.budget, opt.seed), v)}};
            if (x->is_finite() && *x->points.finite_size() <= 4) j["exhaustive"] = audit_tally(audit_exhaustive(*x), v);
            j["violations"] = v;
            if (v) violation = true;
            results[n] = j;
        }
    }

    void check_family(const std::vector<std::string>& names) {
        need_args(names, 2, "check-family <space> <family>...");
        Space x = need_space(ws, names[0]);
        for (std::size_t i = 1; i < names.size(); ++i) {
            need_kind(ws, names[i], DeclKind::Family);
            FamilyExpr f = ws.family(names[i], x->carrier);
            Verdict v;
            try {
                v = is_admissible(*x, f);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NonOpenMember) throw;
                v = Verdict::make(Tri::No, e.what());
            }
            Json j = verdict_json(v);
            j["family"] = f.str();
            j["verdict"] = v.yes() ? "admissible" : v.no() ? "not admissible" : v.value == Tri::Checked ? "checked" : "unknown";
            primary.push_back(v.value);
            results[names[i]] = j;
        }
    }

    void smallness_cmd(const std::vector<std::string>& names) {
        need_args(names, 2, "smallness <space> <set>...");
        Space x = need_space(ws, names[0]);
        for (std::size_t i = 1; i < names.size(); ++i) {
            need_kind(ws, names[i], DeclKind::Set);
            SetExpr s = ws.set(names[i], x->carrier);
            auto r = smallness(*x, s);
            Json j = {{"set", s.str()}, {"value", to_string(r.value)}, {"reason", r.reason}};
            if (r.witness) j["witness"] = r.witness->str();
            primary.push_back(r.value == Smallness::Small ? Tri::Yes : r.value == Smallness::NotSmall ? Tri::No : Tri::Unknown);
            results[names[i]] = j;
        }
    }

    void construct(std::vector<std::string> names) {
        if (names.empty())
            for (const auto& d : ws.document().decls)
                if (d.kind == DeclKind::Space || d.kind == DeclKind::Use) names.push_back(d.name);
        for (const auto& n : names) results[n] = space_json(*need_space(ws, n));
    }

    void map_cmd(const std::vector<std::string>& names) {
        need_args(names, 1, "map <map> [<family>...]");
        need_kind(ws, names[0], DeclKind::Map);
        const SpaceMap& f = ws.map(names[0]);
        std::vector<FamilyExpr> probes;
        for (std::size_t i = 1; i < names.size(); ++i) {
            need_kind(ws, names[i], DeclKind::Family);
            probes.push_back(ws.family(names[i], f.codomain->carrier));
        }
        Verdict v = check_strict_continuity(f, probes);
        primary.push_back(v.value);
        results[names[0]] = {{"domain", f.domain->name}, {"codomain", f.codomain->name}, {"strictly_continuous", verdict_json(v)}};
    }

    void classify(const std::vector<std::string>& names) {
        need_args(names, 1, "classify <space|map> [<set>...]");
        if (ws.kind_of(names[0]) == DeclKind::Map) {
            auto r = classify_map(ws.map(names[0]), opt.budget);
            results[names[0]] = {{"strictly_continuous", verdict_json(r.strictly_continuous)},
                                 {"open", verdict_json(r.open_map)},
                                 {"closed", verdict_json(r.closed_map)},
                                 {"strict_homeo", verdict_json(r.strict_homeo)},
                                 {"local_strict_homeo", verdict_json(r.local_strict_homeo)}};
            primary.push_back(r.strict_homeo.value);
            return;
        }
        Space x = need_space(ws, names[0]);
        Json j;
        auto sep = separation_report(*x, opt.budget);
        Json flags = Json::object();
        for (const auto& [name, v] : sep.flags()) flags[name] = verdict_json(*v);
        j["separation"] = flags;
        try {
            auto c = components(*x);
            j["components"] = {{"classes", c.classes.str()}, {"admissible", verdict_json(c.acc)}};
        } catch (const Error& e) {
            j["components"] = {{"unsupported", e.what()}};
        }
        j["separable"] = verdict_json(is_separable(*x));
        if (x->is_finite()) j["connected"] = is_connected(*x, x->points);
        for (std::size_t i = 1; i < names.size(); ++i) {
            need_kind(ws, names[i], DeclKind::Set);
            SetExpr s = ws.set(names[i], x->carrier);
            auto c = classify_subset(*x, s);
            Json sj = {{"set", s.str()},
                       {"open", c.open},
                       {"closed", c.closed},
                       {"weakly_open", c.weakly_open},
                       {"weakly_closed", c.weakly_closed},
                       {"locally_closed", c.locally_closed},
                       {"constructible", c.constructible}};
            if (c.locally_constructible) sj["locally_constructible"] = *c.locally_constructible;
            if (c.piecewise_constructible) sj["piecewise_constructible"] = *c.piecewise_constructible;
            sj["small"] = to_string(smallness(*x, s).value);
            try {
                sj["dense"] = verdict_json(is_dense(*x, s));
            } catch (const Error& e) {
                sj["dense"] = {{"value", "Unknown"}, {"reason", e.what()}};
            }
            j["subsets"][names[i]] = sj;
        }
        results[names[0]] = j;
    }

    void site_cmd(const std::vector<std::string>& names) {
        need_args(names, 1, "site <site|space> [<presheaf>...]");
        Site s = ws.kind_of(names[0]) == DeclKind::Site ? ws.site(names[0]) : gts_to_site(*need_space(ws, names[0]));
        const auto& c = s.category;
        auto rep = check_grothendieck_topology(c, s.topology);
        auto axioms = [](const std::vector<AxiomResult>& as) {
            Json j = Json::object();
            for (const auto& a : as) j[a.axiom] = {{"holds", a.holds}, {"witness", a.witness}};
            return j;
        };
        Json j = {{"objects", c.objects.size()}, {"arrows", c.morphisms.size()}, {"axioms", axioms(rep.axioms)}, {"derived", axioms(rep.derived)}};
        if (!rep.valid()) violation = true;
        if (rep.valid()) {
            auto sub = guarded_sheaf([&] { return is_subcanonical(s); });
            j["subcanonical"] = sheaf_json(c, nullptr, sub);
            if (names.size() == 1) primary.push_back(sub.value);
        }
        for (std::size_t i = 1; i < names.size(); ++i) {
            need_kind(ws, names[i], DeclKind::Presheaf);
            const auto& p = ws.presheaf(names[i]);
            if (p.presheaf.values.size() != c.objects.size() || p.presheaf.restriction.size() != c.morphisms.size())
                bad_reference("presheaf '" + names[i] + "' does not live on " + names[0]);
            if (!rep.valid()) continue;
            auto r = guarded_sheaf([&] { return is_sheaf(s, p.presheaf); });
            primary.push_back(r.value);
            j["sheaf"][names[i]] = sheaf_json(c, &p.presheaf, r);
        }
        results[names[0]] = j;
    }

    void layers(const std::vector<std::string>& names) {
        need_args(names, 1, "layers <space> [<family>]");
        Space x = need_space(ws, names[0]);
        LayerReport r;
        if (names.size() > 1) {
            need_kind(ws, names[1], DeclKind::Family);
            r = validate_locally_small(*x, ws.family(names[1], x->carrier));
        } else if (x->policy.kind == CoveragePolicy::Kind::PiecewiseEssFin) {
            r = validate_exhaustion(*x);
        } else {
            r = validate_locally_small(*x);
        }
        Json checks = Json::object();
        for (const auto& [n, v] : r.checks) checks[n] = verdict_json(v);
        Json j = {{"locally_small", verdict_json(r.locally_small)},
                  {"paracompact", verdict_json(r.paracompact)},
                  {"lindelof", verdict_json(r.lindelof)},
                  {"closure_property", verdict_json(r.closure_property)},
                  {"strongly_T1", verdict_json(r.strongly_t1)},
                  {"checks", checks},
                  {"notes", r.notes}};
        if (r.paracompact_witness) j["paracompact_witness"] = r.paracompact_witness->str();
        if (r.exhaustion) j["exhaustion"] = r.exhaustion->str();
        if (!r.checks_pass()) violation = true;
        if (x->policy.kind != CoveragePolicy::Kind::PiecewiseEssFin || names.size() > 1) primary.push_back(r.locally_small.value);
        results[names[0]] = j;
    }
};

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> cmds = {"audit", "check-family", "smallness", "construct", "map", "classify", "site", "layers"};
    return cmds;
}

Json verdict_json(const Verdict& v) {
    Json j = {{"value", to_string(v.value)}, {"reason", v.reason}};
    if (v.set) j["witness_set"] = v.set->str();
    if (v.family) j["witness_family"] = v.family->str();
    if (!v.members.empty()) j["witness_members"] = members_json(v.members);
    return j;
}

Json audit_json(const AuditReport& r) {
    std::size_t v = 0;
    Json j = audit_tally(r, v);
    j["violations"] = v;
    return j;
}

CommandResult run_command(const std::string& cmd, const dsl::Workspace& ws, const std::vector<std::string>& names, const Options& opt) {
    Run run{ws, opt};
    try {
        if (cmd == "audit")
            run.audit(names);
        else if (cmd == "check-family")
            run.check_family(names);
        else if (cmd == "smallness")
            run.smallness_cmd(names);
        else if (cmd == "construct")
            run.construct(names);
        else if (cmd == "map")
            run.map_cmd(names);
        else if (cmd == "classify")
            run.classify(names);
        else if (cmd == "site")
            run.site_cmd(names);
        else if (cmd == "layers")
            run.layers(names);
        else
            throw DslError(dsl::Diagnostic{DiagKind::Resolution, {0, 0}, "UnknownCommand: '" + cmd + "'", {}});
    } catch (const Error& e) {
        throw DslError(dsl::Diagnostic{DiagKind::Validation, {0, 0}, e.what(), {}});
    }
    Json args = names;
    CommandResult out;
    out.report = {{"command", cmd}, {"args", args}, {"budget", opt.budget}, {"seed", opt.seed}, {"results", run.results}};
    int code = run.violation ? 1 : 0;
    if (opt.expect) {
        Tri bad = *opt.expect == "yes" ? Tri::No : Tri::Yes;
        for (auto t : run.primary)
            if (t == bad) code = 1;
    }
    out.exit_code = code;
    return out;
}

namespace {

void flatten(const Json& j, const std::string& path, std::string& out) {
    if (j.is_object() && !j.empty()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array() && !j.empty()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out += path + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
}

}  // namespace

std::string emit_report(const Json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    std::string out = "gtskit " + report.value("command", std::string());
    if (report.contains("args"))
        for (const auto& a : report["args"]) out += " " + a.get<std::string>();
    out += "\n";
    if (report.contains("results") && !report["results"].empty()) flatten(report["results"], "", out);
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Checker for generalized topological spaces", "gtskit"};
    std::string cmd, file;
    std::vector<std::string> names;
    Options opt;
    std::string expect;
    app.add_option("command", cmd, "one of: audit, check-family, smallness, construct, map, classify, site, layers")->required();
    app.add_option("document", file, "DSL document")->required();
    app.add_option("names", names, "declared names the command works on");
    app.add_option("--budget", opt.budget, "instances per audit, samples elsewhere");
    app.add_option("--seed", opt.seed, "seed for generated instances");
    app.add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--expect", expect, "assert the primary verdicts: yes or no")->check(CLI::IsMember({"yes", "no"}));

    std::vector<std::string> argv_store = {"gtskit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "gtskit: " << e.what() << "\n";
        return 2;
    }
    if (!expect.empty()) opt.expect = expect;
    if (std::find(commands().begin(), commands().end(), cmd) == commands().end()) {
        err << "gtskit: UnknownCommand: '" << cmd << "'\n";
        return 2;
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        err << "gtskit: cannot read " << file << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        dsl::Workspace ws = dsl::parse_document(buf.str());
        auto r = run_command(cmd, ws, names, opt);
        out << emit_report(r.report, opt.format);
        return r.exit_code;
    } catch (const DslError& e) {
        const auto& d = e.diagnostic();
        if (d.pos.line > 0)
            err << file << ":" << d.str() << "\n";
        else
            err << "gtskit: " << to_string(d.kind) << ": " << d.message << "\n";
        return 2;
    }
}

}  // namespace gtskit::cli

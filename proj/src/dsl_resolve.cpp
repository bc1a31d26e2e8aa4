#include <algorithm>
#include <set>

#include "gtskit/dsl.hpp"
#include "gtskit/errors.hpp"

namespace gtskit::dsl {

namespace {

[[noreturn]] void fail(DiagKind k, SourcePos pos, const std::string& msg) { throw DslError(Diagnostic{k, pos, msg, {}}); }

// Library contract failures become positioned validation diagnostics.
template <class F>
auto guard(SourcePos pos, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        fail(DiagKind::Validation, pos, e.what());
    }
}

std::uint64_t parse_nat(const Node& n) {
    std::string t = n.text;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        fail(DiagKind::Validation, n.pos, "'" + n.text + "' is not a natural number");
    try {
        return std::stoull(t);
    } catch (const std::exception&) {
        fail(DiagKind::Validation, n.pos, "'" + n.text + "' is out of range");
    }
}

Rational parse_rat(const Node& n) {
    if (n.text.find("inf") != std::string::npos) fail(DiagKind::Validation, n.pos, "infinity is not a point");
    std::string t = n.text;
    if (t[0] == '+') t = t.substr(1);
    return guard(n.pos, [&] { return Rational::parse(t); });
}

Bound parse_bound(const Node& n) {
    if (n.text == "-inf") return Bound::neg_inf();
    if (n.text == "+inf") return Bound::pos_inf();
    return Bound::at(parse_rat(n));
}

void require_kind(const Carrier& c, CarrierKind k, const Node& n, const std::string& what) {
    if (c.kind() != k) fail(DiagKind::Validation, n.pos, what + " is not available on carrier " + c.str());
}

Space renamed(const Space& s, const std::string& name) {
    if (s->name == name) return s;
    GtsPresentation p = *s;
    p.name = name;
    return make_space_unchecked(std::move(p));
}

std::vector<std::vector<bool>> order_closure(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& le) {
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
    for (auto [a, b] : le) m[a][b] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m[i][k] && m[k][j]) m[i][j] = true;
    return m;
}

}  // namespace

Workspace::Workspace(Document doc) : doc_(std::move(doc)) {
    for (const auto& d : doc_.decls) {
        switch (d.kind) {
            case DeclKind::Use:
            case DeclKind::Space: space(d.name); break;
            case DeclKind::Carrier: carrier(d.name); break;
            case DeclKind::Map: map(d.name); break;
            case DeclKind::Category: category(d.name); break;
            case DeclKind::Site: site(d.name); break;
            case DeclKind::Presheaf: presheaf(d.name); break;
            case DeclKind::Set:
                check_refs(d.body, "set");
                if (d.annot) set(d.name, resolve_carrier(*d.annot));
                break;
            case DeclKind::Family:
                check_refs(d.body, "family");
                if (d.annot) family(d.name, resolve_carrier(*d.annot));
                break;
            case DeclKind::Exhaustion:
                check_refs(d.body, "exhaustion");
                if (d.annot) exhaustion(d.name, resolve_carrier(*d.annot));
                break;
        }
    }
}

Workspace parse_document(const std::string& text) { return Workspace(parse_syntax(text)); }

std::optional<DeclKind> Workspace::kind_of(const std::string& name) const {
    const Decl* d = doc_.find(name);
    if (!d) return std::nullopt;
    return d->kind;
}

const Decl& Workspace::require(const std::string& name, std::vector<DeclKind> kinds, SourcePos pos) const {
    const Decl* d = doc_.find(name);
    if (!d) fail(DiagKind::Resolution, pos, "'" + name + "' is not declared");
    if (std::find(kinds.begin(), kinds.end(), d->kind) == kinds.end())
        fail(DiagKind::Resolution, pos, "'" + name + "' is a " + to_string(d->kind) + ", expected a " + to_string(kinds[0]));
    return *d;
}

void Workspace::enter(const Decl& d) const {
    if (std::find(resolving_.begin(), resolving_.end(), d.name) != resolving_.end())
        fail(DiagKind::Resolution, d.pos, "'" + d.name + "' depends on itself");
}

namespace {
struct Frame {
    std::vector<std::string>& stack;
    Frame(std::vector<std::string>& s, const std::string& name) : stack(s) { stack.push_back(name); }
    ~Frame() { stack.pop_back(); }
};
}  // namespace

void Workspace::check_refs(const Node& n, const std::string& context) const {
    if (n.head == "ref") {
        if (context == "set") require(n.text, {DeclKind::Set}, n.pos);
        if (context == "family") require(n.text, {DeclKind::Family}, n.pos);
        if (context == "exhaustion") require(n.text, {DeclKind::Exhaustion}, n.pos);
        return;
    }
    if (n.head == "list" || n.head == "const" || n.head == "piece") {
        for (const auto& k : n.kids) check_refs(k, "set");
        return;
    }
    for (const auto& k : n.kids) check_refs(k, context == "family" && n.head == "stream" ? "stream" : context);
}

// ---------------------------------------------------------------------------
// Carriers, points, sets

Carrier Workspace::carrier(const std::string& name) const {
    if (auto it = carriers_.find(name); it != carriers_.end()) return it->second;
    const Decl& d = require(name, {DeclKind::Carrier}, {});
    enter(d);
    Frame f(resolving_, name);
    return carriers_.emplace(name, resolve_carrier(d.body)).first->second;
}

Carrier Workspace::resolve_carrier(const Node& n) const {
    if (n.head == "qline") return Carrier::qline();
    if (n.head == "nat") return Carrier::nat();
    if (n.head == "enum") {
        std::vector<std::string> atoms;
        std::set<std::string> seen;
        for (const auto& a : n.kids) {
            if (!seen.insert(a.text).second) fail(DiagKind::Validation, a.pos, "atom '" + a.text + "' listed twice");
            atoms.push_back(a.text);
        }
        if (atoms.empty()) fail(DiagKind::Validation, n.pos, "an enumerated carrier needs at least one atom");
        return guard(n.pos, [&] { return Carrier::finite_enum(atoms); });
    }
    if (n.head == "cproduct") return Carrier::product(resolve_carrier(n.kids[0]), resolve_carrier(n.kids[1]));
    const Decl& d = require(n.text, {DeclKind::Carrier}, n.pos);
    return carrier(d.name);
}

Point Workspace::resolve_point(const Node& n, const Carrier& c) const {
    switch (c.kind()) {
        case CarrierKind::FiniteEnum:
            if (n.head == "pair" || c.atom_index(n.text) == std::string::npos)
                fail(DiagKind::Validation, n.pos, "'" + emit_node(Node{"elems", "", {n}, n.pos}) + "' is not a point of " + c.str());
            return Point::of_atom(n.text);
        case CarrierKind::NatFC:
            if (n.head != "num") fail(DiagKind::Validation, n.pos, "expected a natural number");
            return Point::of_nat(parse_nat(n));
        case CarrierKind::QLine:
            if (n.head != "num") fail(DiagKind::Validation, n.pos, "expected a rational number");
            return Point::of_rat(parse_rat(n));
        case CarrierKind::Product:
            if (n.head != "pair") fail(DiagKind::Validation, n.pos, "expected a pair <x, y> on " + c.str());
            return Point::of_pair(resolve_point(n.kids[0], c.left()), resolve_point(n.kids[1], c.right()));
    }
    fail(DiagKind::Validation, n.pos, "unsupported carrier");
}

SetExpr Workspace::set(const std::string& name, const Carrier& c) const {
    const Decl& d = require(name, {DeclKind::Set}, {});
    if (d.annot) {
        Carrier own = resolve_carrier(*d.annot);
        if (!(own == c)) fail(DiagKind::Validation, d.pos, "set '" + name + "' lives on " + own.str() + ", not on " + c.str());
    }
    enter(d);
    Frame f(resolving_, name);
    return resolve_set(d.body, c);
}

SetExpr Workspace::resolve_set(const Node& n, const Carrier& c) const {
    const std::string& h = n.head;
    if (h == "empty") return SetExpr::empty(c);
    if (h == "full") return SetExpr::full(c);
    if (h == "elems") {
        std::vector<Point> pts;
        for (const auto& k : n.kids) pts.push_back(resolve_point(k, c));
        return guard(n.pos, [&] { return SetExpr::of_points(c, pts); });
    }
    if (h == "cofinite") {
        require_kind(c, CarrierKind::NatFC, n, "co{...}");
        std::vector<std::uint64_t> ex;
        for (const auto& k : n.kids) ex.push_back(parse_nat(k));
        return SetExpr::nat_cofinite(ex);
    }
    if (h == "range") {
        require_kind(c, CarrierKind::NatFC, n, "range");
        auto lo = parse_nat(n.kids[0]), hi = parse_nat(n.kids[1]);
        if (lo > hi) return SetExpr::empty(c);
        return guard(n.pos, [&] { return SetExpr::nat_range(lo, hi); });
    }
    if (h == "interval") {
        require_kind(c, CarrierKind::QLine, n, "an interval");
        Interval iv{parse_bound(n.kids[0]), n.text[0] == '[', parse_bound(n.kids[1]), n.text[1] == ']'};
        if ((iv.lo_closed && iv.lo.kind != Bound::Kind::Finite) || (iv.hi_closed && iv.hi.kind != Bound::Kind::Finite))
            fail(DiagKind::Validation, n.pos, "an interval cannot be closed at infinity");
        return guard(n.pos, [&] { return SetExpr::interval(iv); });
    }
    if (h == "box") {
        require_kind(c, CarrierKind::Product, n, "box");
        auto a = resolve_set(n.kids[0], c.left());
        auto b = resolve_set(n.kids[1], c.right());
        return SetExpr::box(a, b);
    }
    if (h == "complement") return complement(resolve_set(n.kids[0], c));
    if (h == "union") return unite(resolve_set(n.kids[0], c), resolve_set(n.kids[1], c));
    if (h == "inter") return intersect(resolve_set(n.kids[0], c), resolve_set(n.kids[1], c));
    if (h == "minus") return minus(resolve_set(n.kids[0], c), resolve_set(n.kids[1], c));
    if (h == "ref") {
        require(n.text, {DeclKind::Set}, n.pos);
        if (std::find(resolving_.begin(), resolving_.end(), n.text) != resolving_.end())
            fail(DiagKind::Resolution, n.pos, "'" + n.text + "' depends on itself");
        return set(n.text, c);
    }
    fail(DiagKind::Syntax, n.pos, "not a set expression");
}

// ---------------------------------------------------------------------------
// Streams, families, exhaustions, policies

Stream Workspace::resolve_stream(const Node& n, const Carrier& c) const {
    const std::string& h = n.head;
    if (h == "const") return Stream::constant(resolve_set(n.kids[0], c));
    if (h == "sunion" || h == "sinter") {
        auto a = resolve_stream(n.kids[0], c), b = resolve_stream(n.kids[1], c);
        return h == "sunion" ? Stream::unite(a, b) : Stream::inter(a, b);
    }
    StreamSchema s;
    if (h == "shrink") {
        bool l = n.text == "left" || n.text == "both", r = n.text == "right" || n.text == "both";
        auto a = parse_bound(n.kids[0]), b = parse_bound(n.kids[1]);
        auto n0 = parse_nat(n.kids[2]);
        s = guard(n.pos, [&] { return StreamSchema::shrink(a, b, l, r, n0); });
    } else if (h == "grow") {
        s = StreamSchema::grow(parse_nat(n.kids[0]));
    } else if (h == "initial") {
        s = StreamSchema::initial(parse_nat(n.kids[0]));
    } else {
        s = StreamSchema::singletons(n.kids.empty() ? 0 : parse_nat(n.kids[0]));
    }
    if (!(s.carrier() == c)) fail(DiagKind::Validation, n.pos, h + " streams live on " + s.carrier().str() + ", not on " + c.str());
    return guard(n.pos, [&] { return Stream::of(s); });
}

FamilyExpr Workspace::family(const std::string& name, const Carrier& c) const {
    const Decl& d = require(name, {DeclKind::Family}, {});
    if (d.annot) {
        Carrier own = resolve_carrier(*d.annot);
        if (!(own == c)) fail(DiagKind::Validation, d.pos, "family '" + name + "' lives on " + own.str() + ", not on " + c.str());
    }
    enter(d);
    Frame f(resolving_, name);
    return resolve_family(d.body, c);
}

FamilyExpr Workspace::resolve_family(const Node& n, const Carrier& c) const {
    FamilyExpr out(c);
    for (const auto& item : n.kids) {
        if (item.head == "list") {
            for (const auto& s : item.kids) out = out.with(resolve_set(s, c));
        } else if (item.head == "stream") {
            out = out.with(resolve_stream(item.kids[0], c));
        } else {
            require(item.text, {DeclKind::Family}, item.pos);
            if (std::find(resolving_.begin(), resolving_.end(), item.text) != resolving_.end())
                fail(DiagKind::Resolution, item.pos, "'" + item.text + "' depends on itself");
            out = out.join(family(item.text, c));
        }
    }
    return out;
}

Exhaustion Workspace::exhaustion(const std::string& name, const Carrier& c) const {
    const Decl& d = require(name, {DeclKind::Exhaustion}, {});
    if (d.annot) {
        Carrier own = resolve_carrier(*d.annot);
        if (!(own == c)) fail(DiagKind::Validation, d.pos, "exhaustion '" + name + "' lives on " + own.str() + ", not on " + c.str());
    }
    enter(d);
    Frame f(resolving_, name);
    return resolve_exhaustion(d.body, c);
}

Exhaustion Workspace::resolve_exhaustion(const Node& n, const Carrier& c) const {
    if (n.head == "ref") {
        require(n.text, {DeclKind::Exhaustion}, n.pos);
        return exhaustion(n.text, c);
    }
    if (n.head == "chain") {
        auto s = resolve_stream(n.kids[0], c);
        return guard(n.pos, [&] { return Exhaustion::chain(s); });
    }
    std::vector<std::string> labels;
    std::vector<SetExpr> pieces;
    for (const auto& k : n.kids)
        if (k.head == "piece") {
            if (std::find(labels.begin(), labels.end(), k.text) != labels.end())
                fail(DiagKind::Validation, k.pos, "piece '" + k.text + "' defined twice");
            labels.push_back(k.text);
            pieces.push_back(resolve_set(k.kids[0], c));
        }
    if (labels.empty()) fail(DiagKind::Validation, n.pos, "a poset exhaustion needs at least one piece");
    auto index = [&](const Node& a) {
        auto it = std::find(labels.begin(), labels.end(), a.text);
        if (it == labels.end()) fail(DiagKind::Resolution, a.pos, "no piece labelled '" + a.text + "'");
        return static_cast<std::size_t>(it - labels.begin());
    };
    std::vector<std::pair<std::size_t, std::size_t>> le;
    for (const auto& k : n.kids)
        if (k.head == "le") le.emplace_back(index(k.kids[0]), index(k.kids[1]));
    auto leq = order_closure(labels.size(), le);
    return guard(n.pos, [&] { return Exhaustion::poset(c, labels, leq, pieces); });
}

CoveragePolicy Workspace::resolve_policy(const Node& n, const Carrier& c) const {
    if (n.text == "all") return CoveragePolicy::all();
    if (n.text == "essfin") return CoveragePolicy::essfin();
    if (n.text == "esscountable") return CoveragePolicy::esscountable();
    if (n.text == "locally") return CoveragePolicy::locally(resolve_family(n.kids[0], c));
    return CoveragePolicy::piecewise(resolve_exhaustion(n.kids[0], c));
}

// ---------------------------------------------------------------------------
// Spaces and maps

Space Workspace::space(const std::string& name) const {
    if (auto it = spaces_.find(name); it != spaces_.end()) return it->second;
    const Decl& d = require(name, {DeclKind::Space, DeclKind::Use}, {});
    enter(d);
    Frame f(resolving_, name);
    Space s = build_space(d);
    spaces_.emplace(name, s);
    return s;
}

Space Workspace::build_space(const Decl& d) const {
    auto ref = [&](const Node& r) {
        require(r.text, {DeclKind::Space, DeclKind::Use}, r.pos);
        if (std::find(resolving_.begin(), resolving_.end(), r.text) != resolving_.end())
            fail(DiagKind::Resolution, r.pos, "'" + r.text + "' depends on itself");
        return space(r.text);
    };
    const Node& b = d.body;
    if (d.kind == DeclKind::Use) {
        for (const auto& s : shipped_presentations())
            if (s->name == d.name) return s;
        fail(DiagKind::Resolution, d.pos, "no shipped presentation named '" + d.name + "'");
    }
    if (b.head == "block") {
        const Node *car = nullptr, *pts = nullptr, *opn = nullptr, *cov = nullptr;
        for (const auto& f : b.kids) {
            const Node* v = &f.kids[0];
            if (f.text == "carrier") car = v;
            if (f.text == "points") pts = v;
            if (f.text == "opens") opn = v;
            if (f.text == "cov") cov = v;
        }
        if (!car) fail(DiagKind::Validation, b.pos, "space '" + d.name + "' needs a carrier");
        if (!opn) fail(DiagKind::Validation, b.pos, "space '" + d.name + "' needs opens");
        if (!cov) fail(DiagKind::Validation, b.pos, "space '" + d.name + "' needs a cov policy");
        GtsPresentation p;
        p.name = d.name;
        p.carrier = resolve_carrier(*car);
        p.points = pts ? resolve_set(*pts, p.carrier) : SetExpr::full(p.carrier);
        const std::string& k = opn->text;
        p.opens.kind = k == "canonical-open"    ? OpensSpec::Kind::AllCanonicalOpen
                       : k == "finite-or-whole" ? OpensSpec::Kind::FiniteOrWhole
                       : k == "all-sets"        ? OpensSpec::Kind::AllSets
                                                : OpensSpec::Kind::ExplicitList;
        for (const auto& s : opn->kids) p.opens.list.push_back(resolve_set(s, p.carrier));
        p.policy = resolve_policy(*cov, p.carrier);
        return guard(b.pos, [&] { return make_space(std::move(p)); });
    }
    const std::string& k = b.text;
    std::vector<Space> refs;
    if (k == "product" || k == "sum" || k == "glue")
        for (const auto& r : b.kids) refs.push_back(ref(r));
    return guard(b.pos, [&]() -> Space {
        if (k == "subspace") {
            Space x = ref(b.kids[0]);
            return subspace(x, resolve_set(b.kids[1], x->carrier), d.name);
        }
        if (k == "product") {
            if (refs.size() == 2) return product(refs[0], refs[1], d.name).space;
            return renamed(product(refs), d.name);
        }
        if (k == "sum") return direct_sum(refs, d.name);
        if (k == "glue") return glue(refs, d.name);
        if (k == "smallify") return renamed(smallify(ref(b.kids[0])), d.name);
        if (k == "topologize") {
            auto t = topologize(ref(b.kids[0]));
            if (!t.space) fail(DiagKind::Validation, b.pos, "topologize: " + t.note);
            return renamed(*t.space, d.name);
        }
        if (k == "localize") {
            Space x = ref(b.kids[0]);
            return localize(x, resolve_family(b.kids[1], x->carrier), d.name);
        }
        if (k == "generate") {
            Carrier c = resolve_carrier(b.kids[0]);
            std::vector<SetExpr> sub;
            for (const auto& s : b.kids[1].kids) sub.push_back(resolve_set(s, c));
            return generate_finite_gts(c, sub, d.name);
        }
        return renamed(sum_of_points_nat(), d.name);
    });
}

const SpaceMap& Workspace::map(const std::string& name) const {
    if (auto it = maps_.find(name); it != maps_.end()) return it->second;
    const Decl& d = require(name, {DeclKind::Map}, {});
    enter(d);
    Frame f(resolving_, name);
    SpaceMap m = build_map(d);
    return maps_.emplace(name, std::move(m)).first->second;
}

SpaceMap Workspace::build_map(const Decl& d) const {
    auto space_ref = [&](const Node& r) {
        require(r.text, {DeclKind::Space, DeclKind::Use}, r.pos);
        return space(r.text);
    };
    Space dom = space_ref(d.annot->kids[0]);
    Space cod = space_ref(d.annot->kids[1]);
    const Node& r = d.body;
    const std::string& k = r.text;
    std::vector<std::pair<Point, Point>> table;
    if (k == "table" || k == "permutation")
        for (const auto& e : r.kids) table.emplace_back(resolve_point(e.kids[0], dom->carrier), resolve_point(e.kids[1], cod->carrier));
    std::vector<AffinePiece> pieces;
    if (k == "affine")
        for (const auto& p : r.kids) pieces.push_back({resolve_set(p.kids[0], dom->carrier), parse_rat(p.kids[1]), parse_rat(p.kids[2])});
    std::optional<SpaceMap> f, g;
    if (k == "pair") {
        for (const auto& m : r.kids) {
            require(m.text, {DeclKind::Map}, m.pos);
            if (std::find(resolving_.begin(), resolving_.end(), m.text) != resolving_.end())
                fail(DiagKind::Resolution, m.pos, "'" + m.text + "' depends on itself");
        }
        f = map(r.kids[0].text);
        g = map(r.kids[1].text);
    }
    std::optional<Point> value;
    if (k == "const") value = resolve_point(r.kids[0], cod->carrier);
    SpaceMap out = guard(r.pos, [&]() -> SpaceMap {
        if (k == "identity") return identity_map(dom, cod);
        if (k == "table") return table_map(dom, cod, table);
        if (k == "affine") return affine_map(dom, cod, pieces);
        if (k == "projection") return projection_map(dom, cod, r.kids[0].text == "left" ? 0 : 1);
        if (k == "pair") return pairing_map(*f, *g, cod);
        if (k == "const") return constant_map(dom, cod, *value);
        MapRule rule;
        if (k == "shift") {
            rule.kind = MapRule::Kind::NatShift;
            rule.shift = parse_nat(r.kids[0]);
        } else {
            rule.kind = MapRule::Kind::NatPermutation;
            rule.table = table;
        }
        return make_map(d.name, dom, cod, rule);
    });
    out.name = d.name;
    return out;
}

// ---------------------------------------------------------------------------
// Categories, sites, presheaves

const FiniteCategory& Workspace::category(const std::string& name) const {
    if (auto it = categories_.find(name); it != categories_.end()) return it->second;
    const Decl& d = require(name, {DeclKind::Category}, {});
    return categories_.emplace(name, build_category(d)).first->second;
}

FiniteCategory Workspace::build_category(const Decl& d) const {
    std::vector<std::string> objects;
    for (const auto& k : d.body.kids)
        if (k.head == "objects")
            for (const auto& o : k.kids) {
                if (std::find(objects.begin(), objects.end(), o.text) != objects.end())
                    fail(DiagKind::Validation, o.pos, "object '" + o.text + "' listed twice");
                objects.push_back(o.text);
            }
    auto obj = [&](const Node& a) {
        auto it = std::find(objects.begin(), objects.end(), a.text);
        if (it == objects.end()) fail(DiagKind::Resolution, a.pos, "'" + a.text + "' is not an object of " + d.name);
        return static_cast<std::size_t>(it - objects.begin());
    };
    if (d.body.head == "poset-category") {
        std::vector<std::pair<std::size_t, std::size_t>> le;
        for (const auto& k : d.body.kids)
            if (k.head == "le") le.emplace_back(obj(k.kids[0]), obj(k.kids[1]));
        auto leq = order_closure(objects.size(), le);
        return guard(d.body.pos, [&] { return poset_category(objects, leq); });
    }
    std::vector<Morphism> arrows;
    std::vector<Composite> table;
    for (const auto& k : d.body.kids) {
        if (k.head == "arrow") arrows.push_back({k.text, obj(k.kids[0]), obj(k.kids[1])});
        if (k.head == "compose") table.push_back({k.kids[0].text, k.kids[1].text, k.kids[2].text});
    }
    return guard(d.body.pos, [&] { return make_category(objects, arrows, table); });
}

const Site& Workspace::site(const std::string& name) const {
    if (auto it = sites_.find(name); it != sites_.end()) return it->second;
    const Decl& d = require(name, {DeclKind::Site}, {});
    return sites_.emplace(name, build_site(d)).first->second;
}

Site Workspace::build_site(const Decl& d) const {
    const Node& b = d.body;
    if (b.head == "opens-site") {
        const Node& r = b.kids[0];
        require(r.text, {DeclKind::Space, DeclKind::Use}, r.pos);
        Space x = space(r.text);
        return guard(b.pos, [&] { return gts_to_site(*x); });
    }
    const Node* cat_node = nullptr;
    for (const auto& k : b.kids)
        if (k.head == "sitecat") cat_node = &k;
    if (!cat_node) fail(DiagKind::Validation, b.pos, "site '" + d.name + "' needs a category");
    require(cat_node->text, {DeclKind::Category}, cat_node->pos);
    Site s{category(cat_node->text), {}};
    const auto& c = s.category;
    s.topology.resize(c.objects.size());
    for (const auto& k : b.kids) {
        if (k.head != "cover") continue;
        auto o = c.object_index(k.text);
        if (!o) fail(DiagKind::Resolution, k.pos, "'" + k.text + "' is not an object of " + cat_node->text);
        const std::string& mode = k.kids[0].text;
        std::vector<Sieve> add;
        if (mode == "all") {
            add = guard(k.pos, [&] { return all_sieves(c, *o); });
        } else if (mode == "maximal") {
            add.push_back(maximal_sieve(c, *o));
        } else {
            std::vector<std::size_t> arrows;
            for (std::size_t i = 1; i < k.kids.size(); ++i) {
                auto m = c.morphism_index(k.kids[i].text);
                if (!m) fail(DiagKind::Resolution, k.kids[i].pos, "'" + k.kids[i].text + "' is not an arrow of " + cat_node->text);
                if (c.morphisms[*m].cod != *o) fail(DiagKind::Validation, k.kids[i].pos, "'" + k.kids[i].text + "' does not end at " + k.text);
                arrows.push_back(*m);
            }
            add.push_back(generated_sieve(c, *o, arrows));
        }
        for (auto& sv : add)
            if (std::find(s.topology[*o].begin(), s.topology[*o].end(), sv) == s.topology[*o].end()) s.topology[*o].push_back(std::move(sv));
    }
    return s;
}

const PresheafDecl& Workspace::presheaf(const std::string& name) const {
    if (auto it = presheaves_.find(name); it != presheaves_.end()) return it->second;
    const Decl& d = require(name, {DeclKind::Presheaf}, {});
    return presheaves_.emplace(name, build_presheaf(d)).first->second;
}

PresheafDecl Workspace::build_presheaf(const Decl& d) const {
    const Node& on = *d.annot;
    const Decl& host = require(on.text, {DeclKind::Site, DeclKind::Category}, on.pos);
    const FiniteCategory& c = host.kind == DeclKind::Site ? site(on.text).category : category(on.text);
    std::vector<std::vector<std::string>> values(c.objects.size());
    std::vector<bool> given(c.objects.size(), false);
    for (const auto& k : d.body.kids) {
        if (k.head != "values") continue;
        auto o = c.object_index(k.text);
        if (!o) fail(DiagKind::Resolution, k.pos, "'" + k.text + "' is not an object of " + on.text);
        if (given[*o]) fail(DiagKind::Validation, k.pos, "values for '" + k.text + "' given twice");
        given[*o] = true;
        for (const auto& v : k.kids) {
            if (std::find(values[*o].begin(), values[*o].end(), v.text) != values[*o].end())
                fail(DiagKind::Validation, v.pos, "value '" + v.text + "' listed twice");
            values[*o].push_back(v.text);
        }
    }
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        if (!given[o]) fail(DiagKind::Validation, d.body.pos, "presheaf '" + d.name + "' has no values for " + c.objects[o]);
    std::vector<std::vector<std::size_t>> restr(c.morphisms.size());
    std::vector<bool> have(c.morphisms.size(), false);
    for (std::size_t o = 0; o < c.objects.size(); ++o) {
        auto id = c.identity[o];
        for (std::size_t i = 0; i < values[o].size(); ++i) restr[id].push_back(i);
        have[id] = true;
    }
    auto value_index = [&](std::size_t o, const Node& v) {
        auto it = std::find(values[o].begin(), values[o].end(), v.text);
        if (it == values[o].end()) fail(DiagKind::Resolution, v.pos, "'" + v.text + "' is not a value over " + c.objects[o]);
        return static_cast<std::size_t>(it - values[o].begin());
    };
    for (const auto& k : d.body.kids) {
        if (k.head != "restrict") continue;
        auto m = c.morphism_index(k.text);
        if (!m) fail(DiagKind::Resolution, k.pos, "'" + k.text + "' is not an arrow of " + on.text);
        if (have[*m]) fail(DiagKind::Validation, k.pos, "restriction along '" + k.text + "' given twice");
        const auto& mor = c.morphisms[*m];
        std::vector<std::optional<std::size_t>> table(values[mor.cod].size());
        for (const auto& e : k.kids) {
            auto from = value_index(mor.cod, e.kids[0]);
            if (table[from]) fail(DiagKind::Validation, e.pos, "'" + e.kids[0].text + "' restricted twice");
            table[from] = value_index(mor.dom, e.kids[1]);
        }
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (!table[i]) fail(DiagKind::Validation, k.pos, "restriction along '" + k.text + "' misses " + values[mor.cod][i]);
            restr[*m].push_back(*table[i]);
        }
        have[*m] = true;
    }
    for (std::size_t m = 0; m < c.morphisms.size(); ++m)
        if (!have[m]) fail(DiagKind::Validation, d.body.pos, "presheaf '" + d.name + "' has no restriction along " + c.morphisms[m].name);
    return {on.text, guard(d.body.pos, [&] { return make_presheaf(c, values, restr); })};
}

}  // namespace gtskit::dsl

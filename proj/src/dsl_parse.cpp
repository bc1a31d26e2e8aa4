#include <cctype>
#include <set>

#include "gtskit/dsl.hpp"

namespace gtskit::dsl {

std::string to_string(DiagKind k) {
    switch (k) {
        case DiagKind::Syntax: return "SyntaxError";
        case DiagKind::Resolution: return "ResolutionError";
        case DiagKind::Validation: return "ValidationError";
    }
    return "?";
}

std::string Diagnostic::str() const {
    std::string out = pos.str() + ": " + to_string(kind) + ": " + message;
    if (!expected.empty()) {
        out += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
        out += ")";
    }
    return out;
}

std::string to_string(DeclKind k) {
    switch (k) {
        case DeclKind::Use: return "use";
        case DeclKind::Carrier: return "carrier";
        case DeclKind::Set: return "set";
        case DeclKind::Family: return "family";
        case DeclKind::Space: return "space";
        case DeclKind::Map: return "map";
        case DeclKind::Exhaustion: return "exhaustion";
        case DeclKind::Category: return "category";
        case DeclKind::Site: return "site";
        case DeclKind::Presheaf: return "presheaf";
    }
    return "?";
}

const Decl* Document::find(const std::string& name) const {
    for (const auto& d : decls)
        if (d.name == name) return &d;
    return nullptr;
}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::End: return "end of input";
        case Tok::Number: return "number '" + t.text + "'";
        case Tok::Ident: return "'" + t.text + "'";
        case Tok::Punct: return "'" + t.text + "'";
    }
    return "?";
}

[[noreturn]] void syntax_error(SourcePos pos, const std::string& msg, std::vector<std::string> expected = {}) {
    throw DslError(Diagnostic{DiagKind::Syntax, pos, msg, std::move(expected)});
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto at = [&](std::size_t k) { return i + k < src.size() ? src[i + k] : '\0'; };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        SourcePos pos{line, col};
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && (ident_char(src[j]) || (src[j] == '-' && j + 1 < src.size() && ident_char(src[j + 1]))))
                ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), pos});
            advance(j - i);
            continue;
        }
        bool sign = (c == '+' || c == '-') && (std::isdigit(static_cast<unsigned char>(at(1))) || src.compare(i + 1, 3, "inf") == 0);
        if (std::isdigit(static_cast<unsigned char>(c)) || sign) {
            std::size_t j = i + (sign ? 1 : 0);
            if (src.compare(j, 3, "inf") == 0 && !(j + 3 < src.size() && ident_char(src[j + 3]))) {
                j += 3;
            } else {
                if (!std::isdigit(static_cast<unsigned char>(src[j]))) syntax_error(pos, "malformed number");
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
                if (j < src.size() && src[j] == '/') {
                    ++j;
                    if (j >= src.size() || !std::isdigit(static_cast<unsigned char>(src[j]))) {
                        SourcePos p{pos.line, pos.column + static_cast<int>(j - i)};
                        syntax_error(p, "malformed rational", {"digit"});
                    }
                    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
                }
                if (j < src.size() && ident_start(src[j])) syntax_error(pos, "malformed number");
            }
            out.push_back({Tok::Number, src.substr(i, j - i), pos});
            advance(j - i);
            continue;
        }
        static const char* two[] = {"->", "<="};
        bool matched = false;
        for (const char* t : two)
            if (src.compare(i, 2, t) == 0) {
                out.push_back({Tok::Punct, t, pos});
                advance(2);
                matched = true;
                break;
            }
        if (matched) continue;
        if (std::string("{}()[]<>,;=:+*\\").find(c) != std::string::npos) {
            out.push_back({Tok::Punct, std::string(1, c), pos});
            advance(1);
            continue;
        }
        syntax_error(pos, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::End, "", SourcePos{line, col}});
    return out;
}

Node node(std::string head, SourcePos pos, std::string text = "", std::vector<Node> kids = {}) {
    return Node{std::move(head), std::move(text), std::move(kids), pos};
}

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    Document document() {
        Document d;
        std::set<std::string> names;
        while (peek().kind != Tok::End) {
            for (auto& decl : statement()) {
                if (!names.insert(decl.name).second)
                    throw DslError(Diagnostic{DiagKind::Resolution, decl.pos, "duplicate declaration of '" + decl.name + "'", {}});
                d.decls.push_back(std::move(decl));
            }
            accept(";");
        }
        return d;
    }

    Node set_only() {
        auto n = set();
        expect_end();
        return n;
    }
    Node family_only() {
        auto n = family();
        expect_end();
        return n;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
    Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
    bool is(const std::string& punct, std::size_t k = 0) const { return peek(k).kind == Tok::Punct && peek(k).text == punct; }
    bool is_kw(const std::string& word, std::size_t k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == word; }
    bool accept(const std::string& punct) {
        if (!is(punct)) return false;
        ++i_;
        return true;
    }
    [[noreturn]] void fail(std::vector<std::string> expected) {
        syntax_error(peek().pos, "unexpected " + describe(peek()), std::move(expected));
    }
    Token expect(const std::string& punct) {
        if (!is(punct)) fail({"'" + punct + "'"});
        return next();
    }
    Token expect_kw(const std::string& word) {
        if (!is_kw(word)) fail({"'" + word + "'"});
        return next();
    }
    Token ident(const std::string& what = "identifier") {
        if (peek().kind != Tok::Ident) fail({what});
        return next();
    }
    Token number(const std::string& what = "number") {
        if (peek().kind != Tok::Number) fail({what});
        return next();
    }
    void expect_end() {
        if (peek().kind != Tok::End) fail({"end of input"});
    }
    std::string choice(const std::vector<std::string>& words) {
        if (peek().kind == Tok::Ident)
            for (const auto& w : words)
                if (peek().text == w) return next().text;
        std::vector<std::string> exp;
        for (const auto& w : words) exp.push_back("'" + w + "'");
        fail(exp);
    }

    std::vector<Decl> statement() {
        const Token& t = peek();
        if (t.kind != Tok::Ident)
            fail({"'use'", "'carrier'", "'set'", "'family'", "'exhaustion'", "'space'", "'map'", "'category'", "'site'", "'presheaf'"});
        std::string kw = t.text;
        SourcePos pos = t.pos;
        if (kw == "use") {
            next();
            std::vector<Decl> out;
            do {
                auto name = ident("presentation name");
                out.push_back(Decl{DeclKind::Use, name.text, name.pos, std::nullopt, node("use", name.pos)});
            } while (accept(","));
            return out;
        }
        Decl d;
        d.pos = pos;
        if (kw == "carrier") {
            next();
            d.kind = DeclKind::Carrier;
            d.name = ident().text;
            expect("=");
            d.body = carrier();
        } else if (kw == "set" || kw == "family" || kw == "exhaustion") {
            next();
            d.kind = kw == "set" ? DeclKind::Set : kw == "family" ? DeclKind::Family : DeclKind::Exhaustion;
            d.name = ident().text;
            if (accept(":")) d.annot = carrier();
            expect("=");
            d.body = kw == "set" ? set() : kw == "family" ? family() : exhaustion();
        } else if (kw == "space") {
            next();
            d.kind = DeclKind::Space;
            d.name = ident().text;
            if (is("{"))
                d.body = space_block();
            else if (accept("="))
                d.body = construction();
            else
                fail({"'{'", "'='"});
        } else if (kw == "map") {
            next();
            d.kind = DeclKind::Map;
            d.name = ident().text;
            expect(":");
            auto dom = ident("space name");
            expect("->");
            auto cod = ident("space name");
            d.annot = node("sig", dom.pos, "", {node("ref", dom.pos, dom.text), node("ref", cod.pos, cod.text)});
            expect("=");
            d.body = map_rule();
        } else if (kw == "category") {
            next();
            d.kind = DeclKind::Category;
            d.name = ident().text;
            d.body = category();
        } else if (kw == "site") {
            next();
            d.kind = DeclKind::Site;
            d.name = ident().text;
            d.body = site();
        } else if (kw == "presheaf") {
            next();
            d.kind = DeclKind::Presheaf;
            d.name = ident().text;
            expect_kw("on");
            auto on = ident("site or category name");
            d.annot = node("ref", on.pos, on.text);
            d.body = presheaf();
        } else {
            fail({"'use'", "'carrier'", "'set'", "'family'", "'exhaustion'", "'space'", "'map'", "'category'", "'site'", "'presheaf'"});
        }
        return {std::move(d)};
    }

    Node carrier() {
        SourcePos pos = peek().pos;
        if (peek().kind != Tok::Ident) fail({"carrier"});
        std::string w = next().text;
        if (w == "qline" || w == "nat") return node(w, pos);
        if (w == "enum") {
            Node n = node("enum", pos);
            expect("{");
            if (!is("}")) do {
                    if (peek().kind != Tok::Ident && peek().kind != Tok::Number) fail({"atom"});
                    auto a = next();
                    n.kids.push_back(node("atom", a.pos, a.text));
                } while (accept(","));
            expect("}");
            return n;
        }
        if (w == "product") {
            expect("(");
            Node a = carrier();
            expect(",");
            Node b = carrier();
            expect(")");
            return node("cproduct", pos, "", {a, b});
        }
        return node("ref", pos, w);
    }

    Node point() {
        const Token& t = peek();
        if (t.kind == Tok::Ident) return node("atom", t.pos, next().text);
        if (t.kind == Tok::Number) return node("num", t.pos, next().text);
        if (is("<")) {
            SourcePos pos = next().pos;
            Node a = point();
            expect(",");
            Node b = point();
            expect(">");
            return node("pair", pos, "", {a, b});
        }
        fail({"point"});
    }

    Node bound() {
        auto t = number("rational or infinity");
        return node("bound", t.pos, t.text);
    }

    Node set() {
        Node lhs = set_term();
        for (;;) {
            std::string op;
            if (is_kw("u"))
                op = "union";
            else if (is_kw("n"))
                op = "inter";
            else if (is("\\"))
                op = "minus";
            else
                return lhs;
            SourcePos pos = next().pos;
            Node rhs = set_term();
            lhs = node(op, pos, "", {lhs, rhs});
        }
    }

    Node set_term() {
        const Token& t = peek();
        SourcePos pos = t.pos;
        if (is("{")) {
            next();
            Node n = node("elems", pos);
            if (!is("}")) do
                    n.kids.push_back(point());
                while (accept(","));
            expect("}");
            return n;
        }
        if (is("[") || (is("(") && peek(1).kind == Tok::Number)) {
            std::string open = next().text;
            Node lo = bound();
            expect(",");
            Node hi = bound();
            if (!is(")") && !is("]")) fail({"')'", "']'"});
            std::string close = next().text;
            return node("interval", pos, open + close, {lo, hi});
        }
        if (accept("(")) {
            Node inner = set();
            expect(")");
            return inner;
        }
        if (t.kind != Tok::Ident) fail({"set"});
        std::string w = t.text;
        if (w == "co" && is("{", 1)) {
            next();
            next();
            Node n = node("cofinite", pos);
            if (!is("}")) do {
                    auto k = number("natural number");
                    n.kids.push_back(node("num", k.pos, k.text));
                } while (accept(","));
            expect("}");
            return n;
        }
        next();
        if (w == "empty" || w == "full") return node(w, pos);
        if (w == "box") {
            expect("(");
            Node a = set();
            expect(",");
            Node b = set();
            expect(")");
            return node("box", pos, "", {a, b});
        }
        if (w == "range") {
            expect("(");
            auto a = number("natural number");
            expect(",");
            auto b = number("natural number");
            expect(")");
            return node("range", pos, "", {node("num", a.pos, a.text), node("num", b.pos, b.text)});
        }
        if (w == "complement") {
            expect("(");
            Node a = set();
            expect(")");
            return node("complement", pos, "", {a});
        }
        return node("ref", pos, w);
    }

    Node nat_arg() {
        auto k = number("natural number");
        return node("num", k.pos, k.text);
    }

    Node stream() {
        SourcePos pos = peek().pos;
        std::string w = choice({"shrink", "grow", "initial", "singletons", "const", "union", "inter"});
        if (w == "shrink") {
            expect("(");
            Node a = bound();
            expect(",");
            Node b = bound();
            expect(",");
            std::string side = choice({"left", "right", "both", "none"});
            expect(",");
            Node n0 = nat_arg();
            expect(")");
            return node("shrink", pos, side, {a, b, n0});
        }
        if (w == "grow" || w == "initial") {
            expect("(");
            Node n0 = nat_arg();
            expect(")");
            return node(w, pos, "", {n0});
        }
        if (w == "singletons") {
            Node n = node(w, pos);
            if (accept("(")) {
                n.kids.push_back(nat_arg());
                expect(")");
            }
            return n;
        }
        expect("(");
        if (w == "const") {
            Node s = set();
            expect(")");
            return node("const", pos, "", {s});
        }
        Node a = stream();
        expect(",");
        Node b = stream();
        expect(")");
        return node(w == "union" ? "sunion" : "sinter", pos, "", {a, b});
    }

    Node family() {
        Node f = node("family", peek().pos);
        do {
            SourcePos pos = peek().pos;
            if (accept("[")) {
                Node l = node("list", pos);
                if (!is("]")) do
                        l.kids.push_back(set());
                    while (accept(","));
                expect("]");
                f.kids.push_back(std::move(l));
            } else if (is_kw("stream")) {
                next();
                f.kids.push_back(node("stream", pos, "", {stream()}));
            } else if (peek().kind == Tok::Ident) {
                f.kids.push_back(node("ref", pos, next().text));
            } else {
                fail({"'['", "'stream'", "family name"});
            }
        } while (accept("+"));
        return f;
    }

    Node exhaustion() {
        SourcePos pos = peek().pos;
        if (is_kw("chain")) {
            next();
            return node("chain", pos, "", {stream()});
        }
        if (is_kw("poset")) {
            next();
            expect("{");
            Node p = node("poset", pos);
            while (!is("}")) {
                auto a = ident("index label");
                if (accept("=")) {
                    p.kids.push_back(node("piece", a.pos, a.text, {set()}));
                } else if (accept("<=")) {
                    auto b = ident("index label");
                    p.kids.push_back(node("le", a.pos, "", {node("atom", a.pos, a.text), node("atom", b.pos, b.text)}));
                } else {
                    fail({"'='", "'<='"});
                }
                accept(";");
            }
            expect("}");
            return p;
        }
        if (peek().kind == Tok::Ident) return node("ref", pos, next().text);
        fail({"'chain'", "'poset'", "exhaustion name"});
    }

    Node policy() {
        SourcePos pos = peek().pos;
        std::string w = choice({"all", "essfin", "esscountable", "locally", "piecewise"});
        Node p = node("policy", pos, w);
        if (w == "locally") p.kids.push_back(family());
        if (w == "piecewise") p.kids.push_back(exhaustion());
        return p;
    }

    Node opens() {
        SourcePos pos = peek().pos;
        std::string w = choice({"canonical-open", "finite-or-whole", "all-sets", "list"});
        Node o = node("opens", pos, w);
        if (w == "list") {
            expect("[");
            if (!is("]")) do
                    o.kids.push_back(set());
                while (accept(","));
            expect("]");
        }
        return o;
    }

    Node space_block() {
        Node b = node("block", expect("{").pos);
        std::set<std::string> seen;
        while (!is("}")) {
            SourcePos pos = peek().pos;
            std::string f = choice({"carrier", "points", "opens", "cov"});
            if (!seen.insert(f).second) syntax_error(pos, "field '" + f + "' given twice");
            Node v = f == "carrier" ? carrier() : f == "points" ? set() : f == "opens" ? opens() : policy();
            b.kids.push_back(node("field", pos, f, {v}));
            accept(";");
        }
        expect("}");
        return b;
    }

    Node ref_arg() {
        auto t = ident("space name");
        return node("ref", t.pos, t.text);
    }

    Node construction() {
        SourcePos pos = peek().pos;
        std::string w = choice({"subspace", "product", "sum", "glue", "smallify", "topologize", "localize", "generate", "sum-of-points"});
        Node c = node("construct", pos, w);
        if (w == "sum-of-points") return c;
        expect("(");
        if (w == "subspace") {
            c.kids.push_back(ref_arg());
            expect(",");
            c.kids.push_back(set());
        } else if (w == "localize") {
            c.kids.push_back(ref_arg());
            expect(",");
            c.kids.push_back(family());
        } else if (w == "generate") {
            c.kids.push_back(carrier());
            expect(",");
            Node l = node("list", expect("[").pos);
            if (!is("]")) do
                    l.kids.push_back(set());
                while (accept(","));
            expect("]");
            c.kids.push_back(std::move(l));
        } else if (w == "smallify" || w == "topologize") {
            c.kids.push_back(ref_arg());
        } else {
            do
                c.kids.push_back(ref_arg());
            while (accept(","));
        }
        expect(")");
        return c;
    }

    Node entries(bool nat_only) {
        Node n = node("entries", expect("{").pos);
        if (!is("}")) do {
                SourcePos pos = peek().pos;
                Node a = nat_only ? nat_arg() : point();
                expect("->");
                Node b = nat_only ? nat_arg() : point();
                n.kids.push_back(node("entry", pos, "", {a, b}));
            } while (accept(","));
        expect("}");
        return n;
    }

    Node map_rule() {
        SourcePos pos = peek().pos;
        std::string w = choice({"identity", "table", "affine", "shift", "permutation", "projection", "pair", "const"});
        Node r = node("rule", pos, w);
        if (w == "table" || w == "permutation") {
            r.kids = entries(w == "permutation").kids;
        } else if (w == "affine") {
            expect("{");
            do {
                SourcePos ppos = peek().pos;
                Node s = set();
                expect("->");
                auto p = number("rational slope");
                expect("*");
                expect_kw("x");
                Token q;
                if (accept("+"))
                    q = number("rational offset");
                else if (peek().kind == Tok::Number && (peek().text[0] == '+' || peek().text[0] == '-'))
                    q = next();
                else
                    fail({"'+'", "signed rational"});
                r.kids.push_back(node("piece", ppos, "", {s, node("num", p.pos, p.text), node("num", q.pos, q.text)}));
            } while (accept(","));
            expect("}");
        } else if (w == "shift") {
            r.kids.push_back(nat_arg());
        } else if (w == "projection") {
            SourcePos ppos = peek().pos;
            r.kids.push_back(node("atom", ppos, choice({"left", "right"})));
        } else if (w == "pair") {
            expect("(");
            auto f = ident("map name");
            expect(",");
            auto g = ident("map name");
            expect(")");
            r.kids = {node("ref", f.pos, f.text), node("ref", g.pos, g.text)};
        } else if (w == "const") {
            r.kids.push_back(point());
        }
        return r;
    }

    Node atom_list(const std::string& what) {
        Node l = node("atoms", peek().pos);
        do {
            auto a = ident(what);
            l.kids.push_back(node("atom", a.pos, a.text));
        } while (accept(","));
        return l;
    }

    Node category() {
        if (accept("=")) {
            Node p = node("poset-category", expect_kw("poset").pos);
            expect("{");
            while (!is("}")) {
                SourcePos pos = peek().pos;
                if (is_kw("objects")) {
                    next();
                    p.kids.push_back(node("objects", pos, "", atom_list("object name").kids));
                } else {
                    auto a = ident("object name");
                    expect("<=");
                    auto b = ident("object name");
                    p.kids.push_back(node("le", pos, "", {node("atom", a.pos, a.text), node("atom", b.pos, b.text)}));
                }
                accept(";");
            }
            expect("}");
            return p;
        }
        Node c = node("category", expect("{").pos);
        while (!is("}")) {
            SourcePos pos = peek().pos;
            std::string w = choice({"objects", "arrow", "compose"});
            if (w == "objects") {
                c.kids.push_back(node("objects", pos, "", atom_list("object name").kids));
            } else if (w == "arrow") {
                auto name = ident("arrow name");
                expect(":");
                auto a = ident("object name");
                expect("->");
                auto b = ident("object name");
                c.kids.push_back(node("arrow", pos, name.text, {node("atom", a.pos, a.text), node("atom", b.pos, b.text)}));
            } else {
                auto g = ident("arrow name");
                expect_kw("o");
                auto f = ident("arrow name");
                expect("=");
                auto h = ident("arrow name");
                c.kids.push_back(node("compose", pos, "", {node("atom", g.pos, g.text), node("atom", f.pos, f.text), node("atom", h.pos, h.text)}));
            }
            accept(";");
        }
        expect("}");
        return c;
    }

    Node site() {
        if (accept("=")) {
            SourcePos pos = expect_kw("opens").pos;
            expect("(");
            Node r = ref_arg();
            expect(")");
            return node("opens-site", pos, "", {r});
        }
        Node s = node("site", expect("{").pos);
        while (!is("}")) {
            SourcePos pos = peek().pos;
            std::string w = choice({"category", "cover"});
            if (w == "category") {
                auto c = ident("category name");
                s.kids.push_back(node("sitecat", pos, c.text));
            } else {
                auto target = ident("object name");
                expect("=");
                if (accept("[")) {
                    Node cov = node("cover", pos, target.text);
                    cov.kids.push_back(node("atom", pos, "list"));
                    if (!is("]")) do {
                            auto a = arrow_name();
                            cov.kids.push_back(node("atom", a.pos, a.text));
                        } while (accept(","));
                    expect("]");
                    s.kids.push_back(std::move(cov));
                } else {
                    SourcePos mpos = peek().pos;
                    std::string mode = choice({"all", "maximal"});
                    s.kids.push_back(node("cover", pos, target.text, {node("atom", mpos, mode)}));
                }
            }
            accept(";");
        }
        expect("}");
        return s;
    }

    Token arrow_name() {
        Token a = ident("arrow name");
        if (accept("<=")) a.text += "<=" + ident("object name").text;
        return a;
    }

    Node value_name() {
        if (peek().kind != Tok::Ident && peek().kind != Tok::Number) fail({"value name"});
        auto t = next();
        return node("atom", t.pos, t.text);
    }

    Node presheaf() {
        Node p = node("presheaf", expect("{").pos);
        while (!is("}")) {
            SourcePos pos = peek().pos;
            std::string w = choice({"values", "restrict"});
            auto target = w == "values" ? ident("object name") : arrow_name();
            expect("=");
            if (w == "values") {
                Node v = node("values", pos, target.text);
                expect("[");
                if (!is("]")) do
                        v.kids.push_back(value_name());
                    while (accept(","));
                expect("]");
                p.kids.push_back(std::move(v));
            } else {
                Node r = node("restrict", pos, target.text);
                expect("{");
                if (!is("}")) do {
                        SourcePos epos = peek().pos;
                        Node a = value_name();
                        expect("->");
                        Node b = value_name();
                        r.kids.push_back(node("entry", epos, "", {a, b}));
                    } while (accept(","));
                expect("}");
                p.kids.push_back(std::move(r));
            }
            accept(";");
        }
        expect("}");
        return p;
    }
};

}  // namespace

Document parse_syntax(const std::string& text) { return Parser(text).document(); }
Node parse_set_syntax(const std::string& text) { return Parser(text).set_only(); }
Node parse_family_syntax(const std::string& text) { return Parser(text).family_only(); }

}  // namespace gtskit::dsl

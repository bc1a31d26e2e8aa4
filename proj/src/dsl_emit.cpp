#include "gtskit/dsl.hpp"

namespace gtskit::dsl {

namespace {

std::string join(const std::vector<Node>& kids, std::string (*f)(const Node&), const std::string& sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < kids.size(); ++i) out += (i ? sep : "") + f(kids[i]);
    return out;
}

std::string carrier(const Node& n);
std::string set(const Node& n);
std::string stream(const Node& n);
std::string family(const Node& n);

std::string text(const Node& n) { return n.text; }

std::string carrier(const Node& n) {
    if (n.head == "enum") return "enum{" + join(n.kids, text) + "}";
    if (n.head == "cproduct") return "product(" + carrier(n.kids[0]) + ", " + carrier(n.kids[1]) + ")";
    if (n.head == "ref") return n.text;
    return n.head;
}

std::string point(const Node& n) {
    if (n.head == "pair") return "<" + point(n.kids[0]) + ", " + point(n.kids[1]) + ">";
    return n.text;
}

bool binary(const Node& n) { return n.head == "union" || n.head == "inter" || n.head == "minus"; }

std::string set(const Node& n) {
    if (binary(n)) {
        std::string op = n.head == "union" ? " u " : n.head == "inter" ? " n " : " \\ ";
        const Node& r = n.kids[1];
        return set(n.kids[0]) + op + (binary(r) ? "(" + set(r) + ")" : set(r));
    }
    if (n.head == "elems") return "{" + join(n.kids, point) + "}";
    if (n.head == "cofinite") return "co{" + join(n.kids, text) + "}";
    if (n.head == "interval") return n.text.substr(0, 1) + n.kids[0].text + "," + n.kids[1].text + n.text.substr(1, 1);
    if (n.head == "box") return "box(" + set(n.kids[0]) + ", " + set(n.kids[1]) + ")";
    if (n.head == "range") return "range(" + n.kids[0].text + ", " + n.kids[1].text + ")";
    if (n.head == "complement") return "complement(" + set(n.kids[0]) + ")";
    if (n.head == "ref") return n.text;
    return n.head;  // empty, full
}

std::string stream(const Node& n) {
    if (n.head == "shrink") return "shrink(" + n.kids[0].text + "," + n.kids[1].text + "," + n.text + "," + n.kids[2].text + ")";
    if (n.head == "grow" || n.head == "initial") return n.head + "(" + n.kids[0].text + ")";
    if (n.head == "singletons") return n.kids.empty() ? "singletons" : "singletons(" + n.kids[0].text + ")";
    if (n.head == "const") return "const(" + set(n.kids[0]) + ")";
    return (n.head == "sunion" ? "union(" : "inter(") + stream(n.kids[0]) + ", " + stream(n.kids[1]) + ")";
}

std::string family_item(const Node& n) {
    if (n.head == "list") return "[" + join(n.kids, set) + "]";
    if (n.head == "stream") return "stream " + stream(n.kids[0]);
    return n.text;
}

std::string family(const Node& n) { return join(n.kids, family_item, " + "); }

std::string exhaustion(const Node& n) {
    if (n.head == "chain") return "chain " + stream(n.kids[0]);
    if (n.head == "ref") return n.text;
    std::string out = "poset {";
    for (const auto& k : n.kids) {
        if (k.head == "piece")
            out += " " + k.text + " = " + set(k.kids[0]) + ";";
        else
            out += " " + k.kids[0].text + " <= " + k.kids[1].text + ";";
    }
    return out + " }";
}

std::string policy(const Node& n) {
    if (n.text == "locally") return "locally " + family(n.kids[0]);
    if (n.text == "piecewise") return "piecewise " + exhaustion(n.kids[0]);
    return n.text;
}

std::string opens(const Node& n) {
    if (n.text == "list") return "list [" + join(n.kids, set) + "]";
    return n.text;
}

std::string space_body(const Node& n) {
    if (n.head == "block") {
        std::string out = "{\n";
        for (const auto& f : n.kids) {
            const Node& v = f.kids[0];
            std::string val = f.text == "carrier" ? carrier(v) : f.text == "points" ? set(v) : f.text == "opens" ? opens(v) : policy(v);
            out += "    " + f.text + " " + val + "\n";
        }
        return out + "}";
    }
    std::string out = "= " + n.text;
    if (n.text == "sum-of-points") return out;
    out += "(";
    if (n.text == "subspace") return out + n.kids[0].text + ", " + set(n.kids[1]) + ")";
    if (n.text == "localize") return out + n.kids[0].text + ", " + family(n.kids[1]) + ")";
    if (n.text == "generate") return out + carrier(n.kids[0]) + ", [" + join(n.kids[1].kids, set) + "])";
    return out + join(n.kids, text) + ")";
}

std::string entry(const Node& n) { return point(n.kids[0]) + " -> " + point(n.kids[1]); }

std::string affine_piece(const Node& n) {
    const std::string& q = n.kids[2].text;
    std::string off = (q[0] == '+' || q[0] == '-') ? q : "+ " + q;
    return set(n.kids[0]) + " -> " + n.kids[1].text + " * x " + off;
}

std::string map_rule(const Node& n) {
    const std::string& k = n.text;
    if (k == "table" || k == "permutation") return k + " {" + join(n.kids, entry) + "}";
    if (k == "affine") return "affine {" + join(n.kids, affine_piece) + "}";
    if (k == "shift" || k == "projection") return k + " " + n.kids[0].text;
    if (k == "pair") return "pair(" + n.kids[0].text + ", " + n.kids[1].text + ")";
    if (k == "const") return "const " + point(n.kids[0]);
    return k;
}

std::string category_body(const Node& n) {
    std::string out = n.head == "poset-category" ? "= poset {\n" : "{\n";
    for (const auto& k : n.kids) {
        if (k.head == "objects")
            out += "    objects " + join(k.kids, text) + "\n";
        else if (k.head == "le")
            out += "    " + k.kids[0].text + " <= " + k.kids[1].text + "\n";
        else if (k.head == "arrow")
            out += "    arrow " + k.text + " : " + k.kids[0].text + " -> " + k.kids[1].text + "\n";
        else
            out += "    compose " + k.kids[0].text + " o " + k.kids[1].text + " = " + k.kids[2].text + "\n";
    }
    return out + "}";
}

std::string site_body(const Node& n) {
    if (n.head == "opens-site") return "= opens(" + n.kids[0].text + ")";
    std::string out = "{\n";
    for (const auto& k : n.kids) {
        if (k.head == "sitecat") {
            out += "    category " + k.text + "\n";
            continue;
        }
        const std::string& mode = k.kids[0].text;
        if (mode == "list")
            out += "    cover " + k.text + " = [" + join(std::vector<Node>(k.kids.begin() + 1, k.kids.end()), text) + "]\n";
        else
            out += "    cover " + k.text + " = " + mode + "\n";
    }
    return out + "}";
}

std::string value_entry(const Node& n) { return n.kids[0].text + " -> " + n.kids[1].text; }

std::string presheaf_body(const Node& n) {
    std::string out = "{\n";
    for (const auto& k : n.kids) {
        if (k.head == "values")
            out += "    values " + k.text + " = [" + join(k.kids, text) + "]\n";
        else
            out += "    restrict " + k.text + " = {" + join(k.kids, value_entry) + "}\n";
    }
    return out + "}";
}

std::string decl(const Decl& d) {
    std::string annot = d.annot && d.kind != DeclKind::Map && d.kind != DeclKind::Presheaf ? " : " + carrier(*d.annot) : "";
    switch (d.kind) {
        case DeclKind::Use: return "use " + d.name;
        case DeclKind::Carrier: return "carrier " + d.name + " = " + carrier(d.body);
        case DeclKind::Set: return "set " + d.name + annot + " = " + set(d.body);
        case DeclKind::Family: return "family " + d.name + annot + " = " + family(d.body);
        case DeclKind::Exhaustion: return "exhaustion " + d.name + annot + " = " + exhaustion(d.body);
        case DeclKind::Space: return "space " + d.name + " " + space_body(d.body);
        case DeclKind::Map:
            return "map " + d.name + " : " + d.annot->kids[0].text + " -> " + d.annot->kids[1].text + " = " + map_rule(d.body);
        case DeclKind::Category: return "category " + d.name + " " + category_body(d.body);
        case DeclKind::Site: return "site " + d.name + " " + site_body(d.body);
        case DeclKind::Presheaf: return "presheaf " + d.name + " on " + d.annot->text + " " + presheaf_body(d.body);
    }
    return "";
}

}  // namespace

std::string emit_document(const Document& d) {
    std::string out;
    for (const auto& x : d.decls) out += decl(x) + "\n";
    return out;
}

std::string emit_node(const Node& n) { return n.head == "family" ? family(n) : set(n); }

}  // namespace gtskit::dsl

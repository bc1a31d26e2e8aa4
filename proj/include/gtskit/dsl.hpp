#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtskit/constructions.hpp"
#include "gtskit/sites.hpp"

namespace gtskit::dsl {

struct SourcePos {
    int line = 1;
    int column = 1;
    std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

enum class DiagKind { Syntax, Resolution, Validation };
std::string to_string(DiagKind k);

struct Diagnostic {
    DiagKind kind = DiagKind::Syntax;
    SourcePos pos;
    std::string message;
    std::vector<std::string> expected;  // token alternatives for syntax errors

    std::string str() const;
};

class DslError : public std::runtime_error {
public:
    explicit DslError(Diagnostic d) : std::runtime_error(d.str()), diag_(std::move(d)) {}
    const Diagnostic& diagnostic() const { return diag_; }

private:
    Diagnostic diag_;
};

/// Untyped syntax tree. `head` names the production (see docs/grammar.md),
/// `text` holds identifiers, numbers and keyword choices. Equality ignores
/// positions.
struct Node {
    std::string head;
    std::string text;
    std::vector<Node> kids;
    SourcePos pos;

    friend bool operator==(const Node& a, const Node& b) {
        return a.head == b.head && a.text == b.text && a.kids == b.kids;
    }
};

enum class DeclKind { Use, Carrier, Set, Family, Space, Map, Exhaustion, Category, Site, Presheaf };
std::string to_string(DeclKind k);

struct Decl {
    DeclKind kind = DeclKind::Use;
    std::string name;
    SourcePos pos;
    /// Carrier annotation (set, family, exhaustion), signature (map: two refs),
    /// or the category/site a presheaf lives on.
    std::optional<Node> annot;
    Node body;

    friend bool operator==(const Decl& a, const Decl& b) {
        return a.kind == b.kind && a.name == b.name && a.annot == b.annot && a.body == b.body;
    }
};

struct Document {
    std::vector<Decl> decls;

    const Decl* find(const std::string& name) const;
    friend bool operator==(const Document&, const Document&) = default;
};

/// Syntax only. Throws DslError (Syntax) with position and expected tokens,
/// (Resolution) on duplicate names.
Document parse_syntax(const std::string& text);
/// Canonical text; parse_syntax(emit_document(d)) == d.
std::string emit_document(const Document& d);

/// Standalone fragments, e.g. for replaying reported witnesses.
Node parse_set_syntax(const std::string& text);
Node parse_family_syntax(const std::string& text);
std::string emit_node(const Node& n);

struct PresheafDecl {
    std::string category;  // name of the site or category it lives on
    Presheaf presheaf;
};

/// Resolved declarations. The constructor builds every space, map,
/// category, site and presheaf and checks the references of the rest; sets,
/// families and exhaustions without a carrier annotation are resolved
/// against a carrier at use.
class Workspace {
public:
    /// Throws DslError (Resolution, Validation).
    explicit Workspace(Document doc);

    const Document& document() const { return doc_; }
    std::optional<DeclKind> kind_of(const std::string& name) const;

    Carrier carrier(const std::string& name) const;
    Space space(const std::string& name) const;
    const SpaceMap& map(const std::string& name) const;
    const FiniteCategory& category(const std::string& name) const;
    const Site& site(const std::string& name) const;
    const PresheafDecl& presheaf(const std::string& name) const;

    SetExpr set(const std::string& name, const Carrier& c) const;
    FamilyExpr family(const std::string& name, const Carrier& c) const;
    Exhaustion exhaustion(const std::string& name, const Carrier& c) const;

    SetExpr resolve_set(const Node& n, const Carrier& c) const;
    FamilyExpr resolve_family(const Node& n, const Carrier& c) const;

private:
    Document doc_;
    // built on first use, so declaration order is free
    mutable std::map<std::string, Carrier> carriers_;
    mutable std::map<std::string, Space> spaces_;
    mutable std::map<std::string, SpaceMap> maps_;
    mutable std::map<std::string, FiniteCategory> categories_;
    mutable std::map<std::string, Site> sites_;
    mutable std::map<std::string, PresheafDecl> presheaves_;
    mutable std::vector<std::string> resolving_;

    const Decl& require(const std::string& name, std::vector<DeclKind> kinds, SourcePos pos) const;
    void enter(const Decl& d) const;
    void check_refs(const Node& n, const std::string& context) const;
    Carrier resolve_carrier(const Node& n) const;
    Point resolve_point(const Node& n, const Carrier& c) const;
    Stream resolve_stream(const Node& n, const Carrier& c) const;
    Exhaustion resolve_exhaustion(const Node& n, const Carrier& c) const;
    CoveragePolicy resolve_policy(const Node& n, const Carrier& c) const;
    Space build_space(const Decl& d) const;
    SpaceMap build_map(const Decl& d) const;
    FiniteCategory build_category(const Decl& d) const;
    Site build_site(const Decl& d) const;
    PresheafDecl build_presheaf(const Decl& d) const;
};

/// parse_syntax followed by resolution of every declaration.
Workspace parse_document(const std::string& text);

}  // namespace gtskit::dsl

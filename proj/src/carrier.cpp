#include "gtskit/carrier.hpp"

#include <algorithm>
#include <set>

#include "gtskit/errors.hpp"

namespace gtskit {

Carrier Carrier::finite_enum(std::vector<std::string> atoms) {
    std::set<std::string> seen;
    for (const auto& a : atoms)
        if (!seen.insert(a).second) throw Error(ErrorKind::InvalidPresentation, "duplicate atom '" + a + "'");
    return Carrier(std::make_shared<const Node>(Node{CarrierKind::FiniteEnum, std::move(atoms), nullptr, nullptr}));
}

Carrier Carrier::nat() {
    static const Carrier c(std::make_shared<const Node>(Node{CarrierKind::NatFC, {}, nullptr, nullptr}));
    return c;
}

Carrier Carrier::qline() {
    static const Carrier c(std::make_shared<const Node>(Node{CarrierKind::QLine, {}, nullptr, nullptr}));
    return c;
}

Carrier Carrier::product(const Carrier& left, const Carrier& right) {
    return Carrier(std::make_shared<const Node>(
        Node{CarrierKind::Product, {}, std::make_shared<const Carrier>(left), std::make_shared<const Carrier>(right)}));
}

std::size_t Carrier::atom_index(const std::string& atom) const {
    const auto& a = atoms();
    auto it = std::find(a.begin(), a.end(), atom);
    return it == a.end() ? std::string::npos : static_cast<std::size_t>(it - a.begin());
}

bool Carrier::is_finite() const {
    switch (kind()) {
        case CarrierKind::FiniteEnum: return true;
        case CarrierKind::Product: return left().is_finite() && right().is_finite();
        default: return false;
    }
}

std::string Carrier::str() const {
    switch (kind()) {
        case CarrierKind::NatFC: return "nat";
        case CarrierKind::QLine: return "qline";
        case CarrierKind::Product: return "product(" + left().str() + ", " + right().str() + ")";
        case CarrierKind::FiniteEnum: {
            std::string out = "enum{";
            for (std::size_t i = 0; i < atoms().size(); ++i) out += (i ? ", " : "") + atoms()[i];
            return out + "}";
        }
    }
    return "?";
}

bool operator==(const Carrier& a, const Carrier& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case CarrierKind::FiniteEnum: return a.atoms() == b.atoms();
        case CarrierKind::Product: return a.left() == b.left() && a.right() == b.right();
        default: return true;
    }
}

Point Point::of_atom(std::string a) {
    Point p;
    p.kind = PointKind::Atom;
    p.atom = std::move(a);
    return p;
}

Point Point::of_nat(std::uint64_t n) {
    Point p;
    p.kind = PointKind::Nat;
    p.nat = n;
    return p;
}

Point Point::of_rat(Rational r) {
    Point p;
    p.kind = PointKind::Rat;
    p.rat = r;
    return p;
}

Point Point::of_pair(Point a, Point b) {
    Point p;
    p.kind = PointKind::Pair;
    p.pair = {std::move(a), std::move(b)};
    return p;
}

std::string Point::str() const {
    switch (kind) {
        case PointKind::Atom: return atom;
        case PointKind::Nat: return std::to_string(nat);
        case PointKind::Rat: return rat.str();
        case PointKind::Pair: return "<" + pair[0].str() + ", " + pair[1].str() + ">";
    }
    return "?";
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    switch (a.kind) {
        case PointKind::Atom: return a.atom <=> b.atom;
        case PointKind::Nat: return a.nat <=> b.nat;
        case PointKind::Rat: return a.rat <=> b.rat;
        case PointKind::Pair:
            if (auto c = a.pair[0] <=> b.pair[0]; c != 0) return c;
            return a.pair[1] <=> b.pair[1];
    }
    return std::strong_ordering::equal;
}

}  // namespace gtskit

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gtskit/rational.hpp"

namespace gtskit {

enum class CarrierKind { FiniteEnum, NatFC, QLine, Product };

/// Underlying set of a presentation. Immutable; copies share the node.
class Carrier {
public:
    static Carrier finite_enum(std::vector<std::string> atoms);
    static Carrier nat();
    static Carrier qline();
    static Carrier product(const Carrier& left, const Carrier& right);

    CarrierKind kind() const { return node_->kind; }
    const std::vector<std::string>& atoms() const { return node_->atoms; }
    const Carrier& left() const { return *node_->left; }
    const Carrier& right() const { return *node_->right; }

    /// Index of `atom` in a FiniteEnum carrier, or npos.
    std::size_t atom_index(const std::string& atom) const;

    bool is_finite() const;
    std::string str() const;

    friend bool operator==(const Carrier& a, const Carrier& b);

private:
    struct Node {
        CarrierKind kind;
        std::vector<std::string> atoms;
        std::shared_ptr<const Carrier> left;
        std::shared_ptr<const Carrier> right;
    };
    explicit Carrier(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

enum class PointKind { Atom, Nat, Rat, Pair };

/// A representable point: an atom name, a natural number, a rational, or a
/// pair of points.
struct Point {
    PointKind kind = PointKind::Nat;
    std::string atom;
    std::uint64_t nat = 0;
    Rational rat;
    std::vector<Point> pair;  // exactly two entries when kind == Pair

    static Point of_atom(std::string a);
    static Point of_nat(std::uint64_t n);
    static Point of_rat(Rational r);
    static Point of_pair(Point a, Point b);

    std::string str() const;

    friend bool operator==(const Point&, const Point&) = default;
    friend std::strong_ordering operator<=>(const Point& a, const Point& b);
};

}  // namespace gtskit

#include "gtskit/presentation.hpp"

#include <algorithm>

#include "gtskit/errors.hpp"

namespace gtskit {

Exhaustion Exhaustion::poset(Carrier c, std::vector<std::string> labels, std::vector<std::vector<bool>> leq,
                             std::vector<SetExpr> pieces) {
    std::size_t n = labels.size();
    if (pieces.size() != n || leq.size() != n)
        throw Error(ErrorKind::InvalidPresentation, "exhaustion needs one piece and one order row per index");
    for (const auto& row : leq)
        if (row.size() != n) throw Error(ErrorKind::InvalidPresentation, "exhaustion order matrix is not square");
    for (const auto& p : pieces)
        if (!(p.carrier() == c)) throw Error(ErrorKind::CarrierMismatch, "exhaustion piece " + p.str() + " not on " + c.str());
    Exhaustion e;
    e.shape = Shape::Poset;
    e.carrier = std::move(c);
    e.labels = std::move(labels);
    e.leq = std::move(leq);
    e.pieces = std::move(pieces);
    return e;
}

Exhaustion Exhaustion::chain(const Stream& generator) {
    if (!generator.is_monotone()) throw Error(ErrorKind::InvalidPresentation, "chain exhaustion needs a monotone generator");
    Exhaustion e;
    e.shape = Shape::Chain;
    e.carrier = generator.carrier();
    e.generator = generator;
    return e;
}

std::uint64_t Exhaustion::first_index() const { return shape == Shape::Chain ? generator->start() : 0; }

std::optional<std::size_t> Exhaustion::size() const {
    if (shape == Shape::Chain) return std::nullopt;
    return labels.size();
}

SetExpr Exhaustion::piece(std::uint64_t index) const {
    if (shape == Shape::Chain) return generator->member(index);
    if (index >= pieces.size()) throw Error(ErrorKind::InvalidPresentation, "exhaustion index out of range");
    return pieces[index];
}

bool Exhaustion::less_equal(std::uint64_t a, std::uint64_t b) const {
    if (shape == Shape::Chain) return a <= b;
    return leq.at(a).at(b);
}

std::string Exhaustion::index_name(std::uint64_t index) const {
    if (shape == Shape::Chain) return std::to_string(index);
    return labels.at(index);
}

std::string Exhaustion::str() const {
    if (shape == Shape::Chain) return "chain " + generator->str();
    std::string out = "poset {";
    for (std::size_t i = 0; i < labels.size(); ++i) out += " " + labels[i] + " = " + pieces[i].str() + ";";
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j < labels.size(); ++j)
            if (i != j && leq[i][j]) out += " " + labels[i] + " <= " + labels[j] + ";";
    return out + " }";
}

bool operator==(const Exhaustion& a, const Exhaustion& b) {
    return a.shape == b.shape && a.carrier == b.carrier && a.labels == b.labels && a.leq == b.leq && a.pieces == b.pieces &&
           a.generator == b.generator;
}

std::string CoveragePolicy::str() const {
    switch (kind) {
        case Kind::All: return "all";
        case Kind::EssFin: return "essfin";
        case Kind::EssCountable: return "esscountable";
        case Kind::LocallyEssFin: return "locally " + base->str();
        case Kind::PiecewiseEssFin: return "piecewise " + exhaustion->str();
    }
    return "?";
}

bool operator==(const CoveragePolicy& a, const CoveragePolicy& b) {
    return a.kind == b.kind && a.base == b.base && a.exhaustion == b.exhaustion;
}

std::string OpensSpec::str() const {
    auto names = [&]() {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i]->name;
        return out;
    };
    switch (kind) {
        case Kind::ExplicitList: {
            std::string out = "list [";
            for (std::size_t i = 0; i < list.size(); ++i) out += (i ? ", " : "") + list[i].str();
            return out + "]";
        }
        case Kind::AllCanonicalOpen: return "canonical-open";
        case Kind::FiniteOrWhole: return "finite-or-whole";
        case Kind::AllSets: return "all-sets";
        case Kind::ProductOpens: return "product(" + names() + ")";
        case Kind::Summands: return "sum(" + names() + ")";
        case Kind::Glued: return "glued(" + names() + ")";
    }
    return "?";
}

namespace {

void invalid(const std::string& name, const std::string& what) {
    throw Error(ErrorKind::InvalidPresentation, (name.empty() ? std::string("space") : name) + ": " + what);
}

}  // namespace

Space make_space(GtsPresentation p) {
    if (!(p.points.carrier() == p.carrier)) invalid(p.name, "points not on carrier " + p.carrier.str());
    switch (p.opens.kind) {
        case OpensSpec::Kind::ExplicitList: {
            auto& l = p.opens.list;
            for (const auto& s : l) {
                if (!(s.carrier() == p.carrier)) invalid(p.name, "open " + s.str() + " not on carrier");
                if (!is_subset(s, p.points)) invalid(p.name, "open " + s.str() + " not inside the points");
            }
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
            auto has = [&](const SetExpr& s) { return std::binary_search(l.begin(), l.end(), s); };
            if (!has(SetExpr::empty(p.carrier))) invalid(p.name, "A1: empty set is not open");
            if (!has(p.points)) invalid(p.name, "A1: the whole space is not open");
            for (std::size_t i = 0; i < l.size(); ++i)
                for (std::size_t j = i + 1; j < l.size(); ++j) {
                    if (!has(unite(l[i], l[j]))) invalid(p.name, "A2: union of " + l[i].str() + " and " + l[j].str() + " is not open");
                    if (!has(intersect(l[i], l[j])))
                        invalid(p.name, "A2: intersection of " + l[i].str() + " and " + l[j].str() + " is not open");
                }
            break;
        }
        case OpensSpec::Kind::AllCanonicalOpen:
            if (p.carrier.kind() != CarrierKind::QLine) invalid(p.name, "canonical-open needs a qline carrier");
            break;
        case OpensSpec::Kind::FiniteOrWhole:
            if (p.carrier.kind() == CarrierKind::QLine || p.carrier.kind() == CarrierKind::Product)
                invalid(p.name, "finite-or-whole needs a nat or enum carrier");
            break;
        case OpensSpec::Kind::AllSets: break;
        case OpensSpec::Kind::ProductOpens:
            if (p.opens.parts.size() != 2) invalid(p.name, "product opens need two factors");
            if (!(p.carrier == Carrier::product(p.opens.parts[0]->carrier, p.opens.parts[1]->carrier)))
                invalid(p.name, "product carrier does not match factors");
            break;
        case OpensSpec::Kind::Summands:
        case OpensSpec::Kind::Glued:
            if (p.opens.parts.empty()) invalid(p.name, "no parts");
            break;
    }
    if (p.policy.kind == CoveragePolicy::Kind::LocallyEssFin) {
        if (!p.policy.base || !(p.policy.base->carrier() == p.carrier)) invalid(p.name, "base family not on carrier");
    }
    if (p.policy.kind == CoveragePolicy::Kind::PiecewiseEssFin) {
        if (!p.policy.exhaustion || !(p.policy.exhaustion->carrier == p.carrier)) invalid(p.name, "exhaustion not on carrier");
    }
    return std::make_shared<const GtsPresentation>(std::move(p));
}

Space make_space_unchecked(GtsPresentation p) { return std::make_shared<const GtsPresentation>(std::move(p)); }

namespace {

Space qline_space(const std::string& name, CoveragePolicy pol) {
    GtsPresentation p;
    p.name = name;
    p.carrier = Carrier::qline();
    p.points = SetExpr::full(p.carrier);
    p.opens.kind = OpensSpec::Kind::AllCanonicalOpen;
    p.policy = std::move(pol);
    return make_space(std::move(p));
}

Space nat_space(const std::string& name, OpensSpec::Kind opens, CoveragePolicy pol) {
    GtsPresentation p;
    p.name = name;
    p.carrier = Carrier::nat();
    p.points = SetExpr::full(p.carrier);
    p.opens.kind = opens;
    p.policy = std::move(pol);
    return make_space(std::move(p));
}

}  // namespace

Space rs_alg() { return qline_space("RSalg", CoveragePolicy::essfin()); }
Space r_top() { return qline_space("RTop", CoveragePolicy::all()); }
Space r_count() { return qline_space("RCount", CoveragePolicy::esscountable()); }

Space wd_space() { return nat_space("Wd", OpensSpec::Kind::FiniteOrWhole, CoveragePolicy::essfin()); }

Space discrete_small_nat() { return nat_space("DiscreteSmallN", OpensSpec::Kind::AllSets, CoveragePolicy::essfin()); }

Space top_discrete_nat() {
    FamilyExpr singles(Carrier::nat(), {}, {Stream::of(StreamSchema::singletons())});
    return nat_space("TopDiscreteN", OpensSpec::Kind::AllSets, CoveragePolicy::locally(singles));
}

Space chain_nat() {
    return nat_space("ChainN", OpensSpec::Kind::AllSets,
                     CoveragePolicy::piecewise(Exhaustion::chain(Stream::of(StreamSchema::initial(0)))));
}

Space one_point() {
    GtsPresentation p;
    p.name = "Pt";
    p.carrier = Carrier::finite_enum({"p"});
    p.points = SetExpr::full(p.carrier);
    p.opens.kind = OpensSpec::Kind::AllSets;
    p.policy = CoveragePolicy::all();
    return make_space(std::move(p));
}

Space sierpinski() {
    GtsPresentation p;
    p.name = "Sierpinski";
    p.carrier = Carrier::finite_enum({"a", "b"});
    p.points = SetExpr::full(p.carrier);
    p.opens.kind = OpensSpec::Kind::ExplicitList;
    p.opens.list = {SetExpr::empty(p.carrier), SetExpr::atoms(p.carrier, {"a"}), p.points};
    p.policy = CoveragePolicy::all();
    return make_space(std::move(p));
}

}  // namespace gtskit

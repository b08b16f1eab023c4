#include "subdiv/io.hpp"

#include <fstream>
#include <map>
#include <unordered_map>

namespace subdiv {

namespace {

const Json& require_key(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

const Json& require_array(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be an array");
    return j;
}

std::string require_string(const Json& j, const std::string& what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError(what + " must be a string");
}

Rational parse_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_unsigned()) return Rational(Integer(j.get<unsigned long long>()));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            const auto slash = s.find('/');
            if (slash == std::string::npos) return Rational(Integer(s));
            const Integer den(s.substr(slash + 1));
            if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
            return Rational(Integer(s.substr(0, slash))) / Rational(den);
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const ParseError*>(&e)) throw;
            throw ParseError("not a number: \"" + s + "\"");
        }
    }
    throw ParseError("coordinates must be integers or \"p/q\" strings");
}

RatVec parse_vector(const Json& j, std::size_t dim) {
    require_array(j, "a point");
    if (j.size() != dim) throw ParseError("point of length " + std::to_string(j.size()) + " in dimension " + std::to_string(dim));
    RatVec v;
    for (const auto& x : j) v.push_back(parse_rational(x));
    return v;
}

IntVec to_lattice(const RatVec& v, const std::optional<Lattice>& lattice) {
    if (lattice) {
        auto c = lattice->coordinates(v);
        if (!c) throw GeometryError(GeometryError::Kind::NotLattice, "point is not in the lattice");
        return *c;
    }
    IntVec r;
    for (const auto& x : v) {
        if (denominator(x) != 1) throw GeometryError(GeometryError::Kind::NotLattice, "non-integral coordinate " + x.str());
        r.push_back(numerator(x));
    }
    return r;
}

bool flag(const Json& j, const char* key) { return j.contains(key) && j.at(key).is_boolean() && j.at(key).get<bool>(); }

struct Geometry {
    std::size_t dim;
    std::optional<Lattice> lattice;
};

Geometry read_geometry(const Json& j) {
    const Json& d = require_key(j, "dim");
    if (!d.is_number_integer() || d.get<long long>() < 0) throw ParseError("\"dim\" must be a non-negative integer");
    Geometry g{static_cast<std::size_t>(d.get<long long>()), std::nullopt};
    if (j.contains("lattice_basis")) {
        RatMatrix basis;
        for (const auto& row : require_array(j.at("lattice_basis"), "\"lattice_basis\"")) basis.push_back(parse_vector(row, g.dim));
        g.lattice = Lattice::generated_by(basis);
    }
    return g;
}

std::vector<IntVec> read_points(const Json& j, const Geometry& g) {
    std::vector<IntVec> pts;
    for (const auto& p : require_array(j, "a point list")) pts.push_back(to_lattice(parse_vector(p, g.dim), g.lattice));
    return pts;
}

// Cells and heights for one subdivision block; nothing for the trivial subdivision.
std::optional<CellComplex> read_subdivision(const Json& j, const LatticePolytope& p, const Geometry& g,
                                            const std::vector<IntVec>& vertices, bool regular) {
    std::vector<IntVec> points = j.contains("points") ? read_points(j.at("points"), g) : vertices;
    if (j.contains("heights")) {
        std::vector<Rational> heights;
        for (const auto& h : require_array(j.at("heights"), "\"heights\"")) heights.push_back(parse_rational(h));
        if (heights.size() != points.size()) throw ParseError("one height per point is required");
        return regular_from_heights(p, points, heights);
    }
    if (!j.contains("cells")) return std::nullopt;
    std::vector<std::vector<std::size_t>> cells;
    for (const auto& cell : require_array(j.at("cells"), "\"cells\"")) {
        std::vector<std::size_t> idx;
        for (const auto& x : require_array(cell, "a cell")) {
            if (x.is_number_integer()) {
                const long long i = x.get<long long>();
                if (i < 0 || static_cast<std::size_t>(i) >= points.size())
                    throw ParseError("cell index " + std::to_string(i) + " out of range");
                idx.push_back(static_cast<std::size_t>(i));
            } else {
                points.push_back(to_lattice(parse_vector(x, g.dim), g.lattice));
                idx.push_back(points.size() - 1);
            }
        }
        cells.push_back(std::move(idx));
    }
    return CellComplex::build(p, points, cells, regular);
}

Json exponent_json(int twice) {
    if (twice % 2 == 0) return twice / 2;
    return static_cast<double>(twice) / 2.0;
}

int read_twice(const Json& j) {
    if (j.is_number_integer()) return 2 * j.get<int>();
    if (j.is_number()) {
        const double d = j.get<double>() * 2;
        const int r = static_cast<int>(d);
        if (static_cast<double>(r) != d) throw ParseError("exponents must lie in (1/2)Z");
        return r;
    }
    throw ParseError("exponents must be numbers");
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

RankedPoset poset_from_json(const Json& j) {
    std::vector<std::string> names;
    for (const auto& e : require_array(require_key(j, "elements"), "\"elements\"")) names.push_back(require_string(e, "an element"));
    std::vector<std::pair<std::string, std::string>> covers;
    if (j.contains("covers"))
        for (const auto& c : require_array(j.at("covers"), "\"covers\"")) {
            if (!c.is_array() || c.size() != 2) throw ParseError("covers are pairs [a, b]");
            covers.emplace_back(require_string(c[0], "a cover"), require_string(c[1], "a cover"));
        }
    std::unordered_map<std::string, int> rank;
    if (j.contains("rank")) {
        const Json& r = j.at("rank");
        if (!r.is_object()) throw ParseError("\"rank\" must map elements to integers");
        for (const auto& [k, v] : r.items()) {
            if (!v.is_number_integer()) throw ParseError("rank of " + k + " must be an integer");
            rank[k] = v.get<int>();
        }
    } else {
        // longest chain from a minimal element, by relaxation over the covers
        for (const auto& n : names) rank[n] = 0;
        for (std::size_t round = 0; round <= names.size(); ++round) {
            bool changed = false;
            for (const auto& [a, b] : covers) {
                if (!rank.count(a) || !rank.count(b)) throw ParseError("cover mentions an unknown element");
                if (rank[b] < rank[a] + 1) {
                    rank[b] = rank[a] + 1;
                    changed = true;
                }
            }
            if (!changed) break;
            if (round == names.size()) throw PosetError(PosetError::Kind::Cycle, "covers contain a cycle");
        }
    }
    return RankedPoset::build_named(names, covers, rank);
}

Json poset_to_json(const RankedPoset& p) {
    Json elements = Json::array(), covers = Json::array(), rank = Json::object();
    for (Elem x = 0; x < p.size(); ++x) {
        elements.push_back(p.name(x));
        rank[p.name(x)] = p.rank(x);
        for (Elem y : p.upper_covers(x)) covers.push_back({p.name(x), p.name(y)});
    }
    return {{"elements", elements}, {"covers", covers}, {"rank", rank}};
}

Sfs sfs_from_json(const Json& j) {
    auto gamma = std::make_shared<const RankedPoset>(poset_from_json(require_key(j, "gamma")));
    auto base = std::make_shared<const RankedPoset>(poset_from_json(require_key(j, "base")));
    const Json& s = require_key(j, "sigma");
    if (!s.is_object()) throw ParseError("\"sigma\" must map elements of gamma to elements of base");
    std::vector<std::optional<Elem>> image(gamma->size());
    for (const auto& [k, v] : s.items()) {
        const auto y = gamma->index_of(k);
        if (!y) throw ParseError("sigma mentions unknown element " + k);
        const auto x = base->index_of(require_string(v, "an image"));
        if (!x) throw ParseError("sigma maps " + k + " to an unknown element");
        image[*y] = *x;
    }
    std::vector<Elem> sigma;
    for (Elem y = 0; y < gamma->size(); ++y) {
        if (!image[y]) throw ParseError("sigma is not defined on " + gamma->name(y));
        sigma.push_back(*image[y]);
    }
    return Sfs::validate(gamma, base, sigma, {flag(j, "geometric"), flag(j, "regular")});
}

Json sfs_to_json(const Sfs& s) {
    Json sigma = Json::object();
    for (Elem y = 0; y < s.gamma().size(); ++y) sigma[s.gamma().name(y)] = s.base().name(s.sigma(y));
    return {{"gamma", poset_to_json(s.gamma())},
            {"base", poset_to_json(s.base())},
            {"sigma", sigma},
            {"geometric", s.flags().geometric},
            {"regular", s.flags().regular}};
}

PolytopeInput polytope_from_json(const Json& j) {
    const Geometry g = read_geometry(j);
    PolytopeInput in;
    in.lattice = g.lattice;
    const std::vector<IntVec> vertices = read_points(require_key(j, "vertices"), g);
    in.polytope = vertices.empty() ? LatticePolytope::empty(g.dim) : LatticePolytope::from_points(vertices, &in.warnings);
    return in;
}

ComplexInput complex_from_json(const Json& j, bool force_regular) {
    const Geometry g = read_geometry(j);
    const std::vector<IntVec> vertices = read_points(require_key(j, "vertices"), g);
    std::vector<std::string> warnings;
    const LatticePolytope p = LatticePolytope::from_points(vertices, &warnings);
    const bool regular = force_regular || flag(j, "regular");
    std::optional<CellComplex> main = read_subdivision(j, p, g, vertices, regular);
    ComplexInput in{main ? std::move(*main) : CellComplex::trivial(p), std::nullopt, std::move(warnings)};
    if (j.contains("coarse")) {
        const Json& c = j.at("coarse");
        if (!c.is_object()) throw ParseError("\"coarse\" must be an object");
        auto coarse = read_subdivision(c, p, g, vertices, flag(c, "regular"));
        in.coarse = coarse ? std::move(*coarse) : CellComplex::trivial(p);
    }
    return in;
}

Json complex_to_json(const CellComplex& c) {
    const LatticePolytope& p = c.polytope();
    auto vec = [](const IntVec& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(x.str());
        return a;
    };
    Json vertices = Json::array(), points = Json::array(), cells = Json::array();
    for (const auto& v : p.vertices()) vertices.push_back(vec(v));
    for (const auto& v : c.points()) points.push_back(vec(v));
    for (const auto& cell : c.cells()) cells.push_back(cell);
    return {{"dim", p.ambient_dim()}, {"vertices", vertices}, {"points", points}, {"cells", cells}, {"regular", c.regular()}};
}

Json poly_to_json(const LaurentPoly& p) {
    Json terms = Json::array();
    static constexpr Var vars[] = {Var::t, Var::u, Var::v, Var::w};
    for (const auto& [e, c] : p.terms()) {
        Json exps = Json::object();
        for (Var x : vars) {
            const int twice = e[static_cast<std::size_t>(x)];
            if (twice != 0) exps[std::string(1, var_name(x))] = exponent_json(twice);
        }
        terms.push_back({{"coefficient", c.str()}, {"exponents", exps}});
    }
    return {{"text", p.to_string()}, {"terms", terms}};
}

LaurentPoly poly_from_json(const Json& j) {
    if (j.is_string()) return LaurentPoly::parse(j.get<std::string>());
    if (j.is_number_integer()) return LaurentPoly(j.get<int>());
    if (j.is_object() && j.contains("terms")) {
        LaurentPoly p;
        for (const auto& t : require_array(j.at("terms"), "\"terms\"")) {
            const Integer c(require_string(require_key(t, "coefficient"), "a coefficient"));
            LaurentPoly::Exponents e{};
            if (t.contains("exponents"))
                for (const auto& [k, v] : t.at("exponents").items()) {
                    if (k.size() != 1) throw ParseError("unknown variable " + k);
                    const std::string names = "tuvw";
                    const auto at = names.find(k[0]);
                    if (at == std::string::npos) throw ParseError("unknown variable " + k);
                    e[at] = read_twice(v);
                }
            p += LaurentPoly::monomial(c, e);
        }
        return p;
    }
    if (j.is_object() && j.contains("text")) return LaurentPoly::parse(j.at("text").get<std::string>());
    throw ParseError("a polynomial is a string, an integer or an object with \"terms\"");
}

Json diamond_to_json(const Diamond& d) {
    Json entries = Json::array();
    for (std::size_t p = 0; p < d.size(); ++p)
        for (std::size_t q = 0; q < d.size(); ++q)
            entries.push_back({{"p", p}, {"q", q}, {"value", d.at(p, q).str()}});
    Json out = {{"kind", to_string(d.kind)}, {"size", d.size()}, {"entries", entries}};
    if (d.layer >= 0) out["r"] = d.layer;
    return out;
}

Json report_to_json(const Report& r) {
    Json items = Json::array();
    for (const auto& c : r.results()) items.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"passed", r.all_passed()}, {"failures", r.failures()}, {"results", items}};
}

}  // namespace subdiv

#include "subdiv/polytope.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <sstream>

#include <boost/integer/common_factor.hpp>

namespace subdiv {

const char* to_string(GeometryError::Kind kind) {
    switch (kind) {
        case GeometryError::Kind::NotLattice: return "not-lattice";
        case GeometryError::Kind::Empty: return "empty";
        case GeometryError::Kind::Dimension: return "dimension";
        case GeometryError::Kind::TooLarge: return "too-large";
        case GeometryError::Kind::OutsidePolytope: return "outside-polytope";
        case GeometryError::Kind::Overlap: return "overlap";
        case GeometryError::Kind::FacetMismatch: return "facet-mismatch";
        case GeometryError::Kind::CoverageGap: return "coverage-gap";
    }
    return "unknown";
}

namespace {

std::string vec_string(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::string index_set_name(const std::vector<std::size_t>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

long long to_ll(const Integer& x) {
    if (x > std::numeric_limits<long long>::max() / 4 || x < std::numeric_limits<long long>::min() / 4)
        throw GeometryError(GeometryError::Kind::TooLarge, "coordinate too large for lattice point scanning");
    return static_cast<long long>(x);
}

std::vector<std::size_t> mask_indices(std::uint64_t mask) {
    std::vector<std::size_t> out;
    while (mask) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

bool is_subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

}  // namespace

Lattice Lattice::standard(std::size_t dim) {
    RatMatrix id(dim, RatVec(dim, 0));
    for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
    return generated_by(id);
}

Lattice Lattice::generated_by(const RatMatrix& generators) {
    if (generators.empty()) throw GeometryError(GeometryError::Kind::Dimension, "lattice needs generators");
    const std::size_t d = generators[0].size();
    Integer denom = 1;
    for (const auto& g : generators) {
        if (g.size() != d) throw GeometryError(GeometryError::Kind::Dimension, "lattice generators differ in length");
        denom = boost::integer::lcm(denom, lcm_of_denominators(g));
    }
    IntMatrix scaled;
    for (const auto& g : generators) {
        IntVec row;
        for (const auto& x : g) row.push_back(numerator(Rational(x * denom)));
        scaled.push_back(std::move(row));
    }
    IntMatrix h = hermite_basis(std::move(scaled));
    if (h.size() != d) throw GeometryError(GeometryError::Kind::Dimension, "lattice generators do not span");
    Lattice l;
    for (const auto& row : h) {
        RatVec r;
        for (const auto& x : row) r.push_back(Rational(x, denom));
        l.basis_.push_back(std::move(r));
    }
    l.inverse_ = *inverse(l.basis_);
    return l;
}

std::optional<IntVec> Lattice::coordinates(const RatVec& point) const {
    const std::size_t d = dim();
    if (point.size() != d) throw GeometryError(GeometryError::Kind::Dimension, "point has wrong dimension");
    IntVec c(d);
    for (std::size_t j = 0; j < d; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < d; ++i) s += point[i] * inverse_[i][j];
        if (denominator(s) != 1) return std::nullopt;
        c[j] = numerator(s);
    }
    return c;
}

RatVec Lattice::ambient(const IntVec& coords) const {
    const std::size_t d = dim();
    RatVec p(d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) p[j] += Rational(coords[i]) * basis_[i][j];
    return p;
}

bool Lattice::is_standard() const {
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            if (basis_[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

LatticePolytope LatticePolytope::empty(std::size_t ambient_dim) {
    LatticePolytope p;
    p.ambient_dim_ = ambient_dim;
    return p;
}

LatticePolytope LatticePolytope::from_points(std::vector<IntVec> points, std::vector<std::string>* warnings) {
    if (points.empty()) throw GeometryError(GeometryError::Kind::Empty, "polytope needs at least one point");
    const std::size_t d = points[0].size();
    std::vector<IntVec> distinct;
    for (auto& p : points) {
        if (p.size() != d) throw GeometryError(GeometryError::Kind::Dimension, "points differ in length");
        if (std::find(distinct.begin(), distinct.end(), p) != distinct.end()) {
            if (warnings) warnings->push_back("repeated point " + vec_string(p) + " dropped");
            continue;
        }
        distinct.push_back(std::move(p));
    }
    if (distinct.size() > kMaxVertices)
        throw GeometryError(GeometryError::Kind::TooLarge, "at most 64 points per polytope are supported");
    LatticePolytope poly;
    poly.ambient_dim_ = d;
    poly.compute_hull(distinct);
    if (poly.dim_ == 0) {
        poly.vertices_ = {distinct[0]};
        return poly;
    }
    std::vector<IntVec> extreme;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        std::uint64_t meet = ~std::uint64_t{0};
        for (const auto& f : poly.facets_)
            if (f.mask >> i & 1) meet &= f.mask;
        if (meet == std::uint64_t{1} << i) {
            extreme.push_back(distinct[i]);
        } else if (warnings) {
            warnings->push_back("non-extreme point " + vec_string(distinct[i]) + " dropped");
        }
    }
    if (extreme.size() != distinct.size()) poly.compute_hull(extreme);
    poly.vertices_ = std::move(extreme);
    return poly;
}

void LatticePolytope::compute_hull(const std::vector<IntVec>& points) {
    const std::size_t d = ambient_dim_;
    base_point_ = points[0];
    RatMatrix directions;
    for (std::size_t i = 1; i < points.size(); ++i) directions.push_back(to_rational(sub(points[i], points[0])));
    Echelon e = reduced_echelon(directions, d);
    pivots_ = e.pivots;
    dim_ = static_cast<int>(pivots_.size());
    lift_denominator_ = 1;
    for (const auto& row : e.rows) lift_denominator_ = boost::integer::lcm(lift_denominator_, lcm_of_denominators(row));
    lift_rows_.clear();
    for (const auto& row : e.rows) {
        IntVec r;
        for (const auto& x : row) r.push_back(numerator(Rational(x * lift_denominator_)));
        lift_rows_.push_back(std::move(r));
    }
    facets_.clear();
    const std::size_t k = pivots_.size();
    if (k == 0) return;

    std::vector<std::vector<Integer>> y;
    for (const auto& p : points) {
        std::vector<Integer> c;
        for (auto j : pivots_) c.push_back(p[j]);
        y.push_back(std::move(c));
    }
    const std::size_t n = points.size();
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        std::uint64_t mask = 0;
        for (auto i : pick) mask |= std::uint64_t{1} << i;
        bool known = false;
        for (const auto& f : facets_) known = known || is_subset(mask, f.mask);
        if (!known) {
            RatMatrix diffs;
            for (std::size_t i = 1; i < k; ++i) {
                RatVec r;
                for (std::size_t j = 0; j < k; ++j) r.emplace_back(y[pick[i]][j] - y[pick[0]][j]);
                diffs.push_back(std::move(r));
            }
            RatMatrix normal_space = nullspace(diffs, k);
            if (normal_space.size() == 1) {
                IntVec a = primitive(normal_space[0]);
                Integer b = 0;
                for (std::size_t j = 0; j < k; ++j) b += a[j] * y[pick[0]][j];
                bool pos = false, neg = false;
                std::uint64_t tight = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    Integer s = -b;
                    for (std::size_t j = 0; j < k; ++j) s += a[j] * y[i][j];
                    if (s > 0) pos = true;
                    if (s < 0) neg = true;
                    if (s == 0) tight |= std::uint64_t{1} << i;
                }
                if (!(pos && neg)) {
                    if (neg) {
                        for (auto& x : a) x = -x;
                        b = -b;
                    }
                    facets_.push_back({std::move(a), std::move(b), tight});
                }
            }
        }
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

std::vector<Integer> LatticePolytope::pivot_coords(const IntVec& x) const {
    std::vector<Integer> c;
    for (auto j : pivots_) c.push_back(x[j]);
    return c;
}

std::optional<IntVec> LatticePolytope::lift(const std::vector<Integer>& y, long m) const {
    IntVec x(ambient_dim_);
    for (std::size_t j = 0; j < ambient_dim_; ++j) x[j] = lift_denominator_ * m * base_point_[j];
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Integer step = y[i] - m * base_point_[pivots_[i]];
        for (std::size_t j = 0; j < ambient_dim_; ++j) x[j] += step * lift_rows_[i][j];
    }
    for (auto& v : x) {
        if (v % lift_denominator_ != 0) return std::nullopt;
        v /= lift_denominator_;
    }
    return x;
}

bool LatticePolytope::in_affine_hull(const IntVec& x) const {
    if (dim_ < 0 || x.size() != ambient_dim_) return false;
    auto lifted = lift(pivot_coords(x), 1);
    return lifted && *lifted == x;
}

Integer LatticePolytope::slack(const Facet& f, const IntVec& x) const {
    Integer s = -f.offset;
    for (std::size_t i = 0; i < pivots_.size(); ++i) s += f.normal[i] * x[pivots_[i]];
    return s;
}

bool LatticePolytope::contains(const IntVec& x) const {
    if (!in_affine_hull(x)) return false;
    for (const auto& f : facets_)
        if (slack(f, x) < 0) return false;
    return true;
}

bool LatticePolytope::contains_in_relative_interior(const IntVec& x) const {
    if (!in_affine_hull(x)) return false;
    for (const auto& f : facets_)
        if (slack(f, x) <= 0) return false;
    return true;
}

std::uint64_t LatticePolytope::tight_facets(const IntVec& x) const {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < facets_.size(); ++i)
        if (slack(facets_[i], x) == 0) mask |= std::uint64_t{1} << i;
    return mask;
}

void LatticePolytope::for_each_point(long m, bool interior, const std::function<void(const IntVec&)>& visit) const {
    if (dim_ < 0) return;
    if (m == 0) {
        visit(IntVec(ambient_dim_, 0));
        return;
    }
    if (dim_ == 0) {
        IntVec x = base_point_;
        for (auto& v : x) v *= m;
        visit(x);
        return;
    }
    const std::size_t k = pivots_.size();
    const std::size_t d = ambient_dim_;
    const long long den = to_ll(lift_denominator_);
    std::vector<long long> lo(k), hi(k), base(d);
    for (std::size_t i = 0; i < k; ++i) {
        lo[i] = hi[i] = to_ll(vertices_[0][pivots_[i]] * m);
        for (const auto& v : vertices_) {
            lo[i] = std::min(lo[i], to_ll(v[pivots_[i]] * m));
            hi[i] = std::max(hi[i], to_ll(v[pivots_[i]] * m));
        }
    }
    for (std::size_t j = 0; j < d; ++j) base[j] = to_ll(base_point_[j] * m);
    std::vector<std::vector<long long>> normals, rows;
    std::vector<long long> offsets;
    for (const auto& f : facets_) {
        std::vector<long long> a;
        for (const auto& x : f.normal) a.push_back(to_ll(x));
        normals.push_back(std::move(a));
        offsets.push_back(to_ll(f.offset * m));
    }
    for (const auto& r : lift_rows_) {
        std::vector<long long> row;
        for (const auto& x : r) row.push_back(to_ll(x));
        rows.push_back(std::move(row));
    }
    std::vector<long long> y = lo;
    std::vector<__int128> acc(d);
    IntVec out(d);
    while (true) {
        bool inside = true;
        for (std::size_t f = 0; f < normals.size() && inside; ++f) {
            __int128 s = -static_cast<__int128>(offsets[f]);
            for (std::size_t i = 0; i < k; ++i) s += static_cast<__int128>(normals[f][i]) * y[i];
            inside = interior ? s > 0 : s >= 0;
        }
        if (inside) {
            bool integral = true;
            for (std::size_t j = 0; j < d && integral; ++j) {
                __int128 v = static_cast<__int128>(base[j]) * den;
                for (std::size_t i = 0; i < k; ++i)
                    v += static_cast<__int128>(y[i] - base[pivots_[i]]) * rows[i][j];
                integral = v % den == 0;
                acc[j] = v / den;
            }
            if (integral) {
                for (std::size_t j = 0; j < d; ++j) out[j] = static_cast<long long>(acc[j]);
                visit(out);
            }
        }
        std::size_t i = 0;
        while (i < k && y[i] == hi[i]) {
            y[i] = lo[i];
            ++i;
        }
        if (i == k) break;
        ++y[i];
    }
}

Integer LatticePolytope::count_points(long m) const {
    Integer n = 0;
    for_each_point(m, false, [&](const IntVec&) { ++n; });
    return n;
}

Integer LatticePolytope::interior_count(long m) const {
    Integer n = 0;
    for_each_point(m, true, [&](const IntVec&) { ++n; });
    return n;
}

Integer simplex_volume(const std::vector<IntVec>& vertices) {
    if (vertices.size() <= 1) return 1;
    IntMatrix edges;
    for (std::size_t i = 1; i < vertices.size(); ++i) edges.push_back(sub(vertices[i], vertices[0]));
    return gcd_of_maximal_minors(edges);
}

std::vector<std::vector<std::size_t>> LatticePolytope::pulling_triangulation() const {
    if (dim_ < 0) return {};
    if (dim_ == 0) return {{0}};
    std::vector<std::vector<std::size_t>> out;
    for (const auto& f : facets_) {
        if (f.mask & 1) continue;
        const auto indices = mask_indices(f.mask);
        for (const auto& simplex : face(f.mask).pulling_triangulation()) {
            std::vector<std::size_t> s{0};
            for (auto i : simplex) s.push_back(indices[i]);
            out.push_back(std::move(s));
        }
    }
    return out;
}

Integer LatticePolytope::normalized_volume() const {
    if (dim_ < 0) return 0;
    Integer total = 0;
    for (const auto& simplex : pulling_triangulation()) {
        std::vector<IntVec> verts;
        for (auto i : simplex) verts.push_back(vertices_[i]);
        total += simplex_volume(verts);
    }
    return total;
}

LatticePolytope LatticePolytope::face(std::uint64_t vertex_mask) const {
    if (vertex_mask == 0) return empty(ambient_dim_);
    std::vector<IntVec> pts;
    for (auto i : mask_indices(vertex_mask)) pts.push_back(vertices_.at(i));
    LatticePolytope f;
    f.ambient_dim_ = ambient_dim_;
    f.compute_hull(pts);
    f.vertices_ = std::move(pts);
    return f;
}

std::uint64_t LatticePolytope::all_vertices_mask() const {
    const std::size_t n = vertices_.size();
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

std::string LatticePolytope::to_string() const {
    if (dim_ < 0) return "conv{}";
    std::string out = "conv{";
    for (std::size_t i = 0; i < vertices_.size(); ++i) out += (i ? "," : "") + vec_string(vertices_[i]);
    return out + "}";
}

Elem FaceLattice::find(std::uint64_t mask) const {
    auto e = try_find(mask);
    if (!e) throw GeometryError(GeometryError::Kind::Overlap, "vertex set is not a face");
    return *e;
}

std::optional<Elem> FaceLattice::try_find(std::uint64_t mask) const {
    for (Elem i = 0; i < masks.size(); ++i)
        if (masks[i] == mask) return i;
    return std::nullopt;
}

FaceLattice face_lattice(const LatticePolytope& p) {
    std::set<std::uint64_t> found{0};
    if (!p.is_empty()) {
        std::vector<std::uint64_t> frontier{p.all_vertices_mask()};
        found.insert(frontier[0]);
        while (!frontier.empty()) {
            std::vector<std::uint64_t> next;
            for (auto m : frontier)
                for (const auto& f : p.facets())
                    if (found.insert(m & f.mask).second) next.push_back(m & f.mask);
            frontier = std::move(next);
        }
    }
    struct Entry {
        int dim;
        std::uint64_t mask;
        LatticePolytope face;
    };
    std::vector<Entry> entries;
    for (auto m : found) {
        LatticePolytope f = p.face(m);
        const int d = f.dim();
        entries.push_back({d, m, std::move(f)});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return std::tie(a.dim, a.mask) < std::tie(b.dim, b.mask); });
    FaceLattice fl;
    std::vector<std::string> names;
    std::vector<int> ranks;
    for (auto& e : entries) {
        fl.masks.push_back(e.mask);
        names.push_back(index_set_name(mask_indices(e.mask)));
        ranks.push_back(e.dim + 1);
        fl.faces.push_back(std::move(e.face));
    }
    std::vector<std::pair<Elem, Elem>> relations;
    for (Elem a = 0; a < fl.masks.size(); ++a)
        for (Elem b = 0; b < fl.masks.size(); ++b)
            if (a != b && is_subset(fl.masks[a], fl.masks[b]) && ranks[b] == ranks[a] + 1) relations.emplace_back(a, b);
    fl.poset = std::make_shared<const RankedPoset>(RankedPoset::build(std::move(names), relations, std::move(ranks)));
    return fl;
}

CellComplex CellComplex::build(LatticePolytope polytope, std::vector<IntVec> points,
                               std::vector<std::vector<std::size_t>> cells, bool regular) {
    using K = GeometryError::Kind;
    if (polytope.is_empty()) throw GeometryError(K::Empty, "cannot subdivide the empty polytope");
    if (cells.empty()) throw GeometryError(K::CoverageGap, "a subdivision needs at least one cell");

    // merge repeated points
    std::vector<std::size_t> first(points.size());
    std::vector<IntVec> distinct;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != polytope.ambient_dim()) throw GeometryError(K::Dimension, "point has wrong dimension");
        auto it = std::find(distinct.begin(), distinct.end(), points[i]);
        first[i] = static_cast<std::size_t>(it - distinct.begin());
        if (it == distinct.end()) distinct.push_back(points[i]);
    }

    CellComplex c;
    c.polytope_ = std::move(polytope);
    c.base_ = face_lattice(c.polytope_);
    c.points_ = std::move(distinct);
    c.regular_ = regular;
    const LatticePolytope& P = c.polytope_;

    std::vector<LatticePolytope> cell_polys;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        std::vector<std::size_t> idx;
        for (auto i : cells[ci]) {
            if (i >= first.size()) throw GeometryError(K::Dimension, "cell " + std::to_string(ci) + " uses an unknown point");
            idx.push_back(first[i]);
        }
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        if (idx.empty()) throw GeometryError(K::Empty, "cell " + std::to_string(ci) + " is empty");
        std::vector<IntVec> pts;
        for (auto i : idx) pts.push_back(c.points_[i]);
        LatticePolytope hull = LatticePolytope::from_points(pts);
        std::vector<std::size_t> verts;
        for (std::size_t j = 0; j < idx.size(); ++j)
            if (std::find(hull.vertices().begin(), hull.vertices().end(), pts[j]) != hull.vertices().end())
                verts.push_back(idx[j]);
        if (hull.dim() != P.dim())
            throw GeometryError(K::Dimension, "cell " + std::to_string(ci) + " has dimension " +
                                                  std::to_string(hull.dim()) + ", expected " + std::to_string(P.dim()));
        for (auto i : verts)
            if (!P.contains(c.points_[i]))
                throw GeometryError(K::OutsidePolytope, "cell " + std::to_string(ci) + " vertex " +
                                                            vec_string(c.points_[i]) + " lies outside the polytope");
        pts.clear();
        for (auto i : verts) pts.push_back(c.points_[i]);
        cell_polys.push_back(LatticePolytope::from_points(pts));
        c.cells_.push_back(std::move(verts));
    }
    std::vector<FaceLattice> cell_faces;
    for (const auto& cp : cell_polys) cell_faces.push_back(face_lattice(cp));

    auto mask_in = [](const std::vector<std::size_t>& cell, const std::vector<std::size_t>& subset) {
        std::uint64_t m = 0;
        for (auto i : subset) {
            auto it = std::lower_bound(cell.begin(), cell.end(), i);
            m |= std::uint64_t{1} << (it - cell.begin());
        }
        return m;
    };
    auto global = [](const std::vector<std::size_t>& cell, std::uint64_t mask) {
        std::vector<std::size_t> out;
        for (auto j : mask_indices(mask)) out.push_back(cell[j]);
        return out;
    };

    const std::size_t n = c.cells_.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::vector<std::size_t> common;
            std::set_intersection(c.cells_[a].begin(), c.cells_[a].end(), c.cells_[b].begin(), c.cells_[b].end(),
                                  std::back_inserter(common));
            const std::string pair = "cells " + std::to_string(a) + " and " + std::to_string(b);
            if (!cell_faces[a].try_find(mask_in(c.cells_[a], common)) ||
                !cell_faces[b].try_find(mask_in(c.cells_[b], common)))
                throw GeometryError(K::Overlap, pair + " share vertices " + index_set_name(common) + " that are not a common face");
            for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
                for (auto i : c.cells_[x])
                    if (!std::binary_search(common.begin(), common.end(), i) && cell_polys[y].contains(c.points_[i]))
                        throw GeometryError(K::Overlap, pair + " overlap at point " + vec_string(c.points_[i]));
        }
    }

    auto carrier_mask = [&](const std::vector<std::size_t>& verts) {
        if (verts.empty()) return std::uint64_t{0};
        std::uint64_t tight = ~std::uint64_t{0};
        for (auto i : verts) tight &= P.tight_facets(c.points_[i]);
        std::uint64_t face = P.all_vertices_mask();
        for (std::size_t f = 0; f < P.facets().size(); ++f)
            if (tight >> f & 1) face &= P.facets()[f].mask;
        return face;
    };

    std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> facet_owners;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t f = 0; f < cell_polys[a].facets().size(); ++f)
            facet_owners[global(c.cells_[a], cell_polys[a].facets()[f].mask)].emplace_back(a, f);
    for (const auto& [verts, owners] : facet_owners) {
        const bool boundary = c.base_.faces[c.base_.find(carrier_mask(verts))].dim() < P.dim();
        const std::string where = "facet " + index_set_name(verts);
        if (boundary) {
            if (owners.size() != 1) throw GeometryError(K::FacetMismatch, where + " on the boundary lies in several cells");
            continue;
        }
        if (owners.size() != 2)
            throw GeometryError(K::FacetMismatch, where + " lies in " + std::to_string(owners.size()) +
                                                      " cells; interior facets need exactly two");
        const auto [a, fa] = owners[0];
        const auto [b, fb] = owners[1];
        const Facet& facet = cell_polys[a].facets()[fa];
        for (auto i : c.cells_[b]) {
            if (std::binary_search(verts.begin(), verts.end(), i)) continue;
            if (cell_polys[a].slack(facet, c.points_[i]) >= 0)
                throw GeometryError(K::Overlap, where + ": cells " + std::to_string(a) + " and " + std::to_string(b) +
                                                    " lie on the same side");
        }
        (void)fb;
    }

    Integer volume = 0;
    for (const auto& cp : cell_polys) volume += cp.normalized_volume();
    if (volume != P.normalized_volume())
        throw GeometryError(K::CoverageGap, "cell volumes sum to " + volume.str() + " but the polytope has volume " +
                                                P.normalized_volume().str());

    std::map<std::vector<std::size_t>, Elem> index;
    std::vector<std::string> names;
    std::vector<int> ranks;
    std::vector<std::pair<Elem, Elem>> relations;
    for (std::size_t a = 0; a < n; ++a) {
        const FaceLattice& fl = cell_faces[a];
        std::vector<Elem> local(fl.masks.size());
        for (Elem e = 0; e < fl.masks.size(); ++e) {
            auto key = global(c.cells_[a], fl.masks[e]);
            auto [it, inserted] = index.emplace(key, names.size());
            if (inserted) {
                names.push_back(index_set_name(key));
                ranks.push_back(fl.faces[e].dim() + 1);
                c.elements_.push_back(fl.faces[e]);
                c.element_vertices_.push_back(key);
            }
            local[e] = it->second;
        }
        for (Elem e = 0; e < fl.masks.size(); ++e)
            for (Elem up : fl.poset->upper_covers(e)) relations.emplace_back(local[e], local[up]);
    }
    std::sort(relations.begin(), relations.end());
    relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
    c.poset_ = std::make_shared<const RankedPoset>(RankedPoset::build(std::move(names), relations, std::move(ranks)));
    for (const auto& verts : c.element_vertices_) c.carrier_.push_back(c.base_.find(carrier_mask(verts)));
    return c;
}

CellComplex CellComplex::trivial(const LatticePolytope& p) {
    std::vector<std::size_t> all(p.vertices().size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return build(p, p.vertices(), {all}, true);
}

Sfs CellComplex::to_sfs() const { return Sfs::validate(poset_, base_.poset, carrier_, {true, regular_}); }

CellComplex CellComplex::restrict_to(Elem q) const {
    const LatticePolytope& face = base_.faces.at(q);
    if (face.is_empty()) throw GeometryError(GeometryError::Kind::Empty, "cannot restrict to the empty face");
    std::vector<std::vector<std::size_t>> cells;
    for (Elem f = 0; f < poset_->size(); ++f)
        if (base_.poset->leq(carrier_[f], q) && elements_[f].dim() == face.dim()) cells.push_back(element_vertices_[f]);
    return build(face, points_, std::move(cells), regular_);
}

RankedPoset CellComplex::link(Elem f) const { return poset_->induced(poset_->up(f)); }

CellComplex regular_from_heights(const LatticePolytope& p, const std::vector<IntVec>& points,
                                 const std::vector<Rational>& heights) {
    using K = GeometryError::Kind;
    if (points.size() != heights.size()) throw GeometryError(K::Dimension, "one height per point is required");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!p.contains(points[i]))
            throw GeometryError(K::OutsidePolytope, "point " + vec_string(points[i]) + " lies outside the polytope");
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j]) throw GeometryError(K::Dimension, "repeated point " + vec_string(points[i]));
    }
    for (const auto& v : p.vertices())
        if (std::find(points.begin(), points.end(), v) == points.end())
            throw GeometryError(K::Dimension, "vertex " + vec_string(v) + " has no height");
    const Integer scale = lcm_of_denominators(heights);
    std::vector<IntVec> lifted;
    for (std::size_t i = 0; i < points.size(); ++i) {
        IntVec l;
        for (auto j : p.pivots()) l.push_back(points[i][j]);
        l.push_back(numerator(Rational(heights[i] * scale)));
        lifted.push_back(std::move(l));
    }
    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    LatticePolytope hull = LatticePolytope::from_points(lifted);
    if (hull.dim() == p.dim()) return CellComplex::build(p, points, {all}, true);

    const std::size_t k = static_cast<std::size_t>(p.dim());
    std::vector<std::vector<std::size_t>> cells;
    for (const auto& f : hull.facets()) {
        if (f.normal[k] <= 0) continue;
        std::vector<std::size_t> cell;
        for (std::size_t i = 0; i < lifted.size(); ++i)
            if (hull.slack(f, lifted[i]) == 0) cell.push_back(i);
        cells.push_back(std::move(cell));
    }
    return CellComplex::build(p, points, std::move(cells), true);
}

Sfs refinement_map(const CellComplex& fine, const CellComplex& coarse) {
    auto sorted = [](std::vector<IntVec> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sorted(fine.polytope().vertices()) != sorted(coarse.polytope().vertices()))
        throw GeometryError(GeometryError::Kind::Dimension, "subdivisions of different polytopes");
    const RankedPoset& F = *fine.poset();
    const RankedPoset& C = *coarse.poset();
    std::vector<Elem> sigma(F.size());
    for (Elem f = 0; f < F.size(); ++f) {
        std::vector<Elem> containing;
        for (Elem g = 0; g < C.size(); ++g) {
            const LatticePolytope& cell = coarse.element(g);
            if (F.rank(f) == 0 ? C.rank(g) != 0 : cell.is_empty()) continue;
            bool inside = true;
            for (const auto& v : fine.element(f).vertices()) inside = inside && cell.contains(v);
            if (inside) containing.push_back(g);
        }
        if (containing.empty())
            throw GeometryError(GeometryError::Kind::OutsidePolytope, "face " + F.name(f) + " lies in no cell of the coarse subdivision");
        std::optional<Elem> best;
        for (Elem g : containing)
            if (!best || C.rank(g) < C.rank(*best)) best = g;
        for (Elem g : containing)
            if (g != *best && !C.leq(*best, g))
                throw GeometryError(GeometryError::Kind::Overlap, "face " + F.name(f) + " has no smallest containing cell");
        sigma[f] = *best;
    }
    return Sfs::validate(fine.poset(), coarse.poset(), std::move(sigma), {true, false});
}

std::vector<IntVec> lattice_points(const LatticePolytope& p) {
    std::vector<IntVec> out;
    p.for_each_point(1, false, [&](const IntVec& x) { out.push_back(x); });
    return out;
}

}  // namespace subdiv

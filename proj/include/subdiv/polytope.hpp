#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "subdiv/linalg.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv {

class GeometryError : public std::runtime_error {
public:
    enum class Kind { NotLattice, Empty, Dimension, TooLarge, OutsidePolytope, Overlap, FacetMismatch, CoverageGap };
    GeometryError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

const char* to_string(GeometryError::Kind kind);

// A full-rank lattice M in Q^d. Polytopes are stored in coordinates with
// respect to a basis of M, so all counting happens in Z^d.
class Lattice {
public:
    static Lattice standard(std::size_t dim);
    // The lattice generated by the given vectors; they must span Q^d.
    static Lattice generated_by(const RatMatrix& generators);

    std::size_t dim() const { return basis_.size(); }
    // Rows form a basis of M in Hermite normal form.
    const RatMatrix& basis() const { return basis_; }
    // Coordinates of an ambient point, or nothing if it is not in M.
    std::optional<IntVec> coordinates(const RatVec& point) const;
    RatVec ambient(const IntVec& coords) const;
    bool is_standard() const;

private:
    RatMatrix basis_, inverse_;
};

// a . y >= offset on the pivot coordinates y of the affine hull; mask lists
// the vertices on which equality holds.
struct Facet {
    IntVec normal;
    Integer offset;
    std::uint64_t mask = 0;
};

// Convex hull of finitely many points of Z^d, kept as its extreme points.
class LatticePolytope {
public:
    static constexpr std::size_t kMaxVertices = 64;

    LatticePolytope() = default;
    static LatticePolytope empty(std::size_t ambient_dim);
    // Repeated and non-extreme points are dropped; each drop is described in
    // warnings when given.
    static LatticePolytope from_points(std::vector<IntVec> points, std::vector<std::string>* warnings = nullptr);

    std::size_t ambient_dim() const { return ambient_dim_; }
    int dim() const { return dim_; }
    bool is_empty() const { return dim_ < 0; }
    bool is_simplex() const { return static_cast<int>(vertices_.size()) == dim_ + 1; }
    const std::vector<IntVec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    // Coordinates onto which the affine hull projects bijectively.
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool in_affine_hull(const IntVec& x) const;
    bool contains(const IntVec& x) const;
    bool contains_in_relative_interior(const IntVec& x) const;
    // Bitmask of facets whose hyperplane contains x.
    std::uint64_t tight_facets(const IntVec& x) const;
    // Signed slack a . x_J - offset of a facet.
    Integer slack(const Facet& f, const IntVec& x) const;

    // Lattice points of mP, optionally only those in the relative interior.
    void for_each_point(long m, bool interior, const std::function<void(const IntVec&)>& visit) const;
    Integer count_points(long m) const;
    Integer interior_count(long m) const;

    // Volume normalised so that unimodular simplices of the affine lattice have volume 1.
    Integer normalized_volume() const;
    // Pulling triangulation with vertices pulled in index order; each simplex
    // is a sorted list of vertex indices.
    std::vector<std::vector<std::size_t>> pulling_triangulation() const;

    LatticePolytope face(std::uint64_t vertex_mask) const;
    std::uint64_t all_vertices_mask() const;

    std::string to_string() const;

private:
    void compute_hull(const std::vector<IntVec>& points);
    std::vector<Integer> pivot_coords(const IntVec& x) const;
    // Lifts pivot coordinates of a point of aff(mP) back to Z^d; nothing if not integral.
    std::optional<IntVec> lift(const std::vector<Integer>& y, long m) const;

    std::size_t ambient_dim_ = 0;
    int dim_ = -1;
    std::vector<IntVec> vertices_;
    std::vector<std::size_t> pivots_;
    IntVec base_point_;
    IntMatrix lift_rows_;  // denominator * reduced direction rows
    Integer lift_denominator_ = 1;
    std::vector<Facet> facets_;
};

// Integer normalised volume of the simplex with the given vertices.
Integer simplex_volume(const std::vector<IntVec>& vertices);

// Faces as vertex masks, indexed by the elements of an Eulerian poset with
// rank dim + 1.
struct FaceLattice {
    std::vector<std::uint64_t> masks;
    std::vector<LatticePolytope> faces;
    PosetPtr poset;

    Elem find(std::uint64_t mask) const;
    std::optional<Elem> try_find(std::uint64_t mask) const;
};
FaceLattice face_lattice(const LatticePolytope& p);

// A lattice polyhedral subdivision of a polytope P. Cells are lists of
// indices into a shared point list.
class CellComplex {
public:
    static CellComplex build(LatticePolytope polytope, std::vector<IntVec> points,
                             std::vector<std::vector<std::size_t>> cells, bool regular = false);
    static CellComplex trivial(const LatticePolytope& p);

    const LatticePolytope& polytope() const { return polytope_; }
    const FaceLattice& polytope_faces() const { return base_; }
    const std::vector<IntVec>& points() const { return points_; }
    // Maximal cells as sorted vertex indices.
    const std::vector<std::vector<std::size_t>>& cells() const { return cells_; }
    bool regular() const { return regular_; }

    // Poset of all faces of all cells, with the empty face at rank 0.
    const PosetPtr& poset() const { return poset_; }
    const LatticePolytope& element(Elem f) const { return elements_[f]; }
    const std::vector<std::size_t>& element_vertices(Elem f) const { return element_vertices_[f]; }
    // Smallest face of P containing the face f.
    Elem carrier(Elem f) const { return carrier_[f]; }
    const std::vector<Elem>& carriers() const { return carrier_; }

    Sfs to_sfs() const;
    // The induced subdivision of the face q of P.
    CellComplex restrict_to(Elem q) const;
    // Cells containing f, with f as the bottom element.
    RankedPoset link(Elem f) const;

private:
    LatticePolytope polytope_;
    FaceLattice base_;
    std::vector<IntVec> points_;
    std::vector<std::vector<std::size_t>> cells_;
    bool regular_ = false;
    PosetPtr poset_;
    std::vector<LatticePolytope> elements_;
    std::vector<std::vector<std::size_t>> element_vertices_;
    std::vector<Elem> carrier_;
};

// Projections of the lower faces of the lifted point set; heights are exact.
CellComplex regular_from_heights(const LatticePolytope& p, const std::vector<IntVec>& points,
                                 const std::vector<Rational>& heights);

// The map sending a face of fine to the smallest face of coarse containing
// it; both must subdivide the same polytope.
Sfs refinement_map(const CellComplex& fine, const CellComplex& coarse);

// All lattice points of P, in scan order.
std::vector<IntVec> lattice_points(const LatticePolytope& p);

}  // namespace subdiv

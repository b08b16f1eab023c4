#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/checks.hpp"
#include "subdiv/polytope.hpp"

namespace subdiv {

// f_P(0), ..., f_P(up_to).
std::vector<Integer> ehrhart_counts(const LatticePolytope& p, long up_to);
// Value at x of the polynomial of degree < values.size() through (i, values[i]).
Rational interpolate(const std::vector<Integer>& values, long x);
// h* from the counts f_P(0..dim P) by the binomial transform.
LaurentPoly hstar_from_counts(const std::vector<Integer>& counts, int dim);
// h*(P; t); the empty polytope gives 1. Results are memoised by vertex list.
LaurentPoly hstar(const LatticePolytope& p);

inline constexpr std::size_t kDefaultHstarCacheLimit = 4096;
// Entries kept by the h* memo before it is flushed, read once from
// SUBDIV_HSTAR_CACHE; 0 disables it.
std::size_t hstar_cache_limit();

// l* and h* of a simplex from the lattice points of its open and half-open
// fundamental parallelepipeds, graded by height.
struct BoxOracle {
    LaurentPoly local;
    LaurentPoly hstar;
};
BoxOracle hstar_box_oracle(const LatticePolytope& simplex);

// h*, l* and the mixed h* of every face of a polytope.
class PolytopeInvariants {
public:
    explicit PolytopeInvariants(LatticePolytope p);
    PolytopeInvariants(LatticePolytope p, FaceLattice faces);

    const LatticePolytope& polytope() const { return polytope_; }
    const FaceLattice& faces() const { return faces_; }
    const RankedPoset& poset() const { return *faces_.poset; }
    Elem top() const { return top_; }
    GTable& g() { return *g_; }

    const LaurentPoly& hstar(Elem q) const { return hstar_[q]; }
    const LaurentPoly& local_hstar(Elem q) const { return local_[q]; }
    LaurentPoly mixed_hstar(Elem q);

    const LaurentPoly& hstar() const { return hstar_[top_]; }
    const LaurentPoly& local_hstar() const { return local_[top_]; }
    LaurentPoly mixed_hstar() { return mixed_hstar(top_); }

private:
    LatticePolytope polytope_;
    FaceLattice faces_;
    Elem top_ = 0;
    std::unique_ptr<GTable> g_;
    std::vector<LaurentPoly> hstar_, local_;
};

LaurentPoly local_hstar(const LatticePolytope& p);
LaurentPoly mixed_hstar(const LatticePolytope& p);

// l* of every element of a cell poset, from the h* of the cells and the
// g-polynomials of the dual face intervals.
std::vector<LaurentPoly> cell_local_hstar(const CellComplex& c, GTable& cell_g, const std::vector<LaurentPoly>& cell_hstar);

// For a subdivision map with source cells carrying l*, the limit mixed h*
// (or its local version) over the base element x:
//   sum over y with sigma(y) <= x of v^rho(y) l*(y; u/v) h-or-l(x, y)(uv).
LaurentPoly limit_mixed_over(Sfs& map, const std::vector<LaurentPoly>& source_local, Elem x, bool local);

// The h*-family of a lattice subdivision S of P. Face-indexed results refer
// to the restriction S|_Q.
class SubdivisionInvariants {
public:
    explicit SubdivisionInvariants(CellComplex c);

    const CellComplex& complex() const { return complex_; }
    Sfs& sfs() { return sfs_; }
    PolytopeInvariants& base() { return base_; }
    int dim() const { return complex_.polytope().dim(); }
    Elem top() const { return base_.top(); }

    const LaurentPoly& cell_hstar(Elem f) const { return cell_hstar_[f]; }
    const LaurentPoly& cell_local(Elem f) const { return cell_local_[f]; }
    const std::vector<LaurentPoly>& cell_locals() const { return cell_local_; }

    const LaurentPoly& limit_mixed(Elem q);
    const LaurentPoly& local_limit_mixed(Elem q);
    const LaurentPoly& refined(Elem q);
    const LaurentPoly& limit_mixed() { return limit_mixed(top()); }
    const LaurentPoly& local_limit_mixed() { return local_limit_mixed(top()); }
    const LaurentPoly& refined() { return refined(top()); }

private:
    CellComplex complex_;
    Sfs sfs_;
    PolytopeInvariants base_;
    std::vector<LaurentPoly> cell_hstar_, cell_local_;
    std::vector<std::optional<LaurentPoly>> limit_, local_limit_, refined_;
};

// Coefficient tables entries[p][q], drawn with entry (p, q) at (q - p, p + q).
struct Diamond {
    enum class Kind { hstar, local, r_local };
    Kind kind = Kind::hstar;
    int layer = -1;  // r for an r-local table
    std::vector<std::vector<Integer>> entries;

    std::size_t size() const { return entries.size(); }
    const Integer& at(std::size_t p, std::size_t q) const { return entries[p][q]; }
};

// h*(P,S;u,v) = 1 + uv sum h_pq u^p v^q
Diamond hstar_diamond(const LaurentPoly& limit_mixed, int dim);
// l*(P,S;u,v) = uv sum l_pq u^p v^q
Diamond local_hstar_diamond(const LaurentPoly& local_limit_mixed, int dim);
// h*(P,S;u,v,w) = 1 + uvw^2 sum h_pqr u^p v^q w^r, one table per r
std::vector<Diamond> r_local_diamonds(const LaurentPoly& refined, int dim);

const char* to_string(Diamond::Kind kind);
// Rows from the top, entry (p, q) in column q - p; a table without entries renders as 1.
std::string render_text(const Diamond& d);
std::string render_svg(const Diamond& d);

// The refined limit mixed h* of a subdivision of a polytope of dimension at
// most 3, assembled from boundary lattice point counts of the cells with the
// middle coefficient fixed by the normalized volume.
LaurentPoly refined_from_small_terms(SubdivisionInvariants& s);

// Identities for a polytope: interpolation, reciprocity, local h* properties,
// the mixed h*, and the box oracle when P is a simplex.
Report check_polytope(PolytopeInvariants& p);
// Pushforward identities, limit mixed and refined limit mixed properties,
// diamonds and boundary formulas.
Report check_subdivision(SubdivisionInvariants& s);
// Lower bounds, and unimodality when the subdivision is regular.
Report check_bounds(SubdivisionInvariants& s);
// Identities for fine refining coarse; both subdivide the same polytope.
Report check_refinement(SubdivisionInvariants& fine, SubdivisionInvariants& coarse);

}  // namespace subdiv

#pragma once

#include <initializer_list>
#include <vector>

#include "subdiv/polytope.hpp"

namespace subdiv::fixtures {

inline IntVec V(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline LatticePolytope poly(std::initializer_list<std::initializer_list<long>> pts) {
    std::vector<IntVec> v;
    for (auto p : pts) v.push_back(V(p));
    return LatticePolytope::from_points(v);
}

inline LatticePolytope unit_simplex(int d) {
    std::vector<IntVec> v{IntVec(static_cast<std::size_t>(d), 0)};
    for (int i = 0; i < d; ++i) {
        IntVec e(static_cast<std::size_t>(d), 0);
        e[static_cast<std::size_t>(i)] = 1;
        v.push_back(e);
    }
    return LatticePolytope::from_points(v);
}

inline LatticePolytope unit_cube(int d) {
    std::vector<IntVec> v;
    for (int m = 0; m < (1 << d); ++m) {
        IntVec p;
        for (int i = 0; i < d; ++i) p.emplace_back((m >> i) & 1);
        v.push_back(p);
    }
    return LatticePolytope::from_points(v);
}

// conv(0, e_1, ..., e_5) in the lattice Z^5 + Z(1/3)(1, ..., 1), in lattice coordinates.
inline LatticePolytope thirds_simplex() {
    RatMatrix gens;
    std::vector<IntVec> ambient{IntVec(5, 0)};
    for (std::size_t i = 0; i < 5; ++i) {
        RatVec e(5, 0);
        e[i] = 1;
        gens.push_back(e);
        IntVec v(5, 0);
        v[i] = 1;
        ambient.push_back(v);
    }
    gens.push_back(RatVec(5, Rational(1, 3)));
    const Lattice M = Lattice::generated_by(gens);
    std::vector<IntVec> coords;
    for (const auto& v : ambient) coords.push_back(*M.coordinates(to_rational(v)));
    return LatticePolytope::from_points(coords);
}

// Regular subdivision of P with all its lattice points and heights from f.
template <class F>
CellComplex lifted(const LatticePolytope& p, F height) {
    const std::vector<IntVec> pts = lattice_points(p);
    std::vector<Rational> heights;
    for (const auto& x : pts) heights.emplace_back(Integer(height(x)));
    return regular_from_heights(p, pts, heights);
}

}  // namespace subdiv::fixtures

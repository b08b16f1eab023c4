#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "subdiv/laurent.hpp"

namespace subdiv {

using Rational = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;
using IntMatrix = std::vector<IntVec>;  // row-major
using RatMatrix = std::vector<RatVec>;

RatVec to_rational(const IntVec& v);
RatMatrix to_rational(const IntMatrix& m);

struct Echelon {
    RatMatrix rows;                  // nonzero rows of the reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each row
};

Echelon reduced_echelon(RatMatrix m, std::size_t columns);
std::size_t rank(const RatMatrix& m, std::size_t columns);
// Basis of { x : m x = 0 }.
RatMatrix nullspace(const RatMatrix& m, std::size_t columns);
// The unique solution of a square nonsingular system, or nothing.
std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b);
std::optional<RatMatrix> inverse(const RatMatrix& a);

// Scales a rational vector to coprime integers with the same direction.
IntVec primitive(const RatVec& v);
Integer lcm_of_denominators(const RatVec& v);

Integer determinant(IntMatrix m);
// Rows spanning the lattice generated by the given rows, in Hermite normal form.
IntMatrix hermite_basis(IntMatrix rows);
// gcd of the k x k minors of a k-row integer matrix.
Integer gcd_of_maximal_minors(const IntMatrix& rows);

Integer dot(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);

}  // namespace subdiv

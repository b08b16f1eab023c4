#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "subdiv/io.hpp"

namespace subdiv {

enum class OutputFormat { text, json, svg };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int parse = 2;
inline constexpr int validation = 3;
inline constexpr int contradiction = 4;
}  // namespace exit_code

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct JobSpec {
    // gpoly, hpoly, local-h, mixed-h, hstar, local-hstar, mixed-hstar,
    // limit-mixed, refined, diamond, check, bary, corpus, generate
    std::string command;
    std::string input;  // a JSON path; the rank for bary; a directory for corpus and generate
    OutputFormat format = OutputFormat::text;
    bool regular = false;        // treat complexes as regular subdivisions
    bool oracle = false;         // cross-check h* against the box oracle
    std::string diamond = "all";  // hstar, local, r-local or all
    int layer = -1;               // a single r-local table
    std::uint64_t seed = kDefaultSeed;
    int count = 12;
};

struct JobResult {
    int exit_code = exit_code::ok;
    std::string out;
    std::string err;
};

JobResult run(const JobSpec& spec);

// Random regular subdivision of a small lattice polytope of the given
// dimension together with a coarser regular subdivision it refines, as a
// complex JSON object.
Json random_complex_case(std::mt19937_64& rng, int dim);
// Random full-dimensional lattice simplex with coordinates in [0, max_coord].
LatticePolytope random_simplex(std::mt19937_64& rng, int dim, long max_coord);

}  // namespace subdiv

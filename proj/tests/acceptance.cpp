#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "subdiv/cli.hpp"

using namespace subdiv;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && passed) detail = what;
        passed = passed && ok;
    }
};

std::vector<std::pair<std::string, Json>> corpus_cases() {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(SUBDIV_CORPUS_DIR))
        if (e.path().extension() == ".json") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    std::vector<std::pair<std::string, Json>> out;
    for (const auto& p : paths) out.emplace_back(p.filename().string(), read_json_file(p.string()));
    return out;
}

std::size_t count_named(const Report& r, const std::string& prefix) {
    std::size_t n = 0;
    for (const auto& c : r.results()) n += c.name.rfind(prefix, 0) == 0;
    return n;
}

Outcome check_barycentric() {
    Outcome o;
    for (int n = 2; n <= 5; ++n) {
        Sfs s = oracles::bary_sfs(n);
        const auto stats = oracles::permutation_stats(n);
        const std::string at = "n = " + std::to_string(n);
        o.require(s.h_gamma() == stats.eulerian, at + ": h is not the Eulerian polynomial");
        o.require(s.local_h() == stats.derangements, at + ": local h is not the derangement polynomial");
        o.require(s.mixed_h() == stats.mixed, at + ": mixed h is not the excedance pair sum");
    }
    o.detail = o.passed ? "n = 2..5" : o.detail;
    return o;
}

Outcome check_thirds_simplex() {
    Outcome o;
    const LatticePolytope p = fixtures::thirds_simplex();
    const LaurentPoly want = LaurentPoly::parse("t^2 + t^4");
    const LaurentPoly alternating = local_hstar(p);
    const BoxOracle box = hstar_box_oracle(p);
    o.require(alternating == want, "alternating sum gives " + alternating.to_string());
    o.require(box.local == want, "box oracle gives " + box.local.to_string());
    // coefficients 0, 0, 1, 0, 1 are not unimodal
    o.require(alternating.coeff_t(3) == 0 && alternating.coeff_t(2) == 1 && alternating.coeff_t(4) == 1,
              "expected a gap at degree 3");
    SubdivisionInvariants inv(CellComplex::trivial(p));
    const Report bounds = check_bounds(inv);
    o.require(bounds.all_passed(), "lower bound battery failed");
    if (o.passed) o.detail = "l* = " + want.to_string() + " by both paths, " + std::to_string(bounds.results().size()) + " bound checks";
    return o;
}

Outcome check_small_cases() {
    Outcome o;
    std::mt19937_64 rng(kDefaultSeed);
    std::size_t instances = 0, checked = 0;
    auto take = [&](Sfs& s, const std::string& what) {
        const auto c = oracles::count_small_cases(s);
        ++instances;
        checked += c.checked;
        o.require(c.mismatches == 0, what + ": " + std::to_string(c.mismatches) + " mismatches");
    };
    for (int i = 0; i < 24; ++i) {
        const int dim = 1 + i % 2;
        const ComplexInput in = complex_from_json(random_complex_case(rng, dim));
        Sfs fine = in.complex.to_sfs();
        o.require(fine.gamma().max_rank() <= 3, "rank above 3");
        take(fine, "random case " + std::to_string(i));
        Sfs coarse = in.coarse->to_sfs();
        take(coarse, "random coarse case " + std::to_string(i));
    }
    for (int n = 1; n <= 3; ++n) {
        Sfs b = oracles::bary_sfs(n);
        take(b, "bary " + std::to_string(n));
    }
    o.require(checked > 0, "no small intervals found");
    if (o.passed) o.detail = std::to_string(instances) + " instances, " + std::to_string(checked) + " intervals";
    return o;
}

Outcome check_oracle_equivalence() {
    Outcome o;
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_int_distribution<int> dims(1, 4);
    for (int i = 0; i < 50; ++i) {
        const int d = dims(rng);
        const LatticePolytope p = random_simplex(rng, d, 4);
        const std::string at = "simplex " + p.to_string();
        o.require(hstar(p) == hstar_box_oracle(p).hstar, at + ": interpolation and box oracle differ");
        const std::vector<Integer> counts = ehrhart_counts(p, d);
        const int sign = d % 2 == 0 ? 1 : -1;
        for (long m = 1; m <= d + 1; ++m)
            o.require(interpolate(counts, -m) == Rational(sign * p.interior_count(m)), at + ": reciprocity at m = " + std::to_string(m));
    }
    if (o.passed) o.detail = "50 simplices, dim <= 4, coordinates <= 4";
    return o;
}

Outcome check_refinement_triples() {
    Outcome o;
    std::mt19937_64 rng(kDefaultSeed + 1);
    int triples = 0, nontrivial = 0;
    for (int i = 0; i < 12; ++i) {
        const int dim = 1 + i % 3;
        const ComplexInput in = complex_from_json(random_complex_case(rng, dim));
        SubdivisionInvariants fine(in.complex), coarse(*in.coarse);
        const Report sub = check_subdivision(fine);
        const Report ref = check_refinement(fine, coarse);
        const std::string at = "triple " + std::to_string(i);
        o.require(sub.all_passed(), at + ": subdivision battery failed");
        o.require(ref.all_passed(), at + ": refinement battery failed");
        o.require(count_named(sub, "pushforward") == 1 && count_named(sub, "h*(P) from") == 1 &&
                      count_named(sub, "h*(P) = sum") == 1 && count_named(sub, "l*(P) = sum") == 1,
                  at + ": missing pushforward identity");
        o.require(count_named(ref, "refinement: limit mixed") == 2 && count_named(ref, "refinement: local limit") == 1,
                  at + ": missing refinement identity");
        ++triples;
        nontrivial += in.coarse->cells().size() > 1;
    }
    o.require(nontrivial > 0, "every coarse subdivision was trivial");
    if (o.passed)
        o.detail = std::to_string(triples) + " regular triples, " + std::to_string(nontrivial) + " with a non-trivial middle";
    return o;
}

Outcome check_corpus_battery() {
    Outcome o;
    JobSpec spec;
    spec.command = "corpus";
    spec.input = SUBDIV_CORPUS_DIR;
    const JobResult r = run(spec);
    o.require(r.exit_code == exit_code::ok, "corpus run exited with " + std::to_string(r.exit_code));
    const auto last = r.out.rfind("corpus:");
    o.detail = o.passed ? r.out.substr(last, r.out.find('\n', last) - last) : o.detail;
    return o;
}

Outcome check_chan_example() {
    Outcome o;
    Sfs s = oracles::two_tetrahedra();
    const LaurentPoly uv = LaurentPoly::parse("uv");
    o.require(s.mixed_h() == 1 + uv * LaurentPoly::parse("u + v") - uv * uv, "mixed h is " + s.mixed_h().to_string());
    o.require(s.local_h() == LaurentPoly::parse("-t^2"), "local h is " + s.local_h().to_string());
    o.require(s.h_gamma() == LaurentPoly::parse("1 + t"), "h is " + s.h_gamma().to_string());
    o.require(check_sfs(s).all_passed(), "identity battery failed");
    if (o.passed) o.detail = "mixed h = " + s.mixed_h().to_string();
    return o;
}

Outcome check_small_terms_closure() {
    Outcome o;
    int cases = 0;
    for (const auto& [name, j] : corpus_cases()) {
        if (!j.contains("vertices")) continue;
        const ComplexInput in = complex_from_json(j);
        if (in.complex.polytope().dim() != 3) continue;
        SubdivisionInvariants inv(in.complex);
        o.require(refined_from_small_terms(inv) == inv.refined(), name + ": reconstruction differs");
        o.require(inv.base().hstar().eval_at_one() == in.complex.polytope().normalized_volume(),
                  name + ": h*(1) is not the normalized volume");
        ++cases;
    }
    o.require(cases > 0, "no dimension 3 cases in the corpus");
    if (o.passed) o.detail = std::to_string(cases) + " dimension 3 cases";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"barycentric subdivisions match permutation statistics", check_barycentric},
        {"non-unimodal local h* of the thirds simplex", check_thirds_simplex},
        {"small-case closed forms for local and mixed h", check_small_cases},
        {"interpolation, box oracle and reciprocity on random simplices", check_oracle_equivalence},
        {"pushforward and refinement identities on nested triples", check_refinement_triples},
        {"property battery on the bundled corpus", check_corpus_battery},
        {"negative coefficients on the two-tetrahedra subdivision", check_chan_example},
        {"small-term reconstruction of the refined polynomial in dimension 3", check_small_terms_closure},
    };
    int failures = 0, index = 0;
    for (const auto& [title, body] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.passed;
        std::printf("%s %d %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", index, title.c_str(), o.detail.c_str(), seconds);
    }
    std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

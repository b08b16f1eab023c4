#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/subdivision.hpp"

// Independent reference computations shared by the tests and the acceptance suite.
namespace subdiv::oracles {

inline LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

inline PosetPtr ptr(RankedPoset p) { return std::make_shared<const RankedPoset>(std::move(p)); }

inline int excedances(const std::vector<int>& w) {
    int e = 0;
    for (std::size_t i = 0; i < w.size(); ++i) e += w[i] > static_cast<int>(i);
    return e;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& w) {
    std::vector<int> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[static_cast<std::size_t>(w[i])] = static_cast<int>(i);
    return r;
}

// Sums over S_n of t^{exc(w)}, over derangements, and of u^{exc(w)} v^{exc(w^{-1})}.
struct PermutationStats {
    LaurentPoly eulerian, derangements, mixed;
};

inline PermutationStats permutation_stats(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 0);
    PermutationStats s;
    do {
        const int e = excedances(w);
        s.eulerian += LaurentPoly::t_half(2 * e);
        bool fixed = false;
        for (int i = 0; i < n; ++i) fixed = fixed || w[static_cast<std::size_t>(i)] == i;
        if (!fixed) s.derangements += LaurentPoly::t_half(2 * e);
        s.mixed += LaurentPoly::monomial(1, {0, 2 * e, 2 * excedances(inverse_permutation(w)), 0});
    } while (std::next_permutation(w.begin(), w.end()));
    return s;
}

inline Sfs bary_sfs(int n) {
    auto base = ptr(boolean_algebra(n));
    Barycentric b = barycentric(*base);
    return Sfs::validate(ptr(std::move(b.poset)), base, b.sigma);
}

inline std::string set_name(unsigned mask) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < 8; ++i) {
        if (!(mask & (1u << i))) continue;
        if (!first) s += ",";
        s += std::to_string(i + 1);
        first = false;
    }
    return s + "}";
}

// Two tetrahedra 1234 and 1235 over the 3-simplex 1234, with vertex 5 carried by the face 123.
inline Sfs two_tetrahedra() {
    auto base = ptr(boolean_algebra(4));
    std::vector<unsigned> faces;
    for (unsigned m = 0; m < 32; ++m) {
        const bool in_a = !(m & 16u);
        const bool in_b = !(m & 8u);
        if (in_a || in_b) faces.push_back(m);
    }
    std::vector<std::string> names;
    std::vector<int> rank;
    for (unsigned m : faces) {
        names.push_back(set_name(m));
        rank.push_back(__builtin_popcount(m));
    }
    std::vector<std::pair<Elem, Elem>> rel;
    for (Elem i = 0; i < faces.size(); ++i)
        for (Elem j = 0; j < faces.size(); ++j)
            if (faces[i] != faces[j] && (faces[i] & faces[j]) == faces[i]) rel.emplace_back(i, j);
    auto gamma = ptr(RankedPoset::build(names, rel, rank));
    std::vector<Elem> sigma;
    for (unsigned m : faces) {
        unsigned image;
        if (m == 0b0111u || __builtin_popcount(m) == 4) {
            image = 0b1111u;
        } else if (m & 16u) {
            image = 0b0111u;
        } else {
            image = m;
        }
        sigma.push_back(*base->index_of(set_name(image)));
    }
    return Sfs::validate(gamma, base, sigma);
}

// Expected local h of a restriction with n = rank of the base interval and k = excess rank.
inline std::optional<LaurentPoly> local_table(int n, int k, long beta) {
    const LaurentPoly t = P("t"), t2 = P("t^2"), t3 = P("t^3"), b = LaurentPoly(static_cast<int>(beta));
    if (n == 0 && k == 0) return LaurentPoly(1);
    if (n == 0 && k == 1) return LaurentPoly(1) + t;
    if (n == 1 && k == 0) return LaurentPoly();
    if (n == 0 && k == 2) return LaurentPoly(1) + (b - 2) * t + t2;
    if (n == 1 && k == 1) return (b - 1) * t;
    if (n == 2 && k == 0) return b * t;
    if (n == 0 && k == 3) return LaurentPoly(1) + (b - 3) * t + (b - 3) * t2 + t3;
    if (n == 1 && k == 2) return (b - 1) * (t + t2);
    if (n == 2 && k == 1) return b * (t + t2);
    if (n == 3 && k == 0) return b * (t + t2);
    return std::nullopt;
}

inline std::optional<LaurentPoly> mixed_table(int n, int k, long beta, long mu, long nu) {
    const LaurentPoly u = P("u"), v = P("v"), uv = P("u*v");
    const LaurentPoly b = LaurentPoly(static_cast<int>(beta)), m = LaurentPoly(static_cast<int>(mu));
    if (n == 0 && k == 0) return LaurentPoly(1);
    if (n == 0 && k == 1) return u + v;
    if (n == 1 && k == 0) return LaurentPoly(1);
    if (n == 0 && k == 2) return u * u + (b - 2) * uv + v * v;
    if (n == 1 && k == 1) return u + v + (b - 1) * uv;
    if (n == 2 && k == 0) return LaurentPoly(1) + b * uv;
    if (n == 0 && k == 3) return u.pow(3) + (b - 3) * u * uv + (b - 3) * uv * v + v.pow(3);
    if (n == 1 && k == 2) return u * u + (m - 2) * uv + v * v + (b - 1) * uv * (u + v);
    if (n == 2 && k == 1) return u + v + (m - 2) * uv + b * uv * (u + v);
    if (n == 3 && k == 0)
        return LaurentPoly(1) + (m + LaurentPoly(static_cast<int>(nu)) - 3) * uv + b * uv * (u + v);
    return std::nullopt;
}

struct SmallCaseCount {
    int checked = 0;
    int mismatches = 0;
};

// Compares every restriction of small rank with the closed forms, counting
// beta, mu and nu directly.
inline SmallCaseCount count_small_cases(Sfs& s) {
    const RankedPoset& G = s.gamma();
    const RankedPoset& B = s.base();
    SmallCaseCount c;
    for (Elem y = 0; y < G.size(); ++y) {
        for (Elem x : B.up(s.sigma(y))) {
            const int n = B.rho(s.sigma(y), x);
            const int k = B.rank(s.sigma(y)) - G.rank(y);
            long beta = 0, mu = 0, nu = 0;
            for (Elem z : G.upper_covers(y)) {
                if (!s.below(z, x)) continue;
                if (s.sigma(z) == x) ++beta;
                if (B.rho(s.sigma(z), x) == 1) ++mu;
            }
            for (Elem w : B.upper_covers(s.sigma(y))) nu += B.leq(w, x);
            auto l = local_table(n, k, beta);
            auto h = mixed_table(n, k, beta, mu, nu);
            if (!l) continue;
            ++c.checked;
            if (!(s.local_h(x, y) == *l) || !(s.mixed_h(x, y) == *h)) ++c.mismatches;
        }
    }
    return c;
}

}  // namespace subdiv::oracles

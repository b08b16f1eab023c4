#include <functional>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "subdiv/kls.hpp"

using namespace subdiv;
using boost::multiprecision::cpp_rational;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

// Face poset of an m-gon.
RankedPoset polygon(int m) {
    std::vector<std::string> names{"empty", "P"};
    std::vector<int> rank{0, 3};
    std::vector<std::pair<Elem, Elem>> rel;
    for (int i = 0; i < m; ++i) {
        names.push_back("v" + std::to_string(i));
        rank.push_back(1);
    }
    for (int i = 0; i < m; ++i) {
        names.push_back("e" + std::to_string(i));
        rank.push_back(2);
    }
    for (int i = 0; i < m; ++i) {
        Elem v = 2 + static_cast<Elem>(i), e = 2 + static_cast<Elem>(m + i);
        Elem v_next = 2 + static_cast<Elem>((i + 1) % m);
        rel.emplace_back(0, v);
        rel.emplace_back(v, e);
        rel.emplace_back(v_next, e);
        rel.emplace_back(e, 1);
    }
    return RankedPoset::build(names, rel, rank);
}

PosetPtr ptr(RankedPoset p) { return std::make_shared<const RankedPoset>(std::move(p)); }

// Laurent polynomials in t^{1/2} over Q, keyed by doubled exponent.
using RatPoly = std::map<int, cpp_rational>;

RatPoly rmul(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) r[ea + eb] += ca * cb;
    return r;
}

// Projection onto negative powers along the symmetric part.
RatPoly split_off(const RatPoly& f) {
    RatPoly r;
    for (const auto& [e, c] : f) {
        if (e >= 0) continue;
        cpp_rational mirror = f.count(-e) ? f.at(-e) : cpp_rational(0);
        if (c - mirror != 0) r[e] = c - mirror;
    }
    for (const auto& [e, c] : f)
        if (e > 0 && !f.count(-e) && c != 0) r[-e] = -c;
    return r;
}

RatPoly q_power(int k) {
    RatPoly q{{1, 1}, {-1, -1}}, r{{0, 1}};
    for (int i = 0; i < k; ++i) r = rmul(r, q);
    return r;
}

// Chain-sum formula for the acceptability operator with 1/2 weights.
RatPoly gamma_by_chains(const RankedPoset& p, Elem x, Elem y) {
    RatPoly total;
    std::function<void(Elem, const RatPoly&, int)> walk = [&](Elem cur, const RatPoly& acc, int len) {
        if (cur == y) {
            cpp_rational w = 1;
            for (int i = 0; i < len; ++i) w *= cpp_rational(-1, 2);
            for (const auto& [e, c] : acc) total[e] += w * c;
            return;
        }
        for (Elem z : p.up(cur)) {
            if (z == cur || !p.leq(z, y)) continue;
            RatPoly next = len == 0 ? split_off(q_power(p.rho(cur, z))) : split_off(rmul(acc, q_power(p.rho(cur, z))));
            walk(z, next, len + 1);
        }
    };
    walk(x, RatPoly{{0, 1}}, 0);
    RatPoly cleaned;
    for (const auto& [e, c] : total)
        if (c != 0) cleaned[e] = c;
    return cleaned;
}

RatPoly to_rat(const LaurentPoly& p) {
    RatPoly r;
    for (const auto& [e, c] : p.terms()) r[e[0]] = cpp_rational(c);
    return r;
}

}  // namespace

TEST_CASE("kernel") {
    auto sq = ptr(polygon(4));
    IncidenceFunction k = kernel(sq);
    for (Elem x = 0; x < sq->size(); ++x) CHECK(k.at(x, x) == LaurentPoly(1));
    CHECK(is_kernel(k));
    CHECK_FALSE(is_kernel(kernel(ptr(chain_poset(2)))));
    CHECK(is_kernel(kernel(ptr(boolean_algebra(3)))));
}

TEST_CASE("g-polynomials") {
    for (int r = 0; r <= 5; ++r) CHECK(g_polynomial(boolean_algebra(r)) == LaurentPoly(1));
    CHECK(g_polynomial(polygon(4)) == P("1 + t"));
    for (int m = 3; m <= 8; ++m) CHECK(g_polynomial(polygon(m)) == LaurentPoly(1) + LaurentPoly(m - 3) * P("t"));
    CHECK_THROWS_AS(g_polynomial(chain_poset(2)), KlsError);
    // degree bound and constant term on every interval of a few posets
    for (const RankedPoset& b : {polygon(5), boolean_algebra(4), dual(polygon(6))}) {
        GTable table(ptr(b));
        for (Elem x = 0; x < b.size(); ++x)
            for (Elem y : b.up(x)) {
                const LaurentPoly& g = table.g(x, y);
                CHECK(g.coeff_t(0) == 1);
                if (b.rho(x, y) > 0) CHECK(g.max_twice(Var::t) < b.rho(x, y));
            }
    }
}

TEST_CASE("acceptability operator agrees with the chain-sum formula") {
    for (const RankedPoset& b : {polygon(4), polygon(5), boolean_algebra(3), dual(polygon(3))}) {
        auto p = ptr(b);
        IncidenceFunction g = gamma(p);
        for (Elem x = 0; x < b.size(); ++x)
            for (Elem y : b.up(x)) {
                if (x == y) continue;
                CHECK(to_rat(g.at(x, y)) == gamma_by_chains(b, x, y));
            }
    }
}

TEST_CASE("gamma, its inverse, acceptability") {
    auto sq = ptr(polygon(4));
    IncidenceFunction g = gamma(sq);
    IncidenceFunction gi = gamma_inverse(sq);
    CHECK(g * gi == IncidenceFunction::identity(sq));
    CHECK(gi * g == IncidenceFunction::identity(sq));
    CHECK(is_totally_acceptable(g));
    for (Elem x = 0; x < sq->size(); ++x) {
        CHECK(g.at(x, x) == LaurentPoly(1));
        CHECK(is_acceptable(PosetFunction::basis(sq, x) * g));
    }
    CHECK(is_acceptable(PosetFunction(sq)));
    // gamma^{-1} * conj(gamma) is the kernel
    CHECK(gi * g.involuted() == kernel(sq));

    auto b3 = ptr(boolean_algebra(3));
    IncidenceFunction gb = gamma(b3);
    for (Elem x = 0; x < b3->size(); ++x)
        for (Elem y : b3->up(x)) CHECK(gb.at(x, y) == LaurentPoly::t_half(-b3->rho(x, y)));
    CHECK(gamma(b3) * gamma_inverse(b3) == IncidenceFunction::identity(b3));
    CHECK_THROWS_AS(gamma(ptr(chain_poset(2))), KlsError);
}

TEST_CASE("h-polynomials") {
    CHECK(h_polynomial(boolean_algebra(0)) == LaurentPoly(1));
    for (const RankedPoset& b : {polygon(4), polygon(7), boolean_algebra(3)}) CHECK(h_polynomial(b) == g_polynomial(b));
    for (int r = 1; r <= 5; ++r) {
        RankedPoset b = boolean_algebra(r);
        std::vector<Elem> keep;
        for (Elem x = 0; x < b.size(); ++x)
            if (x != *b.top()) keep.push_back(x);
        LaurentPoly expect;
        for (int i = 0; i < r; ++i) expect += LaurentPoly::t_half(2 * i);
        CHECK(h_polynomial(b.induced(keep)) == expect);
    }
    for (int m = 3; m <= 7; ++m) {
        RankedPoset b = polygon(m);
        std::vector<Elem> keep;
        for (Elem x = 0; x < b.size(); ++x)
            if (x != *b.top()) keep.push_back(x);
        LaurentPoly g = g_polynomial(b);
        const int n = b.length();
        CHECK((LaurentPoly(1) - P("t")) * h_polynomial(b.induced(keep)) == g - reverse_t(g, n));
    }
    RankedPoset no_bottom = RankedPoset::build({"a", "b"}, {}, {0, 0});
    CHECK_THROWS_AS(h_polynomial(no_bottom), PosetError);
}

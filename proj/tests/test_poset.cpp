#include <set>

#include "doctest.h"
#include "subdiv/poset.hpp"

using namespace subdiv;

namespace {

// Face poset of the unit square: empty face, vertices a..d, edges, square.
RankedPoset square_faces() {
    std::vector<std::string> names{"e", "a", "b", "c", "d", "ab", "bc", "cd", "da", "abcd"};
    std::vector<std::pair<std::string, std::string>> rel{
        {"e", "a"},   {"e", "b"},   {"e", "c"},   {"e", "d"},    {"a", "ab"},   {"b", "ab"},
        {"b", "bc"},  {"c", "bc"},  {"c", "cd"},  {"d", "cd"},   {"d", "da"},   {"a", "da"},
        {"ab", "abcd"}, {"bc", "abcd"}, {"cd", "abcd"}, {"da", "abcd"}};
    std::unordered_map<std::string, int> rank;
    for (const auto& n : names) rank[n] = n == "e" ? 0 : n == "abcd" ? 3 : static_cast<int>(n.size());
    return RankedPoset::build_named(names, rel, rank);
}

// Direct count over every pair and every element of the interval.
bool eulerian_by_brute_force(const RankedPoset& p, int* intervals_seen) {
    int seen = 0;
    bool ok = true;
    for (Elem x = 0; x < p.size(); ++x) {
        for (Elem y = 0; y < p.size(); ++y) {
            if (!p.leq(x, y)) continue;
            ++seen;
            if (x == y) continue;
            int even = 0, odd = 0;
            for (Elem z = 0; z < p.size(); ++z)
                if (p.leq(x, z) && p.leq(z, y)) (p.rank(z) % 2 == 0 ? even : odd)++;
            ok = ok && even == odd;
        }
    }
    if (intervals_seen) *intervals_seen = seen;
    return ok;
}

}  // namespace

TEST_CASE("build validates order and ranks") {
    RankedPoset b3 = boolean_algebra(3);
    CHECK(b3.size() == 8);
    CHECK(b3.length() == 3);
    int rank0 = 0, rank1 = 0;
    for (Elem x = 0; x < b3.size(); ++x) {
        rank0 += b3.rank(x) == 0;
        rank1 += b3.rank(x) == 1;
    }
    CHECK(rank0 == 1);
    CHECK(rank1 == 3);
    RankedPoset c = chain_poset(2);
    CHECK(c.size() == 3);
    CHECK(c.leq(0, 2));

    try {
        RankedPoset::build({"x", "y"}, {{0, 1}, {1, 0}}, {0, 1});
        FAIL("cycle accepted");
    } catch (const PosetError& e) {
        CHECK(e.kind() == PosetError::Kind::Cycle);
    }
    try {
        RankedPoset::build({"x", "y"}, {{0, 1}}, {0, 2});
        FAIL("rank gap accepted");
    } catch (const PosetError& e) {
        CHECK(e.kind() == PosetError::Kind::RankInconsistency);
    }
    // a non-cover relation in the input is fine: it is implied
    RankedPoset r = RankedPoset::build({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}}, {0, 1, 2});
    CHECK(r.upper_covers(0).size() == 1);
    CHECK_THROWS_AS(boolean_algebra(-1), PosetError);
}

TEST_CASE("Eulerian predicates") {
    RankedPoset sq = square_faces();
    int intervals = 0;
    CHECK(eulerian_by_brute_force(sq, &intervals));
    CHECK(intervals == 35);
    CHECK(is_eulerian(sq));
    CHECK_FALSE(is_eulerian(chain_poset(2)));
    for (int r = 0; r <= 5; ++r) CHECK(is_eulerian(boolean_algebra(r)));
    CHECK(is_eulerian(dual(sq)));
    RankedPoset trunc = boolean_algebra(3).induced({0, 1, 2, 3, 4, 5, 6});  // drop the top
    CHECK(is_lower_eulerian(trunc));
    CHECK_FALSE(is_eulerian(trunc));
    CHECK(is_simplicial(trunc));
    CHECK_FALSE(is_simplicial(sq));
    CHECK(is_boolean(boolean_algebra(4)));
    CHECK_FALSE(is_boolean(sq));
}

TEST_CASE("every interval of an Eulerian poset is Eulerian") {
    RankedPoset sq = square_faces();
    for (Elem x = 0; x < sq.size(); ++x)
        for (Elem y : sq.up(x)) CHECK(is_eulerian(interval(sq, x, y)));
}

TEST_CASE("mobius values") {
    RankedPoset b4 = boolean_algebra(4);
    for (Elem x = 0; x < b4.size(); ++x) {
        CHECK(mobius(b4, x, x) == 1);
        for (Elem y : b4.up(x)) {
            // inclusion-exclusion: sum over subsets of y \ x of (-1)^{|.|} restricted to the full set
            int k = __builtin_popcountl(y & ~x);
            CHECK(mobius(b4, x, y) == ((k % 2) ? -1 : 1));
        }
    }
    RankedPoset sq = square_faces();
    for (Elem x = 0; x < sq.size(); ++x)
        for (Elem y : sq.up(x)) CHECK(mobius(sq, x, y) == ((sq.rho(x, y) % 2) ? -1 : 1));
    CHECK(mobius(chain_poset(2), 0, 2) == 0);
    CHECK_THROWS_AS(mobius(chain_poset(2), 2, 0), PosetError);
}

TEST_CASE("duality") {
    RankedPoset c = chain_poset(2);
    RankedPoset d = dual(c);
    CHECK(d.leq(2, 0));
    CHECK(d.rank(2) == 0);
    CHECK(same_order_by_name(dual(dual(square_faces())), square_faces()));
    RankedPoset b3 = boolean_algebra(3);
    // B_3 is self-dual via complement
    RankedPoset db = dual(b3);
    for (Elem x = 0; x < 8; ++x)
        for (Elem y = 0; y < 8; ++y) CHECK(db.leq(x, y) == b3.leq(7 - x, 7 - y));
}

TEST_CASE("intervals") {
    RankedPoset b3 = boolean_algebra(3);
    Elem one = *b3.index_of("{1}");
    Elem all = *b3.index_of("{1,2,3}");
    RankedPoset iv = interval(b3, one, all);
    CHECK(iv.size() == 4);
    CHECK(is_boolean(iv));
    CHECK(iv.length() == 2);
}

TEST_CASE("barycentric subdivision") {
    RankedPoset pt = boolean_algebra(0);
    CHECK(barycentric(pt).poset.size() == 1);

    RankedPoset b2 = boolean_algebra(2);
    // chains through the bottom enumerated by hand-rolled recursion
    std::set<std::vector<Elem>> chains;
    std::vector<std::vector<Elem>> todo{{*b2.bottom()}};
    while (!todo.empty()) {
        auto c = todo.back();
        todo.pop_back();
        chains.insert(c);
        for (Elem y = 0; y < b2.size(); ++y)
            if (b2.less(c.back(), y)) {
                auto d = c;
                d.push_back(y);
                todo.push_back(d);
            }
    }
    Barycentric bary = barycentric(b2);
    CHECK(chains.size() == 6);
    CHECK(bary.poset.size() == 6);
    CHECK(is_simplicial(bary.poset));
    CHECK(is_lower_eulerian(bary.poset));

    Barycentric b3 = barycentric(boolean_algebra(3));
    CHECK(is_simplicial(b3.poset));
    CHECK(b3.poset.size() == 1 + 7 + 12 + 6);
    // chains of nonempty subsets of [5]: sum over the top set T of the ordered Bell number of |T|
    std::vector<long> fubini{1};
    for (int n = 1; n <= 5; ++n) {
        long f = 0, c = 1;
        for (int k = 1; k <= n; ++k) {
            c = c * (n - k + 1) / k;
            f += c * fubini[static_cast<std::size_t>(n - k)];
        }
        fubini.push_back(f);
    }
    long expected = 0, c5 = 1;
    for (int j = 0; j <= 5; ++j) {
        expected += c5 * fubini[static_cast<std::size_t>(j)];
        c5 = c5 * (5 - j) / (j + 1);
    }
    CHECK(barycentric(boolean_algebra(5)).poset.size() == static_cast<std::size_t>(expected));

    RankedPoset no_bottom = RankedPoset::build({"a", "b"}, {}, {0, 0});
    CHECK_THROWS_AS(barycentric(no_bottom), PosetError);
}

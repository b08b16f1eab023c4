#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace subdiv {

class PosetError : public std::runtime_error {
public:
    enum class Kind { Cycle, RankInconsistency, UnknownElement, DuplicateElement, MissingBottom, NotComparable, Invalid };
    PosetError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

using Elem = std::size_t;

// Finite poset with a rank function r such that every cover x < y has
// r(y) = r(x) + 1. Immutable after construction.
class RankedPoset {
public:
    RankedPoset() = default;

    // relations: pairs (a, b) meaning a < b; need not be exactly the covers.
    static RankedPoset build(std::vector<std::string> names, const std::vector<std::pair<Elem, Elem>>& relations,
                             std::vector<int> rank);
    static RankedPoset build_named(const std::vector<std::string>& names,
                                   const std::vector<std::pair<std::string, std::string>>& relations,
                                   const std::unordered_map<std::string, int>& rank);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Elem x) const { return names_[x]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Elem> index_of(const std::string& name) const;
    Elem require(const std::string& name) const;

    int rank(Elem x) const { return rank_[x]; }
    int rho(Elem x, Elem y) const { return rank_[y] - rank_[x]; }
    bool leq(Elem x, Elem y) const { return up_bits_[x].test(y); }
    bool less(Elem x, Elem y) const { return x != y && leq(x, y); }

    // Elements >= x (resp. <= x), sorted by rank then index.
    const std::vector<Elem>& up(Elem x) const { return up_[x]; }
    const std::vector<Elem>& down(Elem x) const { return down_[x]; }
    const std::vector<Elem>& upper_covers(Elem x) const { return upper_covers_[x]; }
    const std::vector<Elem>& lower_covers(Elem x) const { return lower_covers_[x]; }
    const boost::dynamic_bitset<>& up_bits(Elem x) const { return up_bits_[x]; }
    const boost::dynamic_bitset<>& down_bits(Elem x) const { return down_bits_[x]; }
    // All elements sorted by rank then index.
    const std::vector<Elem>& by_rank() const { return by_rank_; }

    // Elements of [x, y] sorted by rank; empty if x is not below y.
    std::vector<Elem> interval(Elem x, Elem y) const;

    std::optional<Elem> bottom() const { return bottom_; }
    std::optional<Elem> top() const { return top_; }
    Elem require_bottom() const;
    Elem require_top() const;
    int min_rank() const { return min_rank_; }
    int max_rank() const { return max_rank_; }
    // Length of the longest chain measured from the bottom element.
    int length() const { return max_rank_ - min_rank_; }
    std::size_t cover_count() const;

    // Sub-poset on the given elements with inherited order and rank.
    RankedPoset induced(const std::vector<Elem>& elems) const;

private:
    void finish();

    std::vector<std::string> names_;
    std::unordered_map<std::string, Elem> index_;
    std::vector<int> rank_;
    std::vector<boost::dynamic_bitset<>> up_bits_, down_bits_;
    std::vector<std::vector<Elem>> up_, down_, upper_covers_, lower_covers_;
    std::vector<Elem> by_rank_;
    std::optional<Elem> bottom_, top_;
    int min_rank_ = 0, max_rank_ = 0;
};

bool is_locally_eulerian(const RankedPoset& p);
bool is_eulerian(const RankedPoset& p);
bool is_lower_eulerian(const RankedPoset& p);
// Every lower interval [0, y] is a Boolean algebra.
bool is_simplicial(const RankedPoset& p);
bool is_boolean(const RankedPoset& p);
bool is_boolean_interval(const RankedPoset& p, Elem x, Elem y);

long mobius(const RankedPoset& p, Elem x, Elem y);

RankedPoset dual(const RankedPoset& p);
RankedPoset boolean_algebra(int r);
RankedPoset interval(const RankedPoset& p, Elem x, Elem y);
RankedPoset chain_poset(int length);

// Chains 0 = x_0 < x_1 < ... < x_k ordered by inclusion, with the map sending a
// chain to its top element.
struct Barycentric {
    RankedPoset poset;
    std::vector<Elem> sigma;
    std::vector<std::vector<Elem>> chains;
};
Barycentric barycentric(const RankedPoset& p);

// Same elements and order, whether the bijection by name is an order isomorphism.
bool same_order_by_name(const RankedPoset& a, const RankedPoset& b);

}  // namespace subdiv

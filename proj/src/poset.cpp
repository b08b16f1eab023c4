#include "subdiv/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace subdiv {

RankedPoset RankedPoset::build(std::vector<std::string> names, const std::vector<std::pair<Elem, Elem>>& relations,
                               std::vector<int> rank) {
    const std::size_t n = names.size();
    if (rank.size() != n) throw PosetError(PosetError::Kind::Invalid, "rank list length differs from element count");
    RankedPoset p;
    p.names_ = std::move(names);
    p.rank_ = std::move(rank);
    for (Elem i = 0; i < n; ++i) {
        if (!p.index_.emplace(p.names_[i], i).second)
            throw PosetError(PosetError::Kind::DuplicateElement, "duplicate element '" + p.names_[i] + "'");
    }

    std::vector<std::vector<Elem>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (auto [a, b] : relations) {
        if (a >= n || b >= n) throw PosetError(PosetError::Kind::UnknownElement, "relation refers to unknown element");
        if (a == b) throw PosetError(PosetError::Kind::Cycle, "cycle through '" + p.names_[a] + "'");
        succ[a].push_back(b);
        ++indeg[b];
    }
    std::vector<Elem> topo;
    topo.reserve(n);
    std::queue<Elem> ready;
    for (Elem i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(i);
    while (!ready.empty()) {
        Elem x = ready.front();
        ready.pop();
        topo.push_back(x);
        for (Elem y : succ[x])
            if (--indeg[y] == 0) ready.push(y);
    }
    if (topo.size() != n) {
        for (Elem i = 0; i < n; ++i)
            if (indeg[i] != 0) throw PosetError(PosetError::Kind::Cycle, "cycle through '" + p.names_[i] + "'");
    }

    p.up_bits_.assign(n, boost::dynamic_bitset<>(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        Elem x = *it;
        p.up_bits_[x].set(x);
        for (Elem y : succ[x]) p.up_bits_[x] |= p.up_bits_[y];
    }
    p.down_bits_.assign(n, boost::dynamic_bitset<>(n));
    for (Elem x = 0; x < n; ++x)
        for (auto y = p.up_bits_[x].find_first(); y != boost::dynamic_bitset<>::npos; y = p.up_bits_[x].find_next(y))
            p.down_bits_[y].set(x);

    p.finish();

    for (Elem x = 0; x < n; ++x) {
        for (Elem y : p.upper_covers_[x]) {
            if (p.rank_[y] != p.rank_[x] + 1)
                throw PosetError(PosetError::Kind::RankInconsistency,
                                 "cover '" + p.names_[x] + "' < '" + p.names_[y] + "' has rank gap " +
                                     std::to_string(p.rank_[y] - p.rank_[x]));
        }
    }
    return p;
}

RankedPoset RankedPoset::build_named(const std::vector<std::string>& names,
                                     const std::vector<std::pair<std::string, std::string>>& relations,
                                     const std::unordered_map<std::string, int>& rank) {
    std::unordered_map<std::string, Elem> idx;
    for (Elem i = 0; i < names.size(); ++i) idx.emplace(names[i], i);
    auto lookup = [&](const std::string& s) {
        auto it = idx.find(s);
        if (it == idx.end()) throw PosetError(PosetError::Kind::UnknownElement, "unknown element '" + s + "'");
        return it->second;
    };
    std::vector<std::pair<Elem, Elem>> rel;
    rel.reserve(relations.size());
    for (const auto& [a, b] : relations) rel.emplace_back(lookup(a), lookup(b));
    std::vector<int> r(names.size());
    for (Elem i = 0; i < names.size(); ++i) {
        auto it = rank.find(names[i]);
        if (it == rank.end()) throw PosetError(PosetError::Kind::Invalid, "no rank given for '" + names[i] + "'");
        r[i] = it->second;
    }
    return build(names, rel, std::move(r));
}

void RankedPoset::finish() {
    const std::size_t n = names_.size();
    if (index_.empty())
        for (Elem i = 0; i < n; ++i) index_.emplace(names_[i], i);
    by_rank_.resize(n);
    std::iota(by_rank_.begin(), by_rank_.end(), Elem{0});
    std::stable_sort(by_rank_.begin(), by_rank_.end(), [&](Elem a, Elem b) { return rank_[a] < rank_[b]; });
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[by_rank_[i]] = i;

    up_.assign(n, {});
    down_.assign(n, {});
    for (Elem x : by_rank_) {
        for (auto y = up_bits_[x].find_first(); y != boost::dynamic_bitset<>::npos; y = up_bits_[x].find_next(y)) {
            up_[x].push_back(y);
            down_[y].push_back(x);
        }
    }
    for (Elem x = 0; x < n; ++x)
        std::sort(up_[x].begin(), up_[x].end(), [&](Elem a, Elem b) { return pos[a] < pos[b]; });

    upper_covers_.assign(n, {});
    lower_covers_.assign(n, {});
    for (Elem x = 0; x < n; ++x) {
        boost::dynamic_bitset<> strict = up_bits_[x];
        strict.reset(x);
        for (Elem y : up_[x]) {
            if (y == x) continue;
            boost::dynamic_bitset<> between = strict & down_bits_[y];
            if (between.count() == 1) {
                upper_covers_[x].push_back(y);
                lower_covers_[y].push_back(x);
            }
        }
    }

    bottom_.reset();
    top_.reset();
    for (Elem x = 0; x < n; ++x) {
        if (up_[x].size() == n) bottom_ = x;
        if (down_[x].size() == n) top_ = x;
    }
    if (n > 0) {
        min_rank_ = *std::min_element(rank_.begin(), rank_.end());
        max_rank_ = *std::max_element(rank_.begin(), rank_.end());
    } else {
        min_rank_ = max_rank_ = 0;
    }
}

std::optional<Elem> RankedPoset::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Elem RankedPoset::require(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw PosetError(PosetError::Kind::UnknownElement, "unknown element '" + name + "'");
    return *i;
}

Elem RankedPoset::require_bottom() const {
    if (!bottom_) throw PosetError(PosetError::Kind::MissingBottom, "poset has no minimum element");
    return *bottom_;
}

Elem RankedPoset::require_top() const {
    if (!top_) throw PosetError(PosetError::Kind::Invalid, "poset has no maximum element");
    return *top_;
}

std::size_t RankedPoset::cover_count() const {
    std::size_t c = 0;
    for (const auto& v : upper_covers_) c += v.size();
    return c;
}

std::vector<Elem> RankedPoset::interval(Elem x, Elem y) const {
    std::vector<Elem> out;
    if (!leq(x, y)) return out;
    for (Elem z : up_[x])
        if (down_bits_[y].test(z)) out.push_back(z);
    return out;
}

RankedPoset RankedPoset::induced(const std::vector<Elem>& elems) const {
    RankedPoset p;
    const std::size_t m = elems.size();
    p.names_.reserve(m);
    p.rank_.reserve(m);
    for (Elem e : elems) {
        p.names_.push_back(names_[e]);
        p.rank_.push_back(rank_[e]);
    }
    p.up_bits_.assign(m, boost::dynamic_bitset<>(m));
    p.down_bits_.assign(m, boost::dynamic_bitset<>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (leq(elems[i], elems[j])) {
                p.up_bits_[i].set(j);
                p.down_bits_[j].set(i);
            }
        }
    }
    p.finish();
    return p;
}

namespace {

bool balanced(const RankedPoset& p, Elem x, Elem y, const boost::dynamic_bitset<>& even) {
    boost::dynamic_bitset<> iv = p.up_bits(x) & p.down_bits(y);
    std::size_t total = iv.count();
    std::size_t ev = (iv & even).count();
    return 2 * ev == total;
}

}  // namespace

bool is_locally_eulerian(const RankedPoset& p) {
    boost::dynamic_bitset<> even(p.size());
    for (Elem x = 0; x < p.size(); ++x)
        if (p.rank(x) % 2 == 0) even.set(x);
    for (Elem x = 0; x < p.size(); ++x)
        for (Elem y : p.up(x))
            if (y != x && !balanced(p, x, y, even)) return false;
    return true;
}

bool is_eulerian(const RankedPoset& p) { return p.bottom() && p.top() && is_locally_eulerian(p); }

bool is_lower_eulerian(const RankedPoset& p) { return p.bottom() && is_locally_eulerian(p); }

bool is_boolean_interval(const RankedPoset& p, Elem x, Elem y) {
    if (!p.leq(x, y)) return false;
    const int k = p.rho(x, y);
    if (k > 30) return false;
    std::vector<Elem> iv = p.interval(x, y);
    if (iv.size() != (std::size_t{1} << k)) return false;
    std::vector<Elem> atoms;
    for (Elem z : iv)
        if (p.rho(x, z) == 1) atoms.push_back(z);
    if (atoms.size() != static_cast<std::size_t>(k)) return false;
    std::map<Elem, unsigned long> mask;
    std::vector<bool> seen(std::size_t{1} << k, false);
    for (Elem z : iv) {
        unsigned long m = 0;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (p.leq(atoms[i], z)) m |= 1UL << i;
        if (seen[m] || __builtin_popcountl(m) != p.rho(x, z)) return false;
        seen[m] = true;
        mask[z] = m;
    }
    for (Elem a : iv)
        for (Elem b : iv)
            if (p.leq(a, b) != ((mask[a] & ~mask[b]) == 0)) return false;
    return true;
}

bool is_simplicial(const RankedPoset& p) {
    if (!p.bottom()) return false;
    Elem b = *p.bottom();
    for (Elem y = 0; y < p.size(); ++y)
        if (!is_boolean_interval(p, b, y)) return false;
    return true;
}

bool is_boolean(const RankedPoset& p) {
    return p.bottom() && p.top() && is_boolean_interval(p, *p.bottom(), *p.top());
}

long mobius(const RankedPoset& p, Elem x, Elem y) {
    if (!p.leq(x, y)) throw PosetError(PosetError::Kind::NotComparable, "mobius requires x <= y");
    std::vector<Elem> iv = p.interval(x, y);
    std::unordered_map<Elem, long> mu;
    for (Elem z : iv) {
        if (z == x) {
            mu[z] = 1;
            continue;
        }
        long s = 0;
        for (Elem w : iv) {
            if (w != z && p.leq(w, z)) s += mu[w];
        }
        mu[z] = -s;
    }
    return mu[y];
}

RankedPoset dual(const RankedPoset& p) {
    std::vector<std::pair<Elem, Elem>> rel;
    for (Elem x = 0; x < p.size(); ++x)
        for (Elem y : p.upper_covers(x)) rel.emplace_back(y, x);
    std::vector<int> r(p.size());
    for (Elem x = 0; x < p.size(); ++x) r[x] = p.max_rank() - p.rank(x);
    return RankedPoset::build(p.names(), rel, std::move(r));
}

RankedPoset boolean_algebra(int r) {
    if (r < 0) throw PosetError(PosetError::Kind::Invalid, "boolean algebra rank must be non-negative");
    if (r > 20) throw PosetError(PosetError::Kind::Invalid, "boolean algebra rank too large");
    const std::size_t n = std::size_t{1} << r;
    std::vector<std::string> names(n);
    std::vector<int> rank(n);
    std::vector<std::pair<Elem, Elem>> rel;
    for (std::size_t m = 0; m < n; ++m) {
        std::string s = "{";
        bool first = true;
        for (int i = 0; i < r; ++i) {
            if (m & (std::size_t{1} << i)) {
                if (!first) s += ",";
                s += std::to_string(i + 1);
                first = false;
            } else {
                rel.emplace_back(m, m | (std::size_t{1} << i));
            }
        }
        names[m] = s + "}";
        rank[m] = __builtin_popcountl(m);
    }
    return RankedPoset::build(std::move(names), rel, std::move(rank));
}

RankedPoset interval(const RankedPoset& p, Elem x, Elem y) {
    if (!p.leq(x, y)) throw PosetError(PosetError::Kind::NotComparable, "interval requires x <= y");
    return p.induced(p.interval(x, y));
}

RankedPoset chain_poset(int length) {
    std::vector<std::string> names;
    std::vector<int> rank;
    std::vector<std::pair<Elem, Elem>> rel;
    for (int i = 0; i <= length; ++i) {
        names.push_back(std::to_string(i));
        rank.push_back(i);
        if (i > 0) rel.emplace_back(i - 1, i);
    }
    return RankedPoset::build(std::move(names), rel, std::move(rank));
}

Barycentric barycentric(const RankedPoset& p) {
    const Elem zero = p.require_bottom();
    Barycentric out;
    std::map<std::vector<Elem>, Elem> index;
    std::vector<std::vector<Elem>> stack{{zero}};
    while (!stack.empty()) {
        std::vector<Elem> c = std::move(stack.back());
        stack.pop_back();
        index.emplace(c, 0);
        for (Elem y : p.up(c.back())) {
            if (y == c.back()) continue;
            auto d = c;
            d.push_back(y);
            stack.push_back(std::move(d));
        }
    }
    for (auto& [c, i] : index) {
        i = out.chains.size();
        out.chains.push_back(c);
    }
    std::vector<std::string> names;
    std::vector<int> rank;
    std::vector<std::pair<Elem, Elem>> rel;
    for (Elem i = 0; i < out.chains.size(); ++i) {
        const auto& c = out.chains[i];
        std::string s;
        for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "<" : "") + p.name(c[k]);
        names.push_back("(" + s + ")");
        rank.push_back(static_cast<int>(c.size()) - 1);
        out.sigma.push_back(c.back());
        // covers: insert one element strictly above 0 somewhere in the chain
        for (std::size_t k = 0; k < c.size(); ++k) {
            Elem lo = c[k];
            for (Elem z : p.up(lo)) {
                if (z == lo) continue;
                if (k + 1 < c.size() && !p.less(z, c[k + 1])) continue;
                auto d = c;
                d.insert(d.begin() + static_cast<long>(k) + 1, z);
                rel.emplace_back(i, index.at(d));
            }
        }
    }
    out.poset = RankedPoset::build(std::move(names), rel, std::move(rank));
    return out;
}

bool same_order_by_name(const RankedPoset& a, const RankedPoset& b) {
    if (a.size() != b.size()) return false;
    std::vector<Elem> map(a.size());
    for (Elem x = 0; x < a.size(); ++x) {
        auto j = b.index_of(a.name(x));
        if (!j) return false;
        map[x] = *j;
    }
    for (Elem x = 0; x < a.size(); ++x)
        for (Elem y = 0; y < a.size(); ++y)
            if (a.leq(x, y) != b.leq(map[x], map[y])) return false;
    return true;
}

}  // namespace subdiv

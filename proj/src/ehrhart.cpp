#include "subdiv/ehrhart.hpp"

#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace subdiv {

namespace {

LaurentPoly var_power(Var x, int e) { return LaurentPoly::power(x, 2 * e); }

long long checked_ll(const Integer& x) {
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        throw GeometryError(GeometryError::Kind::TooLarge, "coordinate exceeds 64 bits");
    return static_cast<long long>(x);
}

LaurentPoly signed_term(const LaurentPoly& p, int rho) { return rho % 2 == 0 ? p : -p; }

}  // namespace

std::vector<Integer> ehrhart_counts(const LatticePolytope& p, long up_to) {
    std::vector<Integer> counts;
    for (long m = 0; m <= up_to; ++m) counts.push_back(p.is_empty() ? Integer(m == 0) : p.count_points(m));
    return counts;
}

Rational interpolate(const std::vector<Integer>& values, long x) {
    const long n = static_cast<long>(values.size());
    Rational sum = 0;
    for (long i = 0; i < n; ++i) {
        Rational term = Rational(values[static_cast<std::size_t>(i)]);
        for (long j = 0; j < n; ++j)
            if (j != i) term *= Rational(x - j) / Rational(i - j);
        sum += term;
    }
    return sum;
}

LaurentPoly hstar_from_counts(const std::vector<Integer>& counts, int dim) {
    if (dim < 0) return 1;
    LaurentPoly h;
    for (int j = 0; j <= dim; ++j) {
        Integer c = 0;
        for (int i = 0; i <= j; ++i) {
            const Integer term = binomial(dim + 1, i) * counts[static_cast<std::size_t>(j - i)];
            c += i % 2 == 0 ? term : Integer(-term);
        }
        if (c != 0) h += LaurentPoly::monomial(c, {2 * j, 0, 0, 0});
    }
    return h;
}

std::size_t hstar_cache_limit() {
    static const std::size_t limit = [] {
        const char* env = std::getenv("SUBDIV_HSTAR_CACHE");
        if (!env || !*env) return kDefaultHstarCacheLimit;
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        return *end == '\0' ? static_cast<std::size_t>(v) : kDefaultHstarCacheLimit;
    }();
    return limit;
}

LaurentPoly hstar(const LatticePolytope& p) {
    static std::mutex mutex;
    static std::map<std::vector<IntVec>, LaurentPoly> cache;
    if (p.is_empty()) return 1;
    const std::size_t limit = hstar_cache_limit();
    if (limit > 0) {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(p.vertices()); it != cache.end()) return it->second;
    }
    LaurentPoly h = hstar_from_counts(ehrhart_counts(p, p.dim()), p.dim());
    if (limit == 0) return h;
    std::lock_guard lock(mutex);
    if (cache.size() >= limit) cache.clear();
    cache.emplace(p.vertices(), h);
    return h;
}

BoxOracle hstar_box_oracle(const LatticePolytope& simplex) {
    if (simplex.is_empty()) return {1, 1};
    if (!simplex.is_simplex()) throw GeometryError(GeometryError::Kind::Dimension, "box oracle needs a simplex");
    const std::size_t n = simplex.vertices().size();
    const std::size_t ambient = simplex.ambient_dim() + 1;

    // columns (v_i, 1)
    IntMatrix columns;
    for (const auto& v : simplex.vertices()) {
        IntVec c = v;
        c.push_back(1);
        columns.push_back(std::move(c));
    }
    const std::vector<std::size_t> pivots = reduced_echelon(to_rational(columns), ambient).pivots;
    IntMatrix square(n, IntVec(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) square[j][i] = columns[i][pivots[j]];
    Integer det = determinant(square);
    const RatMatrix inv = *inverse(to_rational(square));
    if (det < 0) det = -det;
    const long long den = checked_ll(det);
    std::vector<std::vector<long long>> adj(n, std::vector<long long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) adj[i][j] = checked_ll(numerator(inv[i][j] * Rational(det)));
    std::vector<std::vector<long long>> cols(n, std::vector<long long>(ambient));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < ambient; ++k) cols[i][k] = checked_ll(columns[i][k]);

    std::vector<long long> lo(n, 0), hi(n, 0);
    double boxes = 1;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const long long a = cols[i][pivots[j]];
            (a < 0 ? lo[j] : hi[j]) += a;
        }
        boxes *= static_cast<double>(hi[j] - lo[j] + 1);
    }
    if (boxes > 1e9) throw GeometryError(GeometryError::Kind::TooLarge, "parallelepiped too large to scan");

    std::vector<bool> is_pivot(ambient, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::map<int, Integer> open, half_open;
    std::vector<long long> w = lo;
    std::vector<__int128> num(n);
    while (true) {
        bool inside = true;
        bool interior = true;
        for (std::size_t i = 0; i < n && inside; ++i) {
            __int128 s = 0;
            for (std::size_t j = 0; j < n; ++j) s += static_cast<__int128>(adj[i][j]) * w[j];
            num[i] = s;
            inside = s >= 0 && s < den;
            interior = interior && s > 0;
        }
        for (std::size_t k = 0; k < ambient && inside; ++k) {
            if (is_pivot[k]) continue;
            __int128 s = 0;
            for (std::size_t i = 0; i < n; ++i) s += static_cast<__int128>(cols[i][k]) * num[i];
            inside = s % den == 0;
        }
        if (inside) {
            __int128 total = 0;
            for (std::size_t i = 0; i < n; ++i) total += num[i];
            if (total % den == 0) {
                const int height = static_cast<int>(total / den);
                half_open[height] += 1;
                if (interior) open[height] += 1;
            }
        }
        std::size_t j = 0;
        while (j < n && w[j] == hi[j]) {
            w[j] = lo[j];
            ++j;
        }
        if (j == n) break;
        ++w[j];
    }
    BoxOracle r;
    for (const auto& [k, c] : open) r.local += LaurentPoly::monomial(c, {2 * k, 0, 0, 0});
    for (const auto& [k, c] : half_open) r.hstar += LaurentPoly::monomial(c, {2 * k, 0, 0, 0});
    return r;
}

PolytopeInvariants::PolytopeInvariants(LatticePolytope p) : PolytopeInvariants(p, face_lattice(p)) {}

PolytopeInvariants::PolytopeInvariants(LatticePolytope p, FaceLattice faces)
    : polytope_(std::move(p)), faces_(std::move(faces)) {
    const RankedPoset& B = *faces_.poset;
    top_ = B.require_top();
    g_ = std::make_unique<GTable>(faces_.poset);
    hstar_.resize(B.size());
    local_.resize(B.size());
    for (Elem q : B.by_rank()) {
        hstar_[q] = subdiv::hstar(faces_.faces[q]);
        for (Elem r : B.down(q)) local_[q] += signed_term(hstar_[r] * g_->g_dual(r, q), B.rho(r, q));
    }
}

LaurentPoly PolytopeInvariants::mixed_hstar(Elem q) {
    const RankedPoset& B = *faces_.poset;
    LaurentPoly sum;
    for (Elem r : B.down(q)) {
        if (local_[r].is_zero()) continue;
        sum += var_power(Var::v, B.rank(r)) * t_to_u_over_v(local_[r]) * t_to_uv(g_->g(r, q));
    }
    return sum;
}

LaurentPoly local_hstar(const LatticePolytope& p) { return PolytopeInvariants(p).local_hstar(); }

LaurentPoly mixed_hstar(const LatticePolytope& p) { return PolytopeInvariants(p).mixed_hstar(); }

std::vector<LaurentPoly> cell_local_hstar(const CellComplex& c, GTable& cell_g,
                                          const std::vector<LaurentPoly>& cell_hstar) {
    const RankedPoset& G = *c.poset();
    std::vector<LaurentPoly> local(G.size());
    for (Elem f = 0; f < G.size(); ++f)
        for (Elem e : G.down(f)) local[f] += signed_term(cell_hstar[e] * cell_g.g_dual(e, f), G.rho(e, f));
    return local;
}

LaurentPoly limit_mixed_over(Sfs& map, const std::vector<LaurentPoly>& source_local, Elem x, bool local) {
    const RankedPoset& G = map.gamma();
    LaurentPoly sum;
    for (Elem y = 0; y < G.size(); ++y) {
        if (source_local[y].is_zero() || !map.below(y, x)) continue;
        const LaurentPoly& link = local ? map.local_h(x, y) : map.h_restricted(x, y);
        if (link.is_zero()) continue;
        sum += var_power(Var::v, G.rank(y)) * t_to_u_over_v(source_local[y]) * t_to_uv(link);
    }
    return sum;
}

SubdivisionInvariants::SubdivisionInvariants(CellComplex c)
    : complex_(std::move(c)), sfs_(complex_.to_sfs()), base_(complex_.polytope(), complex_.polytope_faces()) {
    const RankedPoset& G = *complex_.poset();
    cell_hstar_.resize(G.size());
    for (Elem f = 0; f < G.size(); ++f) cell_hstar_[f] = hstar(complex_.element(f));
    cell_local_ = cell_local_hstar(complex_, sfs_.gamma_g(), cell_hstar_);
    const std::size_t faces = base_.poset().size();
    limit_.resize(faces);
    local_limit_.resize(faces);
    refined_.resize(faces);
}

const LaurentPoly& SubdivisionInvariants::limit_mixed(Elem q) {
    if (!limit_[q]) limit_[q] = limit_mixed_over(sfs_, cell_local_, q, false);
    return *limit_[q];
}

const LaurentPoly& SubdivisionInvariants::local_limit_mixed(Elem q) {
    if (!local_limit_[q]) local_limit_[q] = limit_mixed_over(sfs_, cell_local_, q, true);
    return *local_limit_[q];
}

const LaurentPoly& SubdivisionInvariants::refined(Elem q) {
    if (!refined_[q]) {
        const RankedPoset& B = base_.poset();
        LaurentPoly sum;
        for (Elem r : B.down(q)) {
            const LaurentPoly& l = local_limit_mixed(r);
            if (!l.is_zero()) sum += var_power(Var::w, B.rank(r)) * l * t_to_uvw2(base_.g().g(r, q));
        }
        refined_[q] = std::move(sum);
    }
    return *refined_[q];
}

namespace {

// Reads entries[p][q] = coefficient of u^(p+1) v^(q+1) w^(extra_w), requiring
// that these account for all of p.
std::vector<std::vector<Integer>> read_table(const LaurentPoly& p, std::size_t size, int w_exp) {
    std::vector<std::vector<Integer>> entries(size, std::vector<Integer>(size));
    LaurentPoly rebuilt;
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            const LaurentPoly::Exponents e{0, 2 * static_cast<int>(a + 1), 2 * static_cast<int>(b + 1), 2 * w_exp};
            entries[a][b] = p.coeff(e);
            if (entries[a][b] != 0) rebuilt += LaurentPoly::monomial(entries[a][b], e);
        }
    if (!(rebuilt == p)) throw LaurentError("polynomial is not of diamond shape: " + p.to_string());
    return entries;
}

}  // namespace

Diamond hstar_diamond(const LaurentPoly& limit_mixed, int dim) {
    Diamond d;
    d.kind = Diamond::Kind::hstar;
    d.entries = read_table(limit_mixed - 1, static_cast<std::size_t>(std::max(dim, 0)), 0);
    return d;
}

Diamond local_hstar_diamond(const LaurentPoly& local_limit_mixed, int dim) {
    Diamond d;
    d.kind = Diamond::Kind::local;
    if (dim < 0) {
        if (!(local_limit_mixed == 1)) throw LaurentError("the empty polytope has local limit mixed h* equal to 1");
        return d;
    }
    d.entries = read_table(local_limit_mixed, static_cast<std::size_t>(dim), 0);
    return d;
}

std::vector<Diamond> r_local_diamonds(const LaurentPoly& refined, int dim) {
    std::vector<Diamond> layers;
    LaurentPoly rest = refined - 1;
    for (int r = 0; r < dim; ++r) {
        Diamond d;
        d.kind = Diamond::Kind::r_local;
        d.layer = r;
        const LaurentPoly layer = slice(rest, Var::w, 2 * (r + 2));
        d.entries = read_table(layer, static_cast<std::size_t>(r + 1), r + 2);
        rest -= layer;
        layers.push_back(std::move(d));
    }
    if (!rest.is_zero()) throw LaurentError("refined polynomial has terms outside the r-local tables: " + rest.to_string());
    return layers;
}

const char* to_string(Diamond::Kind kind) {
    switch (kind) {
        case Diamond::Kind::hstar: return "hstar";
        case Diamond::Kind::local: return "local";
        case Diamond::Kind::r_local: return "r-local";
    }
    return "?";
}

std::string render_text(const Diamond& d) {
    const std::size_t n = d.size();
    if (n == 0) return "1\n";
    std::size_t width = 1;
    for (const auto& row : d.entries)
        for (const auto& x : row) width = std::max(width, x.str().size());
    std::ostringstream out;
    const int span = static_cast<int>(n) - 1;
    for (int height = 2 * span; height >= 0; --height) {
        std::string line;
        for (int x = -span; x <= span; ++x) {
            std::string cell;
            if ((x + height) % 2 == 0) {
                const int p = (height - x) / 2, q = (height + x) / 2;
                if (p >= 0 && q >= 0 && p <= span && q <= span)
                    cell = d.at(static_cast<std::size_t>(p), static_cast<std::size_t>(q)).str();
            }
            if (x > -span) line += ' ';
            line += std::string(width - cell.size(), ' ') + cell;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
    return out.str();
}

std::string render_svg(const Diamond& d) {
    constexpr int step = 40, margin = 30;
    const int n = static_cast<int>(d.size());
    const int cells = std::max(2 * n - 1, 1);
    const int side = cells * step + 2 * margin;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
        << "\" viewBox=\"0 0 " << side << ' ' << side << "\">\n";
    out << "<g font-family=\"monospace\" font-size=\"16\" text-anchor=\"middle\">\n";
    if (n == 0) {
        out << "<text x=\"" << side / 2 << "\" y=\"" << side / 2 << "\">1</text>\n";
    } else {
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const int x = margin + (q - p + n - 1) * step + step / 2;
                const int y = margin + (2 * (n - 1) - (p + q)) * step + step / 2;
                out << "<text x=\"" << x << "\" y=\"" << y << "\" data-p=\"" << p << "\" data-q=\"" << q << "\">"
                    << d.at(static_cast<std::size_t>(p), static_cast<std::size_t>(q)).str() << "</text>\n";
            }
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

LaurentPoly refined_from_small_terms(SubdivisionInvariants& s) {
    const int dim = s.dim();
    if (dim > 3) throw GeometryError(GeometryError::Kind::Dimension, "small-term formulas cover dimension at most 3");
    if (dim <= 0) return 1;
    const CellComplex& c = s.complex();
    const RankedPoset& G = *c.poset();
    const RankedPoset& B = s.base().poset();
    // interior[q][r]: interior points of cells of dimension q whose carrier has dimension r
    std::vector<std::vector<Integer>> interior(static_cast<std::size_t>(dim + 1),
                                               std::vector<Integer>(static_cast<std::size_t>(dim + 1)));
    for (Elem f = 0; f < G.size(); ++f) {
        if (G.rank(f) == 0) continue;
        const auto q = static_cast<std::size_t>(G.rank(f) - 1);
        const auto r = static_cast<std::size_t>(B.rank(c.carrier(f)) - 1);
        interior[q][r] += c.element(f).interior_count(1);
    }
    auto cells_of_dim = [&](int q, int r) { return interior[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)]; };
    auto low_cells = [&](int r) { return cells_of_dim(0, r) + cells_of_dim(1, r); };

    LaurentPoly sum = 1;
    Integer total = 1;
    std::optional<std::array<int, 3>> unknown;
    auto place = [&](int p, int q, int r, const Integer& value) {
        total += value;
        if (value != 0) sum += LaurentPoly::monomial(value, {0, 2 * (p + 1), 2 * (q + 1), 2 * (r + 2)});
    };
    for (int r = 0; r < dim; ++r)
        for (int p = 0; p <= r; ++p)
            for (int q = 0; q <= r; ++q) {
                if (r == 0) {
                    Integer low = low_cells(0) + low_cells(1);
                    place(p, q, r, low - (dim + 1));
                } else if ((p == 0 && q == 0) || (p == r && q == r)) {
                    place(p, q, r, low_cells(r + 1));
                } else if (p == 0 || q == 0) {
                    place(p, q, r, cells_of_dim(p + q + 1, r + 1));
                } else if (p == r || q == r) {
                    place(p, q, r, cells_of_dim(2 * r - p - q + 1, r + 1));
                } else {
                    unknown = std::array<int, 3>{p, q, r};
                }
            }
    if (unknown) place((*unknown)[0], (*unknown)[1], (*unknown)[2], s.complex().polytope().normalized_volume() - total);
    return sum;
}

}  // namespace subdiv

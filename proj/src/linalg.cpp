#include "subdiv/linalg.hpp"

#include <boost/integer/common_factor.hpp>

namespace subdiv {

using boost::multiprecision::abs;

RatVec to_rational(const IntVec& v) {
    RatVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_rational(row));
    return r;
}

Echelon reduced_echelon(RatMatrix m, std::size_t columns) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[row], m[p]);
        const Rational lead = m[row][col];
        for (auto& x : m[row]) x /= lead;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            const Rational f = m[i][col];
            for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
        }
        e.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    e.rows = std::move(m);
    return e;
}

std::size_t rank(const RatMatrix& m, std::size_t columns) { return reduced_echelon(m, columns).pivots.size(); }

RatMatrix nullspace(const RatMatrix& m, std::size_t columns) {
    Echelon e = reduced_echelon(m, columns);
    std::vector<bool> is_pivot(columns, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    RatMatrix basis;
    for (std::size_t free = 0; free < columns; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(columns, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b) {
    const std::size_t n = a.size();
    RatMatrix aug = a;
    for (std::size_t i = 0; i < n; ++i) aug[i].push_back(b[i]);
    Echelon e = reduced_echelon(std::move(aug), n);
    if (e.pivots.size() != n) return std::nullopt;
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = e.rows[i][n];
    return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
    const std::size_t n = a.size();
    RatMatrix aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        aug[i].resize(2 * n, 0);
        aug[i][n + i] = 1;
    }
    Echelon e = reduced_echelon(std::move(aug), n);
    if (e.pivots.size() != n) return std::nullopt;
    RatMatrix inv(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
    return inv;
}

Integer lcm_of_denominators(const RatVec& v) {
    Integer l = 1;
    for (const auto& x : v) l = boost::integer::lcm(l, Integer(denominator(x)));
    return l;
}

IntVec primitive(const RatVec& v) {
    const Integer l = lcm_of_denominators(v);
    IntVec r;
    Integer g = 0;
    for (const auto& x : v) {
        Rational s = x * l;
        r.push_back(numerator(s));
        g = boost::integer::gcd(g, abs(r.back()));
    }
    if (g > 1)
        for (auto& x : r) x /= g;
    return r;
}

Integer determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

IntMatrix hermite_basis(IntMatrix rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    IntMatrix basis;
    for (std::size_t col = 0; col < cols && !rows.empty(); ++col) {
        // Euclid on column col across the remaining rows until one nonzero entry is left.
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
            if (best == rows.size()) break;
            bool reduced = false;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][col] == 0) continue;
                const Integer q = rows[i][col] / rows[best][col];
                for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[best][j];
                reduced = true;
            }
            if (!reduced) {
                IntVec pivot = rows[best];
                if (pivot[col] < 0)
                    for (auto& x : pivot) x = -x;
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
                basis.push_back(std::move(pivot));
                break;
            }
        }
        std::erase_if(rows, [](const IntVec& r) {
            for (const auto& x : r)
                if (x != 0) return false;
            return true;
        });
    }
    // reduce entries above each pivot
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::size_t col = 0;
        while (basis[i][col] == 0) ++col;
        for (std::size_t k = 0; k < i; ++k) {
            Integer q = basis[k][col] / basis[i][col];
            if (basis[k][col] - q * basis[i][col] < 0) q -= 1;
            for (std::size_t j = 0; j < cols; ++j) basis[k][j] -= q * basis[i][j];
        }
    }
    return basis;
}

Integer gcd_of_maximal_minors(const IntMatrix& rows) {
    const std::size_t k = rows.size();
    if (k == 0) return 1;
    const std::size_t d = rows[0].size();
    Integer g = 0;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        IntMatrix minor(k, IntVec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = rows[i][pick[j]];
        g = boost::integer::gcd(g, abs(determinant(minor)));
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == d - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return g;
}

Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

}  // namespace subdiv

#include "subdiv/subdivision.hpp"

#include <algorithm>

namespace subdiv {

const char* to_string(SfsError::Code code) {
    switch (code) {
        case SfsError::Code::Shape: return "shape";
        case SfsError::Code::NotLocallyEulerian: return "not-locally-eulerian";
        case SfsError::Code::NotOrderPreserving: return "not-order-preserving";
        case SfsError::Code::NotRankIncreasing: return "not-rank-increasing";
        case SfsError::Code::NotSurjective: return "not-surjective";
        case SfsError::Code::NotStronglySurjective: return "not-strongly-surjective";
        case SfsError::Code::AlternatingSum: return "alternating-sum";
        case SfsError::Code::AxiomFormsDisagree: return "axiom-forms-disagree";
        case SfsError::Code::RankMismatch: return "rank-mismatch";
        case SfsError::Code::NotComposable: return "not-composable";
    }
    return "unknown";
}

namespace {

std::size_t position_in(const RankedPoset& p, const std::vector<Elem>& sorted, Elem y) {
    auto key = [&p](Elem a) { return std::pair<int, Elem>(p.rank(a), a); };
    auto it = std::lower_bound(sorted.begin(), sorted.end(), y, [&](Elem a, Elem b) { return key(a) < key(b); });
    if (it == sorted.end() || *it != y) throw KlsError("element outside the expected up-set");
    return static_cast<std::size_t>(it - sorted.begin());
}

LaurentPoly uv_power(int twice_u, int twice_v) { return LaurentPoly::monomial(1, {0, twice_u, twice_v, 0}); }

int sign(int k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

Sfs Sfs::validate(PosetPtr gamma, PosetPtr base, std::vector<Elem> sigma, SfsFlags flags) {
    using Code = SfsError::Code;
    const RankedPoset& G = *gamma;
    const RankedPoset& B = *base;
    if (sigma.size() != G.size()) throw SfsError(Code::Shape, "map size differs from the subdividing poset");
    for (Elem y = 0; y < G.size(); ++y)
        if (sigma[y] >= B.size()) throw SfsError(Code::Shape, "map value outside the base poset", y);
    if (!is_locally_eulerian(G)) throw SfsError(Code::NotLocallyEulerian, "subdividing poset is not locally Eulerian");
    if (!is_locally_eulerian(B)) throw SfsError(Code::NotLocallyEulerian, "base poset is not locally Eulerian");

    for (Elem y = 0; y < G.size(); ++y)
        for (Elem z : G.upper_covers(y))
            if (!B.leq(sigma[y], sigma[z]))
                throw SfsError(Code::NotOrderPreserving,
                               "map is not order-preserving on " + G.name(y) + " < " + G.name(z), y, sigma[z]);
    for (Elem y = 0; y < G.size(); ++y)
        if (G.rank(y) > B.rank(sigma[y]))
            throw SfsError(Code::NotRankIncreasing, "map is not rank-increasing at " + G.name(y), y, sigma[y]);

    std::vector<bool> hit(B.size(), false);
    for (Elem y = 0; y < G.size(); ++y) hit[sigma[y]] = true;
    for (Elem x = 0; x < B.size(); ++x)
        if (!hit[x]) throw SfsError(Code::NotSurjective, "no element maps to " + B.name(x), {}, x);

    std::vector<long> partial(B.size());
    std::vector<bool> full(B.size());
    std::optional<std::pair<Elem, Elem>> alt_fail, mob_fail;
    for (Elem y = 0; y < G.size(); ++y) {
        const Elem sy = sigma[y];
        const auto& above = B.up(sy);
        for (Elem x : above) {
            partial[x] = 0;
            full[x] = false;
        }
        for (Elem z : G.up(y)) {
            const Elem x = sigma[z];
            partial[x] += sign(G.rank(z));
            if (G.rank(z) == B.rank(x)) full[x] = true;
        }
        for (Elem x : above) {
            if (!full[x])
                throw SfsError(Code::NotStronglySurjective,
                               "no full-rank element above " + G.name(y) + " maps to " + B.name(x), y, x);
            const long alt = sign(B.rank(x)) * partial[x];
            if (alt != 1 && !alt_fail) alt_fail = std::pair(y, x);
            long cumulative = 0;
            for (Elem w : B.down(x))
                if (B.leq(sy, w)) cumulative += partial[w];
            const long mob = sign(B.rank(x)) * cumulative;
            if (mob != (x == sy ? 1 : 0) && !mob_fail) mob_fail = std::pair(y, x);
        }
    }
    if (alt_fail && mob_fail) {
        auto [y, x] = *alt_fail;
        throw SfsError(Code::AlternatingSum, "alternating sum fails at (" + G.name(y) + ", " + B.name(x) + ")", y, x);
    }
    if (alt_fail || mob_fail) {
        auto [y, x] = alt_fail ? *alt_fail : *mob_fail;
        throw SfsError(Code::AxiomFormsDisagree,
                       "the two forms of the subdivision axiom disagree at (" + G.name(y) + ", " + B.name(x) + ")", y, x);
    }

    if (G.bottom() && B.bottom()) {
        const int by_bottoms = B.rank(*B.bottom()) - G.rank(*G.bottom());
        if (by_bottoms != G.length() - B.length())
            throw SfsError(Code::RankMismatch, "rank from minimal elements differs from the difference of lengths");
    }

    Sfs s;
    s.gamma_ = std::move(gamma);
    s.base_ = std::move(base);
    s.sigma_ = std::move(sigma);
    s.flags_ = flags;
    s.gamma_g_ = std::make_unique<GTable>(s.gamma_);
    s.base_g_ = std::make_unique<GTable>(s.base_);
    s.rows_.resize(s.gamma_->size());
    return s;
}

Sfs Sfs::identity(PosetPtr base) {
    std::vector<Elem> id(base->size());
    for (Elem i = 0; i < id.size(); ++i) id[i] = i;
    return validate(base, base, std::move(id), SfsFlags{true, true});
}

int Sfs::rank() const {
    const Elem g0 = gamma_->require_bottom();
    const Elem b0 = base_->require_bottom();
    return base_->rank(b0) - gamma_->rank(g0);
}

std::vector<Elem> Sfs::star(Elem y, Elem x) const {
    std::vector<Elem> r;
    for (Elem z : gamma_->up(y))
        if (base_->leq(sigma_[z], x)) r.push_back(z);
    return r;
}

std::vector<Elem> Sfs::interior(Elem y, Elem x) const {
    std::vector<Elem> r;
    for (Elem z : gamma_->up(y))
        if (sigma_[z] == x) r.push_back(z);
    return r;
}

Sfs::Row& Sfs::row(Elem y) {
    if (rows_[y]) return *rows_[y];
    const RankedPoset& B = *base_;
    const Elem sy = sigma_[y];
    const auto& above = B.up(sy);
    const std::size_t m = above.size();

    std::vector<LaurentPoly> inner(m);
    for (Elem z : gamma_->up(y)) {
        const Elem x = sigma_[z];
        inner[position_in(B, above, x)] += gamma_g_->g(y, z) * t_minus_one_pow(B.rank(x) - gamma_->rank(z));
    }

    Row r;
    r.h.resize(m);
    r.l.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Elem x = above[i];
        LaurentPoly sum;
        for (std::size_t j = 0; j <= i; ++j) {
            const Elem w = above[j];
            if (!inner[j].is_zero() && B.leq(w, x)) sum += inner[j] * t_minus_one_pow(B.rho(w, x));
        }
        r.h[i] = reverse_t(sum, gap(x, y));
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Elem x = above[i];
        LaurentPoly sum;
        for (std::size_t j = 0; j <= i; ++j) {
            const Elem w = above[j];
            if (!B.leq(w, x)) continue;
            LaurentPoly term = r.h[j] * base_g_->g_dual(w, x);
            if (B.rho(w, x) % 2 == 0) {
                sum += term;
            } else {
                sum -= term;
            }
        }
        r.l[i] = std::move(sum);
    }
    rows_[y] = std::move(r);
    return *rows_[y];
}

const LaurentPoly& Sfs::h_restricted(Elem x, Elem y) {
    static const LaurentPoly zero;
    if (!below(y, x)) return zero;
    Row& r = row(y);
    return r.h[position_in(*base_, base_->up(sigma_[y]), x)];
}

const LaurentPoly& Sfs::local_h(Elem x, Elem y) {
    static const LaurentPoly zero;
    if (!below(y, x)) return zero;
    Row& r = row(y);
    return r.l[position_in(*base_, base_->up(sigma_[y]), x)];
}

const LaurentPoly& Sfs::mixed_h(Elem x, Elem y) {
    static const LaurentPoly zero;
    if (!below(y, x)) return zero;
    Row& r = row(y);
    const RankedPoset& B = *base_;
    const auto& above = B.up(sigma_[y]);
    if (!r.mixed) {
        const std::size_t m = above.size();
        std::vector<LaurentPoly> scaled(m);
        for (std::size_t j = 0; j < m; ++j)
            scaled[j] = t_to_u_over_v(r.l[j]) * uv_power(0, 2 * gap(above[j], y));
        std::vector<LaurentPoly> mixed(m);
        for (std::size_t i = 0; i < m; ++i) {
            const Elem xi = above[i];
            for (std::size_t j = 0; j <= i; ++j) {
                const Elem w = above[j];
                if (!scaled[j].is_zero() && B.leq(w, xi)) mixed[i] += scaled[j] * t_to_uv(base_g_->g(w, xi));
            }
        }
        r.mixed = std::move(mixed);
    }
    return (*r.mixed)[position_in(B, above, x)];
}

LaurentPoly Sfs::eta(Elem x, Elem y) { return h_restricted(x, y) * LaurentPoly::t_half(-gap(x, y)); }

LaurentPoly Sfs::lambda(Elem x, Elem y) { return local_h(x, y) * LaurentPoly::t_half(-gap(x, y)); }

LaurentPoly Sfs::tilde_eta(Elem x, Elem y) { return mixed_h(x, y) * uv_power(-gap(x, y), -gap(x, y)); }

void Sfs::require_absolute() const {
    if (!gamma_->bottom()) throw SfsError(SfsError::Code::Shape, "subdividing poset has no minimum");
    if (!base_->bottom() || !base_->top())
        throw SfsError(SfsError::Code::Shape, "base poset needs a minimum and a maximum");
}

LaurentPoly Sfs::local_h() {
    require_absolute();
    return local_h(*base_->top(), *gamma_->bottom());
}

LaurentPoly Sfs::mixed_h() {
    require_absolute();
    return mixed_h(*base_->top(), *gamma_->bottom());
}

LaurentPoly Sfs::h_gamma() {
    require_absolute();
    return h_restricted(*base_->top(), *gamma_->bottom());
}

PosetFunction Sfs::pushforward(const PosetFunction& f) const {
    if (f.poset_ptr() != gamma_) throw KlsError("pushforward of a function on another poset");
    PosetFunction r(base_);
    const LaurentPoly q = LaurentPoly::q();
    for (Elem y = 0; y < gamma_->size(); ++y)
        if (!f.at(y).is_zero()) r.at(sigma_[y]) += f.at(y) * q.pow(static_cast<unsigned>(gap(sigma_[y], y)));
    return r;
}

Sfs Sfs::restrict_to(Elem y, Elem x) const {
    if (!below(y, x)) throw SfsError(SfsError::Code::Shape, "restriction needs sigma(y) <= x", y, x);
    std::vector<Elem> elems = star(y, x);
    std::vector<Elem> target = base_->interval(sigma_[y], x);
    std::vector<Elem> where(base_->size(), base_->size());
    for (std::size_t i = 0; i < target.size(); ++i) where[target[i]] = i;
    std::vector<Elem> map(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) map[i] = where[sigma_[elems[i]]];
    auto g = std::make_shared<const RankedPoset>(gamma_->induced(elems));
    auto b = std::make_shared<const RankedPoset>(base_->induced(target));
    return validate(g, b, std::move(map), flags_);
}

Sfs compose(const Sfs& tau, const Sfs& sigma) {
    const bool same = tau.base_ptr() == sigma.gamma_ptr() || same_order_by_name(tau.base(), sigma.gamma());
    if (!same) throw SfsError(SfsError::Code::NotComposable, "the base of the first map is not the source of the second");
    std::vector<Elem> map(tau.gamma().size());
    for (Elem z = 0; z < map.size(); ++z) map[z] = sigma.sigma(tau.sigma(z));
    SfsFlags f{tau.flags().geometric && sigma.flags().geometric, false};
    return Sfs::validate(tau.gamma_ptr(), sigma.base_ptr(), std::move(map), f);
}

void require_simplicial_over_boolean(const Sfs& s) {
    if (!is_boolean(s.base())) throw SfsError(SfsError::Code::Shape, "base poset is not a Boolean algebra");
    if (!s.gamma().bottom() || !is_simplicial(s.gamma()))
        throw SfsError(SfsError::Code::Shape, "subdividing poset is not simplicial");
}

namespace {

int excess(const Sfs& s, Elem y) { return s.base().rank(s.sigma(y)) - s.gamma().rank(y); }

}  // namespace

LaurentPoly simplicial_local_h(Sfs& s) {
    require_simplicial_over_boolean(s);
    const RankedPoset& G = s.gamma();
    const Elem bottom = *G.bottom();
    const int r = G.length();
    LaurentPoly l;
    for (Elem y = 0; y < G.size(); ++y) {
        const int e = excess(s, y);
        LaurentPoly term = LaurentPoly::t_half(2 * (r - e)) * t_minus_one_pow(e);
        if ((r - G.rho(bottom, y)) % 2 == 0) {
            l += term;
        } else {
            l -= term;
        }
    }
    return l;
}

std::vector<std::vector<Integer>> fij_table(Sfs& s) {
    require_simplicial_over_boolean(s);
    const RankedPoset& G = s.gamma();
    const Elem bottom = *G.bottom();
    const int r = G.length();
    std::vector<std::vector<Integer>> f(static_cast<std::size_t>(r + 1));
    for (int i = 0; i <= r; ++i) f[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(r - i + 1), 0);
    for (Elem y = 0; y < G.size(); ++y) {
        const int i = G.rho(bottom, y), j = excess(s, y);
        if (j < 0 || i + j > r) throw SfsError(SfsError::Code::Shape, "excess outside the expected range", y);
        f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += 1;
    }
    return f;
}

LaurentPoly simplicial_mixed_h(const std::vector<std::vector<Integer>>& f, int r) {
    const LaurentPoly u = LaurentPoly::power(Var::u, 2), v = LaurentPoly::power(Var::v, 2);
    const LaurentPoly one_minus_u = LaurentPoly(1) - u, v_minus_u = v - u;
    LaurentPoly h;
    for (int i = 0; i <= r && i < static_cast<int>(f.size()); ++i) {
        const auto& row = f[static_cast<std::size_t>(i)];
        for (int j = 0; i + j <= r && j < static_cast<int>(row.size()); ++j) {
            const Integer& c = row[static_cast<std::size_t>(j)];
            if (c == 0) continue;
            h += LaurentPoly(c) * u.pow(static_cast<unsigned>(i)) * one_minus_u.pow(static_cast<unsigned>(r - i - j)) *
                 v_minus_u.pow(static_cast<unsigned>(j));
        }
    }
    return h;
}

std::vector<std::vector<Integer>> fij_from_mixed(const LaurentPoly& h, int r) {
    if (!h.is_polynomial() || !h.only_vars({Var::u, Var::v}))
        throw LaurentError("mixed h-polynomial must be a polynomial in u and v");
    const LaurentPoly one_u = LaurentPoly(1) + LaurentPoly::power(Var::u, 2);
    const LaurentPoly one_v = LaurentPoly(1) + LaurentPoly::power(Var::v, 2);
    LaurentPoly sum;
    for (const auto& [e, c] : h.terms()) {
        const int a = e[1] / 2, b = e[2] / 2;
        if (a + b > r) throw LaurentError("mixed h-polynomial exceeds the expected degree");
        sum += LaurentPoly(c) * one_u.pow(static_cast<unsigned>(r - a - b)) * one_v.pow(static_cast<unsigned>(b));
    }
    std::vector<std::vector<Integer>> f(static_cast<std::size_t>(r + 1));
    for (int i = 0; i <= r; ++i) {
        auto& row = f[static_cast<std::size_t>(i)];
        row.assign(static_cast<std::size_t>(r - i + 1), 0);
        for (int j = 0; i + j <= r; ++j) row[static_cast<std::size_t>(j)] = sum.coeff({0, 2 * (r - i - j), 2 * j, 0});
    }
    return f;
}

ThreeVariable three_variable_mixed(Sfs& tau, Sfs& sigma) {
    if (tau.base_ptr() != sigma.gamma_ptr() && !same_order_by_name(tau.base(), sigma.gamma()))
        throw SfsError(SfsError::Code::NotComposable, "the base of the first map is not the source of the second");
    const RankedPoset& G = sigma.gamma();
    const RankedPoset& B = sigma.base();
    if (!tau.gamma().bottom() || !G.bottom() || !is_eulerian(B))
        throw SfsError(SfsError::Code::Shape, "three-variable invariants need lower Eulerian sources and an Eulerian base");
    const Elem omega0 = *tau.gamma().bottom();
    const int omega_rank0 = tau.gamma().rank(omega0);

    // v^{rk Omega_y} l_Gamma(Omega, y, 0; u/v) for every y
    std::vector<LaurentPoly> lower(G.size());
    for (Elem y = 0; y < G.size(); ++y)
        lower[y] = t_to_u_over_v(tau.local_h(y, omega0)) * uv_power(0, 2 * (G.rank(y) - omega_rank0));

    const Elem top = *B.top();
    ThreeVariable out;
    for (Elem x : B.down(top)) {
        LaurentPoly local_x;
        for (Elem y = 0; y < G.size(); ++y) {
            if (lower[y].is_zero() || !sigma.below(y, x)) continue;
            local_x += t_to_uv(sigma.local_h(x, y)) * lower[y];
        }
        if (x == top) out.local = local_x;
        if (local_x.is_zero()) continue;
        const LaurentPoly w_power = LaurentPoly::power(Var::w, 2 * (B.rank(x) - omega_rank0));
        out.mixed += w_power * local_x * t_to_uvw2(sigma.base_g().g(x, top));
    }
    return out;
}

}  // namespace subdiv

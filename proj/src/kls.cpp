#include "subdiv/kls.hpp"

#include <algorithm>
#include <deque>

namespace subdiv {

IncidenceFunction IncidenceFunction::identity(PosetPtr p) {
    IncidenceFunction f(p);
    for (Elem x = 0; x < p->size(); ++x) f.set(x, x, 1);
    return f;
}

LaurentPoly IncidenceFunction::at(Elem x, Elem y) const {
    auto it = values_.find({x, y});
    return it == values_.end() ? LaurentPoly() : it->second;
}

void IncidenceFunction::set(Elem x, Elem y, LaurentPoly value) {
    if (!poset_->leq(x, y)) {
        if (!value.is_zero()) throw KlsError("incidence function value outside an interval");
        return;
    }
    if (value.is_zero()) {
        values_.erase({x, y});
    } else {
        values_[{x, y}] = std::move(value);
    }
}

IncidenceFunction IncidenceFunction::involuted() const {
    IncidenceFunction r(poset_);
    for (const auto& [k, v] : values_) r.values_[k] = involute(v);
    return r;
}

IncidenceFunction IncidenceFunction::mapped(LaurentPoly (*f)(const LaurentPoly&)) const {
    IncidenceFunction r(poset_);
    for (const auto& [k, v] : values_) r.set(k.first, k.second, f(v));
    return r;
}

IncidenceFunction operator*(const IncidenceFunction& a, const IncidenceFunction& b) {
    if (a.poset_ != b.poset_) throw KlsError("convolution of functions on different posets");
    const RankedPoset& p = *a.poset_;
    IncidenceFunction r(a.poset_);
    for (const auto& [k, av] : a.values_) {
        auto [x, y] = k;
        for (Elem z : p.up(y)) {
            auto it = b.values_.find({y, z});
            if (it == b.values_.end()) continue;
            auto& slot = r.values_[{x, z}];
            slot += av * it->second;
        }
    }
    for (auto it = r.values_.begin(); it != r.values_.end();) {
        if (it->second.is_zero()) {
            it = r.values_.erase(it);
        } else {
            ++it;
        }
    }
    return r;
}

PosetFunction PosetFunction::basis(PosetPtr p, Elem x) {
    PosetFunction f(std::move(p));
    f.values_[x] = 1;
    return f;
}

PosetFunction PosetFunction::involuted() const {
    PosetFunction r(poset_);
    for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = involute(values_[i]);
    return r;
}

PosetFunction operator*(const PosetFunction& f, const IncidenceFunction& g) {
    if (f.poset_ != g.poset_ptr()) throw KlsError("module action on different posets");
    const RankedPoset& p = *f.poset_;
    PosetFunction r(f.poset_);
    for (Elem x = 0; x < p.size(); ++x) {
        if (f.values_[x].is_zero()) continue;
        for (Elem y : p.up(x)) {
            LaurentPoly gv = g.at(x, y);
            if (!gv.is_zero()) r.values_[y] += f.values_[x] * gv;
        }
    }
    return r;
}

LaurentPoly reverse_t(const LaurentPoly& p, int n) {
    LaurentPoly r;
    for (const auto& [e, c] : p.terms()) {
        LaurentPoly::Exponents f = e;
        f[0] = 2 * n - e[0];
        r += LaurentPoly::monomial(c, f);
    }
    return r;
}

const LaurentPoly& t_minus_one_pow(int k) {
    thread_local std::deque<LaurentPoly> cache{LaurentPoly(1)};
    if (k < 0) throw KlsError("negative power of (t - 1)");
    static const LaurentPoly base = LaurentPoly::t_half(2) - LaurentPoly(1);
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * base);
    return cache[static_cast<std::size_t>(k)];
}

GTable::GTable(PosetPtr p) : poset_(std::move(p)) { rows_.emplace(poset_.get()); }

const LaurentPoly& GTable::g(Elem x, Elem y) { return rows_->get(x, y); }

const RankedPoset& GTable::dual_poset() {
    if (!dual_) {
        dual_ = std::make_shared<const RankedPoset>(dual(*poset_));
        dual_rows_.emplace(dual_.get());
    }
    return *dual_;
}

const LaurentPoly& GTable::g_dual(Elem x, Elem y) {
    dual_poset();
    return dual_rows_->get(y, x);
}

std::size_t GTable::Rows::position(Elem x, Elem y) const {
    const auto& up = p_->up(x);
    auto key = [this](Elem a) { return std::pair<int, Elem>(p_->rank(a), a); };
    auto it = std::lower_bound(up.begin(), up.end(), y, [&](Elem a, Elem b) { return key(a) < key(b); });
    if (it == up.end() || *it != y) throw KlsError("g-polynomial requested outside an interval");
    return static_cast<std::size_t>(it - up.begin());
}

const LaurentPoly& GTable::Rows::get(Elem x, Elem y) {
    if (!rows_[x]) compute(x);
    return (*rows_[x])[position(x, y)];
}

void GTable::Rows::compute(Elem x) {
    const auto& up = p_->up(x);
    std::vector<LaurentPoly> row(up.size());
    for (std::size_t i = 0; i < up.size(); ++i) {
        Elem z = up[i];
        if (z == x) {
            row[i] = 1;
            continue;
        }
        const int n = p_->rho(x, z);
        LaurentPoly sum;
        for (Elem w : p_->down(z)) {
            if (w == z || !p_->leq(x, w)) continue;
            sum += row[position(x, w)] * t_minus_one_pow(n - p_->rho(x, w));
        }
        LaurentPoly low, high;
        for (const auto& [e, c] : sum.terms()) {
            (e[0] < n ? low : high) += LaurentPoly::monomial(c, e);
        }
        LaurentPoly g = -low;
        if (high != reverse_t(g, n))
            throw KlsError("interval [" + p_->name(x) + ", " + p_->name(z) + "] is not Eulerian");
        row[i] = std::move(g);
    }
    rows_[x] = std::move(row);
}

IncidenceFunction kernel(PosetPtr p) {
    IncidenceFunction k(p);
    const LaurentPoly q = LaurentPoly::q();
    for (Elem x = 0; x < p->size(); ++x)
        for (Elem y : p->up(x)) k.set(x, y, q.pow(static_cast<unsigned>(p->rho(x, y))));
    return k;
}

bool is_kernel(const IncidenceFunction& f) {
    return f * f.involuted() == IncidenceFunction::identity(f.poset_ptr());
}

LaurentPoly g_polynomial(const RankedPoset& p) {
    if (!is_eulerian(p)) throw KlsError("g-polynomial requires an Eulerian poset");
    auto ptr = std::make_shared<const RankedPoset>(p);
    GTable table(ptr);
    return table.g(*p.bottom(), *p.top());
}

LaurentPoly h_polynomial_of(GTable& table, Elem bottom, const std::vector<Elem>& elems, int n) {
    const RankedPoset& p = table.poset();
    LaurentPoly sum;
    for (Elem x : elems) {
        const int k = p.rho(bottom, x);
        if (k > n) throw KlsError("element above the declared rank in h-polynomial");
        sum += table.g(bottom, x) * t_minus_one_pow(n - k);
    }
    return reverse_t(sum, n);
}

LaurentPoly h_polynomial(const RankedPoset& p) {
    const Elem b = p.require_bottom();
    if (!is_locally_eulerian(p)) throw KlsError("h-polynomial requires a lower Eulerian poset");
    auto ptr = std::make_shared<const RankedPoset>(p);
    GTable table(ptr);
    std::vector<Elem> all(p.size());
    for (Elem i = 0; i < p.size(); ++i) all[i] = i;
    return h_polynomial_of(table, b, all, p.length());
}

IncidenceFunction gamma(GTable& table) {
    const RankedPoset& p = table.poset();
    IncidenceFunction f(table.poset_ptr());
    for (Elem x = 0; x < p.size(); ++x)
        for (Elem y : p.up(x)) f.set(x, y, table.g(x, y) * LaurentPoly::t_half(-p.rho(x, y)));
    return f;
}

IncidenceFunction gamma_inverse(GTable& table) {
    const RankedPoset& p = table.poset();
    IncidenceFunction f(table.poset_ptr());
    for (Elem x = 0; x < p.size(); ++x) {
        for (Elem y : p.up(x)) {
            const int r = p.rho(x, y);
            LaurentPoly v = table.g_dual(x, y) * LaurentPoly::t_half(-r);
            f.set(x, y, r % 2 == 0 ? v : -v);
        }
    }
    return f;
}

IncidenceFunction gamma(PosetPtr p) {
    if (!is_locally_eulerian(*p)) throw KlsError("gamma requires a locally Eulerian poset");
    GTable t(std::move(p));
    return gamma(t);
}

IncidenceFunction gamma_inverse(PosetPtr p) {
    if (!is_locally_eulerian(*p)) throw KlsError("gamma inverse requires a locally Eulerian poset");
    GTable t(std::move(p));
    return gamma_inverse(t);
}

bool is_acceptable(const PosetFunction& f) { return f.involuted() == f * kernel(f.poset_ptr()); }

bool is_totally_acceptable(const IncidenceFunction& f) { return f.involuted() == f * kernel(f.poset_ptr()); }

}  // namespace subdiv

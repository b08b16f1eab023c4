#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "subdiv/laurent.hpp"
#include "subdiv/poset.hpp"

namespace subdiv {

using PosetPtr = std::shared_ptr<const RankedPoset>;

class KlsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Element of the incidence algebra: a value for every pair x <= x'.
class IncidenceFunction {
public:
    explicit IncidenceFunction(PosetPtr p) : poset_(std::move(p)) {}

    static IncidenceFunction identity(PosetPtr p);

    const RankedPoset& poset() const { return *poset_; }
    const PosetPtr& poset_ptr() const { return poset_; }
    LaurentPoly at(Elem x, Elem y) const;
    void set(Elem x, Elem y, LaurentPoly value);
    const std::map<std::pair<Elem, Elem>, LaurentPoly>& values() const { return values_; }

    IncidenceFunction involuted() const;
    IncidenceFunction mapped(LaurentPoly (*f)(const LaurentPoly&)) const;

    friend IncidenceFunction operator*(const IncidenceFunction& a, const IncidenceFunction& b);
    friend bool operator==(const IncidenceFunction& a, const IncidenceFunction& b) {
        return a.poset_ == b.poset_ && a.values_ == b.values_;
    }

private:
    PosetPtr poset_;
    std::map<std::pair<Elem, Elem>, LaurentPoly> values_;
};

// Function B -> R, a right module over the incidence algebra.
class PosetFunction {
public:
    explicit PosetFunction(PosetPtr p) : poset_(std::move(p)), values_(poset_->size()) {}

    // Indicator of x.
    static PosetFunction basis(PosetPtr p, Elem x);

    const RankedPoset& poset() const { return *poset_; }
    const PosetPtr& poset_ptr() const { return poset_; }
    const LaurentPoly& at(Elem x) const { return values_[x]; }
    LaurentPoly& at(Elem x) { return values_[x]; }
    std::size_t size() const { return values_.size(); }

    PosetFunction involuted() const;

    friend PosetFunction operator*(const PosetFunction& f, const IncidenceFunction& g);
    friend bool operator==(const PosetFunction& a, const PosetFunction& b) {
        return a.poset_ == b.poset_ && a.values_ == b.values_;
    }

private:
    PosetPtr poset_;
    std::vector<LaurentPoly> values_;
};

// t^n p(t^{-1})
LaurentPoly reverse_t(const LaurentPoly& p, int n);
// (t - 1)^k
const LaurentPoly& t_minus_one_pow(int k);

// Memoised g-polynomials of the intervals of a locally Eulerian poset and of
// their duals. Not thread-safe; confine one instance per computation.
class GTable {
public:
    explicit GTable(PosetPtr p);

    const RankedPoset& poset() const { return *poset_; }
    const PosetPtr& poset_ptr() const { return poset_; }
    // g([x, y]; t)
    const LaurentPoly& g(Elem x, Elem y);
    // g([x, y]^*; t)
    const LaurentPoly& g_dual(Elem x, Elem y);
    const RankedPoset& dual_poset();

private:
    class Rows {
    public:
        explicit Rows(const RankedPoset* p) : p_(p), rows_(p->size()) {}
        const LaurentPoly& get(Elem x, Elem y);

    private:
        void compute(Elem x);
        std::size_t position(Elem x, Elem y) const;
        const RankedPoset* p_;
        std::vector<std::optional<std::vector<LaurentPoly>>> rows_;
    };

    PosetPtr poset_;
    PosetPtr dual_;
    std::optional<Rows> rows_, dual_rows_;
};

IncidenceFunction kernel(PosetPtr p);
bool is_kernel(const IncidenceFunction& f);

LaurentPoly g_polynomial(const RankedPoset& p);
LaurentPoly h_polynomial(const RankedPoset& p);
// h-polynomial of the lower Eulerian poset whose elements are `elems` (which
// must contain `bottom` and lie above it), computed from g-values of the
// ambient table, with the rank parameter supplied explicitly.
LaurentPoly h_polynomial_of(GTable& table, Elem bottom, const std::vector<Elem>& elems, int n);

IncidenceFunction gamma(PosetPtr p);
IncidenceFunction gamma_inverse(PosetPtr p);
IncidenceFunction gamma(GTable& table);
IncidenceFunction gamma_inverse(GTable& table);

bool is_acceptable(const PosetFunction& f);
bool is_totally_acceptable(const IncidenceFunction& f);

}  // namespace subdiv

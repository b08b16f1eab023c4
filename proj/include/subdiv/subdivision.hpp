#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/kls.hpp"

namespace subdiv {

class SfsError : public std::runtime_error {
public:
    enum class Code {
        Shape,
        NotLocallyEulerian,
        NotOrderPreserving,
        NotRankIncreasing,
        NotSurjective,
        NotStronglySurjective,
        AlternatingSum,
        AxiomFormsDisagree,
        RankMismatch,
        NotComposable,
    };
    SfsError(Code code, const std::string& msg, std::optional<Elem> y = {}, std::optional<Elem> x = {})
        : std::runtime_error(msg), code_(code), y_(y), x_(x) {}
    Code code() const { return code_; }
    // Witness: an element of the subdividing poset and one of the base.
    std::optional<Elem> y() const { return y_; }
    std::optional<Elem> x() const { return x_; }

private:
    Code code_;
    std::optional<Elem> y_, x_;
};

const char* to_string(SfsError::Code code);

struct SfsFlags {
    bool geometric = false;  // comes from a polyhedral subdivision
    bool regular = false;    // comes from a regular polyhedral subdivision
};

// A validated strong formal subdivision sigma: Gamma -> B.
//
// Relative invariants are indexed by (x, y) with x in B and y in Gamma and
// vanish unless sigma(y) <= x. Rows for a fixed y are computed lazily and
// cached, so instances are not safe for concurrent use.
class Sfs {
public:
    static Sfs validate(PosetPtr gamma, PosetPtr base, std::vector<Elem> sigma, SfsFlags flags = {});
    static Sfs identity(PosetPtr base);

    const RankedPoset& gamma() const { return *gamma_; }
    const RankedPoset& base() const { return *base_; }
    const PosetPtr& gamma_ptr() const { return gamma_; }
    const PosetPtr& base_ptr() const { return base_; }
    Elem sigma(Elem y) const { return sigma_[y]; }
    const std::vector<Elem>& sigma_map() const { return sigma_; }
    const SfsFlags& flags() const { return flags_; }
    void set_flags(SfsFlags f) { flags_ = f; }

    // rank of sigma when both posets are lower Eulerian
    int rank() const;
    // rho_B(x) - rho_Gamma(y)
    int gap(Elem x, Elem y) const { return base_->rank(x) - gamma_->rank(y); }
    bool below(Elem y, Elem x) const { return base_->leq(sigma_[y], x); }

    GTable& gamma_g() { return *gamma_g_; }
    GTable& base_g() { return *base_g_; }

    // (Gamma_{>=y})_x and its interior part sigma^{-1}(x) ∩ (Gamma_{>=y})_x
    std::vector<Elem> star(Elem y, Elem x) const;
    std::vector<Elem> interior(Elem y, Elem x) const;

    // h((Gamma_{>=y})_x; t)
    const LaurentPoly& h_restricted(Elem x, Elem y);
    // l_B(Gamma, x, y; t)
    const LaurentPoly& local_h(Elem x, Elem y);
    // h_B(Gamma, x, y; u, v)
    const LaurentPoly& mixed_h(Elem x, Elem y);
    LaurentPoly eta(Elem x, Elem y);
    LaurentPoly lambda(Elem x, Elem y);
    LaurentPoly tilde_eta(Elem x, Elem y);

    // Absolute versions; need Gamma lower Eulerian and B Eulerian.
    LaurentPoly local_h();
    LaurentPoly mixed_h();
    LaurentPoly h_gamma();

    PosetFunction pushforward(const PosetFunction& f) const;

    // The restriction (Gamma_{>=y})_x -> [sigma(y), x], validated afresh.
    Sfs restrict_to(Elem y, Elem x) const;

private:
    struct Row {
        std::vector<LaurentPoly> h, l;
        std::optional<std::vector<LaurentPoly>> mixed;
    };
    Sfs() = default;
    Row& row(Elem y);
    void require_absolute() const;

    PosetPtr gamma_, base_;
    std::vector<Elem> sigma_;
    SfsFlags flags_;
    std::unique_ptr<GTable> gamma_g_, base_g_;
    std::vector<std::optional<Row>> rows_;
};

// sigma ∘ tau; the base of tau must be the subdividing poset of sigma.
Sfs compose(const Sfs& tau, const Sfs& sigma);

// Fast paths for simplicial Gamma over a Boolean algebra.
void require_simplicial_over_boolean(const Sfs& s);
LaurentPoly simplicial_local_h(Sfs& s);
// f[i][j] = #{ y : rho(0, y) = i, excess(y) = j }
std::vector<std::vector<Integer>> fij_table(Sfs& s);
LaurentPoly simplicial_mixed_h(const std::vector<std::vector<Integer>>& f, int r);
std::vector<std::vector<Integer>> fij_from_mixed(const LaurentPoly& h, int r);

// Two- and three-variable invariants of a pair of composable subdivisions
// tau: Omega -> Gamma and sigma: Gamma -> B.
struct ThreeVariable {
    LaurentPoly local;  // l_B(Omega, Gamma; u, v)
    LaurentPoly mixed;  // h_B(Omega, Gamma; u, v, w)
};
ThreeVariable three_variable_mixed(Sfs& tau, Sfs& sigma);

}  // namespace subdiv

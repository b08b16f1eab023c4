#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace subdiv {

using Integer = boost::multiprecision::cpp_int;

enum class Var : int { t = 0, u = 1, v = 2, w = 3 };
inline constexpr int kNumVars = 4;

char var_name(Var x);

// An exponent in (1/2)Z, stored doubled.
struct HalfExp {
    int twice = 0;

    static constexpr HalfExp whole(int e) { return HalfExp{2 * e}; }
    constexpr bool integral() const { return twice % 2 == 0; }
    constexpr HalfExp operator+(HalfExp o) const { return HalfExp{twice + o.twice}; }
    constexpr HalfExp operator-(HalfExp o) const { return HalfExp{twice - o.twice}; }
    constexpr HalfExp operator-() const { return HalfExp{-twice}; }
    constexpr auto operator<=>(const HalfExp&) const = default;
    std::string to_string() const;
};

class LaurentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LaurentPoly {
public:
    // Doubled exponents of t, u, v, w.
    using Exponents = std::array<int, kNumVars>;
    using TermMap = std::map<Exponents, Integer>;

    LaurentPoly() = default;
    LaurentPoly(int c);  // NOLINT: constants convert implicitly
    explicit LaurentPoly(const Integer& c);

    static LaurentPoly monomial(const Integer& c, const Exponents& e);
    // x^{twice/2}
    static LaurentPoly power(Var x, int twice);
    static LaurentPoly t_half(int twice) { return power(Var::t, twice); }
    // q = t^{1/2} - t^{-1/2}
    static LaurentPoly q();
    static LaurentPoly parse(std::string_view text);

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    Integer coeff(const Exponents& e) const;
    // Coefficient of t^k for a polynomial in t alone.
    Integer coeff_t(int k) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly operator-() const;
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    LaurentPoly pow(unsigned k) const;
    // Multiply by a monomial with coefficient 1.
    LaurentPoly shifted(const Exponents& e) const;

    // Largest and smallest doubled exponent of x over all terms; 0 for the zero polynomial.
    int max_twice(Var x) const;
    int min_twice(Var x) const;
    // Largest value of the doubled total degree.
    int max_total_twice() const;
    bool only_vars(std::initializer_list<Var> allowed) const;
    bool is_polynomial() const;  // all exponents non-negative integers
    bool is_nonnegative() const;
    // Coefficientwise a >= b.
    bool dominates(const LaurentPoly& b) const;
    Integer eval_at_one() const;

    std::string to_string() const;

private:
    void add_term(const Exponents& e, const Integer& c);
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

// Image of one variable under a monomial substitution: sign * x^e.
struct MonomialImage {
    int sign = 1;
    LaurentPoly::Exponents exps{};
};

class Substitution {
public:
    Substitution& set(Var x, MonomialImage image);
    const std::optional<MonomialImage>& image(Var x) const { return images_[static_cast<int>(x)]; }

private:
    std::array<std::optional<MonomialImage>, kNumVars> images_{};
};

// Convenience: the monomial t^{a/2} u^{b/2} v^{c/2} w^{d/2} with a sign.
MonomialImage mono(int t2, int u2, int v2, int w2, int sign = 1);

LaurentPoly involute(const LaurentPoly& p);
LaurentPoly substitute(const LaurentPoly& p, const Substitution& s);
// Set x = 0; requires no negative powers of x.
LaurentPoly set_zero(const LaurentPoly& p, Var x);
// Swap two variables.
LaurentPoly swap_vars(const LaurentPoly& p, Var a, Var b);
// Terms whose doubled exponent of x equals twice.
LaurentPoly slice(const LaurentPoly& p, Var x, int twice);
// Terms whose doubled total degree equals twice.
LaurentPoly total_degree_slice(const LaurentPoly& p, int twice);

// Frequently used specialisations of a polynomial in t.
LaurentPoly t_to_uv(const LaurentPoly& p);         // t -> uv
LaurentPoly t_to_u_over_v(const LaurentPoly& p);   // t -> u/v
LaurentPoly t_to_uvw2(const LaurentPoly& p);       // t -> u v w^2
LaurentPoly t_to(const LaurentPoly& p, Var x);     // t -> x

class CoeffProfile {
public:
    HalfExp lowest;                     // exponent of coefficients.front()
    std::vector<Integer> coefficients;  // consecutive integer steps

    bool empty() const { return coefficients.empty(); }
    HalfExp highest() const { return lowest + HalfExp::whole(static_cast<int>(coefficients.size()) - 1); }
    Integer at(HalfExp e) const;
    bool is_nonnegative() const;
    bool is_symmetric(HalfExp center) const;
    bool is_unimodal() const;
};

// Univariate restriction of p in x. Throws if another variable occurs or if
// the exponents do not differ by integers.
CoeffProfile profile(const LaurentPoly& p, Var x);

bool is_unimodal(const std::vector<Integer>& seq);
bool is_symmetric_sequence(const std::vector<Integer>& seq);

Integer binomial(long n, long k);

}  // namespace subdiv

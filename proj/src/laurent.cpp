#include "subdiv/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace subdiv {

char var_name(Var x) {
    static constexpr char names[] = {'t', 'u', 'v', 'w'};
    return names[static_cast<int>(x)];
}

std::string HalfExp::to_string() const {
    if (integral()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

LaurentPoly::LaurentPoly(int c) {
    if (c != 0) terms_[Exponents{}] = c;
}

LaurentPoly::LaurentPoly(const Integer& c) {
    if (c != 0) terms_[Exponents{}] = c;
}

LaurentPoly LaurentPoly::monomial(const Integer& c, const Exponents& e) {
    LaurentPoly p;
    if (c != 0) p.terms_[e] = c;
    return p;
}

LaurentPoly LaurentPoly::power(Var x, int twice) {
    Exponents e{};
    e[static_cast<int>(x)] = twice;
    return monomial(1, e);
}

LaurentPoly LaurentPoly::q() { return t_half(1) - t_half(-1); }

Integer LaurentPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
}

Integer LaurentPoly::coeff_t(int k) const { return coeff(Exponents{2 * k, 0, 0, 0}); }

void LaurentPoly::add_term(const Exponents& e, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            LaurentPoly::Exponents e;
            for (int i = 0; i < kNumVars; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
    LaurentPoly result(1);
    LaurentPoly base = *this;
    while (k) {
        if (k & 1U) result *= base;
        k >>= 1U;
        if (k) base *= base;
    }
    return result;
}

LaurentPoly LaurentPoly::shifted(const Exponents& s) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
        Exponents f;
        for (int i = 0; i < kNumVars; ++i) f[i] = e[i] + s[i];
        r.terms_.emplace(f, c);
    }
    return r;
}

int LaurentPoly::max_twice(Var x) const {
    if (terms_.empty()) return 0;
    int m = terms_.begin()->first[static_cast<int>(x)];
    for (const auto& [e, c] : terms_) m = std::max(m, e[static_cast<int>(x)]);
    return m;
}

int LaurentPoly::min_twice(Var x) const {
    if (terms_.empty()) return 0;
    int m = terms_.begin()->first[static_cast<int>(x)];
    for (const auto& [e, c] : terms_) m = std::min(m, e[static_cast<int>(x)]);
    return m;
}

int LaurentPoly::max_total_twice() const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        int s = e[0] + e[1] + e[2] + e[3];
        if (first || s > m) m = s;
        first = false;
    }
    return m;
}

bool LaurentPoly::only_vars(std::initializer_list<Var> allowed) const {
    for (const auto& [e, c] : terms_) {
        for (int i = 0; i < kNumVars; ++i) {
            if (e[i] == 0) continue;
            bool ok = std::any_of(allowed.begin(), allowed.end(),
                                  [i](Var x) { return static_cast<int>(x) == i; });
            if (!ok) return false;
        }
    }
    return true;
}

bool LaurentPoly::is_polynomial() const {
    for (const auto& [e, c] : terms_)
        for (int x : e)
            if (x < 0 || x % 2 != 0) return false;
    return true;
}

bool LaurentPoly::is_nonnegative() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second > 0; });
}

bool LaurentPoly::dominates(const LaurentPoly& b) const { return (*this - b).is_nonnegative(); }

Integer LaurentPoly::eval_at_one() const {
    Integer s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

namespace {

void append_power(std::string& out, char name, int twice) {
    if (twice == 0) return;
    if (!out.empty() && out.back() != '-') out += '*';
    out += name;
    if (twice == 2) return;
    if (twice % 2 == 0 && twice > 0) {
        out += '^' + std::to_string(twice / 2);
    } else if (twice % 2 == 0) {
        out += "^{" + std::to_string(twice / 2) + "}";
    } else {
        out += "^{" + std::to_string(twice) + "/2}";
    }
}

}  // namespace

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Integer mag = c < 0 ? Integer(-c) : c;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string body;
        bool constant = e == Exponents{};
        if (mag != 1 || constant) body = mag.str();
        for (int i = 0; i < kNumVars; ++i) append_power(body, var_name(static_cast<Var>(i)), e[i]);
        out += body;
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    LaurentPoly parse() {
        skip();
        if (pos_ == s_.size()) fail("empty polynomial");
        LaurentPoly result;
        bool first = true;
        while (true) {
            skip();
            if (pos_ == s_.size()) break;
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                while (pos_ < s_.size() && (peek() == '+' || peek() == '-')) {
                    if (peek() == '-') sign = -sign;
                    ++pos_;
                    skip();
                }
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            LaurentPoly term = parse_term();
            result += sign > 0 ? term : -term;
            first = false;
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw LaurentError("cannot parse polynomial at offset " + std::to_string(pos_) + ": " + msg);
    }
    char peek() const { return s_[pos_]; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_factor() const {
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'u' || c == 'v' ||
               c == 'w';
    }
    Integer parse_integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }
    int parse_small_int() {
        bool neg = false;
        if (pos_ < s_.size() && peek() == '-') {
            neg = true;
            ++pos_;
        }
        Integer v = parse_integer();
        if (v > 1000000) fail("exponent too large");
        int r = static_cast<int>(v);
        return neg ? -r : r;
    }
    // Returns the doubled exponent.
    int parse_exponent() {
        skip();
        if (pos_ < s_.size() && peek() == '{') {
            ++pos_;
            skip();
            int num = parse_small_int();
            skip();
            int den = 1;
            if (pos_ < s_.size() && peek() == '/') {
                ++pos_;
                skip();
                den = parse_small_int();
                skip();
            }
            if (pos_ >= s_.size() || peek() != '}') fail("expected '}'");
            ++pos_;
            if (den == 1) return 2 * num;
            if (den == 2) return num;
            fail("only half-integer exponents are supported");
        }
        return 2 * parse_small_int();
    }
    LaurentPoly parse_term() {
        Integer coef = 1;
        LaurentPoly::Exponents e{};
        bool any = false;
        while (true) {
            skip();
            if (any && pos_ < s_.size() && peek() == '*') {
                ++pos_;
                skip();
            }
            if (!at_factor()) break;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef *= parse_integer();
            } else {
                ++pos_;
                int idx = c == 't' ? 0 : c == 'u' ? 1 : c == 'v' ? 2 : 3;
                skip();
                int twice = 2;
                if (pos_ < s_.size() && peek() == '^') {
                    ++pos_;
                    twice = parse_exponent();
                }
                e[idx] += twice;
            }
            any = true;
        }
        if (!any) fail("expected a term");
        return LaurentPoly::monomial(coef, e);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) { return Parser(text).parse(); }

Substitution& Substitution::set(Var x, MonomialImage image) {
    images_[static_cast<int>(x)] = image;
    return *this;
}

MonomialImage mono(int t2, int u2, int v2, int w2, int sign) {
    return MonomialImage{sign, {t2, u2, v2, w2}};
}

LaurentPoly involute(const LaurentPoly& p) {
    LaurentPoly r;
    for (const auto& [e, c] : p.terms()) {
        LaurentPoly::Exponents f;
        for (int i = 0; i < kNumVars; ++i) f[i] = -e[i];
        r += LaurentPoly::monomial(c, f);
    }
    return r;
}

LaurentPoly substitute(const LaurentPoly& p, const Substitution& s) {
    LaurentPoly r;
    for (const auto& [e, c] : p.terms()) {
        LaurentPoly::Exponents f{};
        Integer coef = c;
        for (int i = 0; i < kNumVars; ++i) {
            const auto& img = s.image(static_cast<Var>(i));
            if (!img) {
                f[i] += e[i];
                continue;
            }
            if (img->sign != 1 && img->sign != -1) throw LaurentError("substitution sign must be +1 or -1");
            for (int j = 0; j < kNumVars; ++j) {
                int prod = img->exps[j] * e[i];
                if (prod % 2 != 0)
                    throw LaurentError("substitution produces an exponent outside (1/2)Z");
                f[j] += prod / 2;
            }
            if (img->sign == -1) {
                if (e[i] % 2 != 0) throw LaurentError("cannot apply a sign to a half-integer power");
                if ((e[i] / 2) % 2 != 0) coef = -coef;
            }
        }
        r += LaurentPoly::monomial(coef, f);
    }
    return r;
}

LaurentPoly set_zero(const LaurentPoly& p, Var x) {
    LaurentPoly r;
    int i = static_cast<int>(x);
    for (const auto& [e, c] : p.terms()) {
        if (e[i] < 0) throw LaurentError(std::string("cannot set ") + var_name(x) + " = 0 with negative powers");
        if (e[i] == 0) r += LaurentPoly::monomial(c, e);
    }
    return r;
}

LaurentPoly swap_vars(const LaurentPoly& p, Var a, Var b) {
    LaurentPoly r;
    int i = static_cast<int>(a), j = static_cast<int>(b);
    for (const auto& [e, c] : p.terms()) {
        auto f = e;
        std::swap(f[i], f[j]);
        r += LaurentPoly::monomial(c, f);
    }
    return r;
}

LaurentPoly slice(const LaurentPoly& p, Var x, int twice) {
    LaurentPoly r;
    for (const auto& [e, c] : p.terms())
        if (e[static_cast<int>(x)] == twice) r += LaurentPoly::monomial(c, e);
    return r;
}

LaurentPoly total_degree_slice(const LaurentPoly& p, int twice) {
    LaurentPoly r;
    for (const auto& [e, c] : p.terms())
        if (e[0] + e[1] + e[2] + e[3] == twice) r += LaurentPoly::monomial(c, e);
    return r;
}

LaurentPoly t_to_uv(const LaurentPoly& p) { return substitute(p, Substitution().set(Var::t, mono(0, 2, 2, 0))); }

LaurentPoly t_to_u_over_v(const LaurentPoly& p) {
    return substitute(p, Substitution().set(Var::t, mono(0, 2, -2, 0)));
}

LaurentPoly t_to_uvw2(const LaurentPoly& p) {
    return substitute(p, Substitution().set(Var::t, mono(0, 2, 2, 4)));
}

LaurentPoly t_to(const LaurentPoly& p, Var x) {
    MonomialImage img;
    img.exps[static_cast<int>(x)] = 2;
    return substitute(p, Substitution().set(Var::t, img));
}

Integer CoeffProfile::at(HalfExp e) const {
    int diff = e.twice - lowest.twice;
    if (diff < 0 || diff % 2 != 0) return 0;
    std::size_t idx = static_cast<std::size_t>(diff / 2);
    return idx < coefficients.size() ? coefficients[idx] : Integer(0);
}

bool CoeffProfile::is_nonnegative() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](const Integer& c) { return c >= 0; });
}

bool CoeffProfile::is_symmetric(HalfExp center) const {
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (coefficients[i] == 0) continue;
        HalfExp e{lowest.twice + 2 * static_cast<int>(i)};
        HalfExp mirror{2 * center.twice - e.twice};
        if (at(mirror) != coefficients[i]) return false;
    }
    return true;
}

bool CoeffProfile::is_unimodal() const { return subdiv::is_unimodal(coefficients); }

CoeffProfile profile(const LaurentPoly& p, Var x) {
    CoeffProfile prof;
    if (p.is_zero()) return prof;
    if (!p.only_vars({x})) throw LaurentError("profile requires a univariate polynomial");
    int lo = p.min_twice(x), hi = p.max_twice(x);
    for (const auto& [e, c] : p.terms())
        if ((e[static_cast<int>(x)] - lo) % 2 != 0)
            throw LaurentError("profile requires exponents differing by integers");
    prof.lowest = HalfExp{lo};
    prof.coefficients.assign(static_cast<std::size_t>((hi - lo) / 2 + 1), Integer(0));
    for (const auto& [e, c] : p.terms())
        prof.coefficients[static_cast<std::size_t>((e[static_cast<int>(x)] - lo) / 2)] = c;
    return prof;
}

bool is_unimodal(const std::vector<Integer>& seq) {
    std::size_t i = 0, n = seq.size();
    while (i + 1 < n && seq[i] <= seq[i + 1]) ++i;
    while (i + 1 < n && seq[i] >= seq[i + 1]) ++i;
    return i + 1 >= n;
}

bool is_symmetric_sequence(const std::vector<Integer>& seq) {
    for (std::size_t i = 0, n = seq.size(); i < n / 2; ++i)
        if (seq[i] != seq[n - 1 - i]) return false;
    return true;
}

Integer binomial(long n, long k) {
    if (k < 0) return 0;
    if (n < 0) {
        Integer r = binomial(-n + k - 1, k);
        return k % 2 == 0 ? r : Integer(-r);
    }
    if (k > n) return 0;
    Integer r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

}  // namespace subdiv

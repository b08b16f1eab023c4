#include "subdiv/checks.hpp"

#include "claim.hpp"

namespace subdiv {

void Report::add(std::string name, bool passed, std::string detail) {
    results_.push_back({std::move(name), passed, std::move(detail)});
}

void Report::expect_equal(std::string name, const LaurentPoly& got, const LaurentPoly& want) {
    const bool ok = got == want;
    add(std::move(name), ok, ok ? std::string() : "got " + got.to_string() + ", expected " + want.to_string());
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& r : other.results_) results_.push_back({prefix + r.name, r.passed, r.detail});
}

bool Report::all_passed() const { return failures() == 0; }

std::size_t Report::failures() const {
    std::size_t n = 0;
    for (const auto& r : results_) n += !r.passed;
    return n;
}

namespace {

LaurentPoly uv_power(int twice_u, int twice_v) { return LaurentPoly::monomial(1, {0, twice_u, twice_v, 0}); }

LaurentPoly v_to_one(const LaurentPoly& p) { return substitute(p, Substitution().set(Var::v, mono(0, 0, 0, 0))); }

bool is_identity(const Sfs& s) {
    if (s.gamma_ptr() != s.base_ptr()) return false;
    for (Elem y = 0; y < s.gamma().size(); ++y)
        if (s.sigma(y) != y) return false;
    return true;
}

std::string pair_name(const Sfs& s, Elem x, Elem y) {
    return "(x=" + s.base().name(x) + ", y=" + s.gamma().name(y) + ")";
}

}  // namespace

Report check_sfs(Sfs& s) {
    const RankedPoset& G = s.gamma();
    const RankedPoset& B = s.base();
    const bool identity = is_identity(s);
    const bool geometric = s.flags().geometric;

    Claim interior("pushforward: h of restriction equals reversed interior sum");
    Claim leading("h of restriction: leading coefficients");
    Claim local_sym("local h: symmetry");
    Claim local_ends("local h: constant, top and linear coefficients");
    Claim full_rank("local h: equals 1 at full-rank preimages");
    Claim interchange("mixed h: u,v interchange");
    Claim specialize("mixed h: v = 1 gives h");
    Claim constant("mixed h: u = 0 gives v^(r-n)");
    Claim degree("mixed h: degree bound and top slice");
    Claim interior_mixed("mixed h: interior case n = 0");
    Claim identity_mixed("mixed h: identity subdivision gives g(uv)");
    Claim tilde_special("mixed pushforward: v = 1 gives eta(t = u)");
    Claim nonneg("non-negativity of h, local h and mixed h");
    Claim eta_push("pushforward: eta row equals pushforward of e_y * gamma");
    Claim acceptable("pushforward: acceptable functions stay acceptable");
    Claim lambda_rec("lambda: eta = lambda * gamma_B");
    Claim tilde_rec("mixed pushforward: tilde eta = lambda(u/v) * gamma_B(uv)");

    IncidenceFunction gamma_g = gamma(s.gamma_g());
    IncidenceFunction gamma_b = gamma(s.base_g());
    IncidenceFunction gamma_b_inv = gamma_inverse(s.base_g());

    for (Elem y = 0; y < G.size(); ++y) {
        const Elem sy = s.sigma(y);
        PosetFunction row = s.pushforward(PosetFunction::basis(s.gamma_ptr(), y) * gamma_g);
        acceptable.require(is_acceptable(row), "row " + G.name(y));
        for (Elem x = 0; x < B.size(); ++x) {
            const std::string where = pair_name(s, x, y);
            eta_push.equal(row.at(x), s.eta(x, y), where);
            if (!s.below(y, x)) continue;
            LaurentPoly lam, tilde;
            for (Elem w : B.down(x)) {
                if (!s.below(y, w)) continue;
                lam += s.eta(w, y) * gamma_b_inv.at(w, x);
                tilde += t_to_u_over_v(s.lambda(w, y)) * t_to_uv(gamma_b.at(w, x));
            }
            lambda_rec.equal(lam, s.lambda(x, y), where);
            tilde_rec.equal(tilde, s.tilde_eta(x, y), where);

            const int r = s.gap(x, y);
            const int n = B.rho(sy, x);
            const LaurentPoly& h = s.h_restricted(x, y);
            const LaurentPoly& l = s.local_h(x, y);
            const LaurentPoly& m = s.mixed_h(x, y);

            LaurentPoly inner;
            long beta = 0;
            for (Elem z : G.up(y)) {
                if (s.sigma(z) != x) continue;
                inner += s.gamma_g().g(y, z) * t_minus_one_pow(B.rank(x) - G.rank(z));
                beta += G.rho(y, z) == 1;
            }
            interior.equal(h, inner, where);
            if (sy == x) {
                leading.require(h.coeff_t(r) == 1 && h.coeff_t(r - 1) == beta - r, where);
            } else {
                leading.require(h.coeff_t(r) == 0 && h.coeff_t(r - 1) == beta, where);
            }

            local_sym.equal(reverse_t(l, r), l, where);
            const int ends = n == 0 ? 1 : 0;
            const long linear = n == 0 ? beta - r : n == 1 ? beta - 1 : beta;
            local_ends.require(l.coeff_t(0) == ends && l.coeff_t(r) == ends &&
                                   (r < 2 || (l.coeff_t(1) == linear && l.coeff_t(r - 1) == linear)),
                               where);
            if (sy == x && G.rank(y) == B.rank(x)) full_rank.equal(l, LaurentPoly(1), where);

            interchange.equal(swap_vars(m, Var::u, Var::v), m, where);
            specialize.equal(v_to_one(m), t_to(h, Var::u), where);
            constant.equal(set_zero(m, Var::u), LaurentPoly::power(Var::v, 2 * (r - n)), where);
            const LaurentPoly top_slice = uv_power(0, 2 * r) * t_to_u_over_v(l);
            degree.require(m.max_total_twice() <= 2 * r, where);
            degree.equal(total_degree_slice(m, 2 * r), top_slice, where);
            if (n == 0) interior_mixed.equal(m, uv_power(0, 2 * r) * t_to_u_over_v(h), where);
            if (identity) identity_mixed.equal(m, t_to_uv(s.base_g().g(sy, x)), where);
            tilde_special.equal(v_to_one(s.tilde_eta(x, y)), t_to(s.eta(x, y), Var::u), where);
            if (geometric) nonneg.require(h.is_nonnegative() && l.is_nonnegative() && m.is_nonnegative(), where);
        }
    }

    Report report;
    for (const Claim* c : {&interior, &leading, &eta_push, &acceptable, &lambda_rec, &tilde_rec, &local_sym,
                           &local_ends, &full_rank, &interchange, &specialize, &constant, &degree, &interior_mixed,
                           &tilde_special})
        c->report(report);
    if (identity) identity_mixed.report(report);
    if (geometric) nonneg.report(report);

    if (G.bottom() && is_eulerian(B)) {
        const Elem g0 = *G.bottom(), top = *B.top();
        const int r = s.gap(top, g0);
        const LaurentPoly mixed = s.mixed_h();
        LaurentPoly sym, inv;
        const LaurentPoly uv_minus_one = LaurentPoly::monomial(1, {0, 2, 2, 0}) - LaurentPoly(1);
        for (Elem x = 0; x < B.size(); ++x) {
            const int k = B.rho(x, top);
            sym += s.mixed_h(x, g0) * uv_minus_one.pow(static_cast<unsigned>(k));
            LaurentPoly term = s.mixed_h(x, g0) * t_to_uv(s.base_g().g_dual(x, top));
            inv += k % 2 == 0 ? term : -term;
        }
        report.expect_equal("mixed h: symmetry", uv_power(2 * r, 2 * r) * involute(mixed), sym);
        report.expect_equal("mixed h: inversion recovers local h", inv, uv_power(0, 2 * r) * t_to_u_over_v(s.local_h()));
        report.add("rank: minimal elements agree with lengths", s.rank() == G.length() - B.length());
    }
    return report;
}

Report check_composition(Sfs& tau, Sfs& sigma) {
    Sfs both = compose(tau, sigma);
    const RankedPoset& O = tau.gamma();
    const RankedPoset& G = sigma.gamma();
    const RankedPoset& B = sigma.base();
    Claim local("composition: local h");
    Claim mixed("composition: mixed h");
    Claim tilde("composition: mixed pushforward");
    for (Elem z = 0; z < O.size(); ++z) {
        for (Elem x = 0; x < B.size(); ++x) {
            if (!both.below(z, x)) continue;
            LaurentPoly l, m, te;
            for (Elem y = 0; y < G.size(); ++y) {
                if (!tau.below(z, y) || !sigma.below(y, x)) continue;
                l += sigma.local_h(x, y) * tau.local_h(y, z);
                m += sigma.mixed_h(x, y) * LaurentPoly::power(Var::v, 2 * (G.rank(y) - O.rank(z))) *
                     t_to_u_over_v(tau.local_h(y, z));
                te += sigma.tilde_eta(x, y) * t_to_u_over_v(tau.lambda(y, z));
            }
            const std::string where = "(x=" + B.name(x) + ", z=" + O.name(z) + ")";
            local.equal(both.local_h(x, z), l, where);
            mixed.equal(both.mixed_h(x, z), m, where);
            tilde.equal(both.tilde_eta(x, z), te, where);
        }
    }
    Report report;
    local.report(report);
    mixed.report(report);
    tilde.report(report);
    if (O.bottom() && G.bottom() && B.bottom())
        report.add("composition: ranks add", both.rank() == tau.rank() + sigma.rank());
    return report;
}

}  // namespace subdiv

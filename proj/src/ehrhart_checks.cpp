#include "subdiv/ehrhart.hpp"

#include "claim.hpp"

namespace subdiv {

namespace {

LaurentPoly var_power(Var x, int e) { return LaurentPoly::power(x, 2 * e); }

LaurentPoly signed_term(const LaurentPoly& p, int rho) { return rho % 2 == 0 ? p : -p; }

LaurentPoly invert_uv(const LaurentPoly& p) {
    return substitute(p, Substitution().set(Var::u, mono(0, -2, 0, 0)).set(Var::v, mono(0, 0, -2, 0)));
}

LaurentPoly invert_uvw(const LaurentPoly& p) {
    return substitute(p, Substitution()
                             .set(Var::u, mono(0, -2, 0, 0))
                             .set(Var::v, mono(0, 0, -2, 0))
                             .set(Var::w, mono(0, 0, 0, -2)));
}

LaurentPoly set_one(const LaurentPoly& p, Var x) { return substitute(p, Substitution().set(x, mono(0, 0, 0, 0))); }

Integer coeff(const LaurentPoly& p, int k) { return p.coeff_t(k); }

std::string face_name(const RankedPoset& B, Elem q) { return "face " + B.name(q); }

// t^{-rho/2} h* on the elements of a poset.
PosetFunction heart(const PosetPtr& poset, const std::vector<LaurentPoly>& hstar) {
    PosetFunction f(poset);
    for (Elem x = 0; x < poset->size(); ++x) f.at(x) = LaurentPoly::t_half(-poset->rank(x)) * hstar[x];
    return f;
}

}  // namespace

Report check_polytope(PolytopeInvariants& pi) {
    const RankedPoset& B = pi.poset();
    Claim interp("h*: counts agree with the interpolating polynomial of degree dim");
    Claim reciprocity("h*: reciprocity for interior counts");
    Claim ends("h*: constant term 1 and top coefficient counts interior points");
    Claim volume("h*: value at 1 is the normalized volume");
    Claim nonneg("h*, l*, mixed h*: non-negative");
    Claim local_sym("l*: symmetry");
    Claim local_ends("l*: constant term 0 and linear and top coefficients count interior points");
    Claim inverse("l*: h* recovered from l* and g");
    Claim mixed_swap("mixed h*: symmetric in u and v");
    Claim mixed_special("mixed h*: v = 1 gives h*");
    Claim mixed_top("mixed h*: top combined degree is v^(dim+1) l*(u/v)");
    Claim oracle("box oracle: agrees with counting on simplices");
    Claim acceptable("reciprocity: t^(-rho/2) h* is acceptable");

    for (Elem q : B.by_rank()) {
        const LatticePolytope& face = pi.faces().faces[q];
        const int d = face.dim();
        const std::string where = face_name(B, q);
        const LaurentPoly& h = pi.hstar(q);
        const LaurentPoly& l = pi.local_hstar(q);
        if (d >= 0) {
            const std::vector<Integer> counts = ehrhart_counts(face, d + 2);
            const std::vector<Integer> base(counts.begin(), counts.begin() + d + 1);
            bool ok = true;
            for (long m = d + 1; m <= d + 2; ++m) ok = ok && interpolate(base, m) == Rational(counts[static_cast<std::size_t>(m)]);
            interp.require(ok, where);
            bool recip = true;
            for (long m = 1; m <= 2; ++m) {
                Integer inner = face.interior_count(m);
                if (d % 2 == 1) inner = -inner;
                recip = recip && interpolate(base, -m) == Rational(inner);
            }
            reciprocity.require(recip, where);
            ends.require(coeff(h, 0) == 1 && coeff(h, d) == face.interior_count(1) && h.max_twice(Var::t) <= 2 * d,
                         where);
            volume.require(h.eval_at_one() == face.normalized_volume(), where);
            local_sym.equal(reverse_t(l, d + 1), l, where);
            bool lends = coeff(l, 0) == 0;
            if (d >= 1) lends = lends && coeff(l, 1) == coeff(l, d) && coeff(l, d) == face.interior_count(1);
            local_ends.require(lends, where);
        }
        LaurentPoly rebuilt;
        for (Elem r : B.down(q)) rebuilt += pi.local_hstar(r) * pi.g().g(r, q);
        inverse.equal(rebuilt, h, where);
        const LaurentPoly mixed = pi.mixed_hstar(q);
        nonneg.require(h.is_nonnegative() && l.is_nonnegative() && mixed.is_nonnegative(), where);
        mixed_swap.equal(swap_vars(mixed, Var::u, Var::v), mixed, where);
        mixed_special.equal(set_one(mixed, Var::v), t_to(h, Var::u), where);
        if (d >= 0)
            mixed_top.equal(total_degree_slice(mixed, 2 * (d + 1)), var_power(Var::v, d + 1) * t_to_u_over_v(l), where);
        if (face.is_simplex() && d >= 0) {
            const BoxOracle box = hstar_box_oracle(face);
            oracle.require(box.hstar == h && box.local == l, where);
        }
    }
    std::vector<LaurentPoly> hs(B.size());
    for (Elem q = 0; q < B.size(); ++q) hs[q] = pi.hstar(q);
    acceptable.require(is_acceptable(heart(pi.faces().poset, hs)), "polytope");

    Report r;
    for (const Claim* c : {&interp, &reciprocity, &ends, &volume, &nonneg, &local_sym, &local_ends, &inverse,
                           &mixed_swap, &mixed_special, &mixed_top, &oracle, &acceptable})
        c->report(r);
    return r;
}

Report check_subdivision(SubdivisionInvariants& s) {
    Report report;
    report.merge(check_sfs(s.sfs()), "sfs: ");

    Sfs& sigma = s.sfs();
    const CellComplex& c = s.complex();
    const RankedPoset& G = sigma.gamma();
    const RankedPoset& B = sigma.base();
    PolytopeInvariants& P = s.base();
    const bool trivial = G.size() == B.size();

    Claim cell_oracle("cells: box oracle agrees with counting on simplicial cells");
    Claim cell_nonneg("cells: h* and l* non-negative");
    Claim push1("pushforward of t^(-rho/2) h* over S is t^(-rho/2) h* over P");
    Claim push2("h*(P) from h* of interior cells");
    Claim push3("h*(P) = sum of l*(F) h(lk F)");
    Claim push4("l*(P) = sum of l*(F) l(lk F)");
    Claim accept("reciprocity: t^(-rho/2) h* over S is acceptable");

    Claim b1("limit mixed: symmetric in u and v");
    Claim b2("limit mixed: v = 1 gives h* and l*");
    Claim b3("limit mixed: symmetry");
    Claim b4("limit mixed: u = 0 gives 1 and 0");
    Claim b5("limit mixed: trivial subdivision gives the mixed h*");
    Claim b6("limit mixed: non-negative");
    Claim b7("limit mixed: inversion");

    Claim c1("refined: symmetric in u and v and under (1/u, 1/v, uvw)");
    Claim c2("refined: w = 1 and (u/w, 1, w) specializations");
    Claim c3("refined: symmetry");
    Claim c4("refined: u = 0 and w = 0 give 1");
    Claim c5("refined: trivial subdivision gives h*(uw, vw)");
    Claim c6("refined: non-negative");
    Claim c7("refined: inversion");
    Claim c8("refined: w-degree and top w coefficient");

    Claim stack("diamonds: stacking the r-local tables gives the h*-diamond");
    Claim local_layer("diamonds: local diamond is the top r-local table");
    Claim diagonals("diamonds: diagonal sums give h*, l* and strips of the diamond of P");
    Claim diamond_sym("diamonds: reflection symmetries");
    Claim boundary("diamonds: boundary entries equal interior point counts of cells");
    Claim small_terms("refined: small-term formulas in dimension at most 3");

    for (Elem y = 0; y < G.size(); ++y) {
        const LatticePolytope& cell = c.element(y);
        const std::string where = "cell " + G.name(y);
        cell_nonneg.require(s.cell_hstar(y).is_nonnegative() && s.cell_local(y).is_nonnegative(), where);
        if (cell.dim() >= 1 && cell.is_simplex()) {
            const BoxOracle box = hstar_box_oracle(cell);
            cell_oracle.require(box.hstar == s.cell_hstar(y) && box.local == s.cell_local(y), where);
        }
    }

    std::vector<LaurentPoly> cell_h(G.size()), face_h(B.size());
    for (Elem y = 0; y < G.size(); ++y) cell_h[y] = s.cell_hstar(y);
    for (Elem q = 0; q < B.size(); ++q) face_h[q] = P.hstar(q);
    const PosetFunction pushed = sigma.pushforward(heart(sigma.gamma_ptr(), cell_h));
    const PosetFunction target = heart(sigma.base_ptr(), face_h);
    accept.require(is_acceptable(heart(sigma.gamma_ptr(), cell_h)), "complex");

    for (Elem q : B.by_rank()) {
        const int d = B.rank(q) - 1;
        const std::string where = face_name(B, q);
        push1.equal(pushed.at(q), target.at(q), where);
        LaurentPoly sum2, sum3, sum4;
        for (Elem y = 0; y < G.size(); ++y) {
            if (!sigma.below(y, q)) continue;
            if (sigma.sigma(y) == q) sum2 += s.cell_hstar(y) * t_minus_one_pow(B.rank(q) - G.rank(y));
            sum3 += s.cell_local(y) * sigma.h_restricted(q, y);
            sum4 += s.cell_local(y) * sigma.local_h(q, y);
        }
        push2.equal(sum2, P.hstar(q), where);
        push3.equal(sum3, P.hstar(q), where);
        push4.equal(sum4, P.local_hstar(q), where);

        const LaurentPoly& hs = s.limit_mixed(q);
        const LaurentPoly& ls = s.local_limit_mixed(q);
        b1.require(swap_vars(hs, Var::u, Var::v) == hs && swap_vars(ls, Var::u, Var::v) == ls, where);
        b2.require(set_one(hs, Var::v) == t_to(P.hstar(q), Var::u) && set_one(ls, Var::v) == t_to(P.local_hstar(q), Var::u),
                   where);
        const LaurentPoly uv_top = LaurentPoly::monomial(1, {0, 2 * (d + 1), 2 * (d + 1), 0});
        LaurentPoly sym_rhs;
        for (Elem r : B.down(q)) sym_rhs += s.limit_mixed(r) * t_to_uv(t_minus_one_pow(B.rho(r, q)));
        b3.require(uv_top * invert_uv(hs) == sym_rhs && uv_top * invert_uv(ls) == ls, where);
        if (d >= 0) b4.require(set_zero(hs, Var::u) == 1 && set_zero(ls, Var::u).is_zero(), where);
        if (trivial)
            b5.require(hs == P.mixed_hstar(q) && ls == var_power(Var::v, d + 1) * t_to_u_over_v(P.local_hstar(q)), where);
        b6.require(hs.is_nonnegative() && ls.is_nonnegative(), where);
        LaurentPoly inv_h, inv_l;
        for (Elem r : B.down(q)) {
            inv_h += s.local_limit_mixed(r) * t_to_uv(P.g().g(r, q));
            inv_l += signed_term(s.limit_mixed(r) * t_to_uv(P.g().g_dual(r, q)), B.rho(r, q));
        }
        b7.require(inv_h == hs && inv_l == ls, where);

        const LaurentPoly& h3 = s.refined(q);
        const LaurentPoly flipped = substitute(h3, Substitution()
                                                       .set(Var::u, mono(0, -2, 0, 0))
                                                       .set(Var::v, mono(0, 0, -2, 0))
                                                       .set(Var::w, mono(0, 2, 2, 2)));
        c1.require(swap_vars(h3, Var::u, Var::v) == h3 && flipped == h3, where);
        const LaurentPoly shifted = substitute(h3, Substitution().set(Var::u, mono(0, 2, 0, -2)).set(Var::v, mono(0, 0, 0, 0)));
        c2.require(set_one(h3, Var::w) == hs && shifted == swap_vars(P.mixed_hstar(q), Var::v, Var::w), where);
        const LaurentPoly uvw_top = LaurentPoly::monomial(1, {0, 2 * (d + 1), 2 * (d + 1), 4 * (d + 1)});
        LaurentPoly sym3;
        for (Elem r : B.down(q)) sym3 += s.refined(r) * t_to_uvw2(t_minus_one_pow(B.rho(r, q)));
        c3.equal(uvw_top * invert_uvw(h3), sym3, where);
        if (d >= 0) c4.require(set_zero(h3, Var::u) == 1 && set_zero(h3, Var::w) == 1, where);
        if (trivial)
            c5.equal(h3,
                     substitute(P.mixed_hstar(q), Substitution().set(Var::u, mono(0, 2, 0, 2)).set(Var::v, mono(0, 0, 2, 2))),
                     where);
        c6.require(h3.is_nonnegative(), where);
        LaurentPoly inv3;
        for (Elem r : B.down(q)) inv3 += signed_term(s.refined(r) * t_to_uvw2(P.g().g_dual(r, q)), B.rho(r, q));
        c7.equal(inv3, var_power(Var::w, d + 1) * ls, where);
        c8.require(h3.max_twice(Var::w) <= 2 * (d + 1) && slice(h3, Var::w, 2 * (d + 1)) == var_power(Var::w, d + 1) * ls,
                   where);

        if (d < 1) continue;
        const Diamond hd = hstar_diamond(hs, d);
        const Diamond ld = local_hstar_diamond(ls, d);
        const std::vector<Diamond> layers = r_local_diamonds(h3, d);
        const Diamond pd = hstar_diamond(P.mixed_hstar(q), d);
        const auto n = static_cast<std::size_t>(d);
        bool stacked = true, symmetric = true, diag = true;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Integer sum = 0;
                for (std::size_t r = std::max(a, b); r < n; ++r) sum += layers[r].at(a, b);
                stacked = stacked && sum == hd.at(a, b);
                symmetric = symmetric && hd.at(a, b) == hd.at(b, a) && ld.at(a, b) == ld.at(b, a) &&
                            ld.at(a, b) == ld.at(n - 1 - a, n - 1 - b);
            }
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t a = 0; a <= r; ++a)
                for (std::size_t b = 0; b <= r; ++b)
                    symmetric = symmetric && layers[r].at(a, b) == layers[r].at(b, a) &&
                                layers[r].at(a, b) == layers[r].at(r - a, r - b);
        for (std::size_t a = 0; a < n; ++a) {
            Integer hsum = 0, lsum = 0;
            for (std::size_t b = 0; b < n; ++b) {
                hsum += hd.at(a, b);
                lsum += ld.at(a, b);
            }
            diag = diag && hsum == coeff(P.hstar(q), static_cast<int>(a) + 1) &&
                   lsum == coeff(P.local_hstar(q), static_cast<int>(a) + 1);
        }
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t a = 0; a <= r; ++a) {
                Integer sum = 0;
                for (std::size_t b = 0; b <= r; ++b) sum += layers[r].at(a, b);
                diag = diag && sum == pd.at(a, r - a);
            }
        stack.require(stacked, where);
        local_layer.require(ld.entries == layers[n - 1].entries, where);
        diagonals.require(diag, where);
        diamond_sym.require(symmetric, where);
    }

    // boundary formulas and small terms over the whole polytope
    const int dim = s.dim();
    if (dim >= 1) {
        const Elem top = s.top();
        const auto n = static_cast<std::size_t>(dim);
        const Diamond hd = hstar_diamond(s.limit_mixed(), dim);
        const Diamond ld = local_hstar_diamond(s.local_limit_mixed(), dim);
        std::vector<Integer> all(n + 2), interior(n + 2), boundary_cells(n + 2);
        for (Elem y = 0; y < G.size(); ++y) {
            if (G.rank(y) == 0) continue;
            const auto k = static_cast<std::size_t>(G.rank(y) - 1);
            const Integer pts = c.element(y).interior_count(1);
            all[k] += pts;
            (sigma.sigma(y) == top ? interior : boundary_cells)[k] += pts;
        }
        bool ok = Integer(dim + 1) + hd.at(0, 0) == all[0] + all[1];
        ok = ok && ld.at(0, 0) == interior[0] + interior[1] && ld.at(n - 1, n - 1) == ld.at(0, 0) &&
             hd.at(n - 1, n - 1) == ld.at(0, 0);
        for (std::size_t q = 1; q < n; ++q) {
            ok = ok && hd.at(0, q) == all[q + 1] && hd.at(q, 0) == all[q + 1];
            ok = ok && ld.at(0, q) == interior[q + 1] && ld.at(q, 0) == interior[q + 1] &&
                 ld.at(n - 1, n - 1 - q) == interior[q + 1] && hd.at(n - 1, n - 1 - q) == interior[q + 1];
        }
        if (dim == 3) {
            ok = ok && coeff(P.local_hstar(), 2) == ld.at(1, 1) + 2 * interior[2];
            ok = ok && coeff(P.hstar(), 2) == hd.at(1, 1) + 2 * interior[2] + boundary_cells[2];
        }
        boundary.require(ok, "polytope");
        if (dim <= 3) small_terms.equal(refined_from_small_terms(s), s.refined(), "polytope");
    }

    for (const Claim* cl : {&cell_oracle, &cell_nonneg, &push1, &push2, &push3, &push4, &accept, &b1, &b2, &b3, &b4, &b5,
                            &b6, &b7, &c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8, &stack, &local_layer, &diagonals,
                            &diamond_sym, &boundary, &small_terms})
        cl->report(report);
    return report;
}

Report check_bounds(SubdivisionInvariants& s) {
    const RankedPoset& B = s.base().poset();
    PolytopeInvariants& P = s.base();
    const bool regular = s.complex().regular();
    Claim hibi("h*: h*_1 <= h*_i when there are interior points");
    Claim local_lower("l*: l*_1 <= l*_i");
    Claim dominate("limit mixed: h*(P,S) >= l*(P,S)");
    Claim strips("diamonds: first entry of each horizontal strip is a lower bound");
    Claim edge("diamonds: h* and local diamonds agree on the upper boundary");
    Claim layer_strips("r-local diamonds: first entry of each horizontal strip is a lower bound");
    Claim unimodal("r-local diamonds: vertical strips symmetric and unimodal (regular)");

    for (Elem q : B.by_rank()) {
        const int d = B.rank(q) - 1;
        if (d < 1) continue;
        const std::string where = face_name(B, q);
        const LaurentPoly& h = P.hstar(q);
        const LaurentPoly& l = P.local_hstar(q);
        if (P.faces().faces[q].interior_count(1) > 0) {
            bool ok = true;
            for (int i = 1; i < d; ++i) ok = ok && coeff(h, 1) <= coeff(h, i);
            hibi.require(ok, where);
        }
        bool lok = true;
        for (int i = 1; i <= d; ++i) lok = lok && coeff(l, 1) <= coeff(l, i);
        local_lower.require(lok, where);
        dominate.require(s.limit_mixed(q).dominates(s.local_limit_mixed(q)), where);

        const auto n = static_cast<std::size_t>(d);
        const Diamond hd = hstar_diamond(s.limit_mixed(q), d);
        const Diamond ld = local_hstar_diamond(s.local_limit_mixed(q), d);
        bool sok = true, eok = true;
        for (const Diamond* t : {&hd, &ld})
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i <= k; ++i) {
                    sok = sok && t->at(k, 0) <= t->at(k - i, i);
                    if (k + i < n) sok = sok && t->at(n - 1, k) <= t->at(n - 1 - i, k + i);
                }
        for (std::size_t k = 0; k < n; ++k) eok = eok && hd.at(n - 1, k) == ld.at(n - 1, k);
        strips.require(sok, where);
        edge.require(eok, where);

        const std::vector<Diamond> layers = r_local_diamonds(s.refined(q), d);
        bool rok = true, uok = true;
        for (std::size_t r = 0; r < n; ++r) {
            const Diamond& t = layers[r];
            for (std::size_t k = 0; k <= r; ++k)
                for (std::size_t i = 0; i <= k; ++i) {
                    rok = rok && t.at(k, 0) <= t.at(k - i, i);
                    if (k + i <= r) rok = rok && t.at(r, k) <= t.at(r - i, k + i);
                }
            for (std::size_t k = 0; k <= r; ++k) {
                std::vector<Integer> strip;
                for (std::size_t i = 0; k + i <= r; ++i) strip.push_back(t.at(k + i, i));
                uok = uok && is_symmetric_sequence(strip) && is_unimodal(strip);
            }
        }
        layer_strips.require(rok, where);
        if (regular) unimodal.require(uok, where);
    }
    Report r;
    for (const Claim* c : {&hibi, &local_lower, &dominate, &strips, &edge, &layer_strips, &unimodal}) c->report(r);
    return r;
}

Report check_refinement(SubdivisionInvariants& fine, SubdivisionInvariants& coarse) {
    Sfs tau = refinement_map(fine.complex(), coarse.complex());
    Sfs& sigma = coarse.sfs();
    Report report;
    report.merge(check_composition(tau, sigma));

    const RankedPoset& S = sigma.gamma();
    const RankedPoset& B = sigma.base();
    std::vector<LaurentPoly> over(S.size()), local_over(S.size());
    for (Elem f = 0; f < S.size(); ++f) {
        over[f] = limit_mixed_over(tau, fine.cell_locals(), f, false);
        local_over[f] = limit_mixed_over(tau, fine.cell_locals(), f, true);
    }

    Claim push("pushforward of t^(-rho/2) h* from the fine to the coarse complex");
    Claim r1("refinement: limit mixed from interior coarse cells");
    Claim r2("refinement: limit mixed from links in the coarse complex");
    Claim r3("refinement: local limit mixed from links in the coarse complex");
    Claim cells("refinement: restriction to a coarse cell has the cell's h* and l* at v = 1");

    std::vector<LaurentPoly> fine_h(tau.gamma().size()), coarse_h(S.size());
    for (Elem y = 0; y < fine_h.size(); ++y) fine_h[y] = fine.cell_hstar(y);
    for (Elem f = 0; f < S.size(); ++f) coarse_h[f] = coarse.cell_hstar(f);
    const PosetFunction pushed = tau.pushforward(heart(tau.gamma_ptr(), fine_h));
    const PosetFunction target = heart(tau.base_ptr(), coarse_h);
    for (Elem f = 0; f < S.size(); ++f) {
        const std::string where = "cell " + S.name(f);
        push.equal(pushed.at(f), target.at(f), where);
        cells.require(set_one(over[f], Var::v) == t_to(coarse.cell_hstar(f), Var::u) &&
                          set_one(local_over[f], Var::v) == t_to(coarse.cell_local(f), Var::u),
                      where);
    }
    for (Elem q : B.by_rank()) {
        const std::string where = face_name(B, q);
        LaurentPoly sum1, sum2, sum3;
        for (Elem f = 0; f < S.size(); ++f) {
            if (!sigma.below(f, q)) continue;
            if (sigma.sigma(f) == q) sum1 += over[f] * t_to_uv(t_minus_one_pow(B.rank(q) - S.rank(f)));
            sum2 += local_over[f] * t_to_uv(sigma.h_restricted(q, f));
            sum3 += local_over[f] * t_to_uv(sigma.local_h(q, f));
        }
        r1.equal(sum1, fine.limit_mixed(q), where);
        r2.equal(sum2, fine.limit_mixed(q), where);
        r3.equal(sum3, fine.local_limit_mixed(q), where);
    }
    for (const Claim* c : {&push, &r1, &r2, &r3, &cells}) c->report(report);
    return report;
}

}  // namespace subdiv

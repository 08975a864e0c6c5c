#include "gfc/fedosov.hpp"

#include <set>

namespace gfc {

Derivation koszul_delta(const Model& m) {
    const Context& ctx = m.ctxN();
    Derivation d(ctx, 1);
    for (int k = 0; k < m.dim(); ++k)
        d.set_coeff(m.y_index(k), Elem::generator(ctx, m.xi_index(k)));
    return d;
}

Derivation koszul_eta(const Model& m) {
    const Context& ctx = m.ctxN();
    Derivation d(ctx, -1);
    for (int k = 0; k < m.dim(); ++k)
        d.set_coeff(m.xi_index(k), Elem::generator(ctx, m.y_index(k)));
    return d;
}

Elem homotopy_h(const Model& m, const Elem& e) {
    const Context& ctx = m.ctxN();
    Derivation eta = koszul_eta(m);
    // group by (r, q); eta is (r, q)-homogeneous so components stay apart
    std::set<std::pair<int, int>> seen;
    for (const auto& [mono, c] : e.terms())
        seen.insert({mono_order(ctx, mono, GenClass::Form), mono_order(ctx, mono, GenClass::Fiber)});
    Elem out(ctx);
    for (auto [r, q] : seen) {
        if (r + q == 0) continue;
        out += eta.apply(e.bigrade(r, q)) * Rat(-1, r + q);
    }
    return out;
}

Elem proj_sigma(const Model& m, const Elem& e) { return e.bigrade(0, 0); }

Derivation covariant_d(const Model& m) {
    const Context& ctx = m.ctxN();
    Derivation d(ctx, 1);
    for (int k = 0; k < m.dim(); ++k) {
        Derivation nk = m.connection_derivation(k);
        d += nk.scaled_left(Elem::generator(ctx, m.xi_index(k)), ctx.degree(m.xi_index(k)));
    }
    return d;
}

namespace {

// Defect of a degree-one derivation: (1/2)[D, D]. Its coefficients must sit
// on the fiber directions only.
Derivation half_square(const Model& m, const Derivation& D) {
    Derivation sq = Derivation::commutator(D, D) * Rat(1, 2);
    const Context& ctx = m.ctxN();
    for (int i = 0; i < ctx.size(); ++i) {
        if (ctx.cls(i) == GenClass::Fiber) continue;
        if (!sq.coeff(i).is_zero())
            throw FlatnessFailure("D^2 has a non-vertical component at d/d" + ctx.gen(i).name +
                                  ": " + sq.coeff(i).str());
    }
    return sq;
}

} // namespace

Derivation build_A(const Model& m, int orders) {
    const Context& ctx = m.ctxN();
    if (m.y_order() < 2) throw TruncationTooSmall("build_A needs y_order >= 2");
    int smax = orders > 0 ? orders : ctx.series_cap;
    Derivation delta = koszul_delta(m);
    Derivation D0 = -delta + covariant_d(m);
    Derivation A(ctx, 1);
    for (int s = 2; s <= smax; ++s) {
        Derivation Dcur = D0 + A;
        Derivation defect = half_square(m, Dcur);
        Derivation As(ctx, 1);
        bool any = false;
        for (int j = 0; j < m.dim(); ++j) {
            Elem cj = defect.coeff(m.y_index(j)).bigrade(2, s - 1);
            if (cj.is_zero()) continue;
            any = true;
            if (!delta.apply(cj).is_zero())
                throw DefectNotDeltaClosed("defect at order " + std::to_string(s) +
                                           " is not delta-closed at y_" + m.coord_name(j));
            // delta h + h delta = -id away from bidegree (0,0)
            Elem aj = -homotopy_h(m, cj);
            if (!(delta.apply(aj) - cj).is_zero())
                throw DefectNotDeltaClosed("homotopy failed to invert delta at order " +
                                           std::to_string(s));
            As.set_coeff(m.y_index(j), aj);
        }
        if (any) A += As;
    }
    // certify: defect dead strictly below the context cap
    Derivation defect = half_square(m, D0 + A);
    for (int j = 0; j < m.dim(); ++j) {
        Elem c = defect.coeff(m.y_index(j));
        for (const auto& [mono, coef] : c.terms())
            if (mono_order(ctx, mono, GenClass::Fiber) < ctx.series_cap)
                throw FlatnessFailure("Fedosov recursion left a defect below the cap: " +
                                      c.str());
    }
    // h_nat(A) = 0 by construction; assert independently
    for (int j = 0; j < m.dim(); ++j)
        if (!homotopy_h(m, A.coeff(m.y_index(j))).is_zero())
            throw FlatnessFailure("h_nat(A) != 0");
    return A;
}

Derivation fedosov_D(const Model& m, const Derivation& A) {
    Derivation D = -koszul_delta(m) + covariant_d(m) + A;
    Derivation sq = half_square(m, D);
    if (!window_zero(m, sq))
        throw FlatnessFailure("D^2 != 0 inside the window");
    return D;
}

FedosovData build_fedosov(const Model& m) {
    FedosovData fd;
    fd.delta = koszul_delta(m);
    fd.eta = koszul_eta(m);
    fd.dnabla = covariant_d(m);
    fd.A = build_A(m);
    fd.D = fedosov_D(m, fd.A);
    return fd;
}

namespace {

// Pairing of a fiber series (element of the N-context, coefficients in x)
// against a symmetric word over the base operator algebra, in the graded-dual
// normalization <y^I, d^I> = (-1)^{|y^I|} eps_I I!: twist the series by the
// fiber parity, apply the word as iterated d/dy, keep the fiber-order-zero
// part.
Elem pair_series_word(const Model& m, const OpAlgebra& base, const Elem& series,
                      const Elem& word) {
    const Context& ctxN = m.ctxN();
    Elem s(ctxN);
    for (const auto& [mono, c] : series.terms()) {
        int p = 0;
        for (const auto& [g, k] : mono.e)
            if (ctxN.cls(g) == GenClass::Fiber && ctxN.odd(g)) p ^= (k & 1);
        s.add_term(mono, p ? -c : c);
    }
    Elem out(ctxN);
    for (const auto& [mono, c] : word.terms()) {
        Elem acc = s;
        for (auto it = mono.e.rbegin(); it != mono.e.rend() && !acc.is_zero(); ++it) {
            auto [g, k] = *it;
            if (!base.is_sym(g)) continue;
            int dir = base.ctx().gen(g).pair; // base coordinate index
            for (int rep = 0; rep < k; ++rep) acc = acc.dleft(m.y_index(dir));
        }
        acc = acc.filter_class(GenClass::Fiber, 0);
        if (acc.is_zero()) continue;
        Mono coeff;
        for (const auto& [g, k] : mono.e)
            if (!base.is_sym(g)) coeff.e.push_back({g, k});
        Elem cf = transport(Elem::monomial(base.ctx(), coeff, c), ctxN);
        out += Elem::mul(cf, acc);
    }
    return out;
}

// Enumerate fiber multi-indices (as sym-word monomials and y-monomials).
void enumerate_words(const Model& m, const OpAlgebra& base, int max_order,
                     std::vector<std::pair<Mono, Mono>>& out) {
    int n = m.dim();
    std::vector<int> expo(static_cast<size_t>(n), 0);
    for (;;) {
        int total = 0;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            total += expo[static_cast<size_t>(i)];
            if (m.ctxN().odd(m.y_index(i)) && expo[static_cast<size_t>(i)] > 1) ok = false;
        }
        if (ok && total <= max_order) {
            Mono word, ymono;
            for (int i = 0; i < n; ++i) {
                int e = expo[static_cast<size_t>(i)];
                if (e == 0) continue;
                word.e.push_back({base.sym_of_dir(i), e});
                ymono.e.push_back({m.y_index(i), e});
            }
            out.push_back({word, ymono});
        }
        int i = 0;
        for (; i < n; ++i) {
            if (expo[static_cast<size_t>(i)] < max_order) {
                ++expo[static_cast<size_t>(i)];
                for (int j = 0; j < i; ++j) expo[static_cast<size_t>(j)] = 0;
                break;
            }
        }
        if (i == n) return;
    }
}

} // namespace

Derivation fedosov_D_via_pbw(const Model& m) {
    const Context& ctxN = m.ctxN();
    int cap = ctxN.series_cap;
    std::vector<int> dirs;
    for (int i = 0; i < m.dim(); ++i) dirs.push_back(i);
    OpAlgebra base(m.ctxM(), dirs, cap + 1);
    base.set_connection(m);

    std::vector<std::pair<Mono, Mono>> words;
    enumerate_words(m, base, cap, words);

    Derivation D(ctxN, 1);
    for (int j = 0; j < m.dim(); ++j) D.set_coeff(m.x_index(j), Elem::generator(ctxN, m.xi_index(j)));

    for (int j = 0; j < m.dim(); ++j) {
        Elem yj = Elem::generator(ctxN, m.y_index(j));
        Elem total(ctxN);
        for (int k = 0; k < m.dim(); ++k) {
            // nabla^pbw_k on words, transposed: phi(K) = -(-1)^{|dx_k||y_j|} <y_j, nabla^pbw_k v^K>
            Elem t_kj(ctxN);
            for (const auto& [word, ymono] : words) {
                Elem w = Elem::monomial(base.ctx(), word, 1);
                Elem nab = base.pbw_inv(
                    base.compose(Elem::generator(base.ctx(), base.sym_of_dir(k)), base.pbw(w)));
                Elem phi = pair_series_word(m, base, yj, nab);
                if ((m.coord_degree(k) & 1) && (m.coord_degree(j) & 1)) phi = -phi;
                phi = -phi;
                if (phi.is_zero()) continue;
                // normalization N_K = <y^K, d^K> in the graded-dual pairing
                Elem probe = Elem::monomial(ctxN, ymono, 1);
                for (auto it = ymono.e.rbegin(); it != ymono.e.rend(); ++it) {
                    auto [g, kk] = *it;
                    for (int rep = 0; rep < kk; ++rep) probe = probe.dleft(g);
                }
                Rat nk = 0;
                for (const auto& [mm, cc] : probe.terms())
                    if (mm.is_one()) nk = cc;
                if (nk == 0) throw Error("degenerate pairing normalization");
                if (mono_parity(ctxN, ymono)) nk = -nk;
                int word_parity = mono_parity(ctxN, ymono); // |d^K| = |y^K| mod 2
                for (const auto& [mm, cc] : phi.terms()) {
                    Rat v = cc / nk;
                    if (word_parity && mono_parity(ctxN, mm)) v = -v;
                    Mono prod;
                    int sg;
                    if (!mono_mul(ctxN, mm, ymono, prod, sg)) continue;
                    if (sg < 0) v = -v;
                    t_kj.add_term(prod, v);
                }
            }
            if (t_kj.is_zero()) continue;
            total += Elem::mul(Elem::generator(ctxN, m.xi_index(k)), t_kj);
        }
        D.add_coeff(m.y_index(j), total);
    }
    return D;
}

Derivation twist_by_Q(const Model& m, const FedosovData& fd, const Derivation& tauQ) {
    Derivation DQ = fd.D + tauQ;
    Derivation sq = Derivation::commutator(DQ, DQ) * Rat(1, 2);
    if (!window_zero(m, sq))
        throw NotSquareZero("(D + tau(Q))^2 != 0 inside the window");
    return DQ;
}

bool window_zero(const Model& m, const Elem& e) {
    return e.fiber_window(m.y_order()).is_zero();
}

bool window_zero(const Model& m, const Derivation& d) {
    for (const auto& [g, c] : d.terms())
        if (!window_zero(m, c)) return false;
    return true;
}

} // namespace gfc

#include "gfc/jets.hpp"

namespace gfc {

std::vector<Mono> JetOps::words(int max_order) const {
    const Context& c = ctx();
    int n = side_->ncoord();
    std::vector<Mono> out;
    std::vector<int> expo(static_cast<size_t>(n), 0);
    for (;;) {
        int total = 0;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            total += expo[static_cast<size_t>(i)];
            if (c.odd(side_->wsym(i)) && expo[static_cast<size_t>(i)] > 1) ok = false;
        }
        if (ok && total <= max_order) {
            Mono w;
            for (int i = 0; i < n; ++i)
                if (expo[static_cast<size_t>(i)] > 0)
                    w.e.emplace_back(side_->wsym(i), expo[static_cast<size_t>(i)]);
            out.push_back(w);
        }
        int i = 0;
        for (; i < n; ++i) {
            if (expo[static_cast<size_t>(i)] < max_order) {
                ++expo[static_cast<size_t>(i)];
                for (int j = 0; j < i; ++j) expo[static_cast<size_t>(j)] = 0;
                break;
            }
        }
        if (i == n) return out;
    }
}

Elem JetOps::pair(const Elem& jet, const Elem& uword) const {
    const Context& c = ctx();
    // twist by the jet parity (graded-dual normalization)
    Elem s(c);
    for (const auto& [m, coef] : jet.terms()) {
        int p = 0;
        for (const auto& [g, k] : m.e)
            if (c.cls(g) == GenClass::Jet && c.odd(g)) p ^= (k & 1);
        s.add_term(m, p ? -coef : coef);
    }
    Elem out(c);
    for (const auto& [m, coef] : uword.terms()) {
        Elem acc = s;
        for (auto it = m.e.rbegin(); it != m.e.rend() && !acc.is_zero(); ++it) {
            auto [g, k] = *it;
            if (c.cls(g) != GenClass::Leg) continue;
            if (g < side_->wsym(0) || g >= side_->wsym(0) + side_->ncoord())
                throw Error("pairing needs coordinate words only");
            int jsym = side_->jsym(g - side_->wsym(0));
            for (int rep = 0; rep < k; ++rep) acc = acc.dleft(jsym);
        }
        acc = acc.filter_class(GenClass::Jet, 0);
        if (acc.is_zero()) continue;
        Mono amb;
        for (const auto& [g, k] : m.e)
            if (c.cls(g) != GenClass::Leg) amb.e.emplace_back(g, k);
        out += Elem::mul(Elem::monomial(c, amb, coef), acc);
    }
    return out;
}

Elem JetOps::from_functional(const std::function<Elem(const Mono&)>& phi) const {
    const Context& c = ctx();
    Elem out(c);
    for (const Mono& w : words(c.jet_cap)) {
        Elem value = phi(w);
        if (value.is_zero()) continue;
        Mono jm;
        for (const auto& [g, k] : w.e) jm.e.emplace_back(side_->jsym(g - side_->wsym(0)), k);
        Rat nk = 0;
        {
            Elem probe = Elem::monomial(c, jm, 1);
            Elem n = pair(probe, Elem::monomial(c, w, 1));
            for (const auto& [m, coef] : n.terms())
                if (m.is_one()) nk = coef;
        }
        if (nk == 0) throw Error("degenerate jet pairing normalization");
        int wpar = mono_parity(c, jm);
        for (const auto& [m, coef] : value.terms()) {
            Rat v = coef / nk;
            if (wpar && mono_parity(c, m)) v = -v;
            Mono prod;
            int sg;
            if (!mono_mul(c, m, jm, prod, sg)) continue;
            if (sg < 0) v = -v;
            out.add_term(prod, v);
        }
    }
    return out;
}

Elem JetOps::beta(const Elem& f) const {
    const Context& c = ctx();
    Elem fl = transport(f, c);
    if (fl.is_zero()) return fl;
    int fpar = fl.degree_or_throw() & 1;
    return from_functional([&](const Mono& w) {
        Elem val = side_->u_apply(Elem::monomial(c, w, 1), fl);
        if ((fpar & mono_parity(c, w)) & 1) val = -val;
        return val;
    });
}

std::vector<std::pair<Elem, Elem>> JetOps::delta(const Elem& jet) const {
    const Context& c = ctx();
    std::vector<std::pair<Elem, Elem>> out;
    for (const auto& [m, coef] : jet.terms()) {
        Mono amb, jm;
        for (const auto& [g, k] : m.e)
            (c.cls(g) == GenClass::Jet ? jm : amb).e.emplace_back(g, k);
        for (const auto& sp : side_->ops().split2(jm)) {
            Mono left;
            int sg;
            if (!mono_mul(c, amb, sp.left, left, sg)) continue;
            Rat cc = coef * sp.coeff;
            if (sg < 0) cc = -cc;
            out.emplace_back(Elem::monomial(c, left, cc), Elem::monomial(c, sp.right, 1));
        }
    }
    return out;
}

Elem JetOps::grothendieck_word(const Mono& word, const Elem& jet) const {
    const Context& c = ctx();
    Elem acc = jet;
    std::vector<std::pair<int, int>> letters(word.e.begin(), word.e.end());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        auto [g, k] = *it;
        for (int rep = 0; rep < k && !acc.is_zero(); ++rep) {
            const Elem cur = acc;
            int xi_par = cur.degree_or_throw() & 1;
            int xpar = c.degree(g) & 1;
            Elem xelem = Elem::generator(c, g);
            acc = from_functional([&](const Mono& w) {
                Elem t1 = pair(cur, Elem::monomial(c, w, 1)).dleft(c.gen(g).pair);
                Elem uv = side_->u_mul(xelem, Elem::monomial(c, w, 1));
                Elem t2 = pair(cur, uv);
                if ((xpar & xi_par) & 1) t2 = -t2;
                return t1 - t2;
            });
        }
    }
    return acc;
}

Elem JetOps::antipode(const Elem& jet) const {
    const Context& c = ctx();
    if (jet.is_zero()) return jet;
    int xi_par = jet.degree_or_throw() & 1;
    return from_functional([&](const Mono& w) {
        Elem g = grothendieck_word(w, jet);
        Elem val = g.filter_class(GenClass::Jet, 0);
        if ((xi_par & mono_parity(c, w)) & 1) val = -val;
        return val;
    });
}

Elem JetOps::dmb(const Elem& uword, const Elem& jet) const {
    const Context& c = ctx();
    return from_functional([&](const Mono& w) {
        Elem vu = side_->u_mul(Elem::monomial(c, w, 1), uword);
        return pair(jet, vu);
    });
}

Elem JetOps::lie_field_jet(const Derivation& v, const Elem& jet) const {
    const Context& c = ctx();
    Derivation vl = side_->lift_derivation(v);
    int vpar = v.degree() & 1;
    int xi_par = jet.is_zero() ? 0 : (jet.degree_or_throw() & 1);
    return from_functional([&](const Mono& w) {
        Elem we = Elem::monomial(c, w, 1);
        Elem t1 = vl.apply(pair(jet, we));
        Elem t2 = pair(jet, side_->commute(v, we));
        if ((vpar & xi_par) & 1) t2 = -t2;
        return t1 - t2;
    });
}

} // namespace gfc

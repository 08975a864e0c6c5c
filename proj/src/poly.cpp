#include "gfc/poly.hpp"

#include "gfc/signs.hpp"

#include <set>

namespace gfc {

PolySide::PolySide(const Model& model, bool fedosov) : model_(&model), fedosov_(fedosov) {
    const Context& amb = ambient();
    ctx_ = std::make_unique<Context>();
    for (int i = 0; i < amb.size(); ++i) {
        const Gen& g = amb.gen(i);
        ctx_->add(g.name, g.cls, g.degree, g.pair);
    }
    ctx_->series_cap = amb.series_cap;
    ctx_->leg_cap = model.max_arity() + 2;
    tbase_ = ctx_->size();
    for (int j = 0; j < model.dim(); ++j)
        ctx_->add("t_" + model.coord_name(j), GenClass::Leg, 1 - model.coord_degree(j), dir(j));
    abase_ = ctx_->size();
    for (int j = 0; j < model.dim(); ++j)
        ctx_->add("a_" + model.coord_name(j), GenClass::Leg, model.coord_degree(j) - 1, dir(j));
}

int PolySide::arity(const Elem& chain) const {
    int p = -1;
    for (const auto& [m, c] : chain.terms()) {
        int k = mono_order(*ctx_, m, GenClass::Leg);
        if (p < 0) p = k;
        else if (p != k) return -1;
    }
    return p < 0 ? 0 : p;
}

bool PolySide::pure_t(const Elem& chain) const {
    for (const auto& [m, c] : chain.terms())
        for (const auto& [g, k] : m.e)
            if (g >= abase_) return false;
    return true;
}

bool PolySide::pure_a(const Elem& chain) const {
    for (const auto& [m, c] : chain.terms())
        for (const auto& [g, k] : m.e)
            if (g >= tbase_ && g < abase_) return false;
    return true;
}

Derivation PolySide::field_of(const Elem& tchain) const {
    Derivation v(*ctx_, tchain.is_zero() ? 1 : tchain.degree_or_throw() - 1);
    for (int j = 0; j < nlegs(); ++j) {
        Elem c = tchain.dright(tleg(j));
        if (!c.is_zero()) v.add_coeff(dir(j), c);
    }
    return v;
}

Elem PolySide::chain_of_field(const Derivation& v) const {
    Elem out(*ctx_);
    for (int j = 0; j < nlegs(); ++j) {
        int g = v.ctx().find(ambient().gen(dir(j)).name);
        if (g < 0) continue;
        Elem c = v.coeff(g);
        if (!c.is_zero()) out += Elem::mul(transport(c, *ctx_), Elem::generator(*ctx_, tleg(j)));
    }
    return out;
}

Derivation PolySide::lie_field(const Derivation& v) const {
    const Context& c = *ctx_;
    Derivation lifted(c, v.degree());
    for (const auto& [g, e] : v.terms())
        lifted.add_coeff(c.find_or_throw(v.ctx().gen(g).name), transport(e, c));

    Derivation out = lifted;
    int vdeg = v.degree() & 1;
    // w[j][i] = coefficient of d/dz_i in [V, d/dz_j], z = leg directions
    std::vector<std::vector<Elem>> w(static_cast<size_t>(nlegs()),
                                     std::vector<Elem>(static_cast<size_t>(nlegs()), Elem(c)));
    for (int j = 0; j < nlegs(); ++j) {
        Derivation cj = Derivation::commutator(lifted, Derivation::partial(c, dir(j)));
        for (const auto& [g, e] : cj.terms()) {
            if (e.is_zero()) continue;
            bool is_dir = false;
            for (int i = 0; i < nlegs(); ++i)
                if (g == dir(i)) is_dir = true;
            if (!is_dir)
                throw Error("Lie transport leaves the leg directions at d/d" + c.gen(g).name);
        }
        for (int i = 0; i < nlegs(); ++i)
            w[static_cast<size_t>(j)][static_cast<size_t>(i)] = cj.coeff(dir(i));
    }
    for (int j = 0; j < nlegs(); ++j) {
        Elem ct(c);
        for (int i = 0; i < nlegs(); ++i) {
            const Elem& wji = w[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (wji.is_zero()) continue;
            Elem term = Elem::mul(wji, Elem::generator(c, tleg(i)));
            if (signs::kLieTLegShift && vdeg) term = -term;
            ct += term;
        }
        if (!ct.is_zero()) out.add_coeff(tleg(j), ct);
    }
    for (int i = 0; i < nlegs(); ++i) {
        Elem ca(c);
        int di = ambient().degree(dir(i)) & 1; // |dz_i| parity
        for (int j = 0; j < nlegs(); ++j) {
            const Elem& wji = w[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (wji.is_zero()) continue;
            // L_V(dz_i) = -(-1)^{|V||dz_i| + |dz_i||w_ji|} w_ji dz_j
            int wp = wji.degree_or_throw() & 1;
            int s = ((vdeg & di) ^ (di & wp)) & 1;
            Elem term = Elem::mul(wji, Elem::generator(c, aleg(j)));
            if (!s) term = -term;
            if (signs::kLieALegShift && vdeg) term = -term;
            ca += term;
        }
        if (!ca.is_zero()) out.add_coeff(aleg(i), ca);
    }
    return out;
}

Derivation PolySide::cartan_d() const {
    const Context& c = *ctx_;
    Derivation d(c, -1);
    for (int j = 0; j < nlegs(); ++j)
        d.set_coeff(dir(j), Elem::generator(c, aleg(j)));
    return d;
}

Elem PolySide::wedge(const Elem& u, const Elem& w) const { return Elem::mul(u, w); }

Elem PolySide::iota(const Elem& tchain, const Elem& achain) const {
    const Context& c = *ctx_;
    int p = arity(tchain);
    if (p < 0) {
        Elem out(c);
        for (int k = 0; k <= c.leg_cap; ++k)
            out += iota(tchain.filter_class(GenClass::Leg, k), achain);
        return out;
    }
    if (tchain.is_zero()) return Elem(c);
    if (p == 0) return Elem::mul(tchain, achain);
    if (p == 1) {
        Derivation io(c, tchain.degree_or_throw());
        for (int j = 0; j < nlegs(); ++j) {
            Elem cj = tchain.dright(tleg(j));
            if (!cj.is_zero()) io.add_coeff(aleg(j), cj);
        }
        return io.apply(achain);
    }
    // iota_{u ^ X} = iota_u iota_X for a single right leg X; peeling from the
    // right counts each monomial p times, once per leg occurrence
    Elem out(c);
    for (int j = 0; j < nlegs(); ++j) {
        Elem u = tchain.dright(tleg(j));
        if (u.is_zero()) continue;
        out += iota(u, iota(Elem::generator(c, tleg(j)), achain));
    }
    return out * Rat(1, p);
}

Elem PolySide::lie(const Elem& tchain, const Elem& achain) const {
    const Context& c = *ctx_;
    if (tchain.is_zero() || achain.is_zero()) return Elem(c);
    int xd = tchain.degree_or_throw();
    Derivation d = cartan_d();
    Elem a = d.apply(iota(tchain, achain));
    Elem b = iota(tchain, d.apply(achain));
    Elem comm = a - ((xd & 1) ? -b : b);
    return ((xd - 1) & 1) ? -comm : comm;
}

Elem PolySide::schouten(const Elem& u, const Elem& w) const {
    const Context& c = *ctx_;
    if (u.is_zero() || w.is_zero()) return Elem(c);
    int du = u.degree_or_throw(), dw = w.degree_or_throw();
    auto half = [&](const Elem& a, const Elem& b) {
        Elem r(c);
        for (int j = 0; j < nlegs(); ++j) r += Elem::mul(a.dright(tleg(j)), b.dleft(dir(j)));
        return r;
    };
    Elem r = half(u, w);
    Elem s = half(w, u);
    int sgn = ((du - 1) & 1) && ((dw - 1) & 1) ? -1 : 1;
    return r - (sgn < 0 ? -s : s);
}

Elem PolySide::h_nat(const Elem& chain) const {
    if (!fedosov_) throw Error("h_nat lives on the Fedosov side");
    const Context& c = *ctx_;
    Derivation eta(c, -1);
    for (int k = 0; k < model_->dim(); ++k)
        eta.set_coeff(c.find_or_throw("xi_" + model_->coord_name(k)),
                      Elem::generator(c, c.find_or_throw("y_" + model_->coord_name(k))));
    std::set<std::pair<int, int>> seen;
    for (const auto& [mono, coef] : chain.terms())
        seen.insert({mono_order(c, mono, GenClass::Form), mono_order(c, mono, GenClass::Fiber)});
    Elem out(c);
    for (auto [r, q] : seen) {
        if (r + q == 0) continue;
        out += eta.apply(chain.bigrade(r, q)) * Rat(-1, r + q);
    }
    return out;
}

Elem PolySide::sigma_coeff(const Elem& chain) const { return chain.bigrade(0, 0); }

PolySide::Trigrade PolySide::trigrade(const Elem& chain) const {
    Trigrade t{0, 0, 0};
    t.p = arity(chain);
    if (t.p < 0) throw Error("chain has mixed arity");
    int r = -1;
    for (const auto& [m, c] : chain.terms()) {
        int rr = mono_order(*ctx_, m, GenClass::Form);
        if (r < 0) r = rr;
        else if (r != rr) throw Error("chain has mixed form degree");
    }
    t.r = std::max(r, 0);
    t.q = chain.is_zero() ? 0 : chain.degree_or_throw() - t.r - t.p;
    return t;
}

Elem PolySide::trigrade_part(const Elem& chain, int r, int p) const {
    Elem out(*ctx_);
    for (const auto& [m, c] : chain.terms())
        if (mono_order(*ctx_, m, GenClass::Form) == r && mono_order(*ctx_, m, GenClass::Leg) == p)
            out.add_term(m, c);
    return out;
}

Elem tau_nat(const PolySide& base, const PolySide& fed, const Elem& base_chain) {
    (void)base;
    return transport(base_chain, fed.ctx());
}

Elem sigma_nat(const PolySide& base, const PolySide& fed, const Elem& fed_chain) {
    return transport(fed.sigma_coeff(fed_chain), base.ctx());
}

} // namespace gfc

#include "gfc/dpoly.hpp"

#include <sstream>

namespace gfc {

HopfSide::HopfSide(const Model& model, bool fedosov) : model_(&model), fedosov_(fedosov) {
    const Context& amb = ambient();
    ctx_ = std::make_unique<Context>();
    for (int i = 0; i < amb.size(); ++i) {
        const Gen& g = amb.gen(i);
        ctx_->add(g.name, g.cls, g.degree, g.pair);
    }
    ctx_->series_cap = amb.series_cap;
    int n = model.dim();
    wbase_ = ctx_->size();
    // coordinate word symbols, named alike on both sides
    for (int j = 0; j < n; ++j)
        ctx_->add("w_" + model.coord_name(j), GenClass::Leg, -model.coord_degree(j),
                  fedosov_ ? model.y_index(j) : j);
    int nsyms = n;
    if (fedosov_) {
        // auxiliary symbols so commutators with D stay representable
        for (int j = 0; j < n; ++j)
            ctx_->add("wx_" + model.coord_name(j), GenClass::Leg, -amb.degree(j), j);
        for (int j = 0; j < n; ++j)
            ctx_->add("wxi_" + model.coord_name(j), GenClass::Leg,
                      -amb.degree(model.xi_index(j)), model.xi_index(j));
        nsyms = 3 * n;
    }
    int wcap = 2 * model.jet_order() + 2;
    ctx_->leg_cap = wcap;
    jbase_ = ctx_->size();
    for (int j = 0; j < n; ++j)
        ctx_->add("j_" + model.coord_name(j), GenClass::Jet, model.coord_degree(j),
                  fedosov_ ? model.y_index(j) : j);
    ctx_->jet_cap = model.jet_order() + kJetGuard;
    ops_ = std::make_unique<OpAlgebra>(*ctx_, amb, wbase_, nsyms, wcap);
    if (!fedosov_) ops_->set_connection(model);
}

Elem HopfSide::u_mul(const Elem& a, const Elem& b) const {
    if (!fedosov_) return ops_->pbw_inv(ops_->compose(ops_->pbw(a), ops_->pbw(b)));
    return ops_->compose(a, b);
}

Elem HopfSide::u_apply(const Elem& u, const Elem& f) const {
    return ops_->apply(ops_->pbw(u), f);
}

Elem HopfSide::u_counit(const Elem& u) const { return ops_->counit(u); }

Elem HopfSide::commute(const Derivation& v, const Elem& u) const {
    // encode V as a first-order operator and commute in composition form
    Elem vop(*ctx_);
    for (const auto& [g, c] : v.terms()) {
        int amb_gen = ctx_->find_or_throw(v.ctx().gen(g).name);
        int sym = ops_->sym_of_dir(amb_gen);
        if (sym < 0) throw Error("no word symbol for direction " + v.ctx().gen(g).name);
        vop += Elem::mul(transport(c, *ctx_), Elem::generator(*ctx_, sym));
    }
    Elem op = fedosov_ ? u : ops_->pbw(u);
    if (op.is_zero()) return Elem(*ctx_);
    Elem ab = ops_->compose(vop, op);
    Elem ba = ops_->compose(op, vop);
    int s = (v.degree() & 1) && (op.degree_or_throw() & 1) ? -1 : 1;
    Elem res = ab - (s < 0 ? -ba : ba);
    if (fedosov_) {
        for (const auto& [m, c] : res.terms())
            for (const auto& [g, k] : m.e)
                if (ops_->is_sym(g) && (g < wbase_ || g >= wbase_ + ncoord()))
                    throw Error("commutator left the vertical words at " + ctx_->gen(g).name);
        return res;
    }
    return ops_->pbw_inv(res);
}

Derivation HopfSide::lift_derivation(const Derivation& v) const {
    Derivation out(*ctx_, v.degree());
    for (const auto& [g, c] : v.terms())
        out.add_coeff(ctx_->find_or_throw(v.ctx().gen(g).name), transport(c, *ctx_));
    return out;
}

const HopfSide& DChain::side() const {
    if (!side_) throw Error("chain has no side");
    return *side_;
}

void DChain::add_term(const DKey& k, const Rat& c) {
    if (c == 0) return;
    auto it = t_.find(k);
    if (it == t_.end()) t_.emplace(k, c);
    else {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

int DChain::arity() const {
    int p = -1;
    for (const auto& [k, c] : t_) {
        int n = static_cast<int>(k.slots.size());
        if (p < 0) p = n;
        else if (p != n) return -1;
    }
    return p < 0 ? 0 : p;
}

DChain DChain::operator-() const {
    DChain r(*this);
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

DChain& DChain::operator+=(const DChain& o) {
    if (!side_) side_ = o.side_;
    for (const auto& [k, c] : o.t_) add_term(k, c);
    return *this;
}

DChain& DChain::operator-=(const DChain& o) {
    if (!side_) side_ = o.side_;
    for (const auto& [k, c] : o.t_) add_term(k, -c);
    return *this;
}

DChain DChain::operator*(const Rat& c) const {
    DChain r(side());
    if (c == 0) return r;
    for (const auto& [k, v] : t_) r.t_.emplace(k, v * c);
    return r;
}

int DChain::key_degree(const DKey& k) const {
    const Context& c = side().ctx();
    int d = mono_degree(c, k.coeff) + static_cast<int>(k.slots.size());
    for (const auto& s : k.slots) d += mono_degree(c, s);
    return d;
}

bool DChain::is_homogeneous(int* deg) const {
    if (t_.empty()) {
        if (deg) *deg = 0;
        return true;
    }
    int d = key_degree(t_.begin()->first);
    for (const auto& [k, c] : t_)
        if (key_degree(k) != d) return false;
    if (deg) *deg = d;
    return true;
}

int DChain::degree_or_throw() const {
    int d;
    if (!is_homogeneous(&d)) throw Error("polydifferential chain is not homogeneous");
    return d;
}

std::string DChain::str() const {
    if (t_.empty()) return "0";
    const Context& c = side().ctx();
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, coef] : t_) {
        if (!first) os << " + ";
        first = false;
        os << coef.get_str() << "*" << Elem::monomial(c, k.coeff, 1).str();
        for (const auto& s : k.slots) os << " (x) [" << Elem::monomial(c, s, 1).str() << "]";
    }
    return os.str();
}

DChain DChain::scalar(const HopfSide& side, const Elem& f) {
    DChain r(side);
    Elem g = transport(f, side.ctx());
    for (const auto& [m, c] : g.terms()) r.add_term(DKey{m, {}}, c);
    return r;
}

DChain DChain::from_uword(const HopfSide& side, const Elem& u) {
    DChain r(side);
    const Context& c = side.ctx();
    for (const auto& [m, coef] : u.terms()) {
        Mono amb, word;
        for (const auto& [g, k] : m.e)
            (side.ops().is_sym(g) ? word : amb).e.emplace_back(g, k);
        // the stored coefficient sits outside the suspension
        Rat cc = coef;
        if (mono_parity(c, amb)) cc = -cc;
        r.add_term(DKey{amb, {word}}, cc);
    }
    return r;
}

Elem DChain::to_uword() const {
    const Context& c = side().ctx();
    Elem out(c);
    for (const auto& [k, coef] : t_) {
        if (k.slots.size() != 1) throw Error("to_uword needs an arity-1 chain");
        Mono prod;
        int sg;
        if (!mono_mul(c, k.coeff, k.slots[0], prod, sg)) continue;
        Rat cc = coef;
        if (sg < 0) cc = -cc;
        if (mono_parity(c, k.coeff)) cc = -cc;
        out.add_term(prod, cc);
    }
    return out;
}

DChain shifted_mult(const HopfSide& side) {
    DChain m(side);
    m.add_term(DKey{Mono{}, {Mono{}, Mono{}}}, -1);
    return m;
}

namespace {

int shifted_parity(const Context& c, const Mono& word) { return 1 ^ mono_parity(c, word); }

// Move ambient content of every slot out to the global coefficient,
// collecting the suspension-crossing Koszul signs. Slots processed left to
// right.
void normalize_term(DChain& out, const HopfSide& side, const Rat& coef, const Mono& gcoeff,
                    const std::vector<Elem>& slots) {
    const Context& c = side.ctx();
    struct Frame {
        Rat coef;
        Mono gcoeff;
        std::vector<Mono> done;
    };
    std::vector<Frame> frames{{coef, gcoeff, {}}};
    for (const auto& slot : slots) {
        std::vector<Frame> next;
        for (const auto& fr : frames) {
            for (const auto& [m, cm] : slot.terms()) {
                Mono amb, word;
                for (const auto& [g, k] : m.e)
                    (c.cls(g) == GenClass::Leg ? word : amb).e.emplace_back(g, k);
                int cross = 1; // its own suspension
                for (const auto& w : fr.done) cross ^= shifted_parity(c, w);
                Rat cc = fr.coef * cm;
                if (mono_parity(c, amb) && (cross & 1)) cc = -cc;
                Mono merged;
                int sg;
                if (!mono_mul(c, fr.gcoeff, amb, merged, sg)) continue;
                if (sg < 0) cc = -cc;
                Frame nf{cc, merged, fr.done};
                nf.done.push_back(word);
                next.push_back(std::move(nf));
            }
        }
        frames = std::move(next);
    }
    for (auto& fr : frames) out.add_term(DKey{fr.gcoeff, fr.done}, fr.coef);
}

// fold the stored global coefficient into slot zero (one suspension crossed)
struct Folded {
    Rat coef;
    std::vector<Elem> slots; // slot 0 may carry ambient content
    std::vector<int> par;    // unshifted parity per slot (coefficient included)
};

Folded fold_in(const HopfSide& side, const DKey& k, const Rat& c) {
    const Context& ctx = side.ctx();
    Folded f;
    f.coef = c;
    if (k.slots.empty()) return f;
    if (mono_parity(ctx, k.coeff)) f.coef = -f.coef;
    for (size_t i = 0; i < k.slots.size(); ++i) {
        Mono m = k.slots[i];
        int par = mono_parity(ctx, m);
        if (i == 0) {
            Mono merged;
            int sg;
            if (!mono_mul(ctx, k.coeff, m, merged, sg)) throw Error("fold_in overflow");
            if (sg < 0) f.coef = -f.coef;
            m = merged;
            par ^= mono_parity(ctx, k.coeff);
        }
        f.slots.push_back(Elem::monomial(ctx, m, 1));
        f.par.push_back(par);
    }
    return f;
}

} // namespace

DChain cup(const DChain& u, const DChain& v) {
    const HopfSide& side = u.side();
    const Context& c = side.ctx();
    DChain r(side);
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            int cross = 0;
            for (const auto& w : ku.slots) cross ^= shifted_parity(c, w);
            Rat coef = cu * cv;
            if (mono_parity(c, kv.coeff) && (cross & 1)) coef = -coef;
            Mono merged;
            int sg;
            if (!mono_mul(c, ku.coeff, kv.coeff, merged, sg)) continue;
            if (sg < 0) coef = -coef;
            DKey k{merged, ku.slots};
            for (const auto& s : kv.slots) k.slots.push_back(s);
            r.add_term(k, coef);
        }
    return r;
}

DChain star(const DChain& u, const DChain& v) {
    const HopfSide& side = u.side();
    const Context& c = side.ctx();
    DChain r(side);
    int P = u.arity(), Q = v.arity();
    if (P < 0 || Q < 0) throw Error("star needs pure arities");
    if (P == 0) return r; // functions insert nothing
    for (const auto& [ku, cu] : u.terms()) {
        Folded fu = fold_in(side, ku, cu);
        for (const auto& [kv, cv] : v.terms()) {
            if (Q == 0) {
                // second displayed formula: insert the function value
                Elem f = Elem::monomial(c, kv.coeff, 1);
                int fpar = mono_parity(c, kv.coeff);
                for (int k = 0; k < P; ++k) {
                    Elem val = side.u_apply(fu.slots[static_cast<size_t>(k)], f);
                    if (val.is_zero()) continue;
                    int others = 0, before = 0;
                    for (int i = 0; i < P; ++i)
                        if (i != k) others ^= fu.par[static_cast<size_t>(i)];
                    for (int i = 0; i < k; ++i) before ^= fu.par[static_cast<size_t>(i)];
                    int e = ((fpar ^ 1) & others) ^ ((P - 1 - k) & 1) ^
                            (fu.par[static_cast<size_t>(k)] & (1 ^ before));
                    Rat coef = fu.coef * cv;
                    if (e & 1) coef = -coef;
                    std::vector<Elem> slots;
                    for (int i = 0; i < P; ++i) {
                        if (i == k) continue;
                        slots.push_back(fu.slots[static_cast<size_t>(i)]);
                    }
                    if (!slots.empty()) {
                        slots[0] = Elem::mul(val, slots[0]);
                        normalize_term(r, side, coef, Mono{}, slots);
                    } else {
                        for (const auto& [m, cm] : val.terms())
                            r.add_term(DKey{m, {}}, coef * cm);
                    }
                }
                continue;
            }
            Folded fv = fold_in(side, kv, cv);
            int sum_u = 0;
            for (int i = 0; i < P; ++i) sum_u ^= fu.par[static_cast<size_t>(i)];
            for (int k = 0; k < P; ++k) {
                // eps_k = (-1)^{(Q-1)(P-1-k) + (Q-1) sum_i |u_i|}
                int base_sign = ((Q - 1) & 1) & (((P - 1 - k) & 1) ^ sum_u);
                const Elem& slotk = fu.slots[static_cast<size_t>(k)];
                for (const auto& [mk, ck] : slotk.terms()) {
                    Mono amb, word;
                    for (const auto& [g, kk] : mk.e)
                        (c.cls(g) == GenClass::Leg ? word : amb).e.emplace_back(g, kk);
                    auto splits = side.ops().splitn(word, Q);
                    for (const auto& [parts, csplit] : splits) {
                        std::vector<int> apar(static_cast<size_t>(Q));
                        for (int a = 0; a < Q; ++a) {
                            apar[static_cast<size_t>(a)] =
                                mono_parity(c, parts[static_cast<size_t>(a)]);
                            if (a == 0) apar[0] ^= mono_parity(c, amb);
                        }
                        int tail_u = 0;
                        for (int i = k + 1; i < P; ++i) tail_u ^= fu.par[static_cast<size_t>(i)];
                        int e = base_sign;
                        for (int a = 0; a < Q; ++a) {
                            int after = tail_u;
                            for (int b = a + 1; b < Q; ++b) after ^= apar[static_cast<size_t>(b)];
                            e ^= fv.par[static_cast<size_t>(a)] & after;
                        }
                        Rat coef = fu.coef * ck * csplit * fv.coef;
                        if (e & 1) coef = -coef;
                        std::vector<Elem> slots;
                        for (int i = 0; i < k; ++i)
                            slots.push_back(fu.slots[static_cast<size_t>(i)]);
                        bool dead = false;
                        for (int a = 0; a < Q; ++a) {
                            Elem comp = Elem::monomial(c, parts[static_cast<size_t>(a)], 1);
                            if (a == 0) comp = Elem::mul(Elem::monomial(c, amb, 1), comp);
                            Elem prod = side.u_mul(comp, fv.slots[static_cast<size_t>(a)]);
                            if (prod.is_zero()) {
                                dead = true;
                                break;
                            }
                            slots.push_back(prod);
                        }
                        if (dead) continue;
                        for (int i = k + 1; i < P; ++i)
                            slots.push_back(fu.slots[static_cast<size_t>(i)]);
                        normalize_term(r, side, coef, Mono{}, slots);
                    }
                }
            }
        }
    }
    return r;
}

DChain gerstenhaber(const DChain& u, const DChain& v) {
    int du = u.degree_or_throw() - 1;
    int dv = v.degree_or_throw() - 1;
    DChain a = star(u, v);
    DChain b = star(v, u);
    return a - ((du & 1) && (dv & 1) ? -b : b);
}

DChain hochschild_d(const DChain& u) {
    const HopfSide& side = u.side();
    const Context& c = side.ctx();
    int n = u.arity();
    if (n < 0) throw Error("hochschild_d needs pure arity");
    if (n == 0) return gerstenhaber(shifted_mult(side), u);
    DChain r(side);
    for (const auto& [k, coef] : u.terms()) {
        Folded f = fold_in(side, k, coef);
        {
            std::vector<Elem> slots;
            slots.push_back(Elem::scalar(c, 1));
            for (auto& s : f.slots) slots.push_back(s);
            normalize_term(r, side, -f.coef, Mono{}, slots);
        }
        for (int i = 1; i <= n; ++i) {
            const Elem& slot = f.slots[static_cast<size_t>(i - 1)];
            for (const auto& [m, cm] : slot.terms()) {
                Mono amb, word;
                for (const auto& [g, kk] : m.e)
                    (c.cls(g) == GenClass::Leg ? word : amb).e.emplace_back(g, kk);
                for (const auto& sp : side.ops().split2(word)) {
                    std::vector<Elem> slots;
                    for (int j = 0; j < i - 1; ++j)
                        slots.push_back(f.slots[static_cast<size_t>(j)]);
                    slots.push_back(
                        Elem::mul(Elem::monomial(c, amb, 1), Elem::monomial(c, sp.left, 1)));
                    slots.push_back(Elem::monomial(c, sp.right, 1));
                    for (int j = i; j < n; ++j) slots.push_back(f.slots[static_cast<size_t>(j)]);
                    Rat coef2 = f.coef * cm * sp.coeff;
                    if ((i + 1) & 1) coef2 = -coef2;
                    normalize_term(r, side, coef2, Mono{}, slots);
                }
            }
        }
        {
            std::vector<Elem> slots = f.slots;
            slots.push_back(Elem::scalar(c, 1));
            normalize_term(r, side, (n & 1) ? -f.coef : f.coef, Mono{}, slots);
        }
    }
    return r;
}

DChain lie_by_field_D(const Derivation& v, const DChain& u) {
    const HopfSide& side = u.side();
    const Context& c = side.ctx();
    Derivation vl = side.lift_derivation(v);
    int vpar = v.degree() & 1;
    DChain r(side);
    for (const auto& [k, coef] : u.terms()) {
        Elem vc = vl.apply(Elem::monomial(c, k.coeff, 1));
        for (const auto& [m, cm] : vc.terms()) r.add_term(DKey{m, k.slots}, coef * cm);
        int cross = mono_parity(c, k.coeff);
        for (size_t i = 0; i < k.slots.size(); ++i) {
            Elem com = side.commute(v, Elem::monomial(c, k.slots[i], 1));
            if (!com.is_zero()) {
                std::vector<Elem> slots;
                for (size_t j = 0; j < k.slots.size(); ++j) {
                    if (j == i) slots.push_back(com);
                    else slots.push_back(Elem::monomial(c, k.slots[j], 1));
                }
                Rat coef2 = coef;
                if (vpar && (cross & 1)) coef2 = -coef2;
                normalize_term(r, side, coef2, k.coeff, slots);
            }
            cross ^= shifted_parity(c, k.slots[i]);
        }
    }
    return r;
}

DChain h_nat_D(const DChain& u) {
    const HopfSide& side = u.side();
    if (!side.fedosov()) throw Error("h_nat_D lives on the Fedosov side");
    const Model& m = side.model();
    DChain r(side);
    for (const auto& [k, coef] : u.terms()) {
        Elem hc = homotopy_h(m, transport(Elem::monomial(side.ctx(), k.coeff, 1), m.ctxN()));
        Elem back = transport(hc, side.ctx());
        for (const auto& [mm, cm] : back.terms()) r.add_term(DKey{mm, k.slots}, coef * cm);
    }
    return r;
}

DChain sigma_coeff_D(const DChain& u) {
    const HopfSide& side = u.side();
    const Context& c = side.ctx();
    DChain r(side);
    for (const auto& [k, coef] : u.terms())
        if (mono_order(c, k.coeff, GenClass::Form) == 0 &&
            mono_order(c, k.coeff, GenClass::Fiber) == 0)
            r.add_term(k, coef);
    return r;
}

DChain fiber_window_D(const DChain& u, int qmax) {
    const HopfSide& side = u.side();
    const Context& c = side.ctx();
    DChain r(side);
    for (const auto& [k, coef] : u.terms())
        if (mono_order(c, k.coeff, GenClass::Fiber) <= qmax) r.add_term(k, coef);
    return r;
}

namespace {

Mono transport_mono(const Context& from, const Context& to, const Mono& m) {
    Mono out;
    for (const auto& [g, k] : m.e) out.e.emplace_back(to.find_or_throw(from.gen(g).name), k);
    std::sort(out.e.begin(), out.e.end());
    return out;
}

} // namespace

DChain tau_nat_D(const HopfSide& base, const HopfSide& fed, const DChain& u) {
    DChain r(fed);
    for (const auto& [k, coef] : u.terms()) {
        DKey nk;
        nk.coeff = transport_mono(base.ctx(), fed.ctx(), k.coeff);
        for (const auto& s : k.slots)
            nk.slots.push_back(transport_mono(base.ctx(), fed.ctx(), s));
        r.add_term(nk, coef);
    }
    return r;
}

DChain sigma_nat_D(const HopfSide& base, const HopfSide& fed, const DChain& u) {
    DChain proj = sigma_coeff_D(u);
    DChain r(base);
    for (const auto& [k, coef] : proj.terms()) {
        DKey nk;
        nk.coeff = transport_mono(fed.ctx(), base.ctx(), k.coeff);
        for (const auto& s : k.slots)
            nk.slots.push_back(transport_mono(fed.ctx(), base.ctx(), s));
        r.add_term(nk, coef);
    }
    return r;
}

Elem evaluate(const DChain& u, const std::vector<Elem>& args) {
    const HopfSide& side = u.side();
    const Context& c = side.ctx();
    Elem out(c);
    for (const auto& [k, coef] : u.terms()) {
        if (k.slots.size() != args.size()) continue;
        Elem acc = Elem::monomial(c, k.coeff, coef);
        int e = 0;
        for (size_t i = 0; i < k.slots.size(); ++i) {
            const Elem& fi = args[i];
            if (fi.is_zero()) {
                acc = Elem(c);
                break;
            }
            int fpar = (fi.degree_or_throw() & 1) ^ 1; // shifted argument parity
            int after = 0;
            for (size_t j = i + 1; j < k.slots.size(); ++j)
                after ^= shifted_parity(c, k.slots[j]);
            e ^= fpar & after;
            e ^= mono_parity(c, k.slots[i]); // the per-slot (-1)^{|u_i|}
            Elem val = side.u_apply(Elem::monomial(c, k.slots[i], 1), transport(fi, c));
            acc = Elem::mul(acc, val);
            if (acc.is_zero()) break;
        }
        out += (e & 1) ? -acc : acc;
    }
    return out;
}

} // namespace gfc

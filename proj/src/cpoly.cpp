#include "gfc/cpoly.hpp"

#include "gfc/signs.hpp"

#include <sstream>

namespace gfc {

namespace {

int susp_parity(const Context& c, const Mono& m) { return 1 ^ mono_parity(c, m); }

Mono jet_part(const Context& c, const Mono& m) {
    Mono out;
    for (const auto& [g, k] : m.e)
        if (c.cls(g) == GenClass::Jet) out.e.emplace_back(g, k);
    return out;
}

Mono amb_part(const Context& c, const Mono& m) {
    Mono out;
    for (const auto& [g, k] : m.e)
        if (c.cls(g) != GenClass::Jet && c.cls(g) != GenClass::Leg) out.e.emplace_back(g, k);
    return out;
}

// Move ambient content of jet slots out to the global coefficient across the
// desuspensions, left to right.
void normalize_cterm(CChain& out, const HopfSide& side, const Rat& coef, const Mono& gcoeff,
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
                Mono amb = amb_part(c, m);
                Mono jm = jet_part(c, m);
                int cross = 1;
                for (const auto& w : fr.done) cross ^= susp_parity(c, w);
                Rat cc = fr.coef * cm;
                if (mono_parity(c, amb) && (cross & 1)) cc = -cc;
                Mono merged;
                int sg;
                if (!mono_mul(c, fr.gcoeff, amb, merged, sg)) continue;
                if (sg < 0) cc = -cc;
                Frame nf{cc, merged, fr.done};
                nf.done.push_back(jm);
                next.push_back(std::move(nf));
            }
        }
        frames = std::move(next);
    }
    for (auto& fr : frames) out.add_term(CKey{fr.gcoeff, fr.done}, fr.coef);
}

struct CFolded {
    Rat coef;
    std::vector<Elem> slots; // slot 0 carries the coefficient
    std::vector<int> par;    // unshifted parity per slot
};

CFolded cfold(const HopfSide& side, const CKey& k, const Rat& c) {
    const Context& ctx = side.ctx();
    CFolded f;
    f.coef = c;
    if (k.slots.empty()) return f;
    if (mono_parity(ctx, k.coeff)) f.coef = -f.coef;
    for (size_t i = 0; i < k.slots.size(); ++i) {
        Mono m = k.slots[i];
        int par = mono_parity(ctx, m);
        if (i == 0) {
            Mono merged;
            int sg;
            if (!mono_mul(ctx, k.coeff, m, merged, sg)) throw Error("cfold overflow");
            if (sg < 0) f.coef = -f.coef;
            m = merged;
            par ^= mono_parity(ctx, k.coeff);
        }
        f.slots.push_back(Elem::monomial(ctx, m, 1));
        f.par.push_back(par);
    }
    return f;
}

int elem_parity(const Elem& e) { return e.is_zero() ? 0 : (e.degree_or_throw() & 1); }

} // namespace

const HopfSide& CChain::side() const {
    if (!side_) throw Error("chain has no side");
    return *side_;
}

void CChain::add_term(const CKey& k, const Rat& c) {
    if (c == 0) return;
    auto it = t_.find(k);
    if (it == t_.end()) t_.emplace(k, c);
    else {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

int CChain::arity() const {
    int p = -1;
    for (const auto& [k, c] : t_) {
        int n = static_cast<int>(k.slots.size());
        if (p < 0) p = n;
        else if (p != n) return -1;
    }
    return p < 0 ? 0 : p;
}

CChain CChain::operator-() const {
    CChain r(*this);
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

CChain& CChain::operator+=(const CChain& o) {
    if (!side_) side_ = o.side_;
    for (const auto& [k, c] : o.t_) add_term(k, c);
    return *this;
}

CChain& CChain::operator-=(const CChain& o) {
    if (!side_) side_ = o.side_;
    for (const auto& [k, c] : o.t_) add_term(k, -c);
    return *this;
}

CChain CChain::operator*(const Rat& c) const {
    CChain r(side());
    if (c == 0) return r;
    for (const auto& [k, v] : t_) r.t_.emplace(k, v * c);
    return r;
}

int CChain::key_degree(const CKey& k) const {
    const Context& c = side().ctx();
    int d = mono_degree(c, k.coeff) - static_cast<int>(k.slots.size());
    for (const auto& s : k.slots) d += mono_degree(c, s);
    return d;
}

bool CChain::is_homogeneous(int* deg) const {
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

int CChain::degree_or_throw() const {
    int d;
    if (!is_homogeneous(&d)) throw Error("polyjet chain is not homogeneous");
    return d;
}

std::string CChain::str() const {
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

CChain CChain::scalar(const HopfSide& side, const Elem& f) {
    CChain r(side);
    Elem g = transport(f, side.ctx());
    for (const auto& [m, c] : g.terms()) r.add_term(CKey{m, {}}, c);
    return r;
}

CChain CChain::from_jet(const HopfSide& side, const Elem& jet) {
    CChain r(side);
    const Context& c = side.ctx();
    for (const auto& [m, coef] : jet.terms()) {
        Mono amb = amb_part(c, m), jm = jet_part(c, m);
        Rat cc = coef;
        if (mono_parity(c, amb)) cc = -cc; // one desuspension crossed
        r.add_term(CKey{amb, {jm}}, cc);
    }
    return r;
}

Elem CChain::to_jet() const {
    const Context& c = side().ctx();
    Elem out(c);
    for (const auto& [k, coef] : t_) {
        if (k.slots.size() != 1) throw Error("to_jet needs an arity-1 chain");
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

namespace {

// Sweedler data for every slot of a folded key: flat lists of combinations.
struct SweedlerCombo {
    Rat coef = 1;
    std::vector<Elem> first;  // xi^{(1)} per slot
    std::vector<Mono> second; // xi^{(2)} per slot (pure jet monomials)
};

std::vector<SweedlerCombo> sweedler_all(const JetOps& jo, const CFolded& f) {
    const Context& c = jo.ctx();
    std::vector<SweedlerCombo> combos{{}};
    for (size_t i = 0; i < f.slots.size(); ++i) {
        auto pairs = jo.delta(f.slots[i]);
        std::vector<SweedlerCombo> next;
        for (const auto& combo : combos)
            for (const auto& [a, b] : pairs) {
                if (a.is_zero()) continue;
                SweedlerCombo nc = combo;
                Mono bj;
                Rat bc = 1;
                if (b.term_count() != 1) throw Error("unexpected coproduct right factor");
                bj = b.terms().begin()->first;
                bc = b.terms().begin()->second;
                // interleave sign: a_i moves left past b_1 .. b_{i-1}
                int apar = elem_parity(a) ^ signs::kConnesSweedlerShift;
                int crossed = 0;
                for (const auto& prev : nc.second)
                    crossed ^= (mono_parity(c, prev) ^ signs::kConnesSweedlerShift);
                nc.coef = nc.coef * bc;
                if ((apar & crossed) & 1) nc.coef = -nc.coef;
                nc.first.push_back(a);
                nc.second.push_back(bj);
                next.push_back(std::move(nc));
            }
        combos = std::move(next);
    }
    return combos;
}

} // namespace

CChain connes_B(const CChain& ch) {
    const HopfSide& side = ch.side();
    const Context& c = side.ctx();
    JetOps jo(side);
    CChain out(side);
    int p = ch.arity();
    if (p < 0) throw Error("connes_B needs pure arity");
    for (const auto& [key, coef] : ch.terms()) {
        CFolded f = cfold(side, key, coef);
        std::vector<SweedlerCombo> combos;
        if (p == 0) {
            SweedlerCombo base;
            base.coef = 1;
            combos.push_back(base);
        } else {
            combos = sweedler_all(jo, f);
        }
        for (const auto& combo : combos) {
            // S block: antipode of the * product of the first components,
            // with the arity-zero coefficient folded in through alpha
            Elem prod = Elem::scalar(c, 1);
            for (const auto& a : combo.first) prod = jo.star(prod, a);
            if (p == 0) prod = Elem::monomial(c, key.coeff, 1);
            Elem sblock = jo.antipode(prod);
            if (sblock.is_zero()) continue;
            // base sequence: (S, b_1, ..., b_p); then all cyclic rotations
            std::vector<Elem> seq;
            std::vector<int> rpar;
            seq.push_back(sblock);
            rpar.push_back(elem_parity(sblock) ^ signs::kConnesRotShiftS);
            for (const auto& b : combo.second) {
                seq.push_back(Elem::monomial(c, b, 1));
                rpar.push_back(mono_parity(c, b) ^ signs::kConnesRotShiftB);
            }
            int n = static_cast<int>(seq.size());
            for (int k = 0; k < n; ++k) {
                // rotate left by k: moving the first k entries past the rest
                std::vector<Elem> rot;
                for (int i = k; i < n; ++i) rot.push_back(seq[static_cast<size_t>(i)]);
                for (int i = 0; i < k; ++i) rot.push_back(seq[static_cast<size_t>(i)]);
                int head = 0, tail = 0;
                for (int i = 0; i < k; ++i) head ^= rpar[static_cast<size_t>(i)];
                for (int i = k; i < n; ++i) tail ^= rpar[static_cast<size_t>(i)];
                int sign = head & tail;
                Rat cc = f.coef * combo.coef;
                if (p == 0) cc = coef;
                if (sign & 1) cc = -cc;
                CChain t1(side);
                normalize_cterm(t1, side, cc * signs::kConnesMain, Mono{}, rot);
                out += t1;
                // degeneracy: replace the leading entry by alpha(eps(.))
                std::vector<Elem> degen = rot;
                degen[0] = jo.alpha(jo.counit(degen[0]));
                if (!degen[0].is_zero()) {
                    CChain t2(side);
                    normalize_cterm(t2, side, cc * signs::kConnesDegen, Mono{}, degen);
                    out += t2;
                }
            }
        }
    }
    return out;
}

CChain iota_D(const DChain& u, const CChain& ch) {
    const HopfSide& side = ch.side();
    const Context& c = side.ctx();
    JetOps jo(side);
    CChain out(side);
    int d = u.arity(), p = ch.arity();
    if (d < 0 || p < 0) throw Error("iota_D needs pure arities");
    if (d > p) throw Error("iota_D arity mismatch");
    for (const auto& [uk, ucoef] : u.terms()) {
        // operator slots with the coefficient folded into slot one
        std::vector<Elem> uslots;
        Rat ucc = ucoef;
        if (!uk.slots.empty()) {
            if (mono_parity(c, uk.coeff)) ucc = -ucc;
            for (size_t i = 0; i < uk.slots.size(); ++i) {
                Mono m = uk.slots[i];
                if (i == 0) {
                    Mono merged;
                    int sg;
                    if (!mono_mul(c, uk.coeff, m, merged, sg)) throw Error("iota fold overflow");
                    if (sg < 0) ucc = -ucc;
                    m = merged;
                }
                uslots.push_back(Elem::monomial(c, m, 1));
            }
        } else {
            uslots.clear();
        }
        for (const auto& [ck, ccoef] : ch.terms()) {
            CFolded f = cfold(side, ck, ccoef);
            Rat cc = ucc * f.coef;
            if (d == 0) {
                // left multiplication by alpha(f)
                Elem val = Elem::monomial(c, uk.coeff, 1);
                std::vector<Elem> slots = f.slots;
                if (slots.empty()) {
                    Elem prodv = Elem::mul(val, Elem::scalar(c, 1));
                    for (const auto& [m, cm] : prodv.terms())
                        out.add_term(CKey{m, {}}, ucoef * ccoef * cm);
                    continue;
                }
                slots[0] = jo.star(jo.alpha(val), slots[0]);
                CChain t(side);
                normalize_cterm(t, side, ucoef * f.coef, Mono{}, slots);
                out += t;
                continue;
            }
            // zip sign: u_i moves left past xi_j for j < i
            int zip = 0;
            for (int i = 1; i < d; ++i) {
                int upar = elem_parity(uslots[static_cast<size_t>(i)]) ^ signs::kIotaZipShift;
                int crossed = 0;
                for (int j = 0; j < i; ++j)
                    crossed ^= (f.par[static_cast<size_t>(j)] ^ signs::kIotaZipShift);
                zip ^= (upar & crossed);
            }
            Rat coef2 = cc;
            if (zip & 1) coef2 = -coef2;
            Elem value(c);
            bool ok = true;
            value = Elem::scalar(c, 1);
            for (int i = 0; i < d; ++i) {
                Elem pr = jo.pair(f.slots[static_cast<size_t>(i)], uslots[static_cast<size_t>(i)]);
                if (signs::kIotaPairTwist) {
                    int s = elem_parity(uslots[static_cast<size_t>(i)]) &
                            f.par[static_cast<size_t>(i)];
                    if (s & 1) pr = -pr;
                }
                if (pr.is_zero()) {
                    ok = false;
                    break;
                }
                value = Elem::mul(value, pr);
            }
            if (!ok || value.is_zero()) continue;
            std::vector<Elem> slots;
            if (d < p) {
                slots.push_back(jo.star(jo.alpha(value), f.slots[static_cast<size_t>(d)]));
                for (int i = d + 1; i < p; ++i) slots.push_back(f.slots[static_cast<size_t>(i)]);
                CChain t(side);
                normalize_cterm(t, side, coef2, Mono{}, slots);
                out += t;
            } else {
                for (const auto& [m, cm] : value.terms()) out.add_term(CKey{m, {}}, coef2 * cm);
            }
        }
    }
    return out;
}

namespace {

// lie_D through the flat-section isomorphisms, fused pi^* ; tilde-L ; iota^*.
// Supports operator arity d <= 2.
CChain lie_D_impl(const DChain& u, const CChain& ch) {
    const HopfSide& side = ch.side();
    const Context& c = side.ctx();
    JetOps jo(side);
    CChain out(side);
    int d = u.arity(), p = ch.arity();
    if (d < 0 || p < 0) throw Error("lie_D needs pure arities");
    if (d > 2) throw Error("lie_D implemented for operator arity <= 2");
    for (const auto& [uk, ucoef] : u.terms()) {
        std::vector<Elem> uslots;
        Rat ucc = ucoef;
        if (mono_parity(c, uk.coeff)) ucc = -ucc;
        for (size_t i = 0; i < uk.slots.size(); ++i) {
            Mono m = uk.slots[i];
            if (i == 0) {
                Mono merged;
                int sg;
                if (!mono_mul(c, uk.coeff, m, merged, sg)) throw Error("lie_D fold overflow");
                if (sg < 0) ucc = -ucc;
                m = merged;
            }
            uslots.push_back(Elem::monomial(c, m, 1));
        }
        for (const auto& [ck, ccoef] : ch.terms()) {
            CFolded f = cfold(side, ck, ccoef);
            // pi^*: xi_0 = S(prod of first components), slots = second comps
            std::vector<SweedlerCombo> combos = sweedler_all(jo, f);
            if (p == 0) {
                SweedlerCombo base;
                combos = {base};
            }
            for (const auto& combo : combos) {
                Elem prod = Elem::scalar(c, 1);
                for (const auto& a : combo.first) prod = jo.star(prod, a);
                if (p == 0) prod = jo.alpha(Elem::monomial(c, ck.coeff, 1));
                Elem xi0 = jo.antipode(prod);
                if (xi0.is_zero()) continue;
                std::vector<Elem> xs;
                xs.push_back(xi0);
                for (const auto& b : combo.second) xs.push_back(Elem::monomial(c, b, 1));
                Rat base_coef = ucc * f.coef * combo.coef;
                if (p == 0) base_coef = ucc * ccoef;

                // tilde-L, then iota^* = alpha(eps(slot 0)) * slot 1
                auto emit = [&](const std::vector<Elem>& seq, const Rat& coef) {
                    // seq has p + 2 - d entries with seq[0] unsuspended
                    std::vector<Elem> slots;
                    Elem head = jo.alpha(jo.counit(seq[0]));
                    if (head.is_zero()) return;
                    if (seq.size() == 1) {
                        for (const auto& [m, cm] : head.terms())
                            out.add_term(CKey{m, {}}, coef * cm);
                        return;
                    }
                    slots.push_back(jo.star(head, seq[1]));
                    for (size_t i = 2; i < seq.size(); ++i) slots.push_back(seq[i]);
                    CChain t(side);
                    normalize_cterm(t, side, coef, Mono{}, slots);
                    out += t;
                };

                // first family: j = d .. p: collapse xi_{j-d+1} .. xi_j
                for (int j = d; j <= p; ++j) {
                    // Koszul: us move right past xi_0 .. xi_{j-d}
                    int cross = 0;
                    for (int i = 0; i <= j - d; ++i) {
                        int par = (i == 0) ? elem_parity(xs[0])
                                            : (elem_parity(xs[static_cast<size_t>(i)]) ^ 1);
                        cross ^= par;
                    }
                    int upar = 0;
                    for (const auto& us : uslots)
                        upar ^= (elem_parity(us) ^ (signs::kTildeLU & 1));
                    int e = upar & cross;
                    if (((d - 1) & 1) & ((1 + j - d) & 1)) e ^= 1;
                    Elem collapsed = Elem::scalar(c, 1);
                    bool dead = false;
                    for (int a = 0; a < d; ++a) {
                        Elem dm = jo.dmb(uslots[static_cast<size_t>(a)],
                                         xs[static_cast<size_t>(j - d + 1 + a)]);
                        if (dm.is_zero()) {
                            dead = true;
                            break;
                        }
                        collapsed = jo.star(collapsed, dm);
                    }
                    if (dead) continue;
                    std::vector<Elem> seq;
                    for (int i = 0; i <= j - d; ++i) seq.push_back(xs[static_cast<size_t>(i)]);
                    seq.push_back(collapsed);
                    for (int i = j + 1; i <= p; ++i) seq.push_back(xs[static_cast<size_t>(i)]);
                    emit(seq, (e & 1) ? -base_coef : base_coef);
                }
                // second family: j = 1 .. d: wraparound through xi_0
                for (int j = 1; j <= d; ++j) {
                    if (p + 1 < d) break;
                    // entries used: xi_{p-j+2} .. xi_p, xi_0, xi_1 .. xi_{d-j}
                    std::vector<int> used;
                    for (int a = 0; a < j - 1; ++a) used.push_back(p - j + 2 + a);
                    used.push_back(0);
                    for (int a = 0; a < d - j; ++a) used.push_back(1 + a);
                    Elem collapsed = Elem::scalar(c, 1);
                    bool dead = false;
                    int e = ((p & 1) & ((p - j + 2) & 1)) ? 1 : 0;
                    // Koszul: the trailing xi's move to the front past the
                    // middle block; the u's wrap along with them
                    int moved = 0;
                    for (int a = 0; a < j - 1; ++a)
                        moved ^= (elem_parity(xs[static_cast<size_t>(p - j + 2 + a)]) ^ 1);
                    int stay = elem_parity(xs[0]);
                    for (int i = 1; i <= p - j + 1; ++i)
                        stay ^= (elem_parity(xs[static_cast<size_t>(i)]) ^ 1);
                    if (signs::kTildeLWrap) e ^= (moved & stay);
                    int upar = 0;
                    for (const auto& us : uslots)
                        upar ^= (elem_parity(us) ^ (signs::kTildeLU & 1));
                    int cross2 = 0;
                    for (int i = 1; i <= p - j + 1; ++i)
                        cross2 ^= (elem_parity(xs[static_cast<size_t>(i)]) ^ 1);
                    if (signs::kTildeLUWrap) e ^= (upar & cross2);
                    for (int a = 0; a < d; ++a) {
                        Elem dm = jo.dmb(uslots[static_cast<size_t>(a)],
                                         xs[static_cast<size_t>(used[static_cast<size_t>(a)])]);
                        if (dm.is_zero()) {
                            dead = true;
                            break;
                        }
                        collapsed = jo.star(collapsed, dm);
                    }
                    if (dead) continue;
                    std::vector<Elem> seq;
                    seq.push_back(collapsed);
                    for (int i = d - j + 1; i <= p - j + 1; ++i)
                        seq.push_back(xs[static_cast<size_t>(i)]);
                    emit(seq, (e & 1) ? -base_coef : base_coef);
                }
            }
        }
    }
    return out;
}

} // namespace

CChain lie_D(const DChain& u, const CChain& c) { return lie_D_impl(u, c); }

CChain hochschild_b(const CChain& c) { return lie_D(shifted_mult(c.side()), c); }

CChain lie_by_field_C(const Derivation& v, const CChain& ch) {
    const HopfSide& side = ch.side();
    const Context& c = side.ctx();
    JetOps jo(side);
    Derivation vl = side.lift_derivation(v);
    int vpar = v.degree() & 1;
    CChain out(side);
    for (const auto& [k, coef] : ch.terms()) {
        Elem vc = vl.apply(Elem::monomial(c, k.coeff, 1));
        for (const auto& [m, cm] : vc.terms()) out.add_term(CKey{m, k.slots}, coef * cm);
        int cross = mono_parity(c, k.coeff);
        for (size_t i = 0; i < k.slots.size(); ++i) {
            Elem lv = jo.lie_field_jet(v, Elem::monomial(c, k.slots[i], 1));
            if (!lv.is_zero()) {
                std::vector<Elem> slots;
                for (size_t j = 0; j < k.slots.size(); ++j) {
                    if (j == i) slots.push_back(lv);
                    else slots.push_back(Elem::monomial(c, k.slots[j], 1));
                }
                Rat coef2 = coef;
                if (vpar && (cross & 1)) coef2 = -coef2;
                CChain t(side);
                normalize_cterm(t, side, coef2, k.coeff, slots);
                out += t;
            }
            cross ^= susp_parity(c, k.slots[i]);
        }
    }
    return out;
}

CChain h_nat_C(const CChain& ch) {
    const HopfSide& side = ch.side();
    if (!side.fedosov()) throw Error("h_nat_C lives on the Fedosov side");
    const Model& m = side.model();
    CChain r(side);
    for (const auto& [k, coef] : ch.terms()) {
        Elem hc = homotopy_h(m, transport(Elem::monomial(side.ctx(), k.coeff, 1), m.ctxN()));
        Elem back = transport(hc, side.ctx());
        for (const auto& [mm, cm] : back.terms()) r.add_term(CKey{mm, k.slots}, coef * cm);
    }
    return r;
}

CChain sigma_coeff_C(const CChain& ch) {
    const HopfSide& side = ch.side();
    const Context& c = side.ctx();
    CChain r(side);
    for (const auto& [k, coef] : ch.terms())
        if (mono_order(c, k.coeff, GenClass::Form) == 0 &&
            mono_order(c, k.coeff, GenClass::Fiber) == 0)
            r.add_term(k, coef);
    return r;
}

CChain fiber_window_C(const CChain& ch, int qmax) {
    const HopfSide& side = ch.side();
    const Context& c = side.ctx();
    CChain r(side);
    for (const auto& [k, coef] : ch.terms())
        if (mono_order(c, k.coeff, GenClass::Fiber) <= qmax) r.add_term(k, coef);
    return r;
}

namespace {

Mono transport_mono2(const Context& from, const Context& to, const Mono& m) {
    Mono out;
    for (const auto& [g, k] : m.e) out.e.emplace_back(to.find_or_throw(from.gen(g).name), k);
    std::sort(out.e.begin(), out.e.end());
    return out;
}

} // namespace

CChain tau_nat_C(const HopfSide& base, const HopfSide& fed, const CChain& ch) {
    CChain r(fed);
    for (const auto& [k, coef] : ch.terms()) {
        CKey nk;
        nk.coeff = transport_mono2(base.ctx(), fed.ctx(), k.coeff);
        for (const auto& s : k.slots)
            nk.slots.push_back(transport_mono2(base.ctx(), fed.ctx(), s));
        r.add_term(nk, coef);
    }
    return r;
}

CChain sigma_nat_C(const HopfSide& base, const HopfSide& fed, const CChain& ch) {
    CChain proj = sigma_coeff_C(ch);
    CChain r(base);
    for (const auto& [k, coef] : proj.terms()) {
        CKey nk;
        nk.coeff = transport_mono2(fed.ctx(), base.ctx(), k.coeff);
        for (const auto& s : k.slots)
            nk.slots.push_back(transport_mono2(fed.ctx(), base.ctx(), s));
        r.add_term(nk, coef);
    }
    return r;
}

CChain phi_chain(const HopfSide& side, const std::vector<Elem>& a) {
    if (a.empty()) throw Error("phi_chain needs at least a_0");
    JetOps jo(side);
    const Context& c = side.ctx();
    std::vector<Elem> slots;
    Elem head = jo.alpha(transport(a[0], c));
    if (a.size() == 1) return CChain::scalar(side, a[0]);
    slots.push_back(jo.star(head, jo.beta(transport(a[1], c))));
    for (size_t i = 2; i < a.size(); ++i) slots.push_back(jo.beta(transport(a[i], c)));
    CChain out(side);
    normalize_cterm(out, side, 1, Mono{}, slots);
    return out;
}

} // namespace gfc

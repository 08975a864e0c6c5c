#include "gfc/elem.hpp"

#include <climits>
#include <sstream>

namespace gfc {

int mono_degree(const Context& ctx, const Mono& m) {
    int d = 0;
    for (const auto& [g, k] : m.e) d += ctx.degree(g) * k;
    return d;
}

int mono_order(const Context& ctx, const Mono& m, GenClass cls) {
    int n = 0;
    for (const auto& [g, k] : m.e)
        if (ctx.cls(g) == cls) n += k;
    return n;
}

int mono_series_order(const Context& ctx, const Mono& m) {
    int n = 0;
    for (const auto& [g, k] : m.e)
        if (ctx.counts_series(g)) n += k;
    return n;
}

int mono_parity(const Context& ctx, const Mono& m) {
    int p = 0;
    for (const auto& [g, k] : m.e)
        if (ctx.odd(g)) p ^= (k & 1);
    return p;
}

bool mono_mul(const Context& ctx, const Mono& a, const Mono& b, Mono& out, int& sign) {
    out.e.clear();
    out.e.reserve(a.e.size() + b.e.size());
    // Odd letters of `a` (counted mod 2) not yet emitted; every letter taken
    // from `b` moves left past them, contributing Koszul transpositions.
    int odd_tail = 0;
    for (const auto& [g, k] : a.e)
        if (ctx.odd(g)) odd_tail ^= (k & 1);

    int parity = 0;
    size_t ia = 0, ib = 0;
    while (ia < a.e.size() || ib < b.e.size()) {
        bool take_a;
        if (ia == a.e.size()) take_a = false;
        else if (ib == b.e.size()) take_a = true;
        else take_a = a.e[ia].first <= b.e[ib].first;

        if (take_a && ib < b.e.size() && a.e[ia].first == b.e[ib].first) {
            auto [g, ka] = a.e[ia];
            int kb = b.e[ib].second;
            if (ctx.odd(g)) {
                if (ka & 1) odd_tail ^= 1;
                if ((ka + kb) > 1) return false; // odd square
            }
            parity ^= (ctx.odd(g) ? (kb & 1) & odd_tail : 0);
            out.e.emplace_back(g, ka + kb);
            ++ia, ++ib;
        } else if (take_a) {
            auto [g, k] = a.e[ia];
            if (ctx.odd(g) && (k & 1)) odd_tail ^= 1;
            out.e.emplace_back(g, k);
            ++ia;
        } else {
            auto [g, k] = b.e[ib];
            if (ctx.odd(g)) parity ^= (k & 1) & odd_tail;
            out.e.emplace_back(g, k);
            ++ib;
        }
    }

    int series = 0, legs = 0, jets = 0;
    for (const auto& [g, k] : out.e) {
        if (ctx.counts_series(g)) series += k;
        else if (ctx.cls(g) == GenClass::Leg) legs += k;
        else if (ctx.cls(g) == GenClass::Jet) jets += k;
    }
    if (series > ctx.series_cap || legs > ctx.leg_cap || jets > ctx.jet_cap) return false;
    sign = parity ? -1 : 1;
    return true;
}

Elem Elem::scalar(const Context& ctx, const Rat& c) {
    Elem e(ctx);
    e.add_term(Mono{}, c);
    return e;
}

Elem Elem::generator(const Context& ctx, int gen, int exp) {
    Elem e(ctx);
    if (exp < 0) throw Error("negative exponent");
    if (exp == 0) return scalar(ctx, 1);
    if (ctx.odd(gen) && exp > 1) return e; // zero
    Mono m;
    m.e.emplace_back(gen, exp);
    if (ctx.counts_series(gen) && exp > ctx.series_cap) return e;
    if (ctx.cls(gen) == GenClass::Leg && exp > ctx.leg_cap) return e;
    if (ctx.cls(gen) == GenClass::Jet && exp > ctx.jet_cap) return e;
    e.add_term(m, 1);
    return e;
}

Elem Elem::monomial(const Context& ctx, const Mono& m, const Rat& c) {
    Elem e(ctx);
    e.add_term(m, c);
    return e;
}

const Context& Elem::ctx() const {
    if (!ctx_) throw Error("element has no context");
    return *ctx_;
}

void Elem::check_ctx(const Elem& o) const {
    if (ctx_ && o.ctx_ && ctx_ != o.ctx_) throw ContextMismatch("context mismatch");
}

void Elem::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Elem Elem::operator-() const {
    Elem r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Elem& Elem::operator+=(const Elem& o) {
    check_ctx(o);
    if (!ctx_) ctx_ = o.ctx_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Elem& Elem::operator-=(const Elem& o) {
    check_ctx(o);
    if (!ctx_) ctx_ = o.ctx_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Elem Elem::operator*(const Rat& c) const {
    Elem r(ctx());
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Elem Elem::mul(const Elem& a, const Elem& b) {
    a.check_ctx(b);
    const Context& ctx = a.ctx_ ? a.ctx() : b.ctx();
    Elem r(ctx);
    Mono prod;
    int sign;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            if (!mono_mul(ctx, ma, mb, prod, sign)) continue;
            Rat c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(prod, c);
        }
    return r;
}

Elem Elem::dleft(int gen) const {
    const Context& c = ctx();
    Elem r(c);
    const int dg_odd = c.odd(gen);
    for (const auto& [m, coef] : terms_) {
        int prefix_odd = 0;
        for (size_t i = 0; i < m.e.size(); ++i) {
            auto [g, k] = m.e[i];
            if (g == gen) {
                Mono out = m;
                if (k == 1) out.e.erase(out.e.begin() + static_cast<long>(i));
                else out.e[i].second = k - 1;
                Rat nc = coef * k;
                if (dg_odd && prefix_odd) nc = -nc;
                r.add_term(out, nc);
                break;
            }
            if (c.odd(g)) prefix_odd ^= (k & 1);
        }
    }
    return r;
}

Elem Elem::dright(int gen) const {
    const Context& c = ctx();
    Elem r(c);
    const int dg_odd = c.odd(gen);
    for (const auto& [m, coef] : terms_) {
        for (size_t i = 0; i < m.e.size(); ++i) {
            auto [g, k] = m.e[i];
            if (g != gen) continue;
            int suffix_odd = 0;
            for (size_t j = i + 1; j < m.e.size(); ++j)
                if (c.odd(m.e[j].first)) suffix_odd ^= (m.e[j].second & 1);
            Mono out = m;
            if (k == 1) out.e.erase(out.e.begin() + static_cast<long>(i));
            else out.e[i].second = k - 1;
            Rat nc = coef * k;
            if (dg_odd && suffix_odd) nc = -nc;
            r.add_term(out, nc);
            break;
        }
    }
    return r;
}

Elem Elem::bigrade(int r, int q) const {
    const Context& c = ctx();
    Elem out(c);
    for (const auto& [m, coef] : terms_)
        if (mono_order(c, m, GenClass::Form) == r && mono_order(c, m, GenClass::Fiber) == q)
            out.add_term(m, coef);
    return out;
}

Elem Elem::truncated(int n) const {
    const Context& c = ctx();
    Elem out(c);
    for (const auto& [m, coef] : terms_) {
        int ord = mono_series_order(c, m) + mono_order(c, m, GenClass::Leg) +
                  mono_order(c, m, GenClass::Jet);
        if (ord <= n) out.add_term(m, coef);
    }
    return out;
}

Elem Elem::fiber_window(int q) const {
    const Context& c = ctx();
    Elem out(c);
    for (const auto& [m, coef] : terms_)
        if (mono_order(c, m, GenClass::Fiber) <= q) out.add_term(m, coef);
    return out;
}

Elem Elem::filter_class(GenClass cls, int order) const {
    const Context& c = ctx();
    Elem out(c);
    for (const auto& [m, coef] : terms_)
        if (mono_order(c, m, cls) == order) out.add_term(m, coef);
    return out;
}

int Elem::max_order(GenClass cls) const {
    const Context& c = ctx();
    int n = 0;
    for (const auto& [m, coef] : terms_) n = std::max(n, mono_order(c, m, cls));
    return n;
}

int Elem::min_fiber_order() const {
    const Context& c = ctx();
    int n = INT_MAX;
    for (const auto& [m, coef] : terms_) n = std::min(n, mono_order(c, m, GenClass::Fiber));
    return n;
}

bool Elem::is_homogeneous(int* deg) const {
    if (terms_.empty()) {
        if (deg) *deg = 0;
        return true;
    }
    const Context& c = ctx();
    int d = mono_degree(c, terms_.begin()->first);
    for (const auto& [m, coef] : terms_)
        if (mono_degree(c, m) != d) return false;
    if (deg) *deg = d;
    return true;
}

int Elem::degree_or_throw() const {
    int d;
    if (!is_homogeneous(&d)) throw Error("element is not homogeneous: " + str());
    return d;
}

std::string Elem::str() const {
    if (terms_.empty()) return "0";
    const Context& c = ctx();
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, coef] : terms_) {
        Rat a = coef;
        bool neg = a < 0;
        if (neg) a = -a;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool unit = (a == 1);
        if (!unit || m.is_one()) os << a.get_str();
        bool lead = unit && !m.is_one();
        for (const auto& [g, k] : m.e) {
            if (!lead) os << "*";
            lead = false;
            os << c.gen(g).name;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

} // namespace gfc

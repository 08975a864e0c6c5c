#include "gfc/derivation.hpp"

#include <sstream>

namespace gfc {

bool Derivation::is_zero() const {
    for (const auto& [g, c] : terms_)
        if (!c.is_zero()) return false;
    return true;
}

void Derivation::set_coeff(int gen, const Elem& c) {
    if (c.is_zero()) terms_.erase(gen);
    else terms_[gen] = c;
}

void Derivation::add_coeff(int gen, const Elem& c) {
    auto it = terms_.find(gen);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(gen, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Elem Derivation::coeff(int gen) const {
    auto it = terms_.find(gen);
    if (it == terms_.end()) return Elem(ctx());
    return it->second;
}

Elem Derivation::apply(const Elem& e) const {
    Elem r(ctx());
    for (const auto& [g, c] : terms_) r += Elem::mul(c, e.dleft(g));
    return r;
}

Derivation Derivation::operator-() const {
    Derivation r(ctx(), deg_);
    for (const auto& [g, c] : terms_) r.terms_.emplace(g, -c);
    return r;
}

Derivation& Derivation::operator+=(const Derivation& o) {
    if (!ctx_) {
        ctx_ = o.ctx_;
        deg_ = o.deg_;
    }
    if (o.ctx_ && ctx_ != o.ctx_) throw ContextMismatch("derivation context mismatch");
    if (!o.is_zero() && !is_zero() && deg_ != o.deg_)
        throw Error("adding derivations of different degrees");
    if (is_zero()) deg_ = o.is_zero() ? deg_ : o.deg_;
    for (const auto& [g, c] : o.terms_) add_coeff(g, c);
    return *this;
}

Derivation Derivation::operator*(const Rat& c) const {
    Derivation r(ctx(), deg_);
    if (c == 0) return r;
    for (const auto& [g, e] : terms_) r.terms_.emplace(g, e * c);
    return r;
}

Derivation Derivation::scaled_left(const Elem& e, int extra_degree) const {
    Derivation r(ctx(), deg_ + extra_degree);
    for (const auto& [g, c] : terms_) r.set_coeff(g, Elem::mul(e, c));
    return r;
}

Derivation Derivation::commutator(const Derivation& a, const Derivation& b) {
    const Context& ctx = a.ctx();
    Derivation r(ctx, a.degree() + b.degree());
    int sgn = (a.degree() & 1) && (b.degree() & 1) ? -1 : 1;
    for (int g = 0; g < ctx.size(); ++g) {
        Elem bg = b.coeff(g);
        Elem ag = a.coeff(g);
        Elem c(ctx);
        if (!bg.is_zero()) c += a.apply(bg);
        if (!ag.is_zero()) {
            Elem t = b.apply(ag);
            c += (sgn < 0) ? t : -t;
        }
        r.set_coeff(g, c);
    }
    return r;
}

void Derivation::check_degrees() const {
    const Context& c = ctx();
    for (const auto& [g, e] : terms_) {
        int d;
        if (!e.is_homogeneous(&d))
            throw Error("derivation coefficient not homogeneous at d/d" + c.gen(g).name);
        if (!e.is_zero() && d != deg_ + c.degree(g))
            throw Error("derivation degree mismatch at d/d" + c.gen(g).name);
    }
}

std::string Derivation::str() const {
    if (is_zero()) return "0";
    const Context& c = ctx();
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, e] : terms_) {
        if (e.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << e.str() << ")*d/d" << c.gen(g).name;
    }
    return os.str();
}

} // namespace gfc

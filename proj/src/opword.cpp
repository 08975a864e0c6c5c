#include "gfc/opword.hpp"

namespace gfc {

OpAlgebra::OpAlgebra(const Context& ambient, std::vector<int> directions, int word_cap,
                     std::string sym_prefix)
    : ambient_(&ambient), dirs_(std::move(directions)), word_cap_(word_cap) {
    owned_ = std::make_unique<Context>();
    for (int i = 0; i < ambient.size(); ++i) {
        const Gen& g = ambient.gen(i);
        owned_->add(g.name, g.cls, g.degree, g.pair);
    }
    owned_->series_cap = ambient.series_cap;
    sym_base_ = owned_->size();
    for (int i = 0; i < nsym(); ++i) {
        int d = dirs_[static_cast<size_t>(i)];
        owned_->add(sym_prefix + ambient.gen(d).name, GenClass::Leg, -ambient.degree(d), d);
    }
    sym_end_ = owned_->size();
}

OpAlgebra::OpAlgebra(const Context& shared, const Context& ambient, int sym_base, int nsyms,
                     int word_cap)
    : ambient_(&ambient), shared_(&shared), sym_base_(sym_base), sym_end_(sym_base + nsyms),
      word_cap_(word_cap) {
    for (int i = sym_base; i < sym_base + nsyms; ++i) {
        if (shared.cls(i) != GenClass::Leg) throw Error("operator symbols must be Leg class");
        dirs_.push_back(shared.gen(i).pair);
    }
}

int OpAlgebra::sym_of_dir(int ambient_gen) const {
    for (int i = 0; i < nsym(); ++i)
        if (dirs_[static_cast<size_t>(i)] == ambient_gen) return sym_gen(i);
    return -1;
}

Elem OpAlgebra::lower(const Elem& e) const {
    for (const auto& [m, c] : e.terms())
        for (const auto& [g, k] : m.e)
            if (is_sym(g)) throw Error("operator has symbol content; cannot lower");
    return transport(e, *ambient_);
}

Mono OpAlgebra::word_part(const Context& c, const Mono& m) {
    Mono w;
    for (const auto& [g, k] : m.e)
        if (c.cls(g) == GenClass::Leg) w.e.emplace_back(g, k);
    return w;
}

Mono OpAlgebra::coeff_part(const Mono& m) const {
    Mono w;
    for (const auto& [g, k] : m.e)
        if (!is_sym(g)) w.e.emplace_back(g, k);
    return w;
}

int OpAlgebra::order(const Elem& op) const {
    int n = 0;
    for (const auto& [m, c] : op.terms()) {
        int len = 0;
        for (const auto& [g, k] : m.e)
            if (is_sym(g)) len += k;
        n = std::max(n, len);
    }
    return n;
}

Elem OpAlgebra::counit(const Elem& op) const {
    Elem r(ctx());
    for (const auto& [m, c] : op.terms()) {
        bool pure = true;
        for (const auto& [g, k] : m.e)
            if (is_sym(g)) {
                pure = false;
                break;
            }
        if (pure) r.add_term(m, c);
    }
    return r;
}

Elem OpAlgebra::apply(const Elem& op, const Elem& f) const {
    Elem r(ctx());
    for (const auto& [m, c] : op.terms()) {
        Elem acc = f;
        // letters act right to left
        for (auto it = m.e.rbegin(); it != m.e.rend() && !acc.is_zero(); ++it) {
            auto [g, k] = *it;
            if (!is_sym(g)) continue;
            int dir = ctx().gen(g).pair;
            for (int rep = 0; rep < k; ++rep) acc = acc.dleft(dir);
        }
        if (acc.is_zero()) continue;
        Mono coeff = coeff_part(m);
        r += Elem::mul(Elem::monomial(ctx(), coeff, c), acc);
    }
    return r;
}

// d_sym o E = (d E) + (-1)^{|sym||E|} E * sym, monomial-wise.
Elem OpAlgebra::compose_gen(int sym, const Elem& e) const {
    int dir = ctx().gen(sym).pair;
    Elem r = e.dleft(dir);
    int sym_odd = ctx().odd(sym) ? 1 : 0;
    Elem symbol = Elem::generator(ctx(), sym);
    for (const auto& [m, c] : e.terms()) {
        Rat cc = c;
        if (sym_odd && mono_parity(ctx(), m)) cc = -cc;
        r += Elem::mul(Elem::monomial(ctx(), m, cc), symbol);
    }
    return r;
}

Elem OpAlgebra::compose(const Elem& a, const Elem& b) const {
    Elem r(ctx());
    for (const auto& [m, c] : a.terms()) {
        Elem acc = b;
        for (auto it = m.e.rbegin(); it != m.e.rend() && !acc.is_zero(); ++it) {
            auto [g, k] = *it;
            if (!is_sym(g)) continue;
            for (int rep = 0; rep < k; ++rep) acc = compose_gen(g, acc);
        }
        if (acc.is_zero()) continue;
        Mono coeff = coeff_part(m);
        r += Elem::mul(Elem::monomial(ctx(), coeff, c), acc);
    }
    if (order(r) > word_cap_)
        throw OrderOverflow("operator order " + std::to_string(order(r)) + " exceeds cap " +
                            std::to_string(word_cap_));
    return r;
}

std::vector<OpAlgebra::Split> OpAlgebra::split2(const Mono& word) const {
    std::vector<Split> out;
    size_t n = word.e.size();
    std::vector<int> take(n, 0);
    for (;;) {
        Mono left, right;
        Rat mult = 1;
        for (size_t i = 0; i < n; ++i) {
            auto [g, k] = word.e[i];
            int t = take[i];
            if (t > 0) left.e.emplace_back(g, t);
            if (k - t > 0) right.e.emplace_back(g, k - t);
            // binomial multiplicity for repeated even letters
            long b = 1;
            for (int j = 0; j < t; ++j) b = b * (k - j) / (j + 1);
            mult *= b;
        }
        Mono prod;
        int sign;
        if (!mono_mul(ctx(), left, right, prod, sign)) sign = 0;
        if (sign != 0) {
            Split s;
            s.left = left;
            s.right = right;
            s.coeff = (sign < 0) ? -mult : mult;
            out.push_back(std::move(s));
        }
        // next choice vector
        size_t i = 0;
        for (; i < n; ++i) {
            if (take[i] < word.e[i].second) {
                ++take[i];
                for (size_t j = 0; j < i; ++j) take[j] = 0;
                break;
            }
        }
        if (i == n) break;
    }
    return out;
}

std::vector<std::pair<std::vector<Mono>, Rat>> OpAlgebra::splitn(const Mono& word,
                                                                 int parts) const {
    std::vector<std::pair<std::vector<Mono>, Rat>> out;
    if (parts <= 0) {
        if (word.e.empty()) out.push_back({{}, 1});
        return out;
    }
    if (parts == 1) {
        out.push_back({{word}, 1});
        return out;
    }
    for (const auto& s : split2(word)) {
        auto rest = splitn(s.right, parts - 1);
        for (auto& [monos, c] : rest) {
            std::vector<Mono> all;
            all.push_back(s.left);
            for (auto& m : monos) all.push_back(m);
            out.push_back({std::move(all), s.coeff * c});
        }
    }
    return out;
}

void OpAlgebra::set_connection(const Model& model) { gamma_ = &model; }

Elem OpAlgebra::nabla_sym(int k, const Elem& sword) const {
    if (!gamma_) throw Error("no connection on this operator algebra");
    const Context& c = ctx();
    Elem r(c);
    int dk = ambient_->degree(k) & 1;
    // coefficient part: d/dx_k
    r += sword.dleft(k);
    // word part: replace one letter l by Gamma_{k,l}^j * sym_j
    for (const auto& [m, coef] : sword.terms()) {
        // enumerate letter positions
        for (size_t pos = 0; pos < m.e.size(); ++pos) {
            auto [g, e] = m.e[pos];
            if (!is_sym(g)) continue;
            int l = ctx().gen(g).pair;
            for (int copy = 0; copy < e; ++copy) {
                // prefix = letters before this copy
                Mono prefix, suffix;
                for (size_t i = 0; i < pos; ++i) prefix.e.push_back(m.e[i]);
                if (copy > 0) prefix.e.emplace_back(g, copy);
                if (e - copy - 1 > 0) suffix.e.emplace_back(g, e - copy - 1);
                for (size_t i = pos + 1; i < m.e.size(); ++i) suffix.e.push_back(m.e[i]);
                int sgn = (dk && mono_parity(c, prefix)) ? -1 : 1;
                Elem repl(c);
                for (int j = 0; j < static_cast<int>(dirs_.size()); ++j) {
                    const Elem& gam = gamma_->gamma(k, l, ctx().gen(sym_gen(j)).pair);
                    if (gam.is_zero()) continue;
                    repl += Elem::mul(transport(gam, c), Elem::generator(c, sym_gen(j)));
                }
                if (repl.is_zero()) continue;
                Elem term = Elem::mul(Elem::monomial(c, prefix, sgn),
                                      Elem::mul(repl, Elem::monomial(c, suffix, coef)));
                r += term;
            }
        }
    }
    return r;
}

Elem OpAlgebra::pbw_word(const Mono& word) const {
    auto it = pbw_cache_.find(word);
    if (it != pbw_cache_.end()) return it->second;
    const Context& c = ctx();
    Elem result(c);
    int len = 0;
    for (const auto& [g, k] : word.e) len += k;
    if (len <= 1) {
        result = Elem::monomial(c, word, 1);
    } else {
        // 1/len * sum over letter copies: eps * (X_k . pbw(rest) - pbw(nabla_{X_k} rest))
        for (size_t pos = 0; pos < word.e.size(); ++pos) {
            auto [g, e] = word.e[pos];
            int dg = c.odd(g) ? 1 : 0;
            for (int copy = 0; copy < e; ++copy) {
                Mono prefix;
                for (size_t i = 0; i < pos; ++i) prefix.e.push_back(word.e[i]);
                if (copy > 0) prefix.e.emplace_back(g, copy);
                int sgn = (dg && mono_parity(c, prefix)) ? -1 : 1;
                Mono rest;
                for (size_t i = 0; i < word.e.size(); ++i) {
                    auto [gg, kk] = word.e[i];
                    int k2 = (i == pos) ? kk - 1 : kk;
                    if (k2 > 0) rest.e.emplace_back(gg, k2);
                }
                Elem rest_pbw = pbw_word(rest);
                Elem term = compose(Elem::generator(c, g), rest_pbw);
                int dir = c.gen(g).pair;
                term -= pbw(nabla_sym(dir, Elem::monomial(c, rest, 1)));
                result += (sgn < 0) ? -term : term;
            }
        }
        result = result * Rat(1, len);
    }
    pbw_cache_.emplace(word, result);
    return result;
}

Elem OpAlgebra::pbw(const Elem& sword) const {
    if (!gamma_) return sword; // flat vertical case: identity in normal form
    const Context& c = ctx();
    Elem r(c);
    for (const auto& [m, coef] : sword.terms()) {
        Mono coeff = coeff_part(m);
        Mono w = word_part(c, m);
        // coefficient stays in front: c * pbw(word); Koszul handled by mul
        Elem t = Elem::mul(Elem::monomial(c, coeff, coef), pbw_word(w));
        r += t;
    }
    return r;
}

Elem OpAlgebra::pbw_inv(const Elem& op) const {
    if (!gamma_) return op;
    Elem rest = op;
    Elem out(ctx());
    int guard = word_cap_ + 2;
    while (!rest.is_zero() && guard-- > 0) {
        int o = order(rest);
        Elem top(ctx());
        for (const auto& [m, c] : rest.terms()) {
            int len = 0;
            for (const auto& [g, k] : m.e)
                if (is_sym(g)) len += k;
            if (len == o) top.add_term(m, c);
        }
        out += top;
        rest -= pbw(top);
        if (order(rest) >= o && !rest.is_zero())
            throw Error("pbw inversion failed to reduce order");
    }
    if (guard <= 0) throw Error("pbw inversion did not terminate");
    return out;
}

} // namespace gfc

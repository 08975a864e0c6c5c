#include "gfc/expr.hpp"

#include <cctype>

namespace gfc {
namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    bool at_dd() {
        skip_ws();
        return pos + 2 < s.size() && s[pos] == 'd' && s[pos + 1] == '/' && s[pos + 2] == 'd';
    }
    std::string name() {
        skip_ws();
        size_t b = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (b == pos) throw ParseError("expected name", pos);
        return s.substr(b, pos - b);
    }
    long integer() {
        skip_ws();
        size_t b = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (b == pos) throw ParseError("expected number", pos);
        return std::stol(s.substr(b, pos - b));
    }
    Rat rational() {
        long num = integer();
        if (accept('/')) {
            long den = integer();
            if (den == 0) throw ParseError("zero denominator", pos);
            return rat_of(num, den);
        }
        return rat_of(num);
    }
};

struct TermResult {
    Elem coeff;
    int dd_gen = -1; // generator of a trailing d/d factor, if any
};

class Parser {
public:
    Parser(const Context& ctx, const std::string& text, bool allow_dd)
        : ctx_(ctx), lex_{text}, allow_dd_(allow_dd) {}

    std::vector<TermResult> parse_sum() {
        std::vector<TermResult> out;
        bool neg = lex_.accept('-');
        out.push_back(term(neg));
        while (!lex_.eof()) {
            if (lex_.accept('+')) out.push_back(term(false));
            else if (lex_.accept('-')) out.push_back(term(true));
            else throw ParseError("unexpected input", lex_.pos);
        }
        return out;
    }

private:
    const Context& ctx_;
    Lexer lex_;
    bool allow_dd_;

    TermResult term(bool negated) {
        TermResult r;
        r.coeff = Elem::scalar(ctx_, negated ? -1 : 1);
        for (;;) {
            if (allow_dd_ && lex_.at_dd()) {
                lex_.pos += 3;
                std::string n = lex_.name();
                int g = ctx_.find(n);
                if (g < 0) throw ParseError("unknown coordinate " + n, lex_.pos);
                r.dd_gen = g;
                if (lex_.accept('*')) throw ParseError("d/d factor must be last", lex_.pos);
                return r;
            }
            r.coeff = Elem::mul(r.coeff, factor());
            if (!lex_.accept('*')) return r;
        }
    }

    Elem factor() {
        char c = lex_.peek();
        if (c == '(') {
            lex_.expect('(');
            Elem e = sum_expr();
            lex_.expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Elem::scalar(ctx_, lex_.rational());
        if (c == '-') {
            lex_.expect('-');
            return -factor();
        }
        std::string n = lex_.name();
        int g = ctx_.find(n);
        if (g < 0) throw ParseError("unknown generator " + n, lex_.pos);
        int exp = 1;
        if (lex_.accept('^')) exp = static_cast<int>(lex_.integer());
        return Elem::generator(ctx_, g, exp);
    }

    Elem sum_expr() {
        bool neg = lex_.accept('-');
        Elem e = product();
        if (neg) e = -e;
        for (;;) {
            if (lex_.accept('+')) e += product();
            else if (lex_.accept('-')) e -= product();
            else return e;
        }
    }

    Elem product() {
        Elem e = factor();
        while (lex_.accept('*')) e = Elem::mul(e, factor());
        return e;
    }
};

} // namespace

Elem parse_elem(const Context& ctx, const std::string& text) {
    Parser p(ctx, text, false);
    Elem out(ctx);
    for (auto& t : p.parse_sum()) out += t.coeff;
    return out;
}

Derivation parse_derivation(const Context& ctx, const std::string& text) {
    Parser p(ctx, text, true);
    auto terms = p.parse_sum();
    int deg = 0;
    bool have_deg = false;
    Derivation d(ctx, 0);
    for (auto& t : terms) {
        if (t.dd_gen < 0) throw Error("derivation term lacks a d/d factor: " + text);
        int cd;
        if (!t.coeff.is_homogeneous(&cd))
            throw Error("derivation coefficient not homogeneous: " + text);
        if (t.coeff.is_zero()) continue;
        int term_deg = cd - ctx.degree(t.dd_gen);
        if (!have_deg) {
            deg = term_deg;
            have_deg = true;
            d = Derivation(ctx, deg);
        } else if (term_deg != deg) {
            throw Error("derivation terms have mixed degrees: " + text);
        }
        d.add_coeff(t.dd_gen, t.coeff);
    }
    return d;
}

} // namespace gfc

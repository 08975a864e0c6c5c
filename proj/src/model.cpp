#include "gfc/model.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace gfc {

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

// Minimal reader for the model-file subset: [section] headers, key = value
// entries with string/array/inline-table/integer values, '#' comments.
struct KV {
    std::string section, key, value; // value kept raw, quotes stripped for strings
};

struct FileParser {
    const std::string& s;
    size_t pos = 0;
    size_t line = 1;

    explicit FileParser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("model file: " + msg + " (line " + std::to_string(line) + ")", pos);
    }

    void skip_space_inline() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    void skip_blank() {
        for (;;) {
            skip_space_inline();
            if (pos < s.size() && s[pos] == '#') {
                while (pos < s.size() && s[pos] != '\n') ++pos;
            }
            if (pos < s.size() && (s[pos] == '\n' || s[pos] == '\r')) {
                if (s[pos] == '\n') ++line;
                ++pos;
                continue;
            }
            return;
        }
    }

    std::string bare_or_quoted() {
        skip_space_inline();
        if (pos < s.size() && s[pos] == '"') {
            ++pos;
            size_t b = pos;
            while (pos < s.size() && s[pos] != '"') ++pos;
            if (pos >= s.size()) fail("unterminated string");
            std::string r = s.substr(b, pos - b);
            ++pos;
            return r;
        }
        size_t b = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_' || s[pos] == '.' || s[pos] == '-'))
            ++pos;
        if (b == pos) fail("expected key or value");
        return s.substr(b, pos - b);
    }

    std::vector<KV> parse() {
        std::vector<KV> out;
        std::string section;
        for (;;) {
            skip_blank();
            if (pos >= s.size()) return out;
            if (s[pos] == '[') {
                ++pos;
                size_t b = pos;
                while (pos < s.size() && s[pos] != ']') ++pos;
                if (pos >= s.size()) fail("unterminated section header");
                section = s.substr(b, pos - b);
                ++pos;
                continue;
            }
            KV kv;
            kv.section = section;
            kv.key = bare_or_quoted();
            skip_space_inline();
            if (pos >= s.size() || s[pos] != '=') fail("expected '=' after key " + kv.key);
            ++pos;
            skip_space_inline();
            size_t b = pos;
            int depth = 0;
            while (pos < s.size()) {
                char c = s[pos];
                if (c == '[' || c == '{') ++depth;
                if (c == ']' || c == '}') --depth;
                if ((c == '\n' || c == '#') && depth == 0) break;
                ++pos;
            }
            kv.value = s.substr(b, pos - b);
            while (!kv.value.empty() && (kv.value.back() == ' ' || kv.value.back() == '\t' ||
                                         kv.value.back() == '\r'))
                kv.value.pop_back();
            out.push_back(kv);
        }
    }
};

std::string strip_quotes(const std::string& v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
}

std::vector<std::string> parse_string_array(const std::string& v, FileParser& fp) {
    std::vector<std::string> out;
    size_t i = 0;
    auto skip = [&] { while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i; };
    skip();
    if (i >= v.size() || v[i] != '[') fp.fail("expected array");
    ++i;
    for (;;) {
        skip();
        if (i < v.size() && v[i] == ']') return out;
        if (i >= v.size()) fp.fail("unterminated array");
        if (v[i] == '"') {
            size_t b = ++i;
            while (i < v.size() && v[i] != '"') ++i;
            if (i >= v.size()) fp.fail("unterminated string");
            out.push_back(v.substr(b, i - b));
            ++i;
        } else {
            size_t b = i;
            while (i < v.size() && v[i] != ',' && v[i] != ']') ++i;
            std::string item = v.substr(b, i - b);
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
                item.pop_back();
            out.push_back(item);
        }
        skip();
        if (i < v.size() && v[i] == ',') ++i;
    }
}

std::map<std::string, std::string> parse_inline_table(const std::string& v, FileParser& fp) {
    std::map<std::string, std::string> out;
    size_t i = 0;
    auto skip = [&] { while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i; };
    skip();
    if (i >= v.size() || v[i] != '{') fp.fail("expected inline table");
    ++i;
    for (;;) {
        skip();
        if (i < v.size() && v[i] == '}') return out;
        if (i >= v.size()) fp.fail("unterminated inline table");
        size_t b = i;
        while (i < v.size() && v[i] != '=' && v[i] != ',' && v[i] != '}') ++i;
        if (i >= v.size() || v[i] != '=') fp.fail("expected '=' in inline table");
        std::string key = v.substr(b, i - b);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        ++i;
        skip();
        b = i;
        int depth = 0;
        while (i < v.size() && !((v[i] == ',' || v[i] == '}') && depth == 0)) {
            if (v[i] == '{' || v[i] == '[') ++depth;
            if (v[i] == '}' || v[i] == ']') --depth;
            ++i;
        }
        std::string val = v.substr(b, i - b);
        while (!val.empty() && std::isspace(static_cast<unsigned char>(val.back()))) val.pop_back();
        out[strip_quotes(key)] = strip_quotes(val);
        skip();
        if (i < v.size() && v[i] == ',') ++i;
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    out.push_back(cur);
    return out;
}

} // namespace

ModelSpec load_model(const std::string& text) {
    ModelSpec spec;
    spec.source_text = text;
    FileParser fp(text);
    auto entries = fp.parse();
    for (const auto& kv : entries) {
        if (kv.section == "context") {
            if (kv.key == "base") {
                spec.base = parse_string_array(kv.value, fp);
            } else if (kv.key == "graded") {
                // array of inline tables {name = ..., degree = ...}
                size_t i = 0;
                const std::string& v = kv.value;
                while (i < v.size() && v[i] != '[') ++i;
                ++i;
                while (i < v.size()) {
                    while (i < v.size() && v[i] != '{' && v[i] != ']') ++i;
                    if (i >= v.size() || v[i] == ']') break;
                    size_t b = i;
                    int depth = 0;
                    do {
                        if (v[i] == '{') ++depth;
                        if (v[i] == '}') --depth;
                        ++i;
                    } while (i < v.size() && depth > 0);
                    auto tbl = parse_inline_table(v.substr(b, i - b), fp);
                    if (!tbl.count("name") || !tbl.count("degree"))
                        fp.fail("graded coordinate needs name and degree");
                    spec.graded.emplace_back(tbl["name"], std::stoi(tbl["degree"]));
                }
            } else if (kv.key == "truncation") {
                auto tbl = parse_inline_table(kv.value, fp);
                if (tbl.count("y_order")) spec.trunc.y_order = std::stoi(tbl["y_order"]);
                if (tbl.count("jet_order")) spec.trunc.jet_order = std::stoi(tbl["jet_order"]);
                if (tbl.count("max_arity")) spec.trunc.max_arity = std::stoi(tbl["max_arity"]);
            } else {
                fp.fail("unknown key in [context]: " + kv.key);
            }
        } else if (kv.section == "connection") {
            auto parts = split(strip_quotes(kv.key), '.');
            if (parts.size() != 4 || parts[0] != "Gamma")
                fp.fail("connection keys look like Gamma.<k>.<l>.<j>");
            spec.gamma[{parts[1], parts[2], parts[3]}] = strip_quotes(kv.value);
        } else if (kv.section == "q") {
            spec.q[strip_quotes(kv.key)] = strip_quotes(kv.value);
        } else if (kv.section.empty()) {
            fp.fail("entry before any section: " + kv.key);
        } else {
            fp.fail("unknown section [" + kv.section + "]");
        }
    }
    if (spec.base.empty() && spec.graded.empty())
        throw Error("model file declares no coordinates");
    return spec;
}

ModelSpec load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_model(ss.str());
}

Elem transport(const Elem& e, const Context& to) {
    const Context& from = e.ctx();
    Elem out(to);
    for (const auto& [m, c] : e.terms()) {
        Mono nm;
        for (const auto& [g, k] : m.e)
            nm.e.emplace_back(to.find_or_throw(from.gen(g).name), k);
        std::sort(nm.e.begin(), nm.e.end());
        out.add_term(nm, c); // name-matched contexts keep generator order
    }
    return out;
}

const Elem& Model::gamma(int k, int l, int j) const {
    auto it = gamma_.find({k, l, j});
    if (it == gamma_.end()) return zero_n_;
    return it->second;
}

const Derivation& Model::q_on_m() const {
    if (!q_m_) throw Error("model has no homological vector field");
    return *q_m_;
}

Derivation Model::q_components_n() const {
    const Derivation& qm = q_on_m();
    Derivation out(ctxN(), 1);
    for (const auto& [g, c] : qm.terms()) out.set_coeff(g, transport(c, ctxN()));
    return out;
}

Derivation Model::connection_derivation(int k) const {
    const Context& ctx = ctxN();
    Derivation d(ctx, -coord_degree(k));
    d.set_coeff(x_index(k), Elem::scalar(ctx, 1));
    int n = dim();
    for (int j = 0; j < n; ++j) {
        Elem c(ctx);
        for (int l = 0; l < n; ++l) {
            const Elem& g = gamma(k, l, j);
            if (g.is_zero()) continue;
            int sgn = 1;
            int dl = coord_degree(l) & 1, dj = coord_degree(j) & 1;
            if ((dl + dl * dj) & 1) sgn = -1;
            Elem term = Elem::mul(g, Elem::generator(ctx, y_index(l)));
            c += (sgn > 0) ? term : -term;
        }
        if (!c.is_zero()) d.add_coeff(y_index(j), -c);
    }
    return d;
}

std::string Model::hash_hex() const {
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
    return std::string(buf);
}

Model validate(const ModelSpec& spec) {
    Model m;
    m.spec_ = spec;
    m.hash_ = fnv1a(spec.source_text);
    m.names_ = spec.coordinates();

    m.ctx_m_ = std::make_unique<Context>();
    for (const auto& n : spec.base) m.ctx_m_->add(n, GenClass::Base, 0);
    for (const auto& [n, d] : spec.graded) {
        if (d == 0) throw DegreeError("graded coordinate " + n + " must have nonzero degree");
        m.ctx_m_->add(n, GenClass::Graded, d);
    }

    int n = m.dim();
    m.ctx_n_ = std::make_unique<Context>();
    for (int i = 0; i < n; ++i) {
        const Gen& g = m.ctx_m_->gen(i);
        m.ctx_n_->add(g.name, g.cls, g.degree);
    }
    for (int i = 0; i < n; ++i)
        m.ctx_n_->add("xi_" + m.names_[static_cast<size_t>(i)], GenClass::Form,
                      m.ctx_m_->degree(i) + 1, i);
    for (int i = 0; i < n; ++i)
        m.ctx_n_->add("y_" + m.names_[static_cast<size_t>(i)], GenClass::Fiber,
                      m.ctx_m_->degree(i), i);
    m.ctx_n_->series_cap = spec.trunc.y_order + kSeriesGuard;
    m.zero_n_ = Elem(*m.ctx_n_);

    auto coord_index = [&](const std::string& name) {
        int i = m.ctx_m_->find(name);
        if (i < 0 || i >= n) throw Error("unknown coordinate name: " + name);
        return i;
    };

    // Christoffel entries: parse against the coordinates, check degrees.
    for (const auto& [key, text] : spec.gamma) {
        int k = coord_index(std::get<0>(key));
        int l = coord_index(std::get<1>(key));
        int j = coord_index(std::get<2>(key));
        Elem g = parse_elem(*m.ctx_m_, text);
        if (g.is_zero()) continue;
        int d;
        if (!g.is_homogeneous(&d))
            throw DegreeError("Gamma entry not homogeneous: " + text);
        int want = m.coord_degree(j) - m.coord_degree(k) - m.coord_degree(l);
        if (d != want)
            throw DegreeError("Gamma." + std::get<0>(key) + "." + std::get<1>(key) + "." +
                              std::get<2>(key) + " has degree " + std::to_string(d) +
                              ", expected " + std::to_string(want));
        m.gamma_[{k, l, j}] = transport(g, *m.ctx_n_);
    }

    // Torsion-free symmetry Gamma_{k,l}^j = (-1)^{|x_k||x_l|} Gamma_{l,k}^j.
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j) {
                const Elem& a = m.gamma(k, l, j);
                const Elem& b = m.gamma(l, k, j);
                if (a.is_zero() && b.is_zero()) continue;
                int sgn = (m.coord_degree(k) & 1) && (m.coord_degree(l) & 1) ? -1 : 1;
                Elem diff = a - (sgn > 0 ? b : -b);
                if (!diff.is_zero())
                    throw TorsionError("torsion-free symmetry fails at Gamma." + m.names_[k] +
                                       "." + m.names_[l] + "." + m.names_[j]);
            }

    // Homological vector field.
    if (!spec.q.empty()) {
        Derivation q(*m.ctx_m_, 1);
        for (const auto& [name, text] : spec.q) {
            int j = coord_index(name);
            Elem comp = parse_elem(*m.ctx_m_, text);
            if (comp.is_zero()) continue;
            int d;
            if (!comp.is_homogeneous(&d))
                throw DegreeError("Q component not homogeneous at " + name);
            if (d != m.coord_degree(j) + 1)
                throw DegreeError("Q component at " + name + " has degree " + std::to_string(d) +
                                  ", expected " + std::to_string(m.coord_degree(j) + 1));
            q.add_coeff(j, comp);
        }
        Derivation qq = Derivation::commutator(q, q);
        if (!qq.is_zero())
            throw NotHomological("[Q,Q] != 0, residual: " + qq.str());
        m.q_m_ = q;
    }
    return m;
}

} // namespace gfc

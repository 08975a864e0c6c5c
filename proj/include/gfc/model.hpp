#pragma once

#include "gfc/derivation.hpp"
#include "gfc/elem.hpp"
#include "gfc/expr.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace gfc {

struct TorsionError : Error {
    using Error::Error;
};
struct DegreeError : Error {
    using Error::Error;
};
struct NotHomological : Error {
    using Error::Error;
};

struct Truncation {
    int y_order = 4;
    int jet_order = 3;
    int max_arity = 2;
};

struct ModelSpec {
    std::vector<std::string> base;                      // degree-0 coordinates
    std::vector<std::pair<std::string, int>> graded;    // (name, degree)
    Truncation trunc;
    // Christoffel entries Gamma[k][l][j] as polynomial text; absent = 0.
    std::map<std::tuple<std::string, std::string, std::string>, std::string> gamma;
    std::map<std::string, std::string> q; // Q^j per coordinate name
    std::string source_text;

    std::vector<std::string> coordinates() const {
        std::vector<std::string> all = base;
        for (auto& [n, d] : graded) all.push_back(n);
        return all;
    }
};

ModelSpec load_model(const std::string& text);
ModelSpec load_model_file(const std::string& path);

// Validated model: owns the base-manifold context (coordinates only) and the
// Fedosov-manifold context (x, xi, y), plus parsed connection and Q data.
class Model {
public:
    const ModelSpec& spec() const { return spec_; }
    const Context& ctxM() const { return *ctx_m_; }
    const Context& ctxN() const { return *ctx_n_; }

    int dim() const { return static_cast<int>(names_.size()); }
    const std::string& coord_name(int i) const { return names_[static_cast<size_t>(i)]; }
    int coord_degree(int i) const { return ctx_m_->degree(i); }
    int x_index(int i) const { return i; } // same index in both contexts
    int xi_index(int i) const { return dim() + i; }
    int y_index(int i) const { return 2 * dim() + i; }

    int y_order() const { return spec_.trunc.y_order; }
    int jet_order() const { return spec_.trunc.jet_order; }
    int max_arity() const { return spec_.trunc.max_arity; }

    // Christoffel symbol as element of the N-context (function of x only).
    const Elem& gamma(int k, int l, int j) const;
    bool flat() const { return gamma_.empty(); }

    bool has_q() const { return static_cast<bool>(q_m_); }
    const Derivation& q_on_m() const; // Q = sum Q^j d/dx_j on ctxM
    Derivation q_components_n() const; // same coefficients, in ctxN

    // nabla_{d/dx_k} acting on the N-context algebra.
    Derivation connection_derivation(int k) const;

    uint64_t hash() const { return hash_; }
    std::string hash_hex() const;

    friend Model validate(const ModelSpec& spec);

private:
    ModelSpec spec_;
    std::unique_ptr<Context> ctx_m_;
    std::unique_ptr<Context> ctx_n_;
    std::vector<std::string> names_;
    std::map<std::tuple<int, int, int>, Elem> gamma_; // in ctxN
    Elem zero_n_;
    std::optional<Derivation> q_m_;
    uint64_t hash_ = 0;
};

Model validate(const ModelSpec& spec);

// Re-bind an element to another context, matching generators by name.
Elem transport(const Elem& e, const Context& to);

// Guard orders added beyond the user-facing truncations; identities are
// asserted on the user window while series are computed past it.
inline constexpr int kSeriesGuard = 4;
inline constexpr int kJetGuard = 2;

uint64_t fnv1a(const std::string& data);

} // namespace gfc

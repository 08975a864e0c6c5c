#pragma once

#include "gfc/model.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace gfc {

struct OrderOverflow : Error {
    using Error::Error;
};

// Differential operators in normal form: elements of an extended context
// ambient + one Leg symbol per differentiation direction. A monomial
// (ambient part) * (symbol word) stands for coefficient * composition of
// partials, letters applied right to left.
class OpAlgebra {
public:
    // directions: ambient generator indices the symbols differentiate.
    OpAlgebra(const Context& ambient, std::vector<int> directions, int word_cap,
              std::string sym_prefix = "D_");
    // Non-owning variant: the shared context already contains the ambient
    // generators followed by one Leg symbol per direction starting at
    // sym_base (each with pair = direction).
    OpAlgebra(const Context& shared, const Context& ambient, int sym_base, int nsyms,
              int word_cap);

    const Context& ctx() const { return owned_ ? *owned_ : *shared_; }
    const Context& ambient() const { return *ambient_; }
    int word_cap() const { return word_cap_; }
    int nsym() const { return static_cast<int>(dirs_.size()); }
    int sym_gen(int i) const { return sym_base_ + i; }
    int dir_gen(int i) const { return dirs_[static_cast<size_t>(i)]; }
    int sym_of_dir(int ambient_gen) const; // -1 when not a direction
    bool is_sym(int gen) const { return gen >= sym_base_ && gen < sym_end_; }

    Elem lift(const Elem& e) const { return transport(e, ctx()); }
    Elem lower(const Elem& e) const; // throws if symbols remain

    // word-content helpers
    static Mono word_part(const Context& c, const Mono& m);
    Mono coeff_part(const Mono& m) const;
    int order(const Elem& op) const;   // max word length
    Elem counit(const Elem& op) const; // order-0 component

    Elem apply(const Elem& op, const Elem& f) const;
    Elem compose(const Elem& a, const Elem& b) const;

    struct Split {
        Mono left, right;
        Rat coeff; // Koszul sign * multinomial multiplicity
    };
    // Two-fold shuffle deconcatenation of a pure symbol word.
    std::vector<Split> split2(const Mono& word) const;
    // (q+1)-fold deconcatenation.
    std::vector<std::pair<std::vector<Mono>, Rat>> splitn(const Mono& word, int parts) const;

    // Symmetric-word connection action nabla_{d/dx_k} (derivation on words,
    // d/dx_k on ambient coefficients). Requires a Christoffel table.
    void set_connection(const Model& model);
    bool has_connection() const { return gamma_ != nullptr; }
    Elem nabla_sym(int k, const Elem& sword) const;

    // Formal exponential map: symmetric words -> operators, and its inverse.
    // Without a connection both are the identity reinterpretation.
    Elem pbw(const Elem& sword) const;
    Elem pbw_inv(const Elem& op) const;

private:
    const Context* ambient_;
    std::unique_ptr<Context> owned_;
    const Context* shared_ = nullptr;
    std::vector<int> dirs_;
    int sym_base_ = 0;
    int sym_end_ = 0;
    int word_cap_;
    const Model* gamma_ = nullptr;
    mutable std::map<Mono, Elem> pbw_cache_;

    Elem compose_gen(int sym, const Elem& e) const;
    Elem pbw_word(const Mono& word) const;
};

} // namespace gfc

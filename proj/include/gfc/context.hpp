#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfc {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ContextMismatch : Error {
    using Error::Error;
};

// Generator classes.
//   Base   - degree-0 smooth coordinate x, unconstrained polynomial variable
//   Graded - nonzero-degree formal coordinate
//   Form   - xi paired with an x, degree |x|+1
//   Fiber  - y paired with an x, degree |x|
//   Leg    - auxiliary generator (poly-space legs, operator word symbols)
//   Jet    - dual fiber variable of a truncated jet, capped separately
enum class GenClass : uint8_t { Base, Graded, Form, Fiber, Leg, Jet };

struct Gen {
    std::string name;
    GenClass cls = GenClass::Base;
    int degree = 0;
    int pair = -1; // index of the paired coordinate for Form/Fiber
};

// An ordered list of generators, fixed for its lifetime. Elements and
// derivations refer to a context by pointer; two values interoperate only
// if they share the same context object.
class Context {
public:
    Context() = default;

    int add(const std::string& name, GenClass cls, int degree, int pair = -1) {
        for (const auto& g : gens_)
            if (g.name == name) throw Error("duplicate generator name: " + name);
        gens_.push_back(Gen{name, cls, degree, pair});
        return static_cast<int>(gens_.size()) - 1;
    }

    int size() const { return static_cast<int>(gens_.size()); }
    const Gen& gen(int i) const { return gens_.at(static_cast<size_t>(i)); }
    int degree(int i) const { return gen(i).degree; }
    bool odd(int i) const { return (gen(i).degree & 1) != 0; }
    GenClass cls(int i) const { return gen(i).cls; }

    int find(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (gens_[static_cast<size_t>(i)].name == name) return i;
        return -1;
    }

    int find_or_throw(const std::string& name) const {
        int i = find(name);
        if (i < 0) throw Error("unknown generator: " + name);
        return i;
    }

    // Truncation: max total exponent over Graded+Form+Fiber generators
    // (the formal-series directions), over Leg generators, and over Jet
    // variables, each counted separately.
    int series_cap = std::numeric_limits<int>::max();
    int leg_cap = std::numeric_limits<int>::max();
    int jet_cap = std::numeric_limits<int>::max();

    bool counts_series(int i) const {
        GenClass c = cls(i);
        return c == GenClass::Graded || c == GenClass::Form || c == GenClass::Fiber;
    }

private:
    std::vector<Gen> gens_;
};

} // namespace gfc

#pragma once

#include "gfc/context.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gfc {

struct NonTerminatingSeries : Error {
    using Error::Error;
};

// Contraction record between (V, d_V) and (W, d_W). Chain types must be
// additive values with is_zero() and str().
template <class VT, class WT>
struct Contraction {
    std::function<VT(const VT&)> dV;
    std::function<WT(const WT&)> dW;
    std::function<VT(const WT&)> sigma;
    std::function<WT(const VT&)> tau;
    std::function<WT(const WT&)> h;
};

struct CheckReport {
    bool ok = true;
    std::vector<std::string> failures;
    void fail(const std::string& what, const std::string& witness) {
        ok = false;
        failures.push_back(what + "; witness: " + witness);
    }
};

// Evaluates the five contraction relations plus h dW h = h and the two
// chain-map conditions, exactly, on the given samples.
template <class VT, class WT>
CheckReport check_contraction(const Contraction<VT, WT>& C, const std::vector<VT>& vs,
                              const std::vector<WT>& ws) {
    CheckReport rep;
    for (const VT& v : vs) {
        VT st = C.sigma(C.tau(v)) - v;
        if (!st.is_zero()) rep.fail("sigma tau = id_V", v.str());
        WT ht = C.h(C.tau(v));
        if (!ht.is_zero()) rep.fail("h tau = 0", v.str());
        WT cm = C.dW(C.tau(v)) - C.tau(C.dV(v));
        if (!cm.is_zero()) rep.fail("dW tau = tau dV", v.str());
    }
    for (const WT& w : ws) {
        WT homo = w - C.tau(C.sigma(w)) - C.h(C.dW(w)) - C.dW(C.h(w));
        if (!homo.is_zero()) rep.fail("id - tau sigma = h dW + dW h", w.str());
        VT sh = C.sigma(C.h(w));
        if (!sh.is_zero()) rep.fail("sigma h = 0", w.str());
        WT hh = C.h(C.h(w));
        if (!hh.is_zero()) rep.fail("h h = 0", w.str());
        WT hdh = C.h(C.dW(C.h(w))) - C.h(w);
        if (!hdh.is_zero()) rep.fail("h dW h = h", w.str());
        VT cm = C.sigma(C.dW(w)) - C.dV(C.sigma(w));
        if (!cm.is_zero()) rep.fail("sigma dW = dV sigma", w.str());
        WT dd = C.dW(C.dW(w));
        if (!dd.is_zero()) rep.fail("dW dW = 0", w.str());
    }
    return rep;
}

inline constexpr int kSeriesIterationCap = 64;

// breve(rho) = sum_k rho (h rho)^k, evaluated lazily per element. The series
// must terminate by weight exhaustion; the iteration cap guards against a
// mis-declared perturbation.
template <class WT>
WT perturbation_series(const std::function<WT(const WT&)>& rho,
                       const std::function<WT(const WT&)>& h, const WT& w) {
    WT term = rho(w);
    WT acc = term;
    int guard = kSeriesIterationCap;
    while (!term.is_zero()) {
        if (--guard < 0)
            throw NonTerminatingSeries("perturbation series did not terminate (smallness?)");
        term = rho(h(term));
        acc = acc + term;
    }
    return acc;
}

// Homological perturbation. `rho_add` is the term added to d_W; internally
// the classical statement for d_W - rho is used with rho = -rho_add.
template <class VT, class WT>
Contraction<VT, WT> perturb(const Contraction<VT, WT>& C,
                            const std::function<WT(const WT&)>& rho_add) {
    auto rho = [rho_add](const WT& w) { return -rho_add(w); };
    auto breve = [rho, C](const WT& w) { return perturbation_series<WT>(rho, C.h, w); };
    Contraction<VT, WT> R;
    R.dW = [C, rho_add](const WT& w) { return C.dW(w) + rho_add(w); };
    R.sigma = [C, breve](const WT& w) { return C.sigma(w + breve(C.h(w))); };
    R.tau = [C, breve](const VT& v) {
        WT t = C.tau(v);
        return t + C.h(breve(t));
    };
    R.h = [C, breve](const WT& w) { return C.h(w) + C.h(breve(C.h(w))); };
    R.dV = [C, breve](const VT& v) { return C.dV(v) - C.sigma(breve(C.tau(v))); };
    return R;
}

// First-quadrant bicomplex case: tau lands in column zero, h lowers and
// rho_add preserves the column index, so tau survives the perturbation and
// the induced differential is d_V + sigma rho_add tau.
template <class VT, class WT>
Contraction<VT, WT> perturb_bicomplex(const Contraction<VT, WT>& C,
                                      const std::function<WT(const WT&)>& rho_add) {
    Contraction<VT, WT> R = perturb(C, rho_add);
    R.tau = C.tau;
    R.dV = [C, rho_add](const VT& v) { return C.dV(v) + C.sigma(rho_add(C.tau(v))); };
    return R;
}

} // namespace gfc

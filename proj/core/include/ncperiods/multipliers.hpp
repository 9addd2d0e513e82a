#pragma once

// Unitary multiplier systems for real weight, automorphy factors with
// explicit branch conventions, and the two slash actions (upper and lower
// half plane).
//
// Branch conventions, used consistently everywhere:
//   * powers of (cz+d) for z in the upper half plane use arg in (-pi, pi]
//   * powers of (ct+d) for t in the lower half plane (or its real boundary)
//     use arg in [-pi, pi)
// The two conventions differ only on the negative real axis.

#include <complex>
#include <functional>

#include "ncperiods/modular_group.hpp"

namespace ncperiods {

enum class HalfPlane { upper, lower };

/// base^expo for real expo with the half-plane branch convention above.
/// Throws std::domain_error for base == 0.
Complex real_power(Complex base, double expo, HalfPlane hp);

/// The bare factor cz+d.
Complex bare_factor(const UniModular& g, Complex z);

/// Multiplier system of the eta power eta^{2w} (a cusp form of weight w):
/// the unit v(g) in  F(gz) = v(g) (cz+d)^w F(z),  principal branch on the
/// upper half plane.  Values are roots of unity for rational w.
///
/// For c > 0 the value is exp(i pi w ((a+d)/(6c) - 2 s(d,c) - 1/2)) with s
/// the classical Dedekind sum; c = 0 gives exp(i pi w b / 6); the remaining
/// sign cases are routed through -g, whose factor ratio is a pure phase.
class EtaPowerMultiplier {
  public:
    explicit EtaPowerMultiplier(double w) : w_(w) {}

    double weight() const { return w_; }
    Complex operator()(const UniModular& g) const;

  private:
    Complex positive_c_phase(const UniModular& g) const;
    double w_;
};

/// Multiplier evaluator type used by the generic helpers below.
using MultiplierFn = std::function<Complex(const UniModular&)>;

inline MultiplierFn trivial_multiplier() {
    return [](const UniModular&) { return Complex(1.0, 0.0); };
}

/// j_{v,k}(g,z) = v(g) (cz+d)^k with the branch for the given half plane.
Complex automorphy_factor(const MultiplierFn& v, double k, const UniModular& g,
                          Complex z, HalfPlane hp);

/// Relative residual of the cocycle law
/// j(g d, z) = j(g, d z) j(d, z), measured as |lhs-rhs| / max(1, |lhs|)
/// (|j| grows like |cz+d|^k, so an absolute residual is scale-dependent).
double cocycle_residual(const MultiplierFn& v, double k, const UniModular& g,
                        const UniModular& d, Complex z);

enum class ActionDirection { plus, minus };

/// The two slash actions as closures.
///
/// plus  (upper half plane):  z |-> v(g)^{-1} (cz+d)^{-k} F(gz)
///   Cusp forms of weight k are exactly its fixed points, and for trivial v
///   it is the classical (cz+d)^{-k} F(gz).
/// minus (lower half plane):  t |-> v(g)^{-1} (ct+d)^{k} P(gt)
///   This is the weight -k action on period functions.
std::function<Complex(Complex)> weight_action(std::function<Complex(Complex)> F,
                                              MultiplierFn v, double k,
                                              const UniModular& g,
                                              ActionDirection dir);

}  // namespace ncperiods

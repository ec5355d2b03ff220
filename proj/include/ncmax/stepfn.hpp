#pragma once

#include <vector>

#include "ncmax/algebra.hpp"

namespace ncmax {

// Nonincreasing, nonnegative, right-continuous step function on (0, inf),
// stored as (value, length) pieces in normal form: values strictly
// decreasing, lengths > 0, no zero-value pieces (the function is 0 past the
// last piece).  At most the final piece may have infinite length.
class StepFunction {
 public:
  struct Piece {
    double value = 0;
    double length = 0;
  };

  StepFunction() = default;  // identically zero
  // Pairs in any order; sorted into the decreasing rearrangement and merged.
  static StepFunction from_pairs(std::vector<Piece> pieces);
  // Indicator of [0, len): value 1 up to len.
  static StepFunction indicator(double len);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }
  // Right-continuous evaluation, f(t) for t >= 0.
  double operator()(double t) const;
  // Total length of the support (may be inf).
  double support() const;
  double first_value() const { return pieces_.empty() ? 0 : pieces_[0].value; }
  // All jump abscissae (cumulative lengths), finite ones only.
  std::vector<double> breakpoints() const;

  // integral over (0, t).
  double integral_to(double t) const;
  double integral() const;  // may be inf

  StepFunction scaled(double c) const;         // c * f, c >= 0
  StepFunction dilated(double s) const;        // D_s f(t) = f(t / s)
  StepFunction powered(double alpha) const;    // f^alpha pointwise, alpha > 0

 private:
  std::vector<Piece> pieces_;
  void normalize();
};

// Pointwise sum of step functions (again a step function).
StepFunction stepfn_sum(const std::vector<StepFunction>& fs);

// Singular value function mu(x): all block singular values, each with
// length equal to its block weight, sorted decreasingly.
StepFunction mu(const Operator& x);

// Lorentz L_{p,q} norm: (int (t^{1/p} f(t))^q dt/t)^{1/q}, sup-modification
// when q = inf.  p = inf with q = inf gives sup f; p = inf with finite q
// gives inf unless f == 0 (logarithmic divergence at zero).
double lorentz_norm(const StepFunction& f, double p, double q);
double lp_norm(const StepFunction& f, double p);  // L_{p,p}

struct MajorizationReport {
  bool ok = false;
  // Largest value of int_0^t f - int_0^t g over checked t (positive means
  // the majorization fails by that much).
  double worst_excess = 0;
  double worst_t = 0;
};

// Hardy-Littlewood: int_0^t f <= int_0^t g for all t, checked at the
// breakpoints of both (primitives are concave piecewise linear, so this is
// exact) plus tail-slope comparison.  Relative slack eps * scale.
MajorizationReport hl_majorize(const StepFunction& f, const StepFunction& g,
                               double eps = tol::num);

struct PointwiseReport {
  bool ok = false;
  double worst_ratio = 0;  // max over breakpoints of f(t) / g(t) (inf if g=0<f)
  double worst_excess = 0;
  double worst_t = 0;
};

// f(t) <= g(t) * (1 + eps) at every breakpoint of either function (and at 0);
// exact for right-continuous step functions.
PointwiseReport pointwise_leq(const StepFunction& f, const StepFunction& g,
                              double eps = tol::num);

}  // namespace ncmax

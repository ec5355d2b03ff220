#pragma once

#include "ncmax/algebra.hpp"
#include "ncmax/stepfn.hpp"

namespace ncmax {

// Base-2 layer decomposition of a positive operator:
//   x ~= sum_n 2^{-n} r_n,  r_n a spectral projection of x
// where r_n collects the eigenvectors whose eigenvalue has a 1 digit at
// position n of its binary expansion.  The digit extraction is applied to
// scalar eigenvalues only, never to matrices.  Doubles are dyadic
// rationals, so the expansion of each eigenvalue terminates; the window is
// additionally truncated once the discarded remainder has L_p residual
// below eps_trunc relative to ||x||_p for each requested p.
struct DyadicTerm {
  int n = 0;          // the layer: weight 2^{-n}
  Projection r;       // commuting spectral projections of x
  double trace = 0.0;
};

struct DyadicDecomposition {
  Operator x;                     // the (positive) input
  std::vector<DyadicTerm> terms;  // increasing n
  double residual_linf = 0.0;     // ||x - sum 2^{-n} r_n||_inf
  Operator reconstruction() const;
};

// Requires x positive (within tol::num); eigenvalues below
// eps_trunc * ||x|| / total_dim are treated as zero.
// residual_ps: the decomposition is truncated only when the remainder is
// below eps_trunc * ||x||_p for every listed p (L1 and Linf are always
// included so the window does not depend on the caller's exponent).
DyadicDecomposition dyadic_decompose(const Operator& x,
                                     double eps_trunc = 1e-12,
                                     std::vector<double> residual_ps = {});

struct DyadicBoundsReport {
  // First bound: sum_n 2^{-n a} 1_{[0, tau(r_n)]} <= (1 - 2^{-a})^{-1} mu(x^a)
  // checked pointwise at every breakpoint.
  PointwiseReport first;
  // Second bound: sum_n (|n|+1) 2^{-n} 1_{[0, tau(r_n)]} <= C mu(g(x)) with
  // g(t) = t (|ln t| + 1); the constant is not pinned by theory, so we
  // report the smallest feasible C over the breakpoints.
  double smallest_c = 0.0;
  bool second_feasible = false;  // denominator positive wherever needed
  StepFunction lhs_first, rhs_first, lhs_second, rhs_second_unit;
};

DyadicBoundsReport verify_dyadic_bounds(const DyadicDecomposition& d,
                                        double alpha,
                                        double eps = 1e-10);

}  // namespace ncmax

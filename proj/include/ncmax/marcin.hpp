#pragma once

#include "ncmax/dyadic.hpp"
#include "ncmax/oracle.hpp"
#include "ncmax/stepfn.hpp"

namespace ncmax {

// Exponent bookkeeping for real interpolation between weak types
// (p0, p0) and (p1, p1): 1/p = (1-theta)/p0 + theta/p1.
struct InterpolationParams {
  double p0 = 1;
  double p1 = std::numeric_limits<double>::infinity();
  double theta = 0.5;
  double p = 2;
  double C0 = 1;  // weak (p0,p0) constant of the first oracle
  double C1 = 1;  // weak (p1,p1) constant of the second oracle
  bool quasi = false;  // set when p0 < 1

  static InterpolationParams make(double p0, double p1, double theta,
                                  double C0 = 1, double C1 = 1);
  // |1/p0 - 1/p|^{-1} + |1/p - 1/p1|^{-1}; both terms are taken in
  // absolute value so the quantity is positive on 0 < p0 < p < p1.
  double alpha() const;
};

enum class WeightKind { Geometric, LogSquare };

// d_k over a finite index window [k_lo, k_hi].
struct WeightSequence {
  WeightKind kind = WeightKind::Geometric;
  int k_lo = 0, k_hi = 0;
  std::vector<double> d;
  double sum_inv_d = 0;  // the Lemma-3.2 style constant over the window
  double at(int k) const { return d.at(k - k_lo); }
};

WeightSequence make_weights(WeightKind kind, const InterpolationParams& prm,
                            int k_lo, int k_hi);

// The projection ladder e_k produced by the two oracles at the thresholds
// lambda_k = C_i 2^{-(k-2)/p_i}, monotonized decreasingly by lattice joins.
// In finite dimension the ladder is exactly finite: e_k = 1 once lambda_k
// dominates sup_n ||S_n(r)|| and e_k = 0 once the trace budget 2^{k-2} t
// reaches tau(1).
struct Ladder {
  int k_lo = 0, k_hi = 0;
  std::vector<Projection> e;  // e_k for k = k_lo .. k_hi+1 (last is 0)
  std::vector<Projection> q;  // q_k = e_k - e_{k+1}, k = k_lo .. k_hi
  std::vector<double> lambda;  // thresholds, k = k_lo .. k_hi
  double t = 0;                // tau(r)
  double sup_norm = 0;         // sup_n ||S_n(r)||
  const Projection& e_at(int k) const { return e.at(k - k_lo); }
  const Projection& q_at(int k) const { return q.at(k - k_lo); }
  double lambda_at(int k) const { return lambda.at(k - k_lo); }
};

Ladder build_ladder(const MapFamily& s, const WeakTypeOracle& o0,
                    const WeakTypeOracle& o1, const Projection& r,
                    const InterpolationParams& prm);

// One-projection majorant: z = sum_k dtilde_k q_k with
// dtilde_k = (sum 1/d_k) d_k lambda_k, dominating every S_n(r).
struct BasicMajorant {
  Operator z;
  Ladder ladder;
  WeightSequence weights;
  std::vector<std::pair<int, double>> tilde_d;  // (k, dtilde_k)
  std::vector<double> residual_min_eigs;        // lambda_min(z - S_n(r))
  MajorizationReport mu_majorization;  // mu(z) <=_HL sum dtilde_k D_{2^k} mu(r)
  StepFunction mu_bound;
  double t = 0;
};

BasicMajorant basic_majorant(const MapFamily& s, const WeakTypeOracle& o0,
                             const WeakTypeOracle& o1, const Projection& r,
                             const InterpolationParams& prm, WeightKind kind);

// Full engine: dyadic decomposition + per-layer basic majorants.
// Positive x: z = sum_m 2^{-m} z_m dominates every S_n(x), and optionally
// S_n(x) = z^{1/2} u_n z^{1/2} with contractions u_n.
// Non-selfadjoint / non-positive x: four-way positive split with the
// factorization certificate S_n(x) = z^{1/2} u_n z^{1/2}, ||u_n|| <= 1.
struct MarcinResult {
  Operator z;
  bool positive_path = true;
  std::vector<Operator> u;  // contractions when factorization was requested
  double worst_residual_min_eig = 0;    // positive path; relative to ||z||
  double reconstruction_residual = 0;   // factorization path; relative
  double max_u_norm = 0;
  double norm_ratio = 0;      // ||z||_p / ||x||_p
  double asserted_bound = 0;  // Geometric weights: the closed-form bound
  bool norm_ok = true;
  MajorizationReport mu_majorization;
  StepFunction mu_bound;
  double quasi_bound_p = 0;  // quasi mode: bound on ||z||_p^p
  bool quasi_ok = true;
  std::vector<int> layer_ms;
  std::vector<BasicMajorant> layers;
};

MarcinResult marcinkiewicz_majorant(const MapFamily& s,
                                    const WeakTypeOracle& o0,
                                    const WeakTypeOracle& o1,
                                    const Operator& x,
                                    const InterpolationParams& prm,
                                    WeightKind kind, bool factorize = false,
                                    double eps_trunc = 1e-12);

// Closed-form norm bound asserted for Geometric weights (C0 = C1 = 1):
// 8 (1/(1 - 2^{(1/p - 1/p0)/2}) + s1)^2 with s1 = 1 when p1 = inf and
// 2/(1 - 2^{(1/p1 - 1/p)/2}) otherwise.
double geometric_norm_bound(const InterpolationParams& prm);

// One LogSquare majorant reused across several exponents: martingale
// maximal function with a single z for all reported p.
struct DoobUniformResult {
  MarcinResult base;
  std::vector<double> ps;
  std::vector<double> ratios;  // ||z||_p / ||x||_p per entry of ps
};

DoobUniformResult doob_uniform_majorant(const Filtration& f,
                                        const Operator& x,
                                        std::vector<double> ps,
                                        double eps_trunc = 1e-12);

// Asymmetric factorization S_n(x) = a^gamma u_n b^{1-gamma} with
// a = (sum_m 2^{-2 gamma m} z_m)^{1/(2 gamma)} and b the (1-gamma)
// counterpart.  Admissible only for p > max(2 gamma, 2 (1-gamma));
// otherwise std::domain_error cites the failure region.
struct AsymResult {
  Operator a, b;
  std::vector<Operator> u;
  double max_residual = 0;  // ||a^g u_n b^{1-g} - S_n(x)|| relative
  double max_u_norm = 0;
  double a_norm_p = 0, b_norm_p = 0, x_norm_p = 0;
};

AsymResult asymmetric_factorization(const MapFamily& s,
                                    const WeakTypeOracle& o0,
                                    const WeakTypeOracle& o1,
                                    const Operator& x,
                                    const InterpolationParams& prm,
                                    double gamma, double eps_trunc = 1e-12);

// Row + column splitting for a projection (no two-sided positive majorant
// exists in general): S_n(r) = z u_n + v_n z with z = sum_k c_k q_k,
// c_k = (|k|+1) / b_k, b_k = 2^{k/p0} (k >= 1), 2^{k/p1} (k <= 0), and
// uniformly bounded u_n, v_n.  The identity is algebraically exact.
struct RowColumnMajorant {
  Operator z;
  std::vector<Operator> u, v;
  Ladder ladder;
  std::vector<std::pair<int, double>> c;
  double max_residual = 0;
  double max_u_norm = 0, max_v_norm = 0;
  double norm_bound = 0;  // proof bound on ||u_n||, ||v_n|| over the window
};

RowColumnMajorant row_column_majorant(const MapFamily& s,
                                      const WeakTypeOracle& o0,
                                      const WeakTypeOracle& o1,
                                      const Projection& r,
                                      const InterpolationParams& prm);

// General x: z = (sum_m 2^{-2m} (|m|+1)^2 z_m^2)^{1/2} through the dyadic
// route, S_n(x) = z u_n + v_n z with bounded u_n, v_n; the certificate
// records ||z||_p against C ||x||_{p0}^{1-theta} ||x||_{p1}^{theta}.
struct RowColumnGeneral {
  Operator z;
  std::vector<Operator> u, v;
  double max_residual = 0;
  double max_u_norm = 0, max_v_norm = 0;
  double norm_bound = 0;
  double z_norm_p = 0;
  double interp_product = 0;  // ||x||_{p0}^{1-theta} ||x||_{p1}^{theta}
};

RowColumnGeneral row_column_majorant_general(const MapFamily& s,
                                             const WeakTypeOracle& o0,
                                             const WeakTypeOracle& o1,
                                             const Operator& x,
                                             const InterpolationParams& prm,
                                             double eps_trunc = 1e-12);

}  // namespace ncmax

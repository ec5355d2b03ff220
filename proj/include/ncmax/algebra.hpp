#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncmax {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using dvec = Eigen::VectorXd;

// Global tolerances used throughout the library.  All of them are relative
// to the scale of the operator at hand unless stated otherwise.
namespace tol {
inline constexpr double proj = 1e-10;  // projection idempotence / disjointness
inline constexpr double sym = 1e-10;   // self-adjointness checks
inline constexpr double num = 1e-8;    // generic numerical slack in contracts
inline constexpr double rank = 1e-12;  // relative rank cutoff for pseudo-inverses
}  // namespace tol

// One matrix block of a finite tracial algebra: full d x d matrices with
// trace weight w, i.e. the block contributes w * tr(x_b) to the trace.
struct Block {
  int dim = 0;
  double weight = 1.0;
};

// Finite direct sum of matrix blocks with a weighted trace.
class Algebra {
 public:
  Algebra() = default;
  explicit Algebra(std::vector<Block> blocks);
  // Convenience: single full matrix block with weight 1.
  static Algebra full_matrix(int dim, double weight = 1.0);
  // Diagonal algebra: n blocks of dimension 1 with the given weights.
  static Algebra diagonal(const std::vector<double>& weights);

  const std::vector<Block>& blocks() const { return blocks_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int dim(int b) const { return blocks_[b].dim; }
  double weight(int b) const { return blocks_[b].weight; }
  int total_dim() const;        // sum of block dimensions
  double total_trace() const;   // trace of the identity
  double min_weight() const;

  bool operator==(const Algebra& o) const;
  bool operator!=(const Algebra& o) const { return !(*this == o); }

 private:
  std::vector<Block> blocks_;
};

// An element of an Algebra: one dense complex matrix per block.
class Operator {
 public:
  Operator() = default;
  Operator(Algebra alg, std::vector<cmat> blocks);
  static Operator zero(const Algebra& a);
  static Operator identity(const Algebra& a);
  // Scalar multiple of a matrix unit e_ij in block b (0-based indices).
  static Operator matrix_unit(const Algebra& a, int b, int i, int j,
                              cplx v = cplx(1, 0));
  static Operator diag(const Algebra& a, const std::vector<double>& entries);

  const Algebra& algebra() const { return alg_; }
  const cmat& block(int b) const { return blocks_[b]; }
  cmat& block(int b) { return blocks_[b]; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }

  Operator adjoint() const;
  bool is_hermitian(double rel_tol = tol::sym) const;
  bool is_projection(double rel_tol = tol::proj) const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cplx s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator-(Operator a) { return a *= cplx(-1, 0); }

 private:
  Algebra alg_;
  std::vector<cmat> blocks_;
};

// Projections are operators with p = p* = p^2 (checked on construction).
class Projection {
 public:
  Projection() = default;
  explicit Projection(Operator op, double rel_tol = tol::proj);
  static Projection identity(const Algebra& a) {
    return Projection(Operator::identity(a));
  }
  static Projection zero(const Algebra& a) {
    return Projection(Operator::zero(a));
  }

  const Operator& op() const { return op_; }
  operator const Operator&() const { return op_; }
  const Algebra& algebra() const { return op_.algebra(); }

 private:
  Operator op_;
};

// ----- trace and norms ------------------------------------------------------

cplx trace(const Operator& x);
double trace_real(const Operator& x);
// Largest singular value over all blocks.
double op_norm(const Operator& x);
// (tau |x|^p)^(1/p); p = inf gives op_norm.  Valid for every p > 0 (for
// p < 1 this is the usual quasi-norm).
double lp_norm(const Operator& x, double p);
double l1_norm(const Operator& x);
// Max abs entry, used for exact-equality style assertions.
double max_abs(const Operator& x);
double distance(const Operator& a, const Operator& b);

// ----- spectral computations ------------------------------------------------

struct EigBlock {
  dvec values;  // ascending
  cmat vectors;
};

// Eigendecomposition of a self-adjoint operator, one solve per block.
// Throws std::invalid_argument if x is not self-adjoint within rel_tol.
std::vector<EigBlock> eig_hermitian(const Operator& x,
                                    double rel_tol = tol::sym);

// f applied to a self-adjoint x through its eigenvalues.
Operator functional_calculus(const Operator& x,
                             const std::function<double(double)>& f,
                             double rel_tol = tol::sym);

// Spectral projection 1_{[0, lam]}(x) of a self-adjoint x; the interval is
// closed, eigenvalues equal to lam (within a tiny relative slack) are kept.
Projection spectral_proj_leq(const Operator& x, double lam,
                             double rel_tol = tol::sym);

// sqrt / powers of positive operators.  Small negative eigenvalues within
// rel_slack * ||x|| are clamped to zero; larger ones raise.
Operator sqrt_psd(const Operator& x, double rel_slack = tol::num);
Operator pow_psd(const Operator& x, double alpha,
                 double rel_slack = tol::num);

struct PolarDecomposition {
  Operator u;        // partial isometry with u |x| = x
  Operator abs;      // |x| = (x* x)^(1/2)
  Operator pinv;     // Moore-Penrose inverse with relative rank cutoff
  int rank = 0;      // retained singular values across blocks
};

// Per-block SVD x = U S V*; |x| = V S V*, u = U V* on the support,
// pinv = V S^+ U*.  Singular values below eps_rank * s_max are dropped.
PolarDecomposition polar_and_pinv(const Operator& x,
                                  double eps_rank = tol::rank);

struct PsdReport {
  bool ok = false;
  double min_eig = 0.0;  // most negative eigenvalue over all blocks
  double scale = 0.0;    // op_norm of the tested operator
};

// Self-adjointness + lambda_min >= -rel_slack * max(1, ||x||).
PsdReport psd_check(const Operator& x, double rel_slack = tol::num);

// ----- projection lattice helpers -------------------------------------------

// Orthonormal basis of the range, one matrix of column vectors per block.
std::vector<cmat> range_basis(const Operator& p, double cutoff = 1e-8);
// Lattice join: projection onto span(range p, range q).
Projection proj_join(const Projection& p, const Projection& q);
// Lattice meet: projection onto range(p) ∩ range(q).
Projection proj_meet(const Projection& p, const Projection& q);
// p and q are disjoint if ||p q|| <= eps.
bool proj_disjoint(const Projection& p, const Projection& q,
                   double eps = tol::proj);

}  // namespace ncmax

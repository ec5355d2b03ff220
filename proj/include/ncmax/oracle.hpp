#pragma once

#include <functional>
#include <string>

#include "ncmax/algebra.hpp"
#include "ncmax/random.hpp"

namespace ncmax {

// ----- filtrations -----------------------------------------------------------
//
// A filtration level describes a unital subalgebra of the ambient algebra as
// a list of cells.  A cell is a sub-block factor M_k repeated over several
// interval "copies" inside the ambient blocks (the multiplicity); elements
// of the subalgebra carry the same k x k matrix in every copy of a cell.
// The trace-preserving conditional expectation is then an exact
// pinch-and-average map: pinch to the copy intervals, average the copies
// with the ambient trace weights.

struct CellCopy {
  int block = 0;
  int offset = 0;
};

struct FiltrationCell {
  int dim = 1;
  std::vector<CellCopy> copies;
};

struct FiltrationLevel {
  std::vector<FiltrationCell> cells;
};

class Filtration {
 public:
  // Levels ordered from coarsest to finest; each level must tile every
  // ambient block exactly, and consecutive levels must be nested (coarser
  // into finer).  Tiling is validated here; nesting is validated exactly on
  // the cell combinatorics by validate_nesting().
  Filtration(Algebra alg, std::vector<FiltrationLevel> levels);

  const Algebra& algebra() const { return alg_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  const FiltrationLevel& level(int n) const { return levels_[n]; }

  // True iff every level's cells are, copy by copy, unions of matching
  // sub-structure of the next level (subalgebra inclusion).
  bool validate_nesting() const;

  // Scalar multiples of the identity as the coarsest level.
  static FiltrationLevel scalar_level(const Algebra& a);
  // The full algebra (one cell per block).
  static FiltrationLevel full_level(const Algebra& a);
  // Tensor chain inside a single full matrix block of dimension
  // prod(factors): level j is M_{f_1 ... f_j} repeated, coarsest = scalars.
  static Filtration tensor_chain(const std::vector<int>& factors,
                                 double weight = 1.0);

 private:
  Algebra alg_;
  std::vector<FiltrationLevel> levels_;
};

// Random refinement tower of the given depth ending at the full algebra.
Filtration rand_filtration(const Algebra& a, int depth, Rng& rng);

// Trace-preserving conditional expectation onto level n.
Operator conditional_expectation(const Filtration& f, int n,
                                 const Operator& x);

// ----- map families ----------------------------------------------------------

// A finite family of linear maps S_n from a source algebra into a target
// algebra.  Dense matrix representations on vectorized operators are
// available through matrix_rep for inspection and certification.
struct MapFamily {
  Algebra source;
  Algebra target;
  std::vector<std::function<Operator(const Operator&)>> maps;
  std::string name;
};

// Family of conditional expectations E_0..E_{depth-1} of a filtration.
MapFamily doob_family(const Filtration& f);
// Source C (one 1x1 block, weight 1); map n sends a scalar c to c * t_n.
MapFamily scalar_family(const Algebra& target, std::vector<Operator> ts,
                        const std::string& name = "scalar");

// Dense matrix of map i on vectorized operators (column-major block stack).
Eigen::MatrixXcd matrix_rep(const MapFamily& s, int i);

struct PositivityReport {
  bool ok = true;
  double worst_min_eig = 0;
};

// Sampled certification that each map sends PSD inputs to PSD outputs.
PositivityReport certify_positive(const MapFamily& s, Rng& rng,
                                  int trials = 20);

// ----- Cuculescu projections -------------------------------------------------

struct CuculescuResult {
  Projection q;                    // final projection
  std::vector<double> level_traces;  // tau(q_n) after each level
  double tau_defect = 0;           // tau(1 - q)
  double max_corner_norm = 0;      // max_n || q E_n(x) q || for the final q
};

// q_{-1} = 1, q_n = q_{n-1} 1_{[0,lam]}(q_{n-1} E_n(x) q_{n-1}) q_{n-1},
// with the spectral projection computed in the compressed corner (restrict
// to range q_{n-1}, decompose, lift back).  Requires x positive.
CuculescuResult cuculescu(const Filtration& f, const Operator& x, double lam);

// ----- weak type oracles -----------------------------------------------------

// First-class producer of the projections of a weak-type inequality: given
// x and lambda it emits e with tau(1 - e) <= C^p ||x||_p^p / lambda^p and
// || e S_n(x) e || <= lambda for every map of the attached family.
struct WeakTypeOracle {
  double p = 1;        // exponent; inf encodes a strong (inf, inf) bound
  double constant = 1; // C
  std::function<Projection(const Operator&, double)> produce;
  std::string name;
};

// e = 1_{[0, lambda]}(x) for positive x; Chebyshev gives constant 1 for
// every p (the family is the identity map).
WeakTypeOracle spectral_oracle(double p);
// Cuculescu projections for the Doob family of f: weak (1,1), constant 1.
WeakTypeOracle cuculescu_oracle(const Filtration& f);
// e = 1 always; valid as a strong (inf, inf) oracle for families with
// ||S_n(x)|| <= C ||x||_inf.
WeakTypeOracle strong_infty_oracle(const Algebra& target, double C = 1.0);
// Coordinate tail projections sum_{k > 1/t} e_kk on a full matrix block
// target, t = lambda / (2 |c|) for scalar input c: weak (1,1), constant 2.
WeakTypeOracle tail_oracle(const Algebra& target);

struct OracleReport {
  bool ok = true;
  double worst_tau_ratio = 0;   // max tau(1-e) * lambda^p / (C^p ||x||_p^p)
  double worst_norm_ratio = 0;  // max ||e S_n(x) e|| / lambda
  int failures = 0;
};

// Replays the oracle against its contract on a list of inputs and lambdas.
OracleReport verify_oracle(const WeakTypeOracle& o, const MapFamily& s,
                           const std::vector<Operator>& xs,
                           const std::vector<double>& lambdas,
                           double eps = tol::num);

}  // namespace ncmax

#include "ncmax/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace ncmax {

Algebra::Algebra(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("algebra needs >= 1 block");
  for (const Block& b : blocks_) {
    if (b.dim < 1) throw std::invalid_argument("block dim must be >= 1");
    if (!(b.weight > 0.0) || !std::isfinite(b.weight))
      throw std::invalid_argument("block weight must be positive and finite");
  }
}

Algebra Algebra::full_matrix(int dim, double weight) {
  return Algebra({Block{dim, weight}});
}

Algebra Algebra::diagonal(const std::vector<double>& weights) {
  std::vector<Block> bs;
  bs.reserve(weights.size());
  for (double w : weights) bs.push_back(Block{1, w});
  return Algebra(std::move(bs));
}

int Algebra::total_dim() const {
  int d = 0;
  for (const Block& b : blocks_) d += b.dim;
  return d;
}

double Algebra::total_trace() const {
  double t = 0;
  for (const Block& b : blocks_) t += b.weight * b.dim;
  return t;
}

double Algebra::min_weight() const {
  double w = blocks_[0].weight;
  for (const Block& b : blocks_) w = std::min(w, b.weight);
  return w;
}

bool Algebra::operator==(const Algebra& o) const {
  if (blocks_.size() != o.blocks_.size()) return false;
  for (size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].dim != o.blocks_[i].dim ||
        blocks_[i].weight != o.blocks_[i].weight)
      return false;
  return true;
}

Operator::Operator(Algebra alg, std::vector<cmat> blocks)
    : alg_(std::move(alg)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != alg_.num_blocks())
    throw std::invalid_argument("operator: block count mismatch");
  for (int b = 0; b < alg_.num_blocks(); ++b)
    if (blocks_[b].rows() != alg_.dim(b) || blocks_[b].cols() != alg_.dim(b))
      throw std::invalid_argument("operator: block shape mismatch");
}

Operator Operator::zero(const Algebra& a) {
  std::vector<cmat> bs;
  for (int b = 0; b < a.num_blocks(); ++b)
    bs.push_back(cmat::Zero(a.dim(b), a.dim(b)));
  return Operator(a, std::move(bs));
}

Operator Operator::identity(const Algebra& a) {
  std::vector<cmat> bs;
  for (int b = 0; b < a.num_blocks(); ++b)
    bs.push_back(cmat::Identity(a.dim(b), a.dim(b)));
  return Operator(a, std::move(bs));
}

Operator Operator::matrix_unit(const Algebra& a, int b, int i, int j, cplx v) {
  Operator x = zero(a);
  x.block(b)(i, j) = v;
  return x;
}

Operator Operator::diag(const Algebra& a, const std::vector<double>& entries) {
  if (static_cast<int>(entries.size()) != a.total_dim())
    throw std::invalid_argument("diag: need one entry per dimension");
  Operator x = zero(a);
  int k = 0;
  for (int b = 0; b < a.num_blocks(); ++b)
    for (int i = 0; i < a.dim(b); ++i) x.block(b)(i, i) = entries[k++];
  return x;
}

Operator Operator::adjoint() const {
  Operator r = *this;
  for (cmat& m : r.blocks_) m = m.adjoint().eval();
  return r;
}

bool Operator::is_hermitian(double rel_tol) const {
  double scale = std::max(1.0, op_norm(*this));
  double dev = 0;
  for (const cmat& m : blocks_)
    dev = std::max(dev, (m - m.adjoint()).cwiseAbs().maxCoeff());
  return dev <= rel_tol * scale;
}

bool Operator::is_projection(double rel_tol) const {
  if (!is_hermitian(rel_tol)) return false;
  double dev = 0;
  for (const cmat& m : blocks_)
    dev = std::max(dev, (m * m - m).cwiseAbs().maxCoeff());
  return dev <= rel_tol * std::max(1.0, op_norm(*this));
}

Operator& Operator::operator+=(const Operator& o) {
  if (alg_ != o.alg_) throw std::invalid_argument("algebra mismatch in +");
  for (size_t b = 0; b < blocks_.size(); ++b) blocks_[b] += o.blocks_[b];
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  if (alg_ != o.alg_) throw std::invalid_argument("algebra mismatch in -");
  for (size_t b = 0; b < blocks_.size(); ++b) blocks_[b] -= o.blocks_[b];
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  for (cmat& m : blocks_) m *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.alg_ != b.alg_) throw std::invalid_argument("algebra mismatch in *");
  std::vector<cmat> bs;
  bs.reserve(a.blocks_.size());
  for (size_t i = 0; i < a.blocks_.size(); ++i)
    bs.push_back(a.blocks_[i] * b.blocks_[i]);
  return Operator(a.alg_, std::move(bs));
}

Projection::Projection(Operator op, double rel_tol) : op_(std::move(op)) {
  if (!op_.is_projection(rel_tol))
    throw std::invalid_argument("not a projection within tolerance");
}

cplx trace(const Operator& x) {
  cplx t = 0;
  for (int b = 0; b < x.num_blocks(); ++b)
    t += x.algebra().weight(b) * x.block(b).trace();
  return t;
}

double trace_real(const Operator& x) { return trace(x).real(); }

double op_norm(const Operator& x) {
  double n = 0;
  for (int b = 0; b < x.num_blocks(); ++b) {
    if (x.block(b).size() == 0) continue;
    Eigen::JacobiSVD<cmat> svd(x.block(b));
    n = std::max(n, svd.singularValues()(0));
  }
  return n;
}

double lp_norm(const Operator& x, double p) {
  if (!(p > 0)) throw std::invalid_argument("lp_norm: p must be > 0");
  if (std::isinf(p)) return op_norm(x);
  double acc = 0;
  for (int b = 0; b < x.num_blocks(); ++b) {
    Eigen::JacobiSVD<cmat> svd(x.block(b));
    const auto& s = svd.singularValues();
    for (int i = 0; i < s.size(); ++i)
      acc += x.algebra().weight(b) * std::pow(s(i), p);
  }
  return std::pow(acc, 1.0 / p);
}

double l1_norm(const Operator& x) { return lp_norm(x, 1.0); }

double max_abs(const Operator& x) {
  double m = 0;
  for (int b = 0; b < x.num_blocks(); ++b)
    if (x.block(b).size() > 0)
      m = std::max(m, x.block(b).cwiseAbs().maxCoeff());
  return m;
}

double distance(const Operator& a, const Operator& b) {
  return op_norm(a - b);
}

std::vector<EigBlock> eig_hermitian(const Operator& x, double rel_tol) {
  if (!x.is_hermitian(rel_tol))
    throw std::invalid_argument("eig_hermitian: operator not self-adjoint");
  std::vector<EigBlock> out;
  out.reserve(x.num_blocks());
  for (int b = 0; b < x.num_blocks(); ++b) {
    // Symmetrize to kill roundoff before the solver.
    cmat h = 0.5 * (x.block(b) + x.block(b).adjoint());
    Eigen::SelfAdjointEigenSolver<cmat> es(h);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eig_hermitian: eigensolver failed");
    out.push_back(EigBlock{es.eigenvalues(), es.eigenvectors()});
  }
  return out;
}

Operator functional_calculus(const Operator& x,
                             const std::function<double(double)>& f,
                             double rel_tol) {
  auto eig = eig_hermitian(x, rel_tol);
  Operator r = Operator::zero(x.algebra());
  for (int b = 0; b < x.num_blocks(); ++b) {
    dvec fv = eig[b].values.unaryExpr([&](double t) { return f(t); });
    r.block(b) =
        eig[b].vectors * fv.asDiagonal() * eig[b].vectors.adjoint();
  }
  return r;
}

Projection spectral_proj_leq(const Operator& x, double lam, double rel_tol) {
  // Closed interval: keep eigenvalues <= lam, with a hair of slack so that
  // eigenvalues computed at lam survive roundoff.
  double slack = 1e-12 * std::max(1.0, std::abs(lam));
  Operator p = functional_calculus(
      x, [&](double t) { return t <= lam + slack ? 1.0 : 0.0; }, rel_tol);
  return Projection(std::move(p));
}

Operator sqrt_psd(const Operator& x, double rel_slack) {
  return pow_psd(x, 0.5, rel_slack);
}

Operator pow_psd(const Operator& x, double alpha, double rel_slack) {
  double scale = std::max(1.0, op_norm(x));
  return functional_calculus(x, [&](double t) {
    if (t < -rel_slack * scale)
      throw std::invalid_argument("pow_psd: operator has negative spectrum");
    if (t <= 0) return 0.0;
    return std::pow(t, alpha);
  });
}

PolarDecomposition polar_and_pinv(const Operator& x, double eps_rank) {
  PolarDecomposition out;
  std::vector<cmat> ub, absb, pib;
  double smax_global = 0;
  std::vector<Eigen::JacobiSVD<cmat>> svds;
  svds.reserve(x.num_blocks());
  for (int b = 0; b < x.num_blocks(); ++b) {
    svds.emplace_back(x.block(b),
                      Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (x.block(b).size() > 0)
      smax_global = std::max(smax_global, svds.back().singularValues()(0));
  }
  double cutoff = eps_rank * smax_global;
  for (int b = 0; b < x.num_blocks(); ++b) {
    const auto& svd = svds[b];
    const auto& s = svd.singularValues();
    int d = x.algebra().dim(b);
    dvec skeep = dvec::Zero(d), sinv = dvec::Zero(d), ssup = dvec::Zero(d);
    for (int i = 0; i < s.size(); ++i) {
      if (s(i) > cutoff) {
        skeep(i) = s(i);
        sinv(i) = 1.0 / s(i);
        ssup(i) = 1.0;
        ++out.rank;
      }
    }
    const cmat& U = svd.matrixU();
    const cmat& V = svd.matrixV();
    absb.push_back(V * skeep.asDiagonal() * V.adjoint());
    // Partial isometry on the support of |x| only.
    ub.push_back(U * ssup.asDiagonal() * V.adjoint());
    pib.push_back(V * sinv.asDiagonal() * U.adjoint());
  }
  out.u = Operator(x.algebra(), std::move(ub));
  out.abs = Operator(x.algebra(), std::move(absb));
  out.pinv = Operator(x.algebra(), std::move(pib));
  return out;
}

PsdReport psd_check(const Operator& x, double rel_slack) {
  PsdReport r;
  r.scale = op_norm(x);
  if (!x.is_hermitian()) {
    r.ok = false;
    r.min_eig = -r.scale;
    return r;
  }
  double mn = 0;
  for (int b = 0; b < x.num_blocks(); ++b) {
    cmat h = 0.5 * (x.block(b) + x.block(b).adjoint());
    Eigen::SelfAdjointEigenSolver<cmat> es(h,
                                           Eigen::EigenvaluesOnly);
    if (es.eigenvalues().size() > 0)
      mn = std::min(mn, es.eigenvalues()(0));
  }
  r.min_eig = mn;
  r.ok = mn >= -rel_slack * std::max(1.0, r.scale);
  return r;
}

std::vector<cmat> range_basis(const Operator& p, double cutoff) {
  std::vector<cmat> out;
  for (int b = 0; b < p.num_blocks(); ++b) {
    Eigen::JacobiSVD<cmat> svd(p.block(b), Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    int r = 0;
    double smax = s.size() > 0 ? s(0) : 0.0;
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > cutoff * std::max(1.0, smax)) ++r;
    out.push_back(svd.matrixU().leftCols(r));
  }
  return out;
}

Projection proj_join(const Projection& p, const Projection& q) {
  const Operator& po = p.op();
  const Operator& qo = q.op();
  if (po.algebra() != qo.algebra())
    throw std::invalid_argument("proj_join: algebra mismatch");
  Operator r = Operator::zero(po.algebra());
  for (int b = 0; b < po.num_blocks(); ++b) {
    int d = po.algebra().dim(b);
    cmat stacked(d, 2 * d);
    stacked << po.block(b), qo.block(b);
    Eigen::JacobiSVD<cmat> svd(stacked, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    cmat acc = cmat::Zero(d, d);
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > 1e-8)
        acc += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
    r.block(b) = acc;
  }
  return Projection(std::move(r));
}

Projection proj_meet(const Projection& p, const Projection& q) {
  const Operator& po = p.op();
  const Operator& qo = q.op();
  if (po.algebra() != qo.algebra())
    throw std::invalid_argument("proj_meet: algebra mismatch");
  std::vector<cmat> bp = range_basis(po), bq = range_basis(qo);
  Operator r = Operator::zero(po.algebra());
  for (int b = 0; b < po.num_blocks(); ++b) {
    int d = po.algebra().dim(b);
    if (bp[b].cols() == 0 || bq[b].cols() == 0) continue;
    // Vectors of range(p) lying in range(q): singular value 1 directions
    // of bp* bq.
    cmat m = bp[b].adjoint() * bq[b];
    Eigen::JacobiSVD<cmat> svd(m, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    cmat acc = cmat::Zero(d, d);
    for (int i = 0; i < s.size(); ++i) {
      if (s(i) >= 1.0 - 1e-9) {
        cvec v = bp[b] * svd.matrixU().col(i);
        acc += v * v.adjoint();
      }
    }
    r.block(b) = acc;
  }
  return Projection(std::move(r));
}

bool proj_disjoint(const Projection& p, const Projection& q, double eps) {
  return op_norm(p.op() * q.op()) <= eps;
}

}  // namespace ncmax

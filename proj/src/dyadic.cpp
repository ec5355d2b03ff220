#include "ncmax/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace ncmax {

Operator DyadicDecomposition::reconstruction() const {
  Operator acc = Operator::zero(x.algebra());
  for (const DyadicTerm& t : terms)
    acc += std::ldexp(1.0, -t.n) * t.r.op();
  return acc;
}

DyadicDecomposition dyadic_decompose(const Operator& x, double eps_trunc,
                                     std::vector<double> residual_ps) {
  PsdReport psd = psd_check(x);
  if (!psd.ok)
    throw std::invalid_argument("dyadic_decompose: operator not positive");
  if (!(eps_trunc > 0))
    throw std::invalid_argument("dyadic_decompose: eps_trunc > 0 required");

  auto eig = eig_hermitian(x);
  double norm = 0;
  for (const auto& e : eig)
    if (e.values.size() > 0) norm = std::max(norm, e.values.maxCoeff());

  DyadicDecomposition out;
  out.x = x;
  if (norm <= 0) return out;

  // Eigenvalues at roundoff scale are treated as zero.
  double zero_cut = eps_trunc * norm / std::max(1, x.algebra().total_dim());

  struct Entry {
    int b, i;
    double rem;
  };
  std::vector<Entry> live;
  for (int b = 0; b < x.num_blocks(); ++b)
    for (int i = 0; i < eig[b].values.size(); ++i) {
      double v = eig[b].values(i);
      if (v > zero_cut) live.push_back({b, i, v});
    }
  if (live.empty()) return out;

  // The window starts at the most significant digit of the largest
  // eigenvalue: n_min = ceil(-log2 ||x||).
  int n = -std::ilogb(norm);

  // Residual exponents: always L1 and Linf so the window is exponent-free.
  residual_ps.push_back(1.0);
  std::vector<double> normp;
  for (double p : residual_ps) normp.push_back(lp_norm(x, p));

  int guard = n + 1200;
  while (!live.empty() && n < guard) {
    double step = std::ldexp(1.0, -n);
    std::map<int, std::vector<int>> hit;  // block -> eigenvector indices
    for (Entry& e : live) {
      if (e.rem >= step) {
        e.rem -= step;  // exact: rem and step share the binade
        hit[e.b].push_back(e.i);
      }
    }
    if (!hit.empty()) {
      Operator r = Operator::zero(x.algebra());
      double tr = 0;
      for (const auto& [b, idx] : hit) {
        for (int i : idx) {
          cvec v = eig[b].vectors.col(i);
          r.block(b) += v * v.adjoint();
        }
        tr += x.algebra().weight(b) * idx.size();
      }
      out.terms.push_back({n, Projection(std::move(r)), tr});
    }
    live.erase(std::remove_if(live.begin(), live.end(),
                              [](const Entry& e) { return e.rem <= 0; }),
               live.end());
    if (live.empty()) break;
    // Stop once the leftover is below eps_trunc relative to x in Linf and
    // in every requested Lp norm.
    double rem_max = 0;
    for (const Entry& e : live) rem_max = std::max(rem_max, e.rem);
    bool small = rem_max <= eps_trunc * norm;
    for (size_t k = 0; small && k < residual_ps.size(); ++k) {
      double p = residual_ps[k];
      double acc = 0;
      for (const Entry& e : live)
        acc += x.algebra().weight(e.b) * std::pow(e.rem, p);
      small = std::pow(acc, 1.0 / p) <= eps_trunc * normp[k];
    }
    if (small) break;
    ++n;
  }

  out.residual_linf = op_norm(x - out.reconstruction());
  return out;
}

DyadicBoundsReport verify_dyadic_bounds(const DyadicDecomposition& d,
                                        double alpha, double eps) {
  if (!(alpha > 0))
    throw std::invalid_argument("verify_dyadic_bounds: alpha > 0 required");
  DyadicBoundsReport rep;

  std::vector<StepFunction> lhs1, lhs2;
  for (const DyadicTerm& t : d.terms) {
    double c1 = std::pow(2.0, -double(t.n) * alpha);
    double c2 = (std::abs(t.n) + 1.0) * std::ldexp(1.0, -t.n);
    lhs1.push_back(StepFunction::indicator(t.trace).scaled(c1));
    lhs2.push_back(StepFunction::indicator(t.trace).scaled(c2));
  }
  rep.lhs_first = stepfn_sum(lhs1);
  rep.lhs_second = stepfn_sum(lhs2);

  StepFunction mu_x = mu(d.x);
  double factor = 1.0 / (1.0 - std::pow(2.0, -alpha));
  rep.rhs_first = mu_x.powered(alpha).scaled(factor);
  rep.first = pointwise_leq(rep.lhs_first, rep.rhs_first, eps);

  // g(t) = t (|ln t| + 1), increasing and 0 at 0, applied to mu(x).
  std::vector<StepFunction::Piece> ps;
  for (const auto& pc : mu_x.pieces()) {
    double v = pc.value;
    double gv = v > 0 ? v * (std::abs(std::log(v)) + 1.0) : 0.0;
    ps.push_back({gv, pc.length});
  }
  rep.rhs_second_unit = StepFunction::from_pairs(std::move(ps));

  rep.second_feasible = true;
  rep.smallest_c = 0;
  std::vector<double> ts = {0.0};
  for (double t : rep.lhs_second.breakpoints()) ts.push_back(t);
  for (double t : rep.rhs_second_unit.breakpoints()) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (double t : ts) {
    double num = rep.lhs_second(t), den = rep.rhs_second_unit(t);
    if (num <= 0) continue;
    if (den <= 0) {
      rep.second_feasible = false;
      rep.smallest_c = std::numeric_limits<double>::infinity();
      break;
    }
    rep.smallest_c = std::max(rep.smallest_c, num / den);
  }
  return rep;
}

}  // namespace ncmax

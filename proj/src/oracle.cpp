#include "ncmax/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>

namespace ncmax {

namespace {

// Sorted (offset, dim, cell, copy) intervals per block for one level.
struct IntervalRef {
  int offset, dim, cell, copy;
};

std::vector<std::vector<IntervalRef>> level_intervals(
    const Algebra& a, const FiltrationLevel& lv) {
  std::vector<std::vector<IntervalRef>> per_block(a.num_blocks());
  for (int c = 0; c < static_cast<int>(lv.cells.size()); ++c) {
    const FiltrationCell& cell = lv.cells[c];
    if (cell.dim < 1 || cell.copies.empty())
      throw std::invalid_argument("filtration: bad cell");
    for (int k = 0; k < static_cast<int>(cell.copies.size()); ++k) {
      const CellCopy& cp = cell.copies[k];
      if (cp.block < 0 || cp.block >= a.num_blocks() || cp.offset < 0 ||
          cp.offset + cell.dim > a.dim(cp.block))
        throw std::invalid_argument("filtration: copy out of range");
      per_block[cp.block].push_back({cp.offset, cell.dim, c, k});
    }
  }
  for (auto& v : per_block)
    std::sort(v.begin(), v.end(),
              [](const IntervalRef& x, const IntervalRef& y) {
                return x.offset < y.offset;
              });
  return per_block;
}

}  // namespace

Filtration::Filtration(Algebra alg, std::vector<FiltrationLevel> levels)
    : alg_(std::move(alg)), levels_(std::move(levels)) {
  if (levels_.empty())
    throw std::invalid_argument("filtration: need >= 1 level");
  for (const FiltrationLevel& lv : levels_) {
    auto per_block = level_intervals(alg_, lv);
    for (int b = 0; b < alg_.num_blocks(); ++b) {
      int pos = 0;
      for (const IntervalRef& iv : per_block[b]) {
        if (iv.offset != pos)
          throw std::invalid_argument("filtration: level does not tile block");
        pos += iv.dim;
      }
      if (pos != alg_.dim(b))
        throw std::invalid_argument("filtration: level does not tile block");
    }
  }
}

bool Filtration::validate_nesting() const {
  for (int n = 0; n + 1 < depth(); ++n) {
    const FiltrationLevel& coarse = levels_[n];
    const FiltrationLevel& fine = levels_[n + 1];
    auto fine_iv = level_intervals(alg_, fine);
    // For every coarse copy, locate the unique fine copy containing it.
    // Then every copy of a fine cell must see the same coarse pattern.
    std::map<int, std::vector<std::vector<std::pair<int, int>>>> patterns;
    for (int c = 0; c < static_cast<int>(fine.cells.size()); ++c)
      patterns[c].resize(fine.cells[c].copies.size());
    for (int c = 0; c < static_cast<int>(coarse.cells.size()); ++c) {
      for (const CellCopy& cp : coarse.cells[c].copies) {
        const auto& ivs = fine_iv[cp.block];
        const IntervalRef* host = nullptr;
        for (const IntervalRef& iv : ivs)
          if (iv.offset <= cp.offset &&
              cp.offset + coarse.cells[c].dim <= iv.offset + iv.dim) {
            host = &iv;
            break;
          }
        if (!host) return false;  // coarse copy straddles fine boundaries
        patterns[host->cell][host->copy].push_back(
            {cp.offset - host->offset, c});
      }
    }
    for (auto& [cell, copies] : patterns) {
      for (auto& pat : copies) std::sort(pat.begin(), pat.end());
      for (size_t k = 1; k < copies.size(); ++k)
        if (copies[k] != copies[0]) return false;
    }
  }
  return true;
}

FiltrationLevel Filtration::scalar_level(const Algebra& a) {
  FiltrationCell cell;
  cell.dim = 1;
  for (int b = 0; b < a.num_blocks(); ++b)
    for (int i = 0; i < a.dim(b); ++i) cell.copies.push_back({b, i});
  return FiltrationLevel{{cell}};
}

FiltrationLevel Filtration::full_level(const Algebra& a) {
  FiltrationLevel lv;
  for (int b = 0; b < a.num_blocks(); ++b)
    lv.cells.push_back(FiltrationCell{a.dim(b), {{b, 0}}});
  return lv;
}

Filtration Filtration::tensor_chain(const std::vector<int>& factors,
                                    double weight) {
  int dim = 1;
  for (int f : factors) {
    if (f < 2) throw std::invalid_argument("tensor_chain: factors >= 2");
    dim *= f;
  }
  Algebra a = Algebra::full_matrix(dim, weight);
  std::vector<FiltrationLevel> levels;
  int k = 1;
  for (size_t j = 0; j <= factors.size(); ++j) {
    FiltrationCell cell;
    cell.dim = k;
    for (int o = 0; o < dim; o += k) cell.copies.push_back({0, o});
    levels.push_back(FiltrationLevel{{cell}});
    if (j < factors.size()) k *= factors[j];
  }
  return Filtration(a, std::move(levels));
}

Filtration rand_filtration(const Algebra& a, int depth, Rng& rng) {
  if (depth < 1) throw std::invalid_argument("rand_filtration: depth >= 1");
  std::vector<FiltrationLevel> levels;
  levels.push_back(Filtration::full_level(a));
  std::uniform_int_distribution<int> moves(1, 2);
  for (int step = 1; step < depth; ++step) {
    FiltrationLevel lv = levels.back();
    int n_moves = moves(rng);
    for (int m = 0; m < n_moves; ++m) {
      // Collect shrinkable cells and mergeable pairs.
      std::vector<int> shrinkable;
      for (int c = 0; c < static_cast<int>(lv.cells.size()); ++c)
        if (lv.cells[c].dim > 1) shrinkable.push_back(c);
      std::map<int, std::vector<int>> by_dim;
      for (int c = 0; c < static_cast<int>(lv.cells.size()); ++c)
        by_dim[lv.cells[c].dim].push_back(c);
      std::vector<std::pair<int, int>> mergeable;
      for (auto& [d, cs] : by_dim)
        for (size_t i = 0; i + 1 < cs.size(); ++i)
          mergeable.push_back({cs[i], cs[i + 1]});
      bool can_shrink = !shrinkable.empty();
      bool can_merge = !mergeable.empty();
      if (!can_shrink && !can_merge) break;
      bool do_shrink =
          can_shrink && (!can_merge || std::uniform_int_distribution<int>(
                                           0, 2)(rng) > 0);
      if (do_shrink) {
        int c = shrinkable[std::uniform_int_distribution<size_t>(
            0, shrinkable.size() - 1)(rng)];
        int k = lv.cells[c].dim;
        std::vector<int> divisors;
        for (int s = 2; s <= k; ++s)
          if (k % s == 0) divisors.push_back(s);
        int s = divisors[std::uniform_int_distribution<size_t>(
            0, divisors.size() - 1)(rng)];
        FiltrationCell fresh;
        fresh.dim = k / s;
        for (const CellCopy& cp : lv.cells[c].copies)
          for (int t = 0; t < s; ++t)
            fresh.copies.push_back({cp.block, cp.offset + t * (k / s)});
        lv.cells[c] = fresh;
      } else {
        auto [i, j] = mergeable[std::uniform_int_distribution<size_t>(
            0, mergeable.size() - 1)(rng)];
        for (const CellCopy& cp : lv.cells[j].copies)
          lv.cells[i].copies.push_back(cp);
        lv.cells.erase(lv.cells.begin() + j);
      }
    }
    levels.push_back(std::move(lv));
  }
  std::reverse(levels.begin(), levels.end());
  return Filtration(a, std::move(levels));
}

Operator conditional_expectation(const Filtration& f, int n,
                                 const Operator& x) {
  if (n < 0 || n >= f.depth())
    throw std::invalid_argument("conditional_expectation: bad level");
  if (x.algebra() != f.algebra())
    throw std::invalid_argument("conditional_expectation: algebra mismatch");
  const Algebra& a = f.algebra();
  Operator out = Operator::zero(a);
  for (const FiltrationCell& cell : f.level(n).cells) {
    cmat acc = cmat::Zero(cell.dim, cell.dim);
    double wsum = 0;
    for (const CellCopy& cp : cell.copies) {
      acc += a.weight(cp.block) *
             x.block(cp.block).block(cp.offset, cp.offset, cell.dim, cell.dim);
      wsum += a.weight(cp.block);
    }
    acc /= wsum;
    for (const CellCopy& cp : cell.copies)
      out.block(cp.block).block(cp.offset, cp.offset, cell.dim, cell.dim) =
          acc;
  }
  return out;
}

MapFamily doob_family(const Filtration& f) {
  MapFamily s;
  s.source = f.algebra();
  s.target = f.algebra();
  s.name = "doob";
  auto fp = std::make_shared<Filtration>(f);
  for (int n = 0; n < f.depth(); ++n)
    s.maps.push_back([fp, n](const Operator& x) {
      return conditional_expectation(*fp, n, x);
    });
  return s;
}

MapFamily scalar_family(const Algebra& target, std::vector<Operator> ts,
                        const std::string& name) {
  MapFamily s;
  s.source = Algebra::diagonal({1.0});
  s.target = target;
  s.name = name;
  for (Operator& t : ts) {
    if (t.algebra() != target)
      throw std::invalid_argument("scalar_family: target mismatch");
    auto tp = std::make_shared<Operator>(std::move(t));
    s.maps.push_back([tp](const Operator& x) {
      return x.block(0)(0, 0) * (*tp);
    });
  }
  return s;
}

Eigen::MatrixXcd matrix_rep(const MapFamily& s, int i) {
  auto vec_dim = [](const Algebra& a) {
    int d = 0;
    for (int b = 0; b < a.num_blocks(); ++b) d += a.dim(b) * a.dim(b);
    return d;
  };
  int cols = vec_dim(s.source), rows = vec_dim(s.target);
  Eigen::MatrixXcd rep(rows, cols);
  int col = 0;
  for (int b = 0; b < s.source.num_blocks(); ++b)
    for (int cj = 0; cj < s.source.dim(b); ++cj)
      for (int ri = 0; ri < s.source.dim(b); ++ri) {
        Operator unit = Operator::matrix_unit(s.source, b, ri, cj);
        Operator img = s.maps[i](unit);
        int row = 0;
        for (int tb = 0; tb < s.target.num_blocks(); ++tb)
          for (int tj = 0; tj < s.target.dim(tb); ++tj)
            for (int ti = 0; ti < s.target.dim(tb); ++ti)
              rep(row++, col) = img.block(tb)(ti, tj);
        ++col;
      }
  return rep;
}

PositivityReport certify_positive(const MapFamily& s, Rng& rng, int trials) {
  PositivityReport rep;
  for (int t = 0; t < trials; ++t) {
    Operator x = rand_psd(s.source, rng);
    for (const auto& m : s.maps) {
      PsdReport pr = psd_check(m(x));
      rep.worst_min_eig = std::min(rep.worst_min_eig, pr.min_eig);
      if (!pr.ok) rep.ok = false;
    }
  }
  return rep;
}

CuculescuResult cuculescu(const Filtration& f, const Operator& x,
                          double lam) {
  if (!(lam > 0)) throw std::invalid_argument("cuculescu: lambda > 0");
  PsdReport psd = psd_check(x);
  if (!psd.ok) throw std::invalid_argument("cuculescu: x must be positive");
  const Algebra& a = f.algebra();

  CuculescuResult out;
  Operator q = Operator::identity(a);
  double keep_slack = 1e-12 * std::max(1.0, lam);
  for (int n = 0; n < f.depth(); ++n) {
    Operator y = conditional_expectation(f, n, x);
    Operator qyq = q * y * q;
    // Spectral cut in the compressed corner of q.
    std::vector<cmat> basis = range_basis(q);
    Operator next = Operator::zero(a);
    for (int b = 0; b < a.num_blocks(); ++b) {
      const cmat& Q = basis[b];
      if (Q.cols() == 0) continue;
      cmat comp = Q.adjoint() * qyq.block(b) * Q;
      comp = 0.5 * (comp + comp.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<cmat> es(comp);
      cmat kept = cmat::Zero(Q.cols(), Q.cols());
      for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) <= lam + keep_slack)
          kept += es.eigenvectors().col(i) *
                  es.eigenvectors().col(i).adjoint();
      next.block(b) = Q * kept * Q.adjoint();
    }
    q = next;
    out.level_traces.push_back(trace_real(q));
  }
  out.q = Projection(q);
  out.tau_defect = a.total_trace() - trace_real(q);
  for (int n = 0; n < f.depth(); ++n) {
    Operator y = conditional_expectation(f, n, x);
    out.max_corner_norm = std::max(out.max_corner_norm, op_norm(q * y * q));
  }
  return out;
}

WeakTypeOracle spectral_oracle(double p) {
  WeakTypeOracle o;
  o.p = p;
  o.constant = 1.0;
  o.name = "spectral";
  o.produce = [](const Operator& x, double lam) {
    return spectral_proj_leq(x, lam);
  };
  return o;
}

WeakTypeOracle cuculescu_oracle(const Filtration& f) {
  WeakTypeOracle o;
  o.p = 1.0;
  o.constant = 1.0;
  o.name = "cuculescu";
  auto fp = std::make_shared<Filtration>(f);
  o.produce = [fp](const Operator& x, double lam) {
    return cuculescu(*fp, x, lam).q;
  };
  return o;
}

WeakTypeOracle strong_infty_oracle(const Algebra& target, double C) {
  WeakTypeOracle o;
  o.p = std::numeric_limits<double>::infinity();
  o.constant = C;
  o.name = "strong-linf";
  Algebra t = target;
  o.produce = [t](const Operator&, double) {
    return Projection::identity(t);
  };
  return o;
}

WeakTypeOracle tail_oracle(const Algebra& target) {
  if (target.num_blocks() != 1)
    throw std::invalid_argument("tail_oracle: single block target expected");
  WeakTypeOracle o;
  o.p = 1.0;
  o.constant = 2.0;
  o.name = "tail";
  Algebra t = target;
  o.produce = [t](const Operator& x, double lam) {
    double c = std::abs(x.block(0)(0, 0));
    Operator e = Operator::identity(t);
    if (c > 0) {
      double inv_t = 2.0 * c / lam;  // keep coordinates k > 1/t (1-based)
      int cut = static_cast<int>(std::min<double>(std::floor(inv_t),
                                                  t.dim(0)));
      for (int k = 0; k < cut; ++k) e.block(0)(k, k) = 0.0;
    }
    return Projection(std::move(e));
  };
  return o;
}

OracleReport verify_oracle(const WeakTypeOracle& o, const MapFamily& s,
                           const std::vector<Operator>& xs,
                           const std::vector<double>& lambdas, double eps) {
  OracleReport rep;
  double tau_total = s.target.total_trace();
  for (const Operator& x : xs) {
    for (double lam : lambdas) {
      Projection e = o.produce(x, lam);
      double defect = tau_total - trace_real(e.op());
      bool ok_here = true;
      if (std::isinf(o.p)) {
        // Strong (inf, inf): whenever lam >= C ||x||_inf the oracle must
        // return (essentially) the identity.
        if (lam >= o.constant * op_norm(x) * (1 - eps)) {
          if (defect > eps * tau_total) ok_here = false;
          rep.worst_tau_ratio =
              std::max(rep.worst_tau_ratio, defect / std::max(1e-300,
                                                              tau_total));
        }
      } else {
        double bound = std::pow(o.constant * lp_norm(x, o.p) / lam, o.p);
        double ratio = defect / std::max(1e-300, bound);
        rep.worst_tau_ratio = std::max(rep.worst_tau_ratio, ratio);
        if (defect > bound * (1 + eps) + 1e-12) ok_here = false;
      }
      for (const auto& m : s.maps) {
        double nr = op_norm(e.op() * m(x) * e.op()) / lam;
        rep.worst_norm_ratio = std::max(rep.worst_norm_ratio, nr);
        if (nr > 1 + eps) ok_here = false;
      }
      if (!ok_here) {
        rep.ok = false;
        ++rep.failures;
      }
    }
  }
  return rep;
}

}  // namespace ncmax

#pragma once

#include "ncmax/algebra.hpp"

namespace ncmax {

struct DiagMajorant {
  Operator majorant;     // (sum 1/d_k) * sum d_k q_k x q_k
  Operator certificate;  // majorant - e x e, expected PSD
  Operator exe;          // e x e with e = sum q_k
  double sum_inv_d = 0;
};

// Pinching bound: for positive x, pairwise disjoint projections q_k and
// positive weights d_k,
//   e x e <= (sum_k 1/d_k) * sum_k d_k q_k x q_k,   e = sum_k q_k.
// The certificate (difference) is returned so callers can assert its
// minimal eigenvalue quantitatively.
DiagMajorant diag_majorant(const Operator& x,
                           const std::vector<Projection>& qs,
                           const std::vector<double>& ds);

struct RowColumnFactor {
  Operator row;       // R = (sum a_i a_i*)^{1/2}
  Operator col;       // C = (sum b_i* b_i)^{1/2}
  Operator w;         // contraction with R w C = sum a_i u_i b_i
  Operator sum;       // sum a_i u_i b_i
  double w_norm = 0;
  double residual = 0;  // || R w C - sum || / scale
};

// Factorization through the row and column square functions: given a_i,
// contractions u_i and b_i, produces w = pinv(R) (sum a_i u_i b_i) pinv(C)
// with ||w|| <= 1 + tol::num and R w C reproducing the sum on its support.
RowColumnFactor row_column_factor(const std::vector<Operator>& as,
                                  const std::vector<Operator>& us,
                                  const std::vector<Operator>& bs);

}  // namespace ncmax

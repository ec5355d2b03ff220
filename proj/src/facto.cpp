#include "ncmax/facto.hpp"

#include <cmath>

namespace ncmax {

DiagMajorant diag_majorant(const Operator& x,
                           const std::vector<Projection>& qs,
                           const std::vector<double>& ds) {
  if (qs.empty() || qs.size() != ds.size())
    throw std::invalid_argument("diag_majorant: need matching q/d lists");
  PsdReport psd = psd_check(x);
  if (!psd.ok)
    throw std::invalid_argument("diag_majorant: x must be positive");
  for (double d : ds)
    if (!(d > 0)) throw std::invalid_argument("diag_majorant: d_k > 0");
  for (size_t i = 0; i < qs.size(); ++i)
    for (size_t j = i + 1; j < qs.size(); ++j)
      if (!proj_disjoint(qs[i], qs[j]))
        throw std::invalid_argument("diag_majorant: projections overlap");

  DiagMajorant out;
  Operator e = Operator::zero(x.algebra());
  Operator pinched = Operator::zero(x.algebra());
  out.sum_inv_d = 0;
  for (size_t k = 0; k < qs.size(); ++k) {
    e += qs[k].op();
    pinched += ds[k] * (qs[k].op() * x * qs[k].op());
    out.sum_inv_d += 1.0 / ds[k];
  }
  out.majorant = out.sum_inv_d * pinched;
  out.exe = e * x * e;
  out.certificate = out.majorant - out.exe;
  return out;
}

RowColumnFactor row_column_factor(const std::vector<Operator>& as,
                                  const std::vector<Operator>& us,
                                  const std::vector<Operator>& bs) {
  if (as.empty() || as.size() != us.size() || as.size() != bs.size())
    throw std::invalid_argument("row_column_factor: list size mismatch");
  const Algebra& alg = as[0].algebra();
  for (const Operator& u : us)
    if (op_norm(u) > 1.0 + tol::num)
      throw std::invalid_argument("row_column_factor: u_i not a contraction");

  Operator rr = Operator::zero(alg), cc = Operator::zero(alg),
           sum = Operator::zero(alg);
  for (size_t i = 0; i < as.size(); ++i) {
    rr += as[i] * as[i].adjoint();
    cc += bs[i].adjoint() * bs[i];
    sum += as[i] * us[i] * bs[i];
  }
  RowColumnFactor out;
  out.row = sqrt_psd(rr);
  out.col = sqrt_psd(cc);
  out.sum = sum;
  PolarDecomposition pr = polar_and_pinv(out.row);
  PolarDecomposition pc = polar_and_pinv(out.col);
  out.w = pr.pinv * sum * pc.pinv;
  out.w_norm = op_norm(out.w);
  double scale = std::max({1e-300, op_norm(out.row) * op_norm(out.col),
                           op_norm(sum)});
  out.residual = op_norm(out.row * out.w * out.col - sum) / scale;
  return out;
}

}  // namespace ncmax

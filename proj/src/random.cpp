#include "ncmax/random.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace ncmax {

namespace {
cmat gaussian_block(int d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  cmat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

cmat unitary_block(int d, Rng& rng) {
  cmat g = gaussian_block(d, rng);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  // Fix phases so the factorization is canonical-ish.
  cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    cplx rii = r(i, i);
    if (std::abs(rii) > 0) q.col(i) *= rii / std::abs(rii);
  }
  return q;
}
}  // namespace

Operator rand_gaussian(const Algebra& a, Rng& rng) {
  std::vector<cmat> bs;
  for (int b = 0; b < a.num_blocks(); ++b)
    bs.push_back(gaussian_block(a.dim(b), rng));
  return Operator(a, std::move(bs));
}

Operator rand_hermitian(const Algebra& a, Rng& rng) {
  Operator g = rand_gaussian(a, rng);
  Operator r = Operator::zero(a);
  for (int b = 0; b < a.num_blocks(); ++b)
    r.block(b) = 0.5 * (g.block(b) + g.block(b).adjoint());
  return r;
}

Operator rand_psd(const Algebra& a, Rng& rng) {
  Operator g = rand_gaussian(a, rng);
  Operator r = Operator::zero(a);
  for (int b = 0; b < a.num_blocks(); ++b)
    r.block(b) = g.block(b) * g.block(b).adjoint() / double(a.dim(b));
  return r;
}

Operator rand_unitary(const Algebra& a, Rng& rng) {
  std::vector<cmat> bs;
  for (int b = 0; b < a.num_blocks(); ++b)
    bs.push_back(unitary_block(a.dim(b), rng));
  return Operator(a, std::move(bs));
}

Operator rand_contraction(const Algebra& a, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Operator v = rand_unitary(a, rng);
  return v * cplx(u(rng), 0);
}

Projection rand_projection(const Algebra& a, const std::vector<int>& ranks,
                           Rng& rng) {
  Operator p = Operator::zero(a);
  for (int b = 0; b < a.num_blocks(); ++b) {
    int d = a.dim(b);
    int r = std::clamp(b < static_cast<int>(ranks.size()) ? ranks[b] : 0, 0, d);
    cmat u = unitary_block(d, rng);
    p.block(b) = u.leftCols(r) * u.leftCols(r).adjoint();
  }
  return Projection(std::move(p));
}

std::vector<Projection> rand_partition(const Algebra& a, int parts, Rng& rng) {
  if (parts < 1) throw std::invalid_argument("rand_partition: parts >= 1");
  // Split each block's basis (after a random rotation) into `parts` groups.
  std::vector<Operator> mats(parts, Operator::zero(a));
  std::uniform_int_distribution<int> pick(0, parts - 1);
  for (int b = 0; b < a.num_blocks(); ++b) {
    int d = a.dim(b);
    cmat u = unitary_block(d, rng);
    std::vector<int> owner(d);
    // Guarantee every part is hit when the block is large enough.
    for (int i = 0; i < d; ++i) owner[i] = i < parts ? i : pick(rng);
    std::shuffle(owner.begin(), owner.end(), rng);
    for (int i = 0; i < d; ++i)
      mats[owner[i]].block(b) += u.col(i) * u.col(i).adjoint();
  }
  std::vector<Projection> out;
  out.reserve(parts);
  for (Operator& m : mats) out.emplace_back(std::move(m));
  return out;
}

}  // namespace ncmax

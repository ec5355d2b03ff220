#include "ncmax/stepfn.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ncmax {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void StepFunction::normalize() {
  for (const Piece& p : pieces_) {
    if (p.value < 0 || std::isnan(p.value) || std::isnan(p.length) ||
        p.length < 0)
      throw std::invalid_argument("step function: bad piece");
    if (std::isinf(p.value))
      throw std::invalid_argument("step function: infinite value");
  }
  std::stable_sort(pieces_.begin(), pieces_.end(),
                   [](const Piece& a, const Piece& b) {
                     return a.value > b.value;
                   });
  std::vector<Piece> out;
  for (const Piece& p : pieces_) {
    if (p.value <= 0 || p.length <= 0) continue;
    // Everything after an infinite piece sits beyond t = inf.
    if (!out.empty() && std::isinf(out.back().length)) break;
    if (!out.empty() && out.back().value == p.value)
      out.back().length += p.length;
    else
      out.push_back(p);
  }
  pieces_ = std::move(out);
}

StepFunction StepFunction::from_pairs(std::vector<Piece> pieces) {
  StepFunction f;
  f.pieces_ = std::move(pieces);
  f.normalize();
  return f;
}

StepFunction StepFunction::indicator(double len) {
  return from_pairs({{1.0, len}});
}

double StepFunction::operator()(double t) const {
  if (t < 0) throw std::invalid_argument("step function: t < 0");
  double cum = 0;
  for (const Piece& p : pieces_) {
    cum += p.length;
    if (t < cum) return p.value;
  }
  return 0.0;
}

double StepFunction::support() const {
  double s = 0;
  for (const Piece& p : pieces_) s += p.length;
  return s;
}

std::vector<double> StepFunction::breakpoints() const {
  std::vector<double> bs;
  double cum = 0;
  for (const Piece& p : pieces_) {
    cum += p.length;
    if (std::isfinite(cum)) bs.push_back(cum);
  }
  return bs;
}

double StepFunction::integral_to(double t) const {
  double acc = 0, cum = 0;
  for (const Piece& p : pieces_) {
    double lo = cum;
    cum += p.length;
    if (t <= lo) break;
    acc += p.value * (std::min(t, cum) - lo);
    if (t <= cum) break;
  }
  return acc;
}

double StepFunction::integral() const {
  double acc = 0;
  for (const Piece& p : pieces_) acc += p.value * p.length;
  return acc;
}

StepFunction StepFunction::scaled(double c) const {
  if (c < 0) throw std::invalid_argument("scaled: c >= 0 required");
  std::vector<Piece> ps = pieces_;
  for (Piece& p : ps) p.value *= c;
  return from_pairs(std::move(ps));
}

StepFunction StepFunction::dilated(double s) const {
  if (!(s > 0)) throw std::invalid_argument("dilated: s > 0 required");
  std::vector<Piece> ps = pieces_;
  for (Piece& p : ps) p.length *= s;
  return from_pairs(std::move(ps));
}

StepFunction StepFunction::powered(double alpha) const {
  if (!(alpha > 0)) throw std::invalid_argument("powered: alpha > 0 required");
  std::vector<Piece> ps = pieces_;
  for (Piece& p : ps) p.value = std::pow(p.value, alpha);
  return from_pairs(std::move(ps));
}

StepFunction stepfn_sum(const std::vector<StepFunction>& fs) {
  std::vector<double> cuts;
  for (const StepFunction& f : fs)
    for (double b : f.breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<StepFunction::Piece> ps;
  double prev = 0;
  for (double c : cuts) {
    if (c <= prev) continue;
    double v = 0;
    for (const StepFunction& f : fs) v += f(prev);
    ps.push_back({v, c - prev});
    prev = c;
  }
  double tail = 0;
  for (const StepFunction& f : fs) tail += f(prev);
  if (tail > 0) ps.push_back({tail, kInf});
  return StepFunction::from_pairs(std::move(ps));
}

StepFunction mu(const Operator& x) {
  std::vector<StepFunction::Piece> ps;
  for (int b = 0; b < x.num_blocks(); ++b) {
    Eigen::JacobiSVD<cmat> svd(x.block(b));
    const auto& s = svd.singularValues();
    for (int i = 0; i < s.size(); ++i)
      ps.push_back({s(i), x.algebra().weight(b)});
  }
  return StepFunction::from_pairs(std::move(ps));
}

double lorentz_norm(const StepFunction& f, double p, double q) {
  if (!(p > 0) || !(q > 0))
    throw std::invalid_argument("lorentz_norm: p, q > 0 required");
  if (f.is_zero()) return 0.0;
  bool pinf = std::isinf(p), qinf = std::isinf(q);
  if (pinf && qinf) return f.first_value();
  if (pinf) return kInf;  // int f^q dt/t diverges at 0 for f(0+) > 0
  if (qinf) {
    // sup t^{1/p} f(t); on a piece [a, b) the sup sits at the right end.
    double sup = 0, cum = 0;
    for (const auto& pc : f.pieces()) {
      cum += pc.length;
      if (std::isinf(cum)) return kInf;
      sup = std::max(sup, pc.value * std::pow(cum, 1.0 / p));
    }
    return sup;
  }
  double r = q / p;
  double acc = 0, cum = 0;
  for (const auto& pc : f.pieces()) {
    double lo = cum;
    cum += pc.length;
    if (std::isinf(cum)) return kInf;
    acc += std::pow(pc.value, q) * (std::pow(cum, r) - std::pow(lo, r)) / r;
  }
  return std::pow(acc, 1.0 / q);
}

double lp_norm(const StepFunction& f, double p) {
  return lorentz_norm(f, p, p);
}

MajorizationReport hl_majorize(const StepFunction& f, const StepFunction& g,
                               double eps) {
  MajorizationReport rep;
  std::vector<double> ts = f.breakpoints();
  for (double t : g.breakpoints()) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  rep.ok = true;
  double last = 0;
  for (double t : ts) {
    double ff = f.integral_to(t), gg = g.integral_to(t);
    double excess = ff - gg;
    if (excess > rep.worst_excess) {
      rep.worst_excess = excess;
      rep.worst_t = t;
    }
    if (excess > eps * std::max({1e-300, ff, gg})) rep.ok = false;
    last = t;
  }
  // Past the last breakpoint both functions are constant; the primitives
  // stay ordered iff the tail values are.
  double tf = f(last), tg = g(last);
  if (tf > tg + eps * std::max(1e-300, tg)) {
    rep.ok = false;
    rep.worst_excess = std::max(rep.worst_excess, tf - tg);
    rep.worst_t = kInf;
  }
  return rep;
}

PointwiseReport pointwise_leq(const StepFunction& f, const StepFunction& g,
                              double eps) {
  PointwiseReport rep;
  std::vector<double> ts = {0.0};
  for (double t : f.breakpoints()) ts.push_back(t);
  for (double t : g.breakpoints()) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  rep.ok = true;
  double scale = std::max(f.first_value(), g.first_value());
  for (double t : ts) {
    double fv = f(t), gv = g(t);
    double excess = fv - gv;
    if (excess > rep.worst_excess) {
      rep.worst_excess = excess;
      rep.worst_t = t;
    }
    double ratio = gv > 0 ? fv / gv : (fv > 0 ? kInf : 0.0);
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    if (excess > eps * std::max(1e-300, std::max(scale, gv))) rep.ok = false;
  }
  return rep;
}

}  // namespace ncmax

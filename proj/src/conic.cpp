#include "prkit/conic.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "prkit/error.hpp"

namespace prkit {

BPoly conic(const ConicSpec& s) {
  if (sgn(s.a1) <= 0 || sgn(s.a2) <= 0 || sgn(s.r) <= 0)
    throw Error("invalid-conic", "conic parameters a1, a2, r must be positive");
  BPoly dx = BPoly::x() - BPoly::constant(s.cx);
  BPoly dy = BPoly::y() - BPoly::constant(s.cy);
  BPoly f = BPoly::constant(s.r) - dx * dx * s.a1 - dy * dy * s.a2;
  return s.sign == ConicSign::InteriorPositive ? f : -f;
}

FitResult fit_polynomial(const std::vector<FitSample>& samples, const FitOptions& opt) {
  if (opt.degree < 0) throw Error("invalid-argument", "fit degree must be nonnegative");
  std::vector<std::pair<int, int>> mons;
  for (int d = 0; d <= opt.degree; ++d)
    for (int i = d; i >= 0; --i) mons.emplace_back(i, d - i);
  const int n = static_cast<int>(mons.size());
  const int m = static_cast<int>(samples.size());
  if (m < n)
    throw Error("too-few-samples", "need at least " + std::to_string(n) + " samples for degree " +
                                       std::to_string(opt.degree));
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd b(m);
  for (int r = 0; r < m; ++r) {
    const double x = samples[r].x.get_d(), y = samples[r].y.get_d();
    const double sw = std::sqrt(samples[r].weight);
    for (int k = 0; k < n; ++k) A(r, k) = sw * std::pow(x, mons[k].first) * std::pow(y, mons[k].second);
    b(r) = sw * samples[r].value;
  }
  Eigen::VectorXd coef;
  if (opt.regularization > 0) {
    Eigen::MatrixXd N = A.transpose() * A;
    N.diagonal().array() += opt.regularization;
    coef = N.ldlt().solve(A.transpose() * b);
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-12);
    if (qr.rank() < n)
      throw Error("rank-deficient",
                  "least-squares system is rank deficient; use regularization > 0");
    coef = qr.solve(b);
  }
  double cmax = coef.cwiseAbs().maxCoeff();
  int e = cmax > 0 ? static_cast<int>(std::ceil(std::log2(cmax))) : 0;
  const int bits = opt.rounding_bits - e;
  BPoly::Terms terms;
  for (int k = 0; k < n; ++k) terms[mons[k]] = dyadic_round(coef(k), bits);
  FitResult res{BPoly(terms), 0};
  DoublePoly dp(res.poly);
  double s = 0;
  for (const auto& smp : samples) {
    double r = dp(smp.x.get_d(), smp.y.get_d()) - smp.value;
    s += smp.weight * r * r;
  }
  res.residual = std::sqrt(s);
  return res;
}

}  // namespace prkit

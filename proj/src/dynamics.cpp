/* Copyright 2026 The loclab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "loclab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "loclab/error.hpp"

namespace loclab {

namespace {

Site origin(int d) { return Site(d); }

int inner_radius(const Region& region) {
  const int d = region.dim();
  int r = -1;
  while (region.contains(Box{origin(d), r + 1})) ++r;
  return r;
}

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Line l;
  if (sxx <= 0.0) return l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  l.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return l;
}

}  // namespace

Evolution::Evolution(const BoxOperator& op) : op_(op) {
  require(op.is_real(), ErrorCode::not_normal, "evolution: real operators only");
  const Region& region = op.region();
  const auto i0 = region.find(origin(region.dim()));
  require(i0.has_value(), ErrorCode::containment, "region must contain the origin");
  const SpectralData& sd = op.spectrum();
  coeff_ = sd.vectors.row(static_cast<Eigen::Index>(*i0)).transpose();
  weights_ = coeff_.cwiseAbs2();
}

Eigen::VectorXcd Evolution::state(double t) const {
  const SpectralData& sd = op_.spectrum();
  Eigen::VectorXcd c(coeff_.size());
  for (Eigen::Index a = 0; a < c.size(); ++a)
    c(a) = std::polar(coeff_(a), -t * sd.values(a));
  return sd.vectors.cast<std::complex<double>>() * c;
}

Eigen::VectorXcd evolve(const BoxOperator& op, double t) { return Evolution(op).state(t); }

Eigen::VectorXd moment_weights(const Region& region, double p) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(region.size()));
  for (std::size_t i = 0; i < region.size(); ++i)
    w(static_cast<Eigen::Index>(i)) = std::pow(1.0 + region[i].norm2_sq(), p);
  return w;
}

MomentResult moment(const Evolution& ev, double p, std::span<const double> t_grid) {
  require(!t_grid.empty(), ErrorCode::domain, "empty time grid");
  const Eigen::VectorXd w = moment_weights(ev.op().region(), p);
  const int R = inner_radius(ev.op().region());
  MomentResult m;
  m.p = p;
  for (double t : t_grid) {
    const Eigen::VectorXcd psi = ev.state(t);
    const double x = w.dot(psi.cwiseAbs2());
    m.t.push_back(t);
    m.values.push_back(x);
    m.X_hat = std::max(m.X_hat, x);
    m.max_norm_defect = std::max(m.max_norm_defect, std::abs(psi.norm() - 1.0));
    if (std::abs(t) > R / 4.0) m.horizon_exceeded = true;
  }
  return m;
}

MomentResult moment(const BoxOperator& op, double p, std::span<const double> t_grid) {
  return moment(Evolution(op), p, t_grid);
}

MomentDominance moment_dominance(const Evolution& ev, double p, std::span<const double> t_grid) {
  const Eigen::MatrixXd& V = ev.op().spectrum().vectors;
  const Eigen::VectorXd w = moment_weights(ev.op().region(), p);
  MomentDominance md;
  md.X_hat = moment(ev, p, t_grid).X_hat;
  const Eigen::VectorXd a = V.cwiseAbs() * ev.weights().cwiseSqrt();
  md.triangle_bound = w.dot(a.cwiseAbs2());
  md.diagonal_form = ev.weights().dot(V.cwiseAbs2().transpose() * w);
  const double slack = 1e-10 * std::max(1.0, md.X_hat);
  md.holds = md.X_hat <= md.triangle_bound + slack;
  md.diagonal_form_holds = md.X_hat <= md.diagonal_form + slack;
  return md;
}

DecayFit decay_profile(const Region& region, const Eigen::VectorXd& psi, const Site& center,
                       double floor) {
  require(static_cast<std::size_t>(psi.size()) == region.size(), ErrorCode::domain,
          "vector size does not match region");
  DecayFit fit;
  std::vector<double> amp;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto k = static_cast<std::size_t>(dist_inf(region[i], center));
    if (amp.size() <= k) amp.resize(k + 1, 0.0);
    amp[k] = std::max(amp[k], std::abs(psi(static_cast<Eigen::Index>(i))));
  }
  const double peak = amp.empty() ? 0.0 : *std::max_element(amp.begin(), amp.end());
  std::vector<double> xe, xs, y;
  for (std::size_t k = 0; k < amp.size(); ++k) {
    if (peak <= 0.0 || amp[k] <= floor * peak) continue;
    fit.shell.push_back(static_cast<int>(k));
    fit.max_amp.push_back(amp[k]);
    xe.push_back(static_cast<double>(k));
    xs.push_back(std::sqrt(static_cast<double>(k)));
    y.push_back(std::log(amp[k]));
  }
  if (y.size() < 2) {
    fit.degenerate = true;
    return fit;
  }
  const Line le = least_squares(xe, y);
  const Line ls = least_squares(xs, y);
  fit.rate_exp = -le.slope;
  fit.r2_exp = le.r2;
  fit.rate_sqrt = -ls.slope;
  fit.r2_sqrt = ls.r2;
  return fit;
}

double median_decay_rate(const BoxOperator& op) {
  const SpectralData& sd = op.spectrum();
  const Eigen::Index N = sd.vectors.cols();
  std::vector<double> rates;
  for (Eigen::Index a = N / 4; a < N - N / 4; ++a) {
    const Eigen::VectorXd v = sd.vectors.col(a);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const DecayFit f = decay_profile(op.region(), v, op.region()[static_cast<std::size_t>(imax)]);
    if (!f.degenerate) rates.push_back(f.rate_exp);
  }
  require(!rates.empty(), ErrorCode::domain, "no fittable eigenvectors");
  const auto mid = rates.begin() + static_cast<std::ptrdiff_t>(rates.size() / 2);
  std::nth_element(rates.begin(), mid, rates.end());
  return *mid;
}

MassClassReport mass_classes(const BoxOperator& op, int max_s) {
  require(max_s >= 0, ErrorCode::domain, "need max_s >= 0");
  const Evolution ev(op);
  const Eigen::VectorXd& w = ev.weights();
  const int d = op.region().dim();
  MassClassReport rep;
  for (int s = 0; s <= max_s; ++s) {
    MassClass c;
    c.s = s;
    c.shape_bound = std::pow(1.0 + s, 4.0 * d);
    rep.classes.push_back(c);
  }
  for (Eigen::Index a = 0; a < w.size(); ++a) {
    rep.completeness += w(a);
    if (w(a) == 0.0) {
      ++rep.zero_weight;
      continue;
    }
    const int s = static_cast<int>(std::floor(-std::log2(std::min(1.0, w(a)))));
    if (s > max_s) {
      ++rep.beyond_max_s;
      continue;
    }
    rep.classes[s].members.push_back(static_cast<int>(a));
    rep.classes[s].mass += w(a);
  }
  for (auto& c : rep.classes)
    c.within_shape = static_cast<double>(c.members.size()) <= c.shape_bound;
  return rep;
}

GeneralizedEigenVerdict generalized_eigen_scan(const BoxOperator& op, double E, double eps,
                                               int R_inner) {
  require(eps >= 0.0 && R_inner >= 0, ErrorCode::domain, "need eps >= 0 and R_inner >= 0");
  const SpectralData& sd = op.spectrum();
  require(sd.real, ErrorCode::not_normal, "generalized eigen scan: real operators only");
  GeneralizedEigenVerdict g;
  (sd.values.array() - E).abs().minCoeff(&g.index);
  g.eigenvalue = sd.values(g.index);
  const Region& region = op.region();
  const Box inner{origin(region.dim()), R_inner};
  for (std::size_t i = 0; i < region.size(); ++i)
    if (inner.contains(region[i])) g.mass += sd.vectors(static_cast<Eigen::Index>(i), g.index) *
                                             sd.vectors(static_cast<Eigen::Index>(i), g.index);
  g.holds = g.mass >= eps;
  return g;
}

}  // namespace loclab

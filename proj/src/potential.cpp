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

#include "loclab/potential.hpp"

#include <cmath>
#include <sstream>

#include "loclab/error.hpp"
#include "loclab/numeric.hpp"

namespace loclab {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kDiscRadius = 6.0;

double shell_count(int k, int d) {
  if (k == 0) return 1.0;
  return std::pow(2.0 * k + 1.0, d) - std::pow(2.0 * k - 1.0, d);
}

}  // namespace

SingleSite::SingleSite(Kind kind, int dim, double c, std::vector<double> radial)
    : kind_(kind), dim_(dim), c_(c), radial_(std::move(radial)) {
  require(dim >= 1 && dim <= kMaxDim, ErrorCode::domain, "phi: bad dimension");
  require(c > 0.0, ErrorCode::config, "c: must be positive");
}

SingleSite SingleSite::alt_exp(int dim, double c) { return SingleSite(Kind::alt_exp, dim, c, {}); }

SingleSite SingleSite::delta(int dim) { return SingleSite(Kind::delta, dim, 1.0, {1.0}); }

SingleSite SingleSite::finite(int dim, double c, std::vector<double> radial) {
  require(!radial.empty(), ErrorCode::config, "phi: empty finite profile");
  for (std::size_t k = 0; k < radial.size(); ++k)
    require(std::abs(radial[k]) <= std::exp(-c * static_cast<double>(k)) * (1 + 1e-12),
            ErrorCode::config, "phi: finite profile exceeds e^{-c|n|}");
  return SingleSite(Kind::finite, dim, c, std::move(radial));
}

SingleSite SingleSite::parse(const std::string& spec, int dim, double c) {
  if (spec == "alt-exp") return alt_exp(dim, c);
  if (spec == "delta") return delta(dim);
  if (spec.rfind("finite:", 0) == 0) {
    std::vector<double> radial;
    std::stringstream in(spec.substr(7));
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        radial.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw Error(ErrorCode::config, "phi: cannot parse '" + item + "'");
      }
    }
    return finite(dim, c, std::move(radial));
  }
  throw Error(ErrorCode::config, "phi: unknown profile '" + spec + "'");
}

double SingleSite::operator()(const Site& m) const {
  const int k = m.norm_inf();
  switch (kind_) {
    case Kind::alt_exp:
      return (m.norm1() % 2 == 0 ? 1.0 : -1.0) * std::exp(-c_ * k);
    case Kind::delta:
      return k == 0 ? 1.0 : 0.0;
    case Kind::finite:
      return k < static_cast<int>(radial_.size()) ? radial_[k] : 0.0;
  }
  return 0.0;
}

double SingleSite::tail_abs_sum(int R) const {
  double s = 0.0;
  switch (kind_) {
    case Kind::alt_exp:
      for (int k = R + 1;; ++k) {
        const double term = shell_count(k, dim_) * std::exp(-c_ * k);
        s += term;
        if (term < 1e-18 * s || term == 0.0) break;
      }
      return s;
    case Kind::delta:
      return R < 0 ? 1.0 : 0.0;
    case Kind::finite:
      for (int k = std::max(R + 1, 0); k < static_cast<int>(radial_.size()); ++k)
        s += shell_count(k, dim_) * std::abs(radial_[k]);
      return s;
  }
  return s;
}

ComplexField::ComplexField(std::shared_ptr<const Region> support,
                           std::vector<std::complex<double>> values)
    : support_(std::move(support)), values_(std::move(values)) {
  require(values_.size() == support_->size(), ErrorCode::domain,
          "field values do not match support");
}

ComplexField::ComplexField(const DisorderField& real)
    : support_(real.support_ptr()), values_(real.values().begin(), real.values().end()) {}

std::complex<double> ComplexField::operator()(const Site& x) const {
  auto i = support_->find(x);
  require(i.has_value(), ErrorCode::truncation, "disorder support too small");
  const auto z = values_[*i];
  require(std::abs(z) < kDiscRadius, ErrorCode::domain, "complex disorder value outside |z| < 6");
  return z;
}

ComplexField ComplexField::with_value(const Site& x, std::complex<double> z) const {
  ComplexField out = *this;
  out.values_[support_->index(x)] = z;
  return out;
}

std::vector<double> Potential::on_region(const Region& region, const DisorderField& field) const {
  std::vector<double> v(region.size());
  for (std::size_t i = 0; i < region.size(); ++i) v[i] = at(field, region[i]);
  return v;
}

int default_truncation_radius(double lambda, double c) {
  require(c > 0.0, ErrorCode::config, "c: must be positive");
  return static_cast<int>(robust_ceil((std::log(std::max(lambda, 1.0)) + 30.0) / c));
}

AlloyValue eval_alloy(const SingleSite& phi, const DisorderField& field, const Site& x,
                      double lambda, int Rt) {
  require(Rt >= 0, ErrorCode::domain, "negative truncation radius");
  AlloyValue out;
  double s = 0.0;
  for_each_site(centered_box(x.dim(), Rt), [&](const Site& m) {
    const double p = phi(m);
    if (p != 0.0) s += field(x + m) * p;
  });
  out.value = lambda * s;
  out.truncation_bound = std::abs(lambda) * 0.5 * phi.tail_abs_sum(Rt);
  return out;
}

AlloyPotential::AlloyPotential(SingleSite phi, double lambda, int Rt)
    : phi_(std::move(phi)), lambda_(lambda),
      Rt_(Rt >= 0 ? Rt : default_truncation_radius(lambda, phi_.c())) {
  require(lambda >= 0.0, ErrorCode::config, "lambda: must be non-negative");
}

double AlloyPotential::at(const DisorderField& field, const Site& x) const {
  return eval_alloy(phi_, field, x, lambda_, Rt_).value;
}

std::complex<double> AlloyPotential::at_complex(const ComplexField& field, const Site& x) const {
  std::complex<double> s = 0.0;
  for_each_site(centered_box(x.dim(), Rt_), [&](const Site& m) {
    const double p = phi_(m);
    if (p != 0.0) s += field(x + m) * p;
  });
  return lambda_ * s;
}

double AlloyPotential::truncation_bound() const {
  return lambda_ * 0.5 * phi_.tail_abs_sum(Rt_);
}

double AlloyPotential::sup_bound() const { return lambda_ * 0.5 * phi_.abs_sum(); }

CorrelatedPotential::CorrelatedPotential(int dim, double lambda, double c, int Rt, RealTerm real,
                                         ComplexTerm complex, TailBound tail)
    : dim_(dim), lambda_(lambda), c_(c),
      Rt_(Rt >= 0 ? Rt : default_truncation_radius(lambda, c)), real_(std::move(real)),
      complex_(std::move(complex)), tail_(std::move(tail)) {
  require(lambda >= 0.0, ErrorCode::config, "lambda: must be non-negative");
  require(c > 0.0, ErrorCode::config, "c: must be positive");
}

double CorrelatedPotential::term(int r, const DisorderField& field, const Site& x) const {
  const RealAccess access = [&](const Site& m) {
    require(m.norm_inf() <= r, ErrorCode::domain, "term reads outside its window");
    return field(x + m);
  };
  return real_(r, access);
}

double CorrelatedPotential::at(const DisorderField& field, const Site& x) const {
  double s = 0.0;
  for (int r = 0; r <= Rt_; ++r) s += term(r, field, x);
  return lambda_ * s;
}

std::complex<double> CorrelatedPotential::at_complex(const ComplexField& field,
                                                     const Site& x) const {
  std::complex<double> s = 0.0;
  for (int r = 0; r <= Rt_; ++r) {
    const ComplexAccess access = [&](const Site& m) {
      require(m.norm_inf() <= r, ErrorCode::domain, "term reads outside its window");
      return field(x + m);
    };
    s += complex_(r, access);
  }
  return lambda_ * s;
}

CorrelatedPotential alloy_as_correlated(const SingleSite& phi, double lambda, int Rt) {
  const int d = phi.dim();
  auto real = [phi, d](int r, const CorrelatedPotential::RealAccess& w) {
    double s = 0.0;
    for_each_site(centered_box(d, r), [&](const Site& m) {
      if (m.norm_inf() == r) s += w(m) * phi(m);
    });
    return s;
  };
  auto complex = [phi, d](int r, const CorrelatedPotential::ComplexAccess& w) {
    std::complex<double> s = 0.0;
    for_each_site(centered_box(d, r), [&](const Site& m) {
      if (m.norm_inf() == r) s += w(m) * phi(m);
    });
    return s;
  };
  auto tail = [phi](int R) { return 0.5 * phi.tail_abs_sum(R - 1); };
  return CorrelatedPotential(d, lambda, phi.c(), Rt, real, complex, tail);
}

CorrelatedPotential doubling_map_potential(double lambda, int Rt) {
  // f_r = g(S_r) - g(S_{r-1}) with S_r = sum_{j <= r} omega_j 2^{-j}.
  auto real = [](int r, const CorrelatedPotential::RealAccess& w) {
    double s = 0.0;
    for (int j = 0; j < r; ++j) s += w(Site{j}) * std::ldexp(1.0, -j);
    const double prev = r == 0 ? 0.0 : std::sin(kTwoPi * s);
    s += w(Site{r}) * std::ldexp(1.0, -r);
    return std::sin(kTwoPi * s) - prev;
  };
  auto complex = [](int r, const CorrelatedPotential::ComplexAccess& w) {
    std::complex<double> s = 0.0;
    for (int j = 0; j < r; ++j) s += w(Site{j}) * std::ldexp(1.0, -j);
    const std::complex<double> prev = r == 0 ? 0.0 : std::sin(kTwoPi * s);
    s += w(Site{r}) * std::ldexp(1.0, -r);
    return std::sin(kTwoPi * s) - prev;
  };
  auto tail = [](int R) { return R == 0 ? 1.0 : std::min(2.0, kTwoPi * std::ldexp(1.0, -R)); };
  return CorrelatedPotential(1, lambda, std::log(2.0), Rt, real, complex, tail);
}

}  // namespace loclab

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

#ifndef LOCLAB_POTENTIAL_HPP
#define LOCLAB_POTENTIAL_HPP

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "loclab/disorder.hpp"
#include "loclab/lattice.hpp"

namespace loclab {

/// Single-site profile phi with |phi(n)| <= e^{-c |n|_inf}.
class SingleSite {
 public:
  /// phi(n) = (-1)^{|n|_1} e^{-c |n|_inf}.
  static SingleSite alt_exp(int dim, double c);
  /// phi = indicator of the origin.
  static SingleSite delta(int dim);
  /// phi(n) = radial[|n|_inf], zero beyond the list.
  static SingleSite finite(int dim, double c, std::vector<double> radial);
  /// "alt-exp", "delta" or "finite:v0,v1,...".
  static SingleSite parse(const std::string& spec, int dim, double c);

  double operator()(const Site& m) const;
  int dim() const { return dim_; }
  double c() const { return c_; }
  /// Sum of |phi(m)| over |m|_inf > R.
  double tail_abs_sum(int R) const;
  double abs_sum() const { return tail_abs_sum(-1); }

 private:
  enum class Kind { alt_exp, delta, finite };
  SingleSite(Kind kind, int dim, double c, std::vector<double> radial);
  Kind kind_;
  int dim_;
  double c_;
  std::vector<double> radial_;
};

/// Complex disorder values, used for analytic continuation in omega.
class ComplexField {
 public:
  ComplexField(std::shared_ptr<const Region> support, std::vector<std::complex<double>> values);
  explicit ComplexField(const DisorderField& real);
  const Region& support() const { return *support_; }
  /// Throws truncation when x is outside the support and domain when the
  /// value leaves the disc |z| < 6.
  std::complex<double> operator()(const Site& x) const;
  ComplexField with_value(const Site& x, std::complex<double> z) const;

 private:
  std::shared_ptr<const Region> support_;
  std::vector<std::complex<double>> values_;
};

/// A translation-covariant potential V(x) = lambda f(T_x omega),
/// truncated at radius reach().
class Potential {
 public:
  virtual ~Potential() = default;
  virtual int dim() const = 0;
  virtual double lambda() const = 0;
  virtual int reach() const = 0;
  virtual double at(const DisorderField& field, const Site& x) const = 0;
  virtual std::complex<double> at_complex(const ComplexField& field, const Site& x) const = 0;
  /// Upper bound on |V_exact(x) - at(x)|.
  virtual double truncation_bound() const = 0;
  /// Upper bound on |V(x)| over all real fields.
  virtual double sup_bound() const = 0;

  std::vector<double> on_region(const Region& region, const DisorderField& field) const;
};

int default_truncation_radius(double lambda, double c);

struct AlloyValue {
  double value = 0.0;
  double truncation_bound = 0.0;
};

/// lambda * sum_{|m|_inf <= Rt} omega_{x+m} phi(m).
AlloyValue eval_alloy(const SingleSite& phi, const DisorderField& field, const Site& x,
                      double lambda, int Rt);

class AlloyPotential : public Potential {
 public:
  AlloyPotential(SingleSite phi, double lambda, int Rt = -1);
  int dim() const override { return phi_.dim(); }
  double lambda() const override { return lambda_; }
  int reach() const override { return Rt_; }
  const SingleSite& profile() const { return phi_; }
  double at(const DisorderField& field, const Site& x) const override;
  std::complex<double> at_complex(const ComplexField& field, const Site& x) const override;
  double truncation_bound() const override;
  double sup_bound() const override;

 private:
  SingleSite phi_;
  double lambda_;
  int Rt_;
};

/// V(x) = lambda sum_{r <= Rt} f_r(omega restricted to Lambda_r(x)).
/// Terms read omega through an accessor taking offsets from x.
class CorrelatedPotential : public Potential {
 public:
  using RealAccess = std::function<double(const Site&)>;
  using ComplexAccess = std::function<std::complex<double>(const Site&)>;
  using RealTerm = std::function<double(int r, const RealAccess&)>;
  using ComplexTerm = std::function<std::complex<double>(int r, const ComplexAccess&)>;
  /// tail(R) bounds sum_{r >= R} sup |f_r| over real fields.
  using TailBound = std::function<double(int R)>;

  CorrelatedPotential(int dim, double lambda, double c, int Rt, RealTerm real,
                      ComplexTerm complex, TailBound tail);

  int dim() const override { return dim_; }
  double lambda() const override { return lambda_; }
  int reach() const override { return Rt_; }
  double c() const { return c_; }
  double at(const DisorderField& field, const Site& x) const override;
  std::complex<double> at_complex(const ComplexField& field, const Site& x) const override;
  double truncation_bound() const override { return lambda_ * tail_(Rt_ + 1); }
  double sup_bound() const override { return lambda_ * tail_(0); }
  /// Term f_r alone.
  double term(int r, const DisorderField& field, const Site& x) const;

 private:
  int dim_;
  double lambda_;
  double c_;
  int Rt_;
  RealTerm real_;
  ComplexTerm complex_;
  TailBound tail_;
};

/// The alloy written as shell terms f_r = sum_{|m|_inf = r} omega_m phi(m).
CorrelatedPotential alloy_as_correlated(const SingleSite& phi, double lambda, int Rt);

/// d = 1: f(omega) = sin(2 pi sum_{j >= 0} omega_j 2^{-j}), split into
/// telescoping terms.
CorrelatedPotential doubling_map_potential(double lambda, int Rt = -1);

}  // namespace loclab

#endif

#pragma once

#include <cstddef>

namespace kwp::special {

/// Natural log of the gamma function for x > 0.
double log_gamma(double x);

/// log B(a, b) for a, b > 0.
double log_beta(double a, double b);

/// B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), evaluated through log-gamma.
double beta_fn(double a, double b);

double digamma(double x);
double trigamma(double x);

/// Generalized binomial coefficient nu(nu-1)...(nu-i+1)/i! for real nu.
/// Exactly zero when nu is a non-negative integer and i > nu.
double binom_real(double nu, std::size_t i);

/// Running generalized binomial coefficient C(nu, i) for i = 0, 1, 2, ...
///
/// The magnitude is carried as a logarithm together with a sign so that
/// long sequences with large |nu| neither overflow nor lose precision;
/// value() exponentiates on demand and log_abs() can be combined with other
/// log-magnitudes before exponentiating a product.
class GeneralizedBinomial {
 public:
  explicit GeneralizedBinomial(double nu) noexcept : nu_(nu) {}

  double nu() const noexcept { return nu_; }
  std::size_t index() const noexcept { return i_; }
  bool is_zero() const noexcept { return zero_; }
  int sign() const noexcept { return zero_ ? 0 : sign_; }
  double log_abs() const noexcept;
  double value() const noexcept;

  /// Steps i -> i+1 via C(nu, i+1) = C(nu, i) (nu - i)/(i + 1).
  void advance() noexcept;

 private:
  double nu_;
  std::size_t i_ = 0;
  double log_abs_ = 0.0;
  int sign_ = 1;
  bool zero_ = false;
};

/// Upper incomplete gamma function Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt
/// for any real s and x > 0 (s may be negative and non-integer).
double upper_incomplete_gamma(double s, double x);

/// log Gamma(s, x); Gamma(s, x) > 0 for every real s when x > 0.
double log_upper_incomplete_gamma(double s, double x);

/// e^x x^{-s} Gamma(s, x).  For s <= 0 this is e^x E_{1-s}(x), which stays
/// O(1) where Gamma(s, x) itself under- or overflows.
double scaled_upper_incomplete_gamma(double s, double x);

/// Regularized incomplete beta I_x(a, b).  The two-argument-complement form
/// takes y = 1 - x explicitly so callers holding an accurate 1 - x keep
/// full precision near x = 1.
double regularized_incomplete_beta(double a, double b, double x);
double regularized_incomplete_beta(double a, double b, double x, double y);

/// 1 - I_x(a, b) without cancellation.
double regularized_incomplete_beta_complement(double a, double b, double x, double y);

}  // namespace kwp::special

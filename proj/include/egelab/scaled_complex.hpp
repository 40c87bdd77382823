#pragma once

#include <complex>

namespace egelab {

using cplx = std::complex<double>;

/// Complex number stored as mantissa * exp(logscale).
///
/// The mantissa is renormalized (by an exact power of two) whenever its modulus leaves
/// [2^-128, 2^128), so products of thousands of O(n) factors never overflow. A zero value
/// has mantissa 0 and logscale 0.
class ScaledComplex {
 public:
  static constexpr int kRescaleExponent = 128;

  ScaledComplex() = default;
  explicit ScaledComplex(cplx value) : mantissa_(value) { normalize(); }
  ScaledComplex(cplx mantissa, double logscale) : mantissa_(mantissa), logscale_(logscale) { normalize(); }

  /// Value exp(log_abs) * exp(i*phase).
  static ScaledComplex from_log_polar(double log_abs, double phase);

  [[nodiscard]] cplx mantissa() const { return mantissa_; }
  [[nodiscard]] double logscale() const { return logscale_; }
  [[nodiscard]] bool is_zero() const { return mantissa_ == cplx{0.0, 0.0}; }

  /// Natural log of the modulus; -inf for zero.
  [[nodiscard]] double log_abs() const;
  [[nodiscard]] double arg() const { return std::arg(mantissa_); }
  /// Plain complex value; may overflow to inf or underflow to 0.
  [[nodiscard]] cplx value() const;
  [[nodiscard]] ScaledComplex conj() const { return {std::conj(mantissa_), logscale_}; }

  ScaledComplex& operator*=(const ScaledComplex& other);
  ScaledComplex& operator*=(cplx factor);
  ScaledComplex& operator+=(const ScaledComplex& other);
  ScaledComplex& operator-=(const ScaledComplex& other);

  /// Multiplies by exp(shift), shift complex: adds Re to the logscale and rotates by Im.
  [[nodiscard]] ScaledComplex times_exp(cplx shift) const;

  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
  friend ScaledComplex operator*(ScaledComplex a, cplx b) { return a *= b; }
  friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }
  friend ScaledComplex operator-(ScaledComplex a, const ScaledComplex& b) { return a -= b; }
  friend bool operator==(const ScaledComplex&, const ScaledComplex&) = default;

 private:
  void normalize();

  cplx mantissa_{0.0, 0.0};
  double logscale_ = 0.0;
};

}  // namespace egelab

#include "egelab/scaled_complex.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace egelab {

namespace {

constexpr double kUpper = 0x1p128;
constexpr double kLower = 0x1p-128;

}  // namespace

ScaledComplex ScaledComplex::from_log_polar(double log_abs, double phase) {
  if (log_abs == -std::numeric_limits<double>::infinity()) return {};
  return {std::polar(1.0, phase), log_abs};
}

void ScaledComplex::normalize() {
  const double re = mantissa_.real();
  const double im = mantissa_.imag();
  if (re == 0.0 && im == 0.0) {
    mantissa_ = {0.0, 0.0};
    logscale_ = 0.0;
    return;
  }
  // max(|re|,|im|) <= |m| <= sqrt(2)*max(|re|,|im|): checking the max norm keeps
  // the test overflow-free; the band is widened by one binade to absorb the sqrt(2).
  const double big = std::fmax(std::fabs(re), std::fabs(im));
  if (big >= kLower && big < kUpper / 2) return;
  const int e = std::ilogb(big);
  mantissa_ = {std::ldexp(re, -e), std::ldexp(im, -e)};
  logscale_ += e * std::numbers::ln2;
}

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa_)) + logscale_;
}

cplx ScaledComplex::value() const {
  if (is_zero()) return {0.0, 0.0};
  return mantissa_ * std::exp(logscale_);
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& other) {
  if (is_zero() || other.is_zero()) {
    *this = ScaledComplex{};
    return *this;
  }
  mantissa_ *= other.mantissa_;
  logscale_ += other.logscale_;
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator*=(cplx factor) { return *this *= ScaledComplex(factor); }

ScaledComplex& ScaledComplex::operator+=(const ScaledComplex& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    *this = other;
    return *this;
  }
  if (logscale_ >= other.logscale_) {
    mantissa_ += other.mantissa_ * std::exp(other.logscale_ - logscale_);
  } else {
    mantissa_ = mantissa_ * std::exp(logscale_ - other.logscale_) + other.mantissa_;
    logscale_ = other.logscale_;
  }
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator-=(const ScaledComplex& other) {
  return *this += ScaledComplex(-other.mantissa_, other.logscale_);
}

ScaledComplex ScaledComplex::times_exp(cplx shift) const {
  if (is_zero()) return {};
  return {mantissa_ * std::polar(1.0, shift.imag()), logscale_ + shift.real()};
}

}  // namespace egelab

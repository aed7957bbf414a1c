#ifndef LEEYANG_REAL_HPP
#define LEEYANG_REAL_HPP

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace leeyang {

// Software float with a 256-bit binary mantissa. Used by the verification
// suites when binary64 residuals are not small enough to be conclusive.
using oct_float = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

template <class Real>
inline constexpr int mantissa_bits = std::numeric_limits<Real>::digits;

template <class Real>
Real pi_v() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
Real half_pi_v() {
  return boost::math::constants::half_pi<Real>();
}

template <class Real>
Real eps_v() {
  return std::numeric_limits<Real>::epsilon();
}

// Minimal complex value type that works for both double and multiprecision
// scalars (std::complex is only specified for the builtin floating types).
template <class Real>
struct Complex {
  Real re{};
  Real im{};

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
};

template <class Real>
Real abs(const Complex<Real>& z) {
  using std::sqrt;
  return sqrt(z.re * z.re + z.im * z.im);
}

// exp(i*theta) for real theta.
template <class Real>
Complex<Real> cis(const Real& theta) {
  using std::cos;
  using std::sin;
  return {cos(theta), sin(theta)};
}

template <class Real>
Complex<Real> to_complex(const std::complex<double>& z) {
  return {static_cast<Real>(z.real()), static_cast<Real>(z.imag())};
}

template <class Real>
std::complex<double> to_std_complex(const Complex<Real>& z) {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

// A positive real held as value * exp(log_factor); keeps partition-function
// magnitudes representable (Curie-Weiss weights span exp(t n^2)).
template <class Real>
struct LogScaled {
  Real log_factor{};
  Real value{};
};

}  // namespace leeyang

#endif

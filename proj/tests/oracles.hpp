#pragma once

// Reference values computed without the library's series engine.

#include <cmath>
#include <complex>
#include <cstddef>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

/// E_alpha(z) summed term by term in 50 digits, each 1/Gamma(1+k alpha)
/// taken directly from boost::math::tgamma. Only meaningful while the
/// largest term stays below about 1e30.
inline std::complex<double> mlf(double alpha, const mp& zr, const mp& zi) {
  const mp a(alpha);
  const double zabs = std::hypot(static_cast<double>(zr), static_cast<double>(zi));
  mp pr = 1, pi = 0;  // z^k
  mp sr = 1, si = 0;
  mp prev = 1;
  for (std::size_t k = 1; k < 20000; ++k) {
    const mp nr = pr * zr - pi * zi;
    pi = pr * zi + pi * zr;
    pr = nr;
    const mp g = boost::math::tgamma(1 + a * k);
    const mp tr = pr / g, ti = pi / g;
    sr += tr;
    si += ti;
    const mp mag = abs(tr) + abs(ti);
    if (mag < mp(1e-45) * (1 + abs(sr) + abs(si)) && mag < prev && k * alpha > 2 * zabs + 5) break;
    prev = mag;
  }
  return {static_cast<double>(sr), static_cast<double>(si)};
}

inline std::complex<double> mlf(double alpha, std::complex<double> z) { return mlf(alpha, mp(z.real()), mp(z.imag())); }

/// E_alpha(lambda x^alpha) with x^alpha formed in 50 digits.
inline std::complex<double> mlf_power(double alpha, std::complex<double> lambda, double x) {
  const mp w = x == 0.0 ? mp(0) : pow(mp(x), mp(alpha));
  return mlf(alpha, w * mp(lambda.real()), w * mp(lambda.imag()));
}

/// Half an ulp of v, the rounding committed when a reference value is stored.
inline double half_ulp(double v) { return 0.5 * (std::nextafter(std::fabs(v), INFINITY) - std::fabs(v)); }

/// Dawson's integral by adaptive Gauss-Kronrod on exp(t^2 - x^2).
inline double dawson(double x) {
  if (x == 0.0) return 0.0;
  const long double xl = x;
  auto f = [xl](long double t) { return std::exp((t - xl) * (t + xl)); };
  return static_cast<double>(
      boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(f, 0.0L, xl, 12, 1e-17L));
}

/// sin_{1/2}(sqrt x) = (2/sqrt(pi)) D(sqrt x).
inline double half_order_sin(double x) { return 2.0 / std::sqrt(M_PI) * dawson(std::sqrt(x)); }

/// E_{1/2}(-x) = exp(x^2) erfc(x), x >= 0.
inline double half_order_negative(double x) {
  const mp v = exp(mp(x) * mp(x)) * boost::math::erfc(mp(x));
  return static_cast<double>(v);
}

/// e^z in 50 digits.
inline std::complex<double> exp(std::complex<double> z) {
  const mp m = boost::multiprecision::exp(mp(z.real()));
  return {static_cast<double>(m * cos(mp(z.imag()))), static_cast<double>(m * sin(mp(z.imag())))};
}

/// Gamma in 50 digits.
inline double gamma(double x) { return static_cast<double>(boost::math::tgamma(mp(x))); }

/// 1F1(a; b; x) summed in 50 digits.
inline double kummer(double a, double b, double x) {
  mp term = 1, sum = 1;
  for (int k = 0; k < 5000; ++k) {
    term *= (mp(a) + k) * mp(x) / ((mp(b) + k) * (k + 1));
    sum += term;
    if (abs(term) < mp(1e-45) * (1 + abs(sum)) && k > std::abs(x) + 5) break;
  }
  return static_cast<double>(sum);
}

}  // namespace oracle

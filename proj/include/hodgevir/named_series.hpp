/*
 * Copyright 2026 The hodgevir Authors
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

#ifndef HODGEVIR_NAMED_SERIES_HPP
#define HODGEVIR_NAMED_SERIES_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "hodgevir/numbers.hpp"
#include "hodgevir/rational.hpp"
#include "hodgevir/series.hpp"

namespace hodgevir {

// The coefficient family b_n from the Lambert-curve expansion, via the
// quadratic recurrence (n+1) b_n = b_{n-1} - sum_{k=2}^{n-1} k b_k b_{n+1-k},
// seeded with b_0 = b_1 = 1.  First values: 1, 1, 1/3, 1/36, -1/270, ...
inline std::vector<Rational> b_coeffs(std::size_t n_max) {
  std::vector<Rational> b;
  b.reserve(n_max + 1);
  b.push_back(Rational(1));
  if (n_max >= 1) b.push_back(Rational(1));
  for (std::size_t n = 2; n <= n_max; ++n) {
    Rational acc = b[n - 1];
    for (std::size_t k = 2; k + 1 <= n; ++k)
      acc -= Rational(static_cast<long>(k)) * b[k] * b[n + 1 - k];
    b.push_back(acc / Rational(static_cast<long>(n) + 1));
  }
  return b;
}

// Stirling coefficients C_i = (2i+1)!! b_{2i+1}; C_0 = 1, C_1 = 1/12.
inline std::vector<Rational> C_coeffs(std::size_t i_max) {
  std::vector<Rational> b = b_coeffs(2 * i_max + 1);
  std::vector<Rational> C;
  C.reserve(i_max + 1);
  for (std::size_t i = 0; i <= i_max; ++i)
    C.push_back(Numbers::double_factorial_odd(2 * static_cast<long>(i) + 1) *
                b[2 * i + 1]);
  return C;
}

inline TruncatedSeries one_plus_z(const std::string& var, long order) {
  TruncatedSeries s(var, 0, order);
  s.set_coeff(0, Rational(1));
  if (order >= 1) s.set_coeff(1, Rational(1));
  return s;
}

// eta = sqrt(2 log(1+z) - 2z/(1+z)) = z - (2/3) z^2 + (19/36) z^3 - ...,
// known through the requested order.
inline TruncatedSeries eta_series(long order) {
  long n = order + 1;
  TruncatedSeries u = one_plus_z("z", n);
  TruncatedSeries closed =
      u.log_series().scale(Rational(2)) -
      u.reciprocal().shift_exp(1).scale(Rational(2));
  return closed.sqrt_series().truncated(order);
}

// The square of eta in closed form, exact as a window.
inline TruncatedSeries eta_sq_series(long order) {
  TruncatedSeries u = one_plus_z("z", order);
  return u.log_series().scale(Rational(2)) -
         u.reciprocal().shift_exp(1).scale(Rational(2));
}

// Alternating b-series sum_{i>=from} (-1)^i b_i z^i.
inline TruncatedSeries b_alternating_series(long order, std::size_t from = 0) {
  std::vector<Rational> b = b_coeffs(static_cast<std::size_t>(order));
  TruncatedSeries s("z", from == 0 ? 0 : static_cast<long>(from), order);
  for (std::size_t i = from; i <= static_cast<std::size_t>(order); ++i) {
    Rational c = (i % 2 == 0) ? b[i] : -b[i];
    if (c != 0) s.set_coeff(static_cast<long>(i), c);
  }
  return s;
}

// h = (sum (-1)^i b_i z^i)^{-1} - 1 = z + (2/3) z^2 + ...; the functional
// inverse of eta.
inline TruncatedSeries h_series(long order) {
  TruncatedSeries denom = b_alternating_series(order);
  return denom.reciprocal() -
         TruncatedSeries::monomial("z", Rational(1), 0, order);
}

// f in the variable w standing for z^{-1}: f = 1/eta(w) = w^{-1} + 2/3 + ...
inline TruncatedSeries f_series(long order_w) {
  return eta_series(order_w + 2).retag("w").reciprocal();
}

// phi_n(z) = D^n . z with D = (1+z)^2 z d/dz; a degree 2n+1 polynomial.
inline TruncatedSeries phi_poly(long n) {
  long cap = 2 * n + 2;
  TruncatedSeries s = TruncatedSeries::monomial("z", Rational(1), 1, cap);
  TruncatedSeries mult("z", 1, 4 * n + 8);
  mult.set_coeff(1, Rational(1));
  mult.set_coeff(2, Rational(2));
  mult.set_coeff(3, Rational(1));
  for (long i = 0; i < n; ++i) s = mult * s.derivative();
  return s;
}

// kappa_n with phi_n = z (1+z)^{n+1} kappa_n; constant term 1, degree n-1.
inline TruncatedSeries kappa_poly(long n) {
  if (n < 2) throw std::invalid_argument("kappa_n needs n >= 2");
  TruncatedSeries denom = one_plus_z("z", 2 * n + 4).pow(n + 1).shift_exp(1);
  return phi_poly(n) / denom;
}

// nu^{(m)}: (1+z)^2/z^2 * eta^{2m+2} = sum_{i>=2m} nu_i z^i, m >= -1.
inline TruncatedSeries nu_series(long m, long order) {
  if (m < -1) throw std::invalid_argument("nu_series needs m >= -1");
  long neta = std::max(order - 2 * m + 1, 4L);
  TruncatedSeries p = eta_series(neta).pow(2 * m + 2);
  TruncatedSeries sq = one_plus_z("z", neta + 2 * m + 4).pow(2);
  return (p * sq).shift_exp(-2).truncated(order);
}

// gamma^{(m)}: -z/(1+z) * eta^{2m+2} = sum_j gamma_j z^j; valuation 2m+3.
inline TruncatedSeries gamma_series(long m, long order) {
  if (m < -1) throw std::invalid_argument("gamma_series needs m >= -1");
  long neta = std::max(order - 2 * m + 1, 4L);
  TruncatedSeries p = eta_series(neta).pow(2 * m + 2);
  TruncatedSeries r = one_plus_z("z", neta + 2 * m + 4).reciprocal();
  return (p * r).shift_exp(1).scale(Rational(-1)).truncated(order);
}

// c_n^{(k,m)} = sum_{i=0}^n (-1)^i (2k-2i+1)!!/(2k-2m-2i-1)!! C_i C_{n-i}.
// The double factorials extend to negative odd arguments, so n may exceed
// k - m.
inline Rational c_value(long n, long k, long m, const std::vector<Rational>& C) {
  if (n < 0 || static_cast<std::size_t>(n) >= C.size())
    throw std::invalid_argument("c_value needs C through index n");
  Rational acc(0);
  for (long i = 0; i <= n; ++i) {
    Rational term = Numbers::double_factorial_odd(2 * k - 2 * i + 1) /
                    Numbers::double_factorial_odd(2 * k - 2 * m - 2 * i - 1) *
                    C[static_cast<std::size_t>(i)] *
                    C[static_cast<std::size_t>(n - i)];
    acc += (i % 2 == 0) ? term : -term;
  }
  return acc;
}

// Flow coefficients a_k with exp(+sum a_k z^{1+k} d/dz) . z = h(z);
// a_1 = 2/3.
inline std::vector<Rational> a_flow_pos(std::size_t count) {
  return solve_derivation_coeffs(h_series(static_cast<long>(count) + 1), +1, count);
}

// Flow coefficients a_{-m} with
// exp(-sum a_{-m} z^{1+m} d/dz) . z = z/(1+z) e^{-z/(1+z)}.
inline std::vector<Rational> a_flow_neg(std::size_t count) {
  long n = static_cast<long>(count) + 2;
  TruncatedSeries t = one_plus_z("z", n).reciprocal().shift_exp(1);
  TruncatedSeries target = t * (-t).exp_series();
  return solve_derivation_coeffs(target, -1, count);
}

// d_n = (-1)^n 4 / ((n+2)(n+1)n), the source coefficients of the flow
// equation for g.
inline std::vector<Rational> d_coeffs(std::size_t count) {
  std::vector<Rational> d(count + 1, Rational(0));
  for (std::size_t n = 1; n <= count; ++n) {
    long ln = static_cast<long>(n);
    d[n] = rat((n % 2 == 0) ? 4 : -4, (ln + 2) * (ln + 1) * ln);
  }
  return d;
}

// g = 2 log( z (1+h) / h ).
inline TruncatedSeries g_series(long order) {
  TruncatedSeries h = h_series(order + 2);
  TruncatedSeries one = TruncatedSeries::monomial("z", Rational(1), 0, order + 2);
  TruncatedSeries ratio = ((one + h).shift_exp(1)) / h;
  return ratio.log_series().scale(Rational(2)).truncated(order);
}

// p_m(z) = z d/dz ( -z/(1+z) eta^{2m+2} ), the closed form.
inline TruncatedSeries p_series(long m, long order) {
  return gamma_series(m, order).theta();
}

// G_m(z) = (1+z)^2/z^2 eta^{2m+2}, the closed form.
inline TruncatedSeries G_series(long m, long order) {
  return nu_series(m, order);
}

// Exact Laurent transplant of a polynomial: z^e goes to w^{-e}.  Only valid
// for windows that hold the complete support, which is the caller's claim.
inline TruncatedSeries poly_in_inverse_var(const TruncatedSeries& poly,
                                           const std::string& wvar,
                                           long out_order) {
  TruncatedSeries r(wvar, -poly.order(), out_order);
  for (const auto& [e, c] : poly.entries()) {
    if (-e > out_order)
      throw std::invalid_argument("inverted polynomial exceeds requested order");
    r.set_coeff(-e, c);
  }
  return r;
}

}  // namespace hodgevir

#endif  // HODGEVIR_NAMED_SERIES_HPP

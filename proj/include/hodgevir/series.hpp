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

#ifndef HODGEVIR_SERIES_HPP
#define HODGEVIR_SERIES_HPP

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hodgevir/rational.hpp"
#include "hodgevir/numbers.hpp"

namespace hodgevir {

// Truncated Laurent series in one named variable.
//
// A series carries two bounds besides its coefficients:
//   min_exp  : hard support bound; coefficients below it are identically zero,
//   order    : knowledge horizon; coefficients in [min_exp, order] are known,
//              coefficients above order are unknown, not zero.
// Reading above the horizon throws.  Every operation propagates the horizon
// pessimistically, so a passing comparison can never rest on coefficients
// that were silently truncated away.  Empty windows (order == min_exp - 1)
// are legal and represent "known to vanish through order".
class TruncatedSeries {
public:
  TruncatedSeries(std::string var, long min_exp, long order)
      : var_(std::move(var)), min_(min_exp), order_(order) {
    if (order_ < min_ - 1)
      throw std::invalid_argument("series window [" + std::to_string(min_) +
                                  ", " + std::to_string(order_) + "] is malformed");
  }

  static TruncatedSeries monomial(const std::string& var, const Rational& c,
                                  long exp, long order) {
    TruncatedSeries s(var, exp, order);
    s.set_coeff(exp, c);
    return s;
  }

  static TruncatedSeries zero(const std::string& var, long min_exp, long order) {
    return TruncatedSeries(var, min_exp, order);
  }

  const std::string& var() const { return var_; }
  long min_exp() const { return min_; }
  long order() const { return order_; }
  const std::map<long, Rational>& entries() const { return c_; }

  Rational coeff(long e) const {
    if (e > order_)
      throw std::out_of_range("coefficient of " + var_ + "^" + std::to_string(e) +
                              " requested beyond truncation order " +
                              std::to_string(order_));
    auto it = c_.find(e);
    return it == c_.end() ? Rational(0) : it->second;
  }

  void set_coeff(long e, const Rational& c) {
    if (e < min_ || e > order_)
      throw std::out_of_range("exponent " + std::to_string(e) +
                              " outside series window");
    if (c == 0) {
      c_.erase(e);
    } else {
      // gmp arithmetic assumes canonical operands, so normalise at the door
      Rational v = c;
      v.canonicalize();
      c_[e] = v;
    }
  }

  // Raise the declared support bound to the observed valuation.  Sound
  // because coefficients inside the window are exact, so the gap below the
  // first nonzero entry is known to vanish.
  TruncatedSeries tightened() const {
    TruncatedSeries r = *this;
    auto v = valuation();
    r.min_ = v ? *v : order_ + 1;
    return r;
  }

  // Lowest exponent with a nonzero coefficient, if any.
  std::optional<long> valuation() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first;
  }

  bool is_zero() const { return c_.empty(); }

  TruncatedSeries retag(const std::string& new_var) const {
    TruncatedSeries r(new_var, min_, order_);
    r.c_ = c_;
    return r;
  }

  TruncatedSeries truncated(long new_order) const {
    if (new_order > order_)
      throw std::invalid_argument("cannot extend knowledge of a series by truncation");
    TruncatedSeries r(var_, std::min(min_, new_order + 1), new_order);
    for (const auto& [e, v] : c_)
      if (e <= new_order) r.c_.emplace(e, v);
    return r;
  }

  TruncatedSeries shift_exp(long s) const {
    TruncatedSeries r(var_, min_ + s, order_ + s);
    for (const auto& [e, v] : c_) r.c_.emplace(e + s, v);
    return r;
  }

  TruncatedSeries scale(const Rational& a) const {
    TruncatedSeries r(var_, min_, order_);
    if (a == 0) return r;
    Rational f = a;
    f.canonicalize();
    for (const auto& [e, v] : c_) r.c_.emplace(e, v * f);
    return r;
  }

  TruncatedSeries operator-() const { return scale(Rational(-1)); }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_same_var(b);
    TruncatedSeries r(a.var_, std::min(a.min_, b.min_), std::min(a.order_, b.order_));
    for (const auto& [e, v] : a.c_)
      if (e <= r.order_) r.c_[e] = v;
    for (const auto& [e, v] : b.c_)
      if (e <= r.order_) {
        Rational s = (r.c_.count(e) ? r.c_[e] : Rational(0)) + v;
        if (s == 0)
          r.c_.erase(e);
        else
          r.c_[e] = s;
      }
    return r;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a + (-b);
  }

  // Product horizon: a coefficient of the product at exponent e is complete
  // as long as every contributing pair is inside both windows; the binding
  // constraints come from each factor's lowest actual term.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_same_var(b);
    long va = a.valuation().value_or(a.order_ + 1);
    long vb = b.valuation().value_or(b.order_ + 1);
    long ord = std::min(a.order_ + vb, b.order_ + va);
    TruncatedSeries r(a.var_, a.min_ + b.min_, ord);
    for (const auto& [ea, ca] : a.c_)
      for (const auto& [eb, cb] : b.c_) {
        long e = ea + eb;
        if (e > ord) continue;
        Rational s = (r.c_.count(e) ? r.c_[e] : Rational(0)) + ca * cb;
        if (s == 0)
          r.c_.erase(e);
        else
          r.c_[e] = s;
      }
    return r;
  }

  // 1/S.  Factors out the valuation and inverts the unit part by the usual
  // triangular recurrence; knowledge propagates through order - 2*valuation.
  TruncatedSeries reciprocal() const {
    auto v = valuation();
    if (!v)
      throw std::domain_error("reciprocal of a series with no visible term through order " +
                              std::to_string(order_));
    long val = *v;
    long n = order_ - val;  // unit part is known through this degree
    std::vector<Rational> u(static_cast<std::size_t>(n) + 1, Rational(0));
    for (const auto& [e, c] : c_) u[static_cast<std::size_t>(e - val)] = c;
    std::vector<Rational> rinv(u.size(), Rational(0));
    rinv[0] = Rational(1) / u[0];
    for (std::size_t k = 1; k < u.size(); ++k) {
      Rational acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc += u[j] * rinv[k - j];
      rinv[k] = -acc / u[0];
    }
    TruncatedSeries r(var_, -val, order_ - 2 * val);
    for (std::size_t k = 0; k < rinv.size(); ++k)
      if (rinv[k] != 0) r.c_.emplace(static_cast<long>(k) - val, rinv[k]);
    return r;
  }

  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a * b.reciprocal();
  }

  // Integer powers, negative ones through the reciprocal.
  TruncatedSeries pow(long n) const {
    if (n < 0) return reciprocal().pow(-n);
    if (n == 0) return monomial(var_, Rational(1), 0, order_);
    TruncatedSeries r = *this;
    for (long i = 1; i < n; ++i) r = r * (*this);
    return r;
  }

  TruncatedSeries derivative() const {
    TruncatedSeries r(var_, min_ - 1, order_ - 1);
    for (const auto& [e, c] : c_) {
      if (e == 0) continue;
      r.c_.emplace(e - 1, c * Rational(e));
    }
    return r;
  }

  // z d/dz keeps every exponent in place, so no knowledge is lost.
  TruncatedSeries theta() const {
    TruncatedSeries r(var_, min_, order_);
    for (const auto& [e, c] : c_) {
      if (e == 0) continue;
      r.c_.emplace(e, c * Rational(e));
    }
    return r;
  }

  TruncatedSeries integrate() const {
    if (-1 >= min_ && -1 <= order_ && c_.count(-1))
      throw std::domain_error("cannot integrate a series with a " + var_ + "^-1 term");
    TruncatedSeries r(var_, min_ + 1, order_ + 1);
    for (const auto& [e, c] : c_) r.c_.emplace(e + 1, c / Rational(e + 1));
    return r;
  }

  // log(S) for S = 1 + x with x supported in positive exponents.
  TruncatedSeries log_series() const {
    if (min_ < 0 && valuation().value_or(0) < 0)
      throw std::domain_error("log of a series with negative exponents");
    if (coeff(0) != 1)
      throw std::domain_error("log requires constant term 1");
    TruncatedSeries x = *this - monomial(var_, Rational(1), 0, order_);
    TruncatedSeries acc = zero(var_, std::min(min_, 1L), order_);
    TruncatedSeries p = x;
    for (long k = 1; k <= order_; ++k) {
      acc = acc + p.scale(Rational((k % 2 == 1) ? 1 : -1, k));
      if (p.is_zero() && p.order_ >= order_) break;
      p = p * x;
    }
    return acc.truncated(order_);
  }

  // exp(S) for S supported in strictly positive exponents.
  TruncatedSeries exp_series() const {
    if (!c_.empty() && c_.begin()->first <= 0)
      throw std::domain_error("exp requires strictly positive support");
    TruncatedSeries acc = monomial(var_, Rational(1), 0, order_);
    TruncatedSeries p = monomial(var_, Rational(1), 0, order_);
    Rational fact(1);
    for (long k = 1; k <= order_; ++k) {
      p = p * (*this);
      fact *= Rational(k);
      acc = acc + p.scale(Rational(1) / fact);
      if (p.is_zero() && p.order_ >= order_) break;
    }
    return acc.truncated(order_);
  }

  // Square root on the positive branch.  Requires an even valuation and a
  // leading coefficient that is a perfect square.
  TruncatedSeries sqrt_series() const {
    auto v = valuation();
    if (!v)
      throw std::domain_error("sqrt of a series with no visible term");
    long val = *v;
    if (val % 2 != 0)
      throw std::domain_error("sqrt requires an even valuation, got " +
                              std::to_string(val));
    Rational lead = c_.begin()->second;
    Integer num = lead.get_num(), den = lead.get_den();
    if (sgn(num) < 0 || !mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
      throw std::domain_error("sqrt requires a perfect-square leading coefficient, got " +
                              rat_str(lead));
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational slead = rat(sn, sd);
    // S = lead * z^val * (1 + x); expand (1+x)^(1/2) binomially.
    TruncatedSeries unit = shift_exp(-val).scale(Rational(1) / lead);
    TruncatedSeries x = unit - monomial(var_, Rational(1), 0, unit.order_);
    TruncatedSeries acc = monomial(var_, Rational(1), 0, unit.order_);
    TruncatedSeries p = monomial(var_, Rational(1), 0, unit.order_);
    Rational binom(1);
    for (long k = 1; k <= unit.order_; ++k) {
      p = p * x;
      binom *= rat(3 - 2 * k, 2 * k);  // C(1/2,k)/C(1/2,k-1)
      acc = acc + p.scale(binom);
      if (p.is_zero() && p.order_ >= unit.order_) break;
    }
    return acc.truncated(unit.order_)
        .tightened()
        .shift_exp(val / 2)
        .scale(slead);
  }

  // Substitution: (this) o inner.  Inner must have valuation >= 1; negative
  // outer exponents go through powers of the reciprocal.  The result lives in
  // inner's variable.  Unknown outer coefficients beyond the horizon first
  // matter at exponent (order+1) * val(inner).
  TruncatedSeries compose(const TruncatedSeries& inner) const {
    if (inner.valuation().value_or(1) < 1)
      throw std::domain_error("composition requires inner valuation >= 1");
    long vin = inner.valuation().value_or(inner.order_ + 1);
    long bound = (order_ + 1) * vin - 1;
    TruncatedSeries acc = zero(inner.var_, std::min(min_ * vin, min_), bound);
    if (c_.empty()) return acc;
    // Ascending powers for nonnegative exponents.
    TruncatedSeries p = monomial(inner.var_, Rational(1), 0, bound);
    long pe = 0;
    for (auto it = c_.lower_bound(0); it != c_.end(); ++it) {
      while (pe < it->first) {
        p = p * inner;
        ++pe;
      }
      acc = acc + p.scale(it->second);
    }
    // Descending powers for negative exponents.
    if (c_.begin()->first < 0) {
      TruncatedSeries ri = inner.reciprocal();
      TruncatedSeries q = ri;
      long qe = -1;
      for (auto it = std::make_reverse_iterator(c_.lower_bound(0));
           it != c_.rend(); ++it) {
        while (qe > it->first) {
          q = q * ri;
          --qe;
        }
        acc = acc + q.scale(it->second);
      }
    }
    return acc;
  }

  // Compositional inverse of a series z + O(z^2), solved order by order.
  TruncatedSeries comp_inverse() const {
    if (min_ < 0 || (min_ <= 0 && order_ >= 0 && c_.count(0)))
      throw std::domain_error("compositional inverse requires valuation 1");
    if (order_ < 1 || coeff(1) != 1)
      throw std::domain_error("compositional inverse requires leading coefficient 1");
    TruncatedSeries g = monomial(var_, Rational(1), 1, order_);
    for (long n = 2; n <= order_; ++n) {
      TruncatedSeries err = compose(g);
      g.set_coeff(n, -err.coeff(n));
    }
    return g;
  }

  // For a Laurent window in an auxiliary variable w standing for z^{-1}:
  // keep the exponents w^{-n}..w^{-1}, flip them to z^n..z^1, drop the rest.
  // All negative w-exponents sit below the horizon by construction, so the
  // result is exact; order_out only widens the declared window.
  TruncatedSeries plus_part(const std::string& out_var, long order_out) const {
    if (order_ < -1)
      throw std::domain_error("plus part needs the window to reach w^-1");
    TruncatedSeries r(out_var, std::min(1L, order_out), order_out);
    for (const auto& [e, c] : c_) {
      if (e >= 0) continue;
      if (-e > order_out)
        throw std::domain_error("plus part exceeds the requested output order");
      r.c_.emplace(-e, c);
    }
    return r;
  }

  TruncatedSeries plus_part(const std::string& out_var) const {
    return plus_part(out_var, std::max(1L, -min_));
  }

  // Value at var = x; requires the full support window to be known.
  Rational eval_at(const Rational& x) const {
    Rational acc(0);
    for (const auto& [e, c] : c_) acc += c * rat_pow(x, e);
    return acc;
  }

  std::string str() const {
    std::ostringstream os;
    os << "O(" << var_ << "^" << (order_ + 1) << ")-series:";
    for (const auto& [e, c] : c_)
      os << " " << rat_str(c) << "*" << var_ << "^" << e;
    if (c_.empty()) os << " 0";
    return os.str();
  }

private:
  void require_same_var(const TruncatedSeries& o) const {
    if (var_ != o.var_)
      throw std::invalid_argument("series variable mismatch: " + var_ +
                                  " vs " + o.var_);
  }

  std::string var_;
  long min_;
  long order_;
  std::map<long, Rational> c_;
};

// Agreement on the common known window.  Comparing beyond it is refused
// rather than answered optimistically.
inline bool equal_through(const TruncatedSeries& a, const TruncatedSeries& b,
                          long through) {
  if (through > a.order() || through > b.order())
    throw std::out_of_range("comparison through " + std::to_string(through) +
                            " exceeds a series horizon");
  long lo = std::min(a.min_exp(), b.min_exp());
  for (long e = lo; e <= through; ++e)
    if (a.coeff(e) != b.coeff(e)) return false;
  return true;
}

inline bool agrees_with(const TruncatedSeries& a, const TruncatedSeries& b) {
  return equal_through(a, b, std::min(a.order(), b.order()));
}

// exp(sign * sum_k a[k] z^{1+k} d/dz + sum_k mult[k] z^k) applied to target.
// Both coefficient vectors are truncations of infinite families (index 0 is
// unused), so the horizon shrinks to what the kept prefixes determine:
// min + K_a from the derivation tail, min + K_mult from the multiplier tail.
// Every application raises the support bound by at least one, so the series
// terminates on any window.
inline TruncatedSeries exp_derivation_apply(const std::vector<Rational>& a,
                                            int sign,
                                            const std::vector<Rational>& mult,
                                            const TruncatedSeries& target) {
  const long ka = static_cast<long>(a.size()) - 1;
  const long km = static_cast<long>(mult.size()) - 1;
  if (ka < 1 && km < 1) return target;  // the operator is the identity
  auto apply_d = [&](const TruncatedSeries& s) {
    long m = s.min_exp();
    long ord = s.order() + 1;
    if (ka >= 1) ord = std::min(ord, m + ka);
    if (km >= 1) ord = std::min(ord, m + km);
    TruncatedSeries out = TruncatedSeries::zero(s.var(), m + 1, ord);
    TruncatedSeries ds = s.derivative();
    for (long k = 1; k <= ka; ++k) {
      if (a[static_cast<std::size_t>(k)] == 0) continue;
      out = out + ds.shift_exp(1 + k).scale(Rational(sign) * a[static_cast<std::size_t>(k)]);
    }
    for (long k = 1; k <= km; ++k) {
      if (mult[static_cast<std::size_t>(k)] == 0) continue;
      out = out + s.shift_exp(k).scale(mult[static_cast<std::size_t>(k)]);
    }
    return out.truncated(ord);
  };
  TruncatedSeries acc = target;
  TruncatedSeries term = target;
  long j = 0;
  while (true) {
    ++j;
    term = apply_d(term).scale(Rational(1, j));
    acc = acc + term;
    // Each application raises the valuation, so the term either empties out
    // (polynomial targets) or climbs past the horizon acc can still honour.
    if (term.min_exp() > term.order()) break;
    if (term.min_exp() > acc.order()) break;
  }
  return acc;
}

// Recover the derivation coefficients {a_k} with
// exp(sign * sum a_k z^{1+k} d/dz) . z = target + O(z^{count+2}).
inline std::vector<Rational> solve_derivation_coeffs(const TruncatedSeries& target,
                                                     int sign, std::size_t count) {
  if (target.order() < static_cast<long>(count) + 1)
    throw std::invalid_argument("target window too short to determine the flow");
  std::vector<Rational> a(count + 1, Rational(0));
  TruncatedSeries z = TruncatedSeries::monomial(target.var(), Rational(1), 1,
                                                static_cast<long>(count) + 1);
  for (std::size_t n = 1; n <= count; ++n) {
    std::vector<Rational> head(a.begin(), a.begin() + static_cast<long>(n) + 1);
    TruncatedSeries got = exp_derivation_apply(head, sign, {}, z);
    a[n] = Rational(sign) * (target.coeff(static_cast<long>(n) + 1) -
                             got.coeff(static_cast<long>(n) + 1));
  }
  return a;
}

}  // namespace hodgevir

#endif  // HODGEVIR_SERIES_HPP

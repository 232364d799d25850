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

#ifndef HODGEVIR_QRING_HPP
#define HODGEVIR_QRING_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgevir/rational.hpp"

namespace hodgevir {

// Two graded variable families share one polynomial type: wt(q_k) = k with
// k >= 1, and wt(t_k) = 2k+1 with k >= 0.  The scaling variable u always has
// weight one.
enum class VarFamily { q, t };

inline long var_weight(VarFamily f, long idx) {
  return f == VarFamily::q ? idx : 2 * idx + 1;
}

inline const char* var_letter(VarFamily f) {
  return f == VarFamily::q ? "q" : "t";
}

// u^u_exp * prod of variables (indices sorted, kept with multiplicity).
struct Monomial {
  long u_exp = 0;
  std::vector<long> vars;

  Monomial() = default;
  Monomial(long u, std::vector<long> v) : u_exp(u), vars(std::move(v)) {
    std::sort(vars.begin(), vars.end());
  }

  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.u_exp != b.u_exp) return a.u_exp < b.u_exp;
    return a.vars < b.vars;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.u_exp == b.u_exp && a.vars == b.vars;
  }
};

// A polynomial with a knowledge cap in total weight: coefficients of weight
// above the cap are unknown and reading them throws.  Exact polynomials use
// the sentinel cap and survive every operation unharmed.
class GradedPoly {
public:
  static constexpr long kExactCap = std::numeric_limits<long>::max() / 4;

  GradedPoly(VarFamily fam, long cap) : fam_(fam), cap_(cap) {}

  static GradedPoly zero(VarFamily fam, long cap = kExactCap) {
    return GradedPoly(fam, cap);
  }
  static GradedPoly constant(VarFamily fam, const Rational& c,
                             long cap = kExactCap) {
    GradedPoly p(fam, cap);
    p.set_coeff(Monomial{}, c);
    return p;
  }
  static GradedPoly var(VarFamily fam, long idx, long cap = kExactCap) {
    GradedPoly p(fam, cap);
    p.set_coeff(Monomial(0, {idx}), Rational(1));
    return p;
  }
  static GradedPoly u_power(VarFamily fam, long e, long cap = kExactCap) {
    GradedPoly p(fam, cap);
    p.set_coeff(Monomial(e, {}), Rational(1));
    return p;
  }

  VarFamily family() const { return fam_; }
  long cap() const { return cap_; }
  bool exact() const { return cap_ >= kExactCap; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  long weight(const Monomial& m) const {
    long w = m.u_exp;
    for (long idx : m.vars) w += var_weight(fam_, idx);
    return w;
  }

  Rational coeff(const Monomial& m) const {
    long w = weight(m);
    if (w > cap_)
      throw std::out_of_range("coefficient of weight " + std::to_string(w) +
                              " lies above the cap " + std::to_string(cap_));
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void set_coeff(const Monomial& m, const Rational& c) {
    long w = weight(m);
    if (w > cap_)
      throw std::out_of_range("cannot set weight " + std::to_string(w) +
                              " above the cap " + std::to_string(cap_));
    if (c == 0) {
      terms_.erase(m);
    } else {
      Rational v = c;
      v.canonicalize();
      terms_[m] = v;
    }
  }

  void add_term(const Monomial& m, const Rational& c) {
    set_coeff(m, coeff(m) + c);
  }

  std::optional<long> min_weight() const {
    std::optional<long> w;
    for (const auto& [m, c] : terms_) {
      long wm = weight(m);
      if (!w || wm < *w) w = wm;
    }
    return w;
  }

  long max_weight_present() const {
    long w = std::numeric_limits<long>::min();
    for (const auto& [m, c] : terms_) w = std::max(w, weight(m));
    return w;
  }

  GradedPoly truncated(long new_cap) const {
    if (new_cap > cap_)
      throw std::invalid_argument("cannot extend knowledge of a polynomial by truncation");
    GradedPoly r(fam_, new_cap);
    for (const auto& [m, c] : terms_)
      if (weight(m) <= new_cap) r.terms_.emplace(m, c);
    return r;
  }

  // The slice of the given total weight (window unchanged).
  GradedPoly weight_component(long w) const {
    if (w > cap_)
      throw std::out_of_range("weight component above the cap");
    GradedPoly r(fam_, cap_);
    for (const auto& [m, c] : terms_)
      if (weight(m) == w) r.terms_.emplace(m, c);
    return r;
  }

  GradedPoly u_zero_slice() const {
    GradedPoly r(fam_, cap_);
    for (const auto& [m, c] : terms_)
      if (m.u_exp == 0) r.terms_.emplace(m, c);
    return r;
  }

  Rational constant_term() const { return coeff(Monomial{}); }

  GradedPoly scale(const Rational& a) const {
    GradedPoly r(fam_, cap_);
    if (a == 0) return r;
    Rational f = a;
    f.canonicalize();
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * f);
    return r;
  }

  GradedPoly operator-() const { return scale(Rational(-1)); }

  friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) {
    a.require_same_family(b);
    GradedPoly r(a.fam_, std::min(a.cap_, b.cap_));
    for (const auto& [m, c] : a.terms_)
      if (a.weight(m) <= r.cap_) r.terms_.emplace(m, c);
    for (const auto& [m, c] : b.terms_) {
      if (b.weight(m) > r.cap_) continue;
      auto [it, fresh] = r.terms_.emplace(m, c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
    return r;
  }

  friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) {
    return a + (-b);
  }

  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    a.require_same_family(b);
    long va = a.min_weight().value_or(clamp_inc(a.cap_));
    long vb = b.min_weight().value_or(clamp_inc(b.cap_));
    long cap = std::min(splus(a.cap_, vb), splus(b.cap_, va));
    GradedPoly r(a.fam_, cap);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = mul_mono(ma, mb);
        if (r.weight(m) > cap) continue;
        auto [it, fresh] = r.terms_.emplace(m, ca * cb);
        if (!fresh) {
          it->second += ca * cb;
          if (it->second == 0) r.terms_.erase(it);
        }
      }
    return r;
  }

  // Multiply by the variable with the given index.
  GradedPoly mul_var(long idx) const {
    GradedPoly r(fam_, splus(cap_, var_weight(fam_, idx)));
    for (const auto& [m, c] : terms_) {
      Monomial n = m;
      n.vars.insert(std::lower_bound(n.vars.begin(), n.vars.end(), idx), idx);
      r.terms_.emplace(n, c);
    }
    return r;
  }

  // Multiply by u^e (e may be negative).
  GradedPoly mul_u(long e) const {
    GradedPoly r(fam_, splus(cap_, e));
    for (const auto& [m, c] : terms_) {
      Monomial n = m;
      n.u_exp += e;
      r.terms_.emplace(n, c);
    }
    return r;
  }

  // Partial derivative in the variable with the given index.
  GradedPoly d_var(long idx) const {
    GradedPoly r(fam_, exact() ? kExactCap : cap_ - var_weight(fam_, idx));
    for (const auto& [m, c] : terms_) {
      auto it = std::find(m.vars.begin(), m.vars.end(), idx);
      if (it == m.vars.end()) continue;
      long mult = static_cast<long>(std::count(m.vars.begin(), m.vars.end(), idx));
      Monomial n = m;
      n.vars.erase(n.vars.begin() + (it - m.vars.begin()));
      r.add_term(n, c * Rational(mult));
    }
    return r;
  }

  GradedPoly d_u() const {
    GradedPoly r(fam_, exact() ? kExactCap : cap_ - 1);
    for (const auto& [m, c] : terms_) {
      if (m.u_exp == 0) continue;
      Monomial n = m;
      n.u_exp -= 1;
      r.add_term(n, c * Rational(m.u_exp));
    }
    return r;
  }

  // u d/du keeps every weight in place.
  GradedPoly theta_u() const {
    GradedPoly r(fam_, cap_);
    for (const auto& [m, c] : terms_) {
      if (m.u_exp == 0) continue;
      r.terms_.emplace(m, c * Rational(m.u_exp));
    }
    return r;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[cap " << (exact() ? std::string("exact") : std::to_string(cap_))
       << "]";
    for (const auto& [m, c] : terms_) {
      os << " + " << rat_str(c);
      if (m.u_exp != 0) os << "*u^" << m.u_exp;
      for (long idx : m.vars) os << "*" << var_letter(fam_) << idx;
    }
    if (terms_.empty()) os << " 0";
    return os.str();
  }

private:
  static long clamp_inc(long cap) {
    return cap >= kExactCap ? kExactCap : cap + 1;
  }
  static long splus(long cap, long v) {
    return cap >= kExactCap ? kExactCap : cap + v;
  }
  static Monomial mul_mono(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.u_exp = a.u_exp + b.u_exp;
    m.vars.reserve(a.vars.size() + b.vars.size());
    std::merge(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
               std::back_inserter(m.vars));
    return m;
  }
  void require_same_family(const GradedPoly& o) const {
    if (fam_ != o.fam_)
      throw std::invalid_argument("polynomial family mismatch");
  }

  VarFamily fam_;
  long cap_;
  std::map<Monomial, Rational> terms_;
};

// Compare everywhere both sides claim knowledge; refuse to certify beyond
// either horizon.
inline bool poly_equal_through(const GradedPoly& a, const GradedPoly& b,
                               long through) {
  if (through > a.cap() || through > b.cap())
    throw std::out_of_range("comparison exceeds a polynomial cap");
  for (const auto& [m, c] : a.terms())
    if (a.weight(m) <= through && b.coeff(m) != c) return false;
  for (const auto& [m, c] : b.terms())
    if (b.weight(m) <= through && a.coeff(m) != c) return false;
  return true;
}

inline bool poly_agrees(const GradedPoly& a, const GradedPoly& b) {
  return poly_equal_through(a, b, std::min(a.cap(), b.cap()));
}

// exp of a polynomial with strictly positive minimal weight, through the
// argument's (finite) cap.  Each power is cut back to that cap; products
// would otherwise keep widening their own window and the loop would never
// run out of terms.
inline GradedPoly exp_poly(const GradedPoly& x) {
  if (x.exact())
    throw std::invalid_argument("exp needs a finite cap; truncate first");
  auto v = x.min_weight();
  if (v && *v <= 0)
    throw std::domain_error("exp needs strictly positive weights");
  GradedPoly acc = GradedPoly::constant(x.family(), Rational(1), x.cap());
  GradedPoly term = acc;
  long j = 0;
  while (!term.is_zero() || j == 0) {
    ++j;
    term = (term * x).scale(rat(1, j)).truncated(x.cap());
    if (term.is_zero()) break;
    acc = acc + term;
  }
  return acc;
}

// log(1 + y) where the argument is 1 + y with y of strictly positive weight.
inline GradedPoly log_poly(const GradedPoly& x) {
  if (x.exact())
    throw std::invalid_argument("log needs a finite cap; truncate first");
  if (x.constant_term() != 1)
    throw std::domain_error("log needs constant term 1");
  GradedPoly y = x - GradedPoly::constant(x.family(), Rational(1), x.cap());
  auto v = y.min_weight();
  if (v && *v <= 0)
    throw std::domain_error("log needs strictly positive weights beyond 1");
  GradedPoly acc = GradedPoly::zero(x.family(), x.cap());
  GradedPoly pw = GradedPoly::constant(x.family(), Rational(1), x.cap());
  long j = 0;
  while (true) {
    ++j;
    pw = (pw * y).truncated(x.cap());
    if (pw.is_zero()) break;
    acc = acc + pw.scale(rat(j % 2 == 1 ? 1 : -1, j));
  }
  return acc;
}

}  // namespace hodgevir

#endif  // HODGEVIR_QRING_HPP

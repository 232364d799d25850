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

#ifndef HODGEVIR_DIFFOP_HPP
#define HODGEVIR_DIFFOP_HPP

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hodgevir/named_series.hpp"
#include "hodgevir/numbers.hpp"
#include "hodgevir/qring.hpp"

namespace hodgevir {

// One normally ordered summand
//
//   coeff * u^{u_exp} * (prod vars) * (prod d/dx_{dvars}) * (d/du)^{du}.
//
// Derivatives act on the state first, multiplications afterwards; the two
// derivative kinds commute, so their relative order is immaterial.
struct OpTerm {
  Rational coeff;
  long u_exp = 0;
  std::vector<long> vars;
  std::vector<long> dvars;
  int du = 0;
};

// A finite sum of OpTerms acting on GradedPoly states.  There is no symbolic
// composition here on purpose: products, commutators and conjugations are
// always evaluated by applying operators to states, which keeps every cap
// honest.  Builders for infinite families take a max_idx cutoff and are exact
// on states whose variable indices never leave that range, including every
// intermediate state of the computation.
class DiffOperator {
 public:
  explicit DiffOperator(VarFamily fam) : fam_(fam) {}

  VarFamily family() const { return fam_; }
  const std::vector<OpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  DiffOperator& add_term(const Rational& c, long u_exp, std::vector<long> vars,
                         std::vector<long> dvars, int du = 0) {
    if (c == 0) return *this;
    long lowest = fam_ == VarFamily::q ? 1 : 0;
    for (long v : vars)
      if (v < lowest) throw std::invalid_argument("variable index out of range");
    for (long v : dvars)
      if (v < lowest) throw std::invalid_argument("derivative index out of range");
    OpTerm t;
    t.coeff = c;
    t.u_exp = u_exp;
    t.vars = std::move(vars);
    t.dvars = std::move(dvars);
    t.du = du;
    std::sort(t.vars.begin(), t.vars.end());
    std::sort(t.dvars.begin(), t.dvars.end());
    terms_.push_back(std::move(t));
    return *this;
  }

  DiffOperator scale(const Rational& a) const {
    DiffOperator r = *this;
    if (a == 0) {
      r.terms_.clear();
      return r;
    }
    for (OpTerm& t : r.terms_) t.coeff = t.coeff * a;
    return r;
  }

  // Multiplies the whole operator by u^e.
  DiffOperator shifted_u(long e) const {
    DiffOperator r = *this;
    for (OpTerm& t : r.terms_) t.u_exp += e;
    return r;
  }

  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
    if (a.fam_ != b.fam_)
      throw std::invalid_argument("operators act on different families");
    DiffOperator r = a;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    return r;
  }

  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) {
    return a + b.scale(Rational(-1));
  }

  // Every term image is accumulated, zero or not, so the result cap reflects
  // what the state genuinely supports about each summand.
  GradedPoly apply(const GradedPoly& p) const {
    if (p.family() != fam_)
      throw std::invalid_argument("state belongs to a different family");
    GradedPoly acc = GradedPoly::zero(fam_);
    for (const OpTerm& t : terms_) {
      GradedPoly y = p;
      for (long k : t.dvars) y = y.d_var(k);
      for (int r = 0; r < t.du; ++r) y = y.d_u();
      for (long k : t.vars) y = y.mul_var(k);
      if (t.u_exp != 0) y = y.mul_u(t.u_exp);
      acc = acc + y.scale(t.coeff);
    }
    return acc;
  }

  // e^{-F} (this) e^{F} collapsed to a multiplication symbol.  Works for
  // total derivative order at most two, which covers every operator in this
  // library; the second order rule is D1 D2 F + (D1 F)(D2 F).
  GradedPoly cofactor(const GradedPoly& F) const {
    if (F.family() != fam_)
      throw std::invalid_argument("state belongs to a different family");
    auto der = [](const GradedPoly& x, long which) {
      return which < 0 ? x.d_u() : x.d_var(which);
    };
    GradedPoly acc = GradedPoly::zero(fam_);
    for (const OpTerm& t : terms_) {
      std::vector<long> ds;
      for (int r = 0; r < t.du; ++r) ds.push_back(-1);
      ds.insert(ds.end(), t.dvars.begin(), t.dvars.end());
      GradedPoly y = GradedPoly::zero(fam_);
      switch (ds.size()) {
        case 0:
          y = GradedPoly::constant(fam_, Rational(1));
          break;
        case 1:
          y = der(F, ds[0]);
          break;
        case 2:
          y = der(der(F, ds[0]), ds[1]) + der(F, ds[0]) * der(F, ds[1]);
          break;
        default:
          throw std::invalid_argument("cofactor needs derivative order <= 2");
      }
      for (long k : t.vars) y = y.mul_var(k);
      if (t.u_exp != 0) y = y.mul_u(t.u_exp);
      acc = acc + y.scale(t.coeff);
    }
    return acc;
  }

 private:
  VarFamily fam_;
  std::vector<OpTerm> terms_;
};

// Drops every monomial whose u exponent exceeds u_max.  Sound as a flow
// truncation only for generators that never lower the u degree.
inline GradedPoly u_truncate(const GradedPoly& p, long u_max) {
  GradedPoly r = GradedPoly::zero(p.family(), p.cap());
  for (const auto& [m, c] : p.terms())
    if (m.u_exp <= u_max) r.add_term(m, c);
  return r;
}

struct FlowOptions {
  // When nonnegative, u_truncate after every application; the generator must
  // raise u degree strictly for this to terminate the series.
  long u_max = -1;
  int max_iter = 512;
};

// e^{op} applied to a state, summed until the next Taylor term vanishes.
// Wrong answers are impossible, non-termination is: a generator that neither
// nilpotents out nor climbs in u past u_max hits max_iter and throws.
inline GradedPoly exp_apply(const DiffOperator& op, const GradedPoly& p,
                            FlowOptions opt = {}) {
  GradedPoly acc = p;
  GradedPoly term = p;
  for (int j = 1;; ++j) {
    if (j > opt.max_iter)
      throw std::logic_error("exp_apply: generator is not nilpotent here");
    term = op.apply(term).scale(rat(1, j));
    if (opt.u_max >= 0) term = u_truncate(term, opt.u_max);
    if (term.is_zero()) break;
    acc = acc + term;
  }
  return acc;
}

// e^{A} B e^{-A} evaluated on a state through the flows.
inline GradedPoly conjugate_apply(const DiffOperator& A, const DiffOperator& B,
                                  const GradedPoly& p, FlowOptions opt = {}) {
  return exp_apply(A, B.apply(exp_apply(A.scale(Rational(-1)), p, opt)), opt);
}

// [A, B] evaluated on a state.
inline GradedPoly commutator_apply(const DiffOperator& A,
                                   const DiffOperator& B,
                                   const GradedPoly& p) {
  return A.apply(B.apply(p)) - B.apply(A.apply(p));
}

// ----- the q side ----------------------------------------------------------

// L_m = sum_{k>0, k+m>0} (k+m) q_k d_{k+m}
//     + 1/2 sum_{a+b=m} ab d_a d_b + 1/2 sum_{i+j=-m} q_i q_j.
inline DiffOperator op_L(long m, long max_idx) {
  DiffOperator L(VarFamily::q);
  for (long k = std::max(1L, 1 - m); k + m <= max_idx; ++k)
    L.add_term(rat(k + m), 0, {k}, {k + m});
  for (long a = 1; a <= m - 1; ++a) {
    long b = m - a;
    if (a <= max_idx && b <= max_idx) L.add_term(rat(a * b, 2), 0, {}, {a, b});
  }
  for (long i = 1; i <= -m - 1; ++i) L.add_term(rat(1, 2), 0, {i, -m - i}, {});
  return L;
}

// Cut-and-join family, lowering side k <= 0:
// M_k = 1/2 sum (i+j+k) q_i q_j d_{i+j+k} + 1/2 sum ij q_{i+j-k} d_i d_j
//     + 1/6 sum_{i+j+l=-k} q_i q_j q_l.
inline DiffOperator op_M(long k, long max_idx) {
  if (k > 0) throw std::invalid_argument("op_M covers the k <= 0 half");
  DiffOperator M(VarFamily::q);
  // Only the derivative index is capped; q multipliers run as far as a state
  // within the cap can feed them.
  for (long i = 1; i + 1 + k <= max_idx; ++i)
    for (long j = std::max(1L, 1 - i - k); i + j + k <= max_idx; ++j)
      M.add_term(rat(i + j + k, 2), 0, {i, j}, {i + j + k});
  for (long i = 1; i <= max_idx; ++i)
    for (long j = 1; j <= max_idx; ++j)
      M.add_term(rat(i * j, 2), 0, {i + j - k}, {i, j});
  for (long i = 1; i <= -k - 2; ++i)
    for (long j = 1; i + j <= -k - 1; ++j)
      M.add_term(rat(1, 6), 0, {i, j, -k - i - j}, {});
  return M;
}

// alpha_n: q_{-n} for n < 0, zero for n = 0, n d_n for n > 0.
inline DiffOperator op_alpha(long n) {
  DiffOperator a(VarFamily::q);
  if (n < 0) a.add_term(rat(1), 0, {-n}, {});
  if (n > 0) a.add_term(rat(n), 0, {}, {n});
  return a;
}

// Kontsevich-Witten Virasoro in q: L_{2m} - (2m+3) d_{2m+3} + 1/8 delta_{m,0}.
inline DiffOperator op_V_kw(long m, long max_idx) {
  if (m < -1) throw std::invalid_argument("op_V_kw needs m >= -1");
  DiffOperator V = op_L(2 * m, max_idx);
  V.add_term(rat(-(2 * m + 3)), 0, {}, {2 * m + 3});
  if (m == 0) V.add_term(rat(1, 8), 0, {}, {});
  return V;
}

// E^{(m)} = sum_j [z^j](eta^{2m}) j u^{j-2m} d_{q_j}; E^{(0)} vanishes.
inline DiffOperator op_E(long m, long max_idx) {
  if (m < 0) throw std::invalid_argument("op_E needs m >= 0");
  DiffOperator E(VarFamily::q);
  if (m == 0) return E;
  TruncatedSeries pw = eta_sq_series(max_idx);
  for (long r = 1; r < m; ++r) pw = pw * eta_sq_series(max_idx);
  for (long j = 2 * m; j <= max_idx; ++j) {
    Rational c = pw.coeff(j);
    if (c != 0) E.add_term(c * rat(j), j - 2 * m, {}, {j});
  }
  return E;
}

// Hodge Virasoro in q:
// V_m = sum_i nu_i^{(m)} u^{i-2m} L_i + sum_j gamma_j^{(m)} j u^{j-2m-3} d_j
//     - u^2/24 delta_{m,-1} + 1/8 delta_{m,0}.
inline DiffOperator op_V_hodge(long m, long max_idx) {
  if (m < -1) throw std::invalid_argument("op_V_hodge needs m >= -1");
  DiffOperator V(VarFamily::q);
  TruncatedSeries nu = nu_series(m, max_idx);
  for (long i = 2 * m; i <= max_idx; ++i) {
    Rational c = nu.coeff(i);
    if (c != 0) V = V + op_L(i, max_idx).scale(c).shifted_u(i - 2 * m);
  }
  TruncatedSeries ga = gamma_series(m, max_idx);
  for (long j = std::max(2 * m + 3, 1L); j <= max_idx; ++j) {
    Rational c = ga.coeff(j);
    if (c != 0) V.add_term(c * rat(j), j - 2 * m - 3, {}, {j});
  }
  if (m == -1) V.add_term(rat(-1, 24), 2, {}, {});
  if (m == 0) V.add_term(rat(1, 8), 0, {}, {});
  return V;
}

// The Euler-type operator fixing the u grading of the Hodge potential:
// L_0 + u d_u - 3 sum_k (-1)^k binom(k+2,k) u^k d_{k+3} + 1/8.
inline DiffOperator op_euler_hodge(long max_idx) {
  DiffOperator D = op_L(0, max_idx);
  D.add_term(rat(1), 1, {}, {}, 1);
  for (long k = 0; k + 3 <= max_idx; ++k) {
    long binom = (k + 1) * (k + 2) / 2;
    D.add_term(rat(k % 2 == 0 ? -3 : 3) * rat(binom), k, {}, {k + 3});
  }
  D.add_term(rat(1, 8), 0, {}, {});
  return D;
}

// U = sum_{m>=1} a_m u^m L_m with the positive flow coefficients.
inline DiffOperator op_U(long max_idx) {
  std::vector<Rational> a = a_flow_pos(static_cast<std::size_t>(max_idx));
  DiffOperator U(VarFamily::q);
  for (long m = 1; m <= max_idx; ++m)
    if (a[static_cast<std::size_t>(m)] != 0)
      U = U + op_L(m, max_idx).scale(a[static_cast<std::size_t>(m)]).shifted_u(m);
  return U;
}

// X = sum_{m>=1} a_m u^m X_m keeps only the first order half of U.
inline DiffOperator op_X(long max_idx) {
  std::vector<Rational> a = a_flow_pos(static_cast<std::size_t>(max_idx));
  DiffOperator X(VarFamily::q);
  for (long m = 1; m <= max_idx; ++m) {
    const Rational& am = a[static_cast<std::size_t>(m)];
    if (am == 0) continue;
    for (long k = 1; k + m <= max_idx; ++k)
      X.add_term(am * rat(k + m), m, {k}, {k + m});
  }
  return X;
}

// X_{-m} = sum_i i q_{i+m} d_i, the raising shift used by the Hurwitz bridge.
inline DiffOperator op_X_down(long m, long max_idx) {
  DiffOperator X(VarFamily::q);
  for (long i = 1; i <= max_idx; ++i) X.add_term(rat(i), 0, {i + m}, {i});
  return X;
}

// P = -sum_{k>=1} b_{2k+1} u^{2k} d_{2k+3}.
inline DiffOperator op_P(long max_idx) {
  std::vector<Rational> b = b_coeffs(static_cast<std::size_t>(max_idx));
  DiffOperator P(VarFamily::q);
  for (long k = 1; 2 * k + 3 <= max_idx; ++k)
    P.add_term(-b[static_cast<std::size_t>(2 * k + 1)], 2 * k, {}, {2 * k + 3});
  return P;
}

// T = sum_{i>=2} (-1)^i b_i u^{i-1} d_{i+2}, the full-parity companion of P.
inline DiffOperator op_T(long max_idx) {
  std::vector<Rational> b = b_coeffs(static_cast<std::size_t>(max_idx));
  DiffOperator T(VarFamily::q);
  for (long i = 2; i + 2 <= max_idx; ++i) {
    Rational c = b[static_cast<std::size_t>(i)];
    T.add_term(i % 2 == 0 ? c : -c, i - 1, {}, {i + 2});
  }
  return T;
}

// P~ = sum_{i>=3} [z^i]( -z^3/(1+z)^3 + z^2/(1+z)^2 eta ) u^{i-3} d_{q_i}.
inline DiffOperator op_P_tilde(long max_idx) {
  long n = max_idx + 4;
  TruncatedSeries w = one_plus_z("z", n).reciprocal().shift_exp(1);
  TruncatedSeries s = w.pow(2) * eta_series(n) - w.pow(3);
  DiffOperator P(VarFamily::q);
  for (long i = 3; i <= max_idx; ++i) {
    Rational c = s.coeff(i);
    if (c != 0) P.add_term(c, i - 3, {}, {i});
  }
  return P;
}

// Mtilde = M_0 + 4u^{-1}M_{-1} + 6u^{-2}M_{-2} + 4u^{-3}M_{-3} + u^{-4}M_{-4}
//        - (4/3)u^{-3}L_0 - u^{-4}L_{-1}
//        + (1/4)u^{-2}q_2 + (1/3)u^{-3}q_3 + (1/8)u^{-4}q_4.
inline DiffOperator op_M_tilde(long max_idx) {
  DiffOperator M = op_M(0, max_idx);
  M = M + op_M(-1, max_idx).scale(rat(4)).shifted_u(-1);
  M = M + op_M(-2, max_idx).scale(rat(6)).shifted_u(-2);
  M = M + op_M(-3, max_idx).scale(rat(4)).shifted_u(-3);
  M = M + op_M(-4, max_idx).shifted_u(-4);
  M = M + op_L(0, max_idx).scale(rat(-4, 3)).shifted_u(-3);
  M = M + op_L(-1, max_idx).scale(rat(-1)).shifted_u(-4);
  M.add_term(rat(1, 4), -2, {2}, {});
  M.add_term(rat(1, 3), -3, {3}, {});
  M.add_term(rat(1, 8), -4, {4}, {});
  return M;
}

// ----- the t side ----------------------------------------------------------

// KdV Virasoro for the descendent potential, m >= -1:
// Lhat_m = sum_k (2k+1)!!/(2k-2m-1)!! t_{k-m} d_{t_k}
//        + 1/2 sum_{k+l=m-1} (2k+1)!!(2l+1)!! d_{t_k} d_{t_l}
//        - (2m+3)!! d_{t_{m+1}} + t_0^2/2 delta_{m,-1} + 1/8 delta_{m,0}.
inline DiffOperator op_L_hat(long m, long max_idx) {
  if (m < -1) throw std::invalid_argument("op_L_hat needs m >= -1");
  DiffOperator L(VarFamily::t);
  for (long k = std::max(m, 0L); k <= max_idx; ++k)
    L.add_term(Numbers::double_factorial_odd(2 * k + 1) /
                   Numbers::double_factorial_odd(2 * k - 2 * m - 1),
               0, {k - m}, {k});
  for (long a = 0; a <= m - 1; ++a) {
    long b = m - 1 - a;
    L.add_term(Numbers::double_factorial_odd(2 * a + 1) *
                   Numbers::double_factorial_odd(2 * b + 1) * rat(1, 2),
               0, {}, {a, b});
  }
  L.add_term(-Numbers::double_factorial_odd(2 * m + 3), 0, {}, {m + 1});
  if (m == -1) L.add_term(rat(1, 2), 0, {0, 0}, {});
  if (m == 0) L.add_term(rat(1, 8), 0, {}, {});
  return L;
}

// The Bernoulli bridge between the two descendent potentials:
// W = -sum_{k>=1} B_{2k} u^{2(2k-1)} / (2k(2k-1)) *
//     ( d_{t_{2k}} - sum_i t_i d_{t_{i+2k-1}}
//       + 1/2 sum_{i+j=2k-2} (-1)^i d_{t_i} d_{t_j} ).
// Every summand raises u degree by at least two, so flows terminate under a
// u_max truncation.
inline DiffOperator op_W(long max_idx) {
  Numbers numbers;
  DiffOperator W(VarFamily::t);
  for (long k = 1; 2 * k - 2 <= 2 * max_idx; ++k) {
    Rational c = -numbers.bernoulli(static_cast<std::size_t>(2 * k)) /
                 rat(2 * k * (2 * k - 1));
    long ue = 2 * (2 * k - 1);
    if (2 * k <= max_idx) W.add_term(c, ue, {}, {2 * k});
    for (long i = 0; i + 2 * k - 1 <= max_idx; ++i)
      W.add_term(-c, ue, {i}, {i + 2 * k - 1});
    for (long i = 0; i <= 2 * k - 2; ++i) {
      long j = 2 * k - 2 - i;
      if (i <= max_idx && j <= max_idx)
        W.add_term(c * rat(i % 2 == 0 ? 1 : -1, 2), ue, {}, {i, j});
    }
  }
  return W;
}

// Hodge Virasoro in the t variables, the closed form with the c-constants.
// The u^0 slice is exactly op_L_hat(m); every correction carries a positive
// even power of u:
// Vhat_m = sum_{k,i} c_i^{(k,m)} u^{2i} t_{k-m-i} d_{t_k}
//        + 1/2 sum_{k,l} (-1)^{l+1} c_{k+l+1-m}^{(k,m)} u^{2(k+l+1-m)} d_{t_k} d_{t_l}
//        - sum_k c_{k-m-1}^{(k,m)} u^{2(k-m-1)} d_{t_k}
//        + t_0^2/2 delta_{m,-1} - u^2/24 delta_{m,-1} + 1/8 delta_{m,0}.
inline DiffOperator op_V_hat(long m, long max_idx) {
  if (m < -1) throw std::invalid_argument("op_V_hat needs m >= -1");
  std::vector<Rational> C =
      C_coeffs(static_cast<std::size_t>(2 * max_idx - m + 2));
  DiffOperator V(VarFamily::t);
  for (long k = std::max(m, 0L); k <= max_idx; ++k)
    for (long i = 0; i <= k - m; ++i)
      V.add_term(c_value(i, k, m, C), 2 * i, {k - m - i}, {k});
  for (long k = 0; k <= max_idx; ++k)
    for (long l = 0; l <= max_idx; ++l) {
      long n = k + l + 1 - m;
      if (n < 0) continue;
      V.add_term(c_value(n, k, m, C) * rat(l % 2 == 1 ? 1 : -1, 2), 2 * n, {},
                 {k, l});
    }
  for (long k = m + 1; k <= max_idx; ++k)
    V.add_term(-c_value(k - m - 1, k, m, C), 2 * (k - m - 1), {}, {k});
  if (m == -1) {
    V.add_term(rat(1, 2), 0, {0, 0}, {});
    V.add_term(rat(-1, 24), 2, {}, {});
  }
  if (m == 0) V.add_term(rat(1, 8), 0, {}, {});
  return V;
}

}  // namespace hodgevir

#endif  // HODGEVIR_DIFFOP_HPP

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

#ifndef HODGEVIR_TABLES_HPP
#define HODGEVIR_TABLES_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hodgevir/brackets.hpp"
#include "hodgevir/diffop.hpp"
#include "hodgevir/genfun.hpp"
#include "hodgevir/named_series.hpp"
#include "hodgevir/numbers.hpp"
#include "hodgevir/qring.hpp"

namespace hodgevir {

inline bool is_stable(long g, long n) {
  return g >= 0 && n >= 1 && 2 * g - 2 + n > 0;
}

template <typename Fn>
inline void multiset_rec(long len, long total, long min_val,
                         std::vector<long>& cur, Fn&& fn) {
  if (len == 0) {
    if (total == 0) fn(static_cast<const std::vector<long>&>(cur));
    return;
  }
  for (long v = min_val; v * len <= total; ++v) {
    cur.push_back(v);
    multiset_rec(len - 1, total - v, v, cur, fn);
    cur.pop_back();
  }
}

// Weakly increasing index lists of fixed length and total, the canonical
// representatives of tau multisets.
template <typename Fn>
inline void for_each_multiset(long len, long total, Fn&& fn) {
  if (len < 0 || total < 0) return;
  std::vector<long> cur;
  cur.reserve(static_cast<std::size_t>(len));
  multiset_rec(len, total, 0, cur, fn);
}

template <typename Fn>
inline void composition_rec(long pos, long len, long total,
                            std::vector<long>& cur, Fn&& fn) {
  if (pos == len - 1) {
    cur[static_cast<std::size_t>(pos)] = total;
    fn(static_cast<const std::vector<long>&>(cur));
    return;
  }
  for (long v = 0; v <= total; ++v) {
    cur[static_cast<std::size_t>(pos)] = v;
    composition_rec(pos + 1, len, total - v, cur, fn);
  }
}

// All ordered exponent vectors of a fixed length and total.
template <typename Fn>
inline void for_each_composition(long len, long total, Fn&& fn) {
  if (len < 1 || total < 0) return;
  std::vector<long> cur(static_cast<std::size_t>(len), 0);
  composition_rec(0, len, total, cur, fn);
}

inline Integer int_pow(long base, long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

// ----- the tau table -------------------------------------------------------

// Intersection numbers of the psi classes from the KdV Virasoro constraints
// alone, solved level by level in the weight 3(2g-2+n).  The only term of
// Lhat_m that raises the weight is -(2m+3)!! d_{t_{m+1}}, so annihilation of
// exp(F) determines each new bracket from the cofactor of the lower part:
// removing one copy of the largest index e* = m+1 keeps m >= -1, and the
// t_0^2/2 summand of Lhat_{-1} forces <tau_0^3> = 1 with no seed at all.
inline BracketTable witten_table(long weight_cap) {
  if (weight_cap < 3)
    throw std::invalid_argument("witten_table needs weight_cap >= 3");
  BracketTable tbl(Provenance::virasoro);
  for (long s = 1; 3 * s <= weight_cap; ++s) {
    GradedPoly F =
        build_gen_function(tbl, VarFamily::t, GradedPoly::kExactCap);
    long max_idx = (3 * s) / 2 + 2;
    std::map<long, GradedPoly> cof;
    for (long g = 0; 2 * g <= s + 1; ++g) {
      long n = s + 2 - 2 * g;
      for_each_multiset(n, g + s - 1, [&](const std::vector<long>& ds) {
        long m = ds.back() - 1;
        auto it = cof.find(m);
        if (it == cof.end())
          it = cof.emplace(m, op_L_hat(m, max_idx).cofactor(F)).first;
        std::vector<long> rest(ds.begin(), ds.end() - 1);
        long mult =
            static_cast<long>(std::count(ds.begin(), ds.end(), ds.back()));
        Rational b = it->second.coeff(Monomial(0, rest)) *
                     Rational(aut_factor(ds)) /
                     (Numbers::double_factorial_odd(2 * m + 3) * Rational(mult));
        tbl.set(BracketKey(g, 0, ds), b);
      });
    }
  }
  return tbl;
}

// ----- the Hodge table through W -------------------------------------------

// exp(F_H(u,t)) = e^W exp(F_K(t)).  Each W application adds u^2 or more and
// its only weight lowering summands lose exactly 3, so reading the u^{2j}
// slice at weight w is exact once F_K is known through w + 3j.  Brackets come
// out of log with the (-1)^j convention of the generating function.
inline BracketTable hodge_table_via_W(long weight_cap) {
  if (weight_cap < 3)
    throw std::invalid_argument("hodge_table_via_W needs weight_cap >= 3");
  long s_max = weight_cap / 3;
  long g_max = (s_max + 1) / 2;
  long inner_cap = weight_cap + 3 * g_max;
  BracketTable kdv = witten_table(inner_cap);
  GradedPoly eF = exp_poly(build_gen_function(kdv, VarFamily::t, inner_cap));
  FlowOptions opt;
  opt.u_max = 2 * g_max;
  GradedPoly FH =
      log_poly(exp_apply(op_W((inner_cap + 1) / 2), eF, opt));
  BracketTable tbl(Provenance::mumford_w);
  for (long s = 1; s <= s_max; ++s)
    for (long g = 0; 2 * g <= s + 1; ++g) {
      long n = s + 2 - 2 * g;
      for (long j = 0; j <= g; ++j)
        for_each_multiset(n, g + s - 1 - j, [&](const std::vector<long>& ds) {
          Rational v = FH.coeff(Monomial(2 * j, ds)) * Rational(aut_factor(ds));
          if (j % 2) v = -v;
          tbl.set(BracketKey(g, j, ds), v);
        });
    }
  return tbl;
}

// ----- symmetric polynomials -----------------------------------------------

// Exact multivariate polynomials over the rationals, keyed by exponent
// vectors of a fixed arity.  Small and dense free operations are all the
// recursion needs.
class SymPoly {
public:
  explicit SymPoly(long nvars) : nvars_(nvars) {
    if (nvars < 0) throw std::invalid_argument("SymPoly needs nvars >= 0");
  }

  long nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<long>, Rational>& terms() const { return terms_; }

  Rational coeff(const std::vector<long>& e) const {
    check_key(e);
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_coeff(const std::vector<long>& e, const Rational& c) {
    check_key(e);
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      Rational v = c;
      v.canonicalize();
      terms_.emplace(e, v);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SymPoly operator+(const SymPoly& o) const {
    check_arity(o);
    SymPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_coeff(e, c);
    return r;
  }

  SymPoly operator-(const SymPoly& o) const {
    check_arity(o);
    SymPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_coeff(e, -c);
    return r;
  }

  SymPoly operator*(const SymPoly& o) const {
    check_arity(o);
    SymPoly r(nvars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        std::vector<long> e = e1;
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += e2[k];
        r.add_coeff(e, c1 * c2);
      }
    return r;
  }

  SymPoly scale(const Rational& c) const {
    SymPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.add_coeff(e, v * c);
    return r;
  }

  SymPoly mul_var(long i, long p) const {
    check_var(i);
    SymPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      std::vector<long> e2 = e;
      e2[static_cast<std::size_t>(i)] += p;
      r.add_coeff(e2, c);
    }
    return r;
  }

  SymPoly derivative(long i) const {
    check_var(i);
    SymPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      long p = e[static_cast<std::size_t>(i)];
      if (p == 0) continue;
      std::vector<long> e2 = e;
      --e2[static_cast<std::size_t>(i)];
      r.add_coeff(e2, c * Rational(p));
    }
    return r;
  }

  // D_i = (1+z_i)^2 z_i d/dz_i, the transported derivative of the recursion.
  SymPoly apply_D(long i) const {
    SymPoly d = derivative(i);
    return d.mul_var(i, 1) + d.mul_var(i, 2).scale(Rational(2)) +
           d.mul_var(i, 3);
  }

  // Places variable k on slot slots[k] of a wider ring.
  SymPoly embed(long nvars, const std::vector<long>& slots) const {
    if (static_cast<long>(slots.size()) != nvars_)
      throw std::invalid_argument("embed needs one slot per variable");
    SymPoly r(nvars);
    for (long s : slots)
      if (s < 0 || s >= nvars)
        throw std::invalid_argument("embed slot out of range");
    for (const auto& [e, c] : terms_) {
      std::vector<long> e2(static_cast<std::size_t>(nvars), 0);
      for (std::size_t k = 0; k < e.size(); ++k) {
        std::size_t s = static_cast<std::size_t>(slots[k]);
        if (e2[s] != 0) throw std::invalid_argument("embed slots overlap");
        e2[s] = e[k];
      }
      r.add_coeff(e2, c);
    }
    return r;
  }

  // Identifies z_b with z_a (a < b) and drops slot b; the diagonal
  // restriction used by the genus lowering term.
  SymPoly merge_vars(long a, long b) const {
    check_var(a);
    check_var(b);
    if (a >= b) throw std::invalid_argument("merge_vars needs a < b");
    SymPoly r(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
      std::vector<long> e2 = e;
      e2[static_cast<std::size_t>(a)] += e2[static_cast<std::size_t>(b)];
      e2.erase(e2.begin() + b);
      r.add_coeff(e2, c);
    }
    return r;
  }

  bool is_symmetric() const {
    for (const auto& [e, c] : terms_) {
      std::vector<long> p = e;
      std::sort(p.begin(), p.end());
      do {
        if (!(coeff(p) == c)) return false;
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return true;
  }

  long total_degree() const {
    long d = 0;
    for (const auto& [e, c] : terms_) {
      long s = 0;
      for (long x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

private:
  void check_key(const std::vector<long>& e) const {
    if (static_cast<long>(e.size()) != nvars_)
      throw std::invalid_argument("SymPoly exponent arity mismatch");
  }
  void check_var(long i) const {
    if (i < 0 || i >= nvars_)
      throw std::invalid_argument("SymPoly variable index out of range");
  }
  void check_arity(const SymPoly& o) const {
    if (o.nvars_ != nvars_)
      throw std::invalid_argument("SymPoly arity mismatch");
  }

  long nvars_;
  std::map<std::vector<long>, Rational> terms_;
};

// Synthetic division by (z_i - z_j), descending in z_i.  The remainder must
// vanish; anything else signals a broken transported numerator.
inline SymPoly divide_exact(const SymPoly& P, long i, long j) {
  long d = 0;
  for (const auto& [e, c] : P.terms())
    d = std::max(d, e[static_cast<std::size_t>(i)]);
  SymPoly Q(P.nvars());
  SymPoly carry(P.nvars());
  for (long e = d; e >= 1; --e) {
    SymPoly qe = carry.mul_var(j, 1);
    for (const auto& [ex, c] : P.terms())
      if (ex[static_cast<std::size_t>(i)] == e) {
        std::vector<long> e0 = ex;
        e0[static_cast<std::size_t>(i)] = 0;
        qe.add_coeff(e0, c);
      }
    for (const auto& [ex, c] : qe.terms()) {
      std::vector<long> e1 = ex;
      e1[static_cast<std::size_t>(i)] = e - 1;
      Q.add_coeff(e1, c);
    }
    carry = qe;
  }
  SymPoly rem = carry.mul_var(j, 1);
  for (const auto& [ex, c] : P.terms())
    if (ex[static_cast<std::size_t>(i)] == 0) rem.add_coeff(ex, c);
  if (!rem.is_zero())
    throw std::runtime_error("nonzero remainder dividing by (z_i - z_j)");
  return Q;
}

// Coefficients of phi_n, indexed by the power of z; degree 2n+1 and leading
// coefficient (2n-1)!!.
inline std::vector<Rational> phi_coeffs(long n) {
  TruncatedSeries p = phi_poly(n);
  std::vector<Rational> c(static_cast<std::size_t>(2 * n + 2));
  for (long e = 0; e <= 2 * n + 1; ++e)
    c[static_cast<std::size_t>(e)] = p.coeff(e);
  return c;
}

// scale times the sum over the distinct orderings of the phi multiset, one
// factor phi_{ds[k]} per slot.
inline SymPoly phi_orbit(long l, const std::vector<long>& ds,
                         const Rational& scale) {
  SymPoly out(l);
  if (scale == 0) return out;
  std::map<long, std::vector<Rational>> bank;
  for (long dd : ds)
    if (!bank.count(dd)) bank[dd] = phi_coeffs(dd);
  std::vector<long> perm = ds;
  std::sort(perm.begin(), perm.end());
  do {
    std::map<std::vector<long>, Rational> acc;
    acc[std::vector<long>(static_cast<std::size_t>(l), 0)] = scale;
    for (long k = 0; k < l; ++k) {
      std::map<std::vector<long>, Rational> next;
      const std::vector<Rational>& cs = bank[perm[static_cast<std::size_t>(k)]];
      for (const auto& [e, c] : acc)
        for (long x = 1; x < static_cast<long>(cs.size()); ++x) {
          if (cs[static_cast<std::size_t>(x)] == 0) continue;
          std::vector<long> e2 = e;
          e2[static_cast<std::size_t>(k)] = x;
          next[e2] += c * cs[static_cast<std::size_t>(x)];
        }
      acc = std::move(next);
    }
    for (const auto& [e, c] : acc) out.add_coeff(e, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Hhat_{g,l} as a polynomial: sum over j and tau multisets of
// (-1)^j <lambda_j tau_..> times the symmetrized phi product.  Missing
// brackets throw, so an incomplete table cannot fake a zero.
inline SymPoly build_H_polys(long g, long l, const BracketTable& tbl) {
  if (!is_stable(g, l))
    throw std::invalid_argument("build_H_polys needs a stable (g,l)");
  SymPoly H(l);
  long smax = 3 * g - 3 + l;
  for (long j = 0; j <= g; ++j) {
    if (smax - j < 0) continue;
    for_each_multiset(l, smax - j, [&](const std::vector<long>& ds) {
      Rational v = tbl.get(BracketKey(g, j, ds));
      if (j % 2) v = -v;
      if (!(v == 0)) H = H + phi_orbit(l, ds, v);
    });
  }
  return H;
}

// The left side operator (2g-2+l) + sum_i (1/(1+z_i)) D_i of the recursion;
// the fraction cancels to the polynomial z_i (1+z_i) d/dz_i.
inline SymPoly recursion_lhs(long g, long l, const SymPoly& H) {
  SymPoly acc = H.scale(Rational(2 * g - 2 + l));
  for (long i = 0; i < l; ++i) {
    SymPoly d = H.derivative(i);
    acc = acc + d.mul_var(i, 1) + d.mul_var(i, 2);
  }
  return acc;
}

// Inhomogeneous boundary of the recursion at the two unstable-adjacent
// seeds; zero everywhere else.
inline SymPoly recursion_boundary(long g, long l) {
  SymPoly E(l);
  if (g == 0 && l == 3) {
    E.add_coeff({1, 1, 1}, Rational(4));
    E.add_coeff({2, 1, 1}, Rational(1));
    E.add_coeff({1, 2, 1}, Rational(1));
    E.add_coeff({1, 1, 2}, Rational(1));
  } else if (g == 1 && l == 1) {
    E.add_coeff({2}, rat(1, 4));
    E.add_coeff({3}, rat(1, 3));
    E.add_coeff({4}, rat(1, 8));
  }
  return E;
}

// (1+z_i)^2 z_j D_i applied to Hhat_{g,l-1} living on the slots other
// than j.
inline SymPoly transport_piece(const SymPoly& H, long l, long i, long j) {
  std::vector<long> slots;
  for (long k = 0; k < l; ++k)
    if (k != j) slots.push_back(k);
  SymPoly x = H.embed(l, slots).apply_D(i);
  SymPoly y = x.mul_var(j, 1);
  return y + y.mul_var(i, 1).scale(Rational(2)) + y.mul_var(i, 2);
}

// The right side of the recursion: divided-difference transport, the
// diagonal genus lowering term, and the stable splittings.  The fetcher
// supplies Hhat_{g',l'} for strictly lower levels 2g'-2+l'.
template <typename Fetch>
inline SymPoly recursion_rhs(long g, long l, Fetch&& H_of) {
  SymPoly rhs(l);
  if (l >= 2 && is_stable(g, l - 1)) {
    const SymPoly Hm1 = H_of(g, l - 1);
    for (long i = 0; i < l; ++i)
      for (long j = i + 1; j < l; ++j) {
        SymPoly num = transport_piece(Hm1, l, i, j) -
                      transport_piece(Hm1, l, j, i);
        rhs = rhs + divide_exact(num, i, j);
      }
  }
  if (g >= 1 && is_stable(g - 1, l + 1)) {
    const SymPoly Hd = H_of(g - 1, l + 1);
    // The genus lowering term carries the same 1/2 as the splittings; the
    // (1,2) case pins it against the classical one loop brackets.
    SymPoly diag =
        Hd.apply_D(0).apply_D(1).merge_vars(0, 1).scale(rat(1, 2));
    for (long i = 0; i < l; ++i) {
      std::vector<long> slots(1, i);
      for (long k = 0; k < l; ++k)
        if (k != i) slots.push_back(k);
      rhs = rhs + diag.embed(l, slots);
    }
  }
  for (long i = 0; i < l; ++i) {
    std::vector<long> rest;
    for (long k = 0; k < l; ++k)
      if (k != i) rest.push_back(k);
    long r = static_cast<long>(rest.size());
    for (long mask = 0; mask < (1L << r); ++mask) {
      std::vector<long> J, K;
      for (long b = 0; b < r; ++b)
        ((mask >> b) & 1 ? J : K).push_back(rest[static_cast<std::size_t>(b)]);
      for (long g1 = 0; g1 <= g; ++g1) {
        long g2 = g - g1;
        if (2 * g1 - 1 + static_cast<long>(J.size()) <= 0) continue;
        if (2 * g2 - 1 + static_cast<long>(K.size()) <= 0) continue;
        std::vector<long> sa(1, i), sb(1, i);
        sa.insert(sa.end(), J.begin(), J.end());
        sb.insert(sb.end(), K.begin(), K.end());
        SymPoly Da = H_of(g1, static_cast<long>(J.size()) + 1)
                         .embed(l, sa)
                         .apply_D(i);
        SymPoly Db = H_of(g2, static_cast<long>(K.size()) + 1)
                         .embed(l, sb)
                         .apply_D(i);
        rhs = rhs + (Da * Db).scale(rat(1, 2));
      }
    }
  }
  return rhs;
}

// Residual of the recursion on the polynomials built from one table; zero
// means the table satisfies the topological recursion at (g,l).
inline SymPoly recursion_check(long g, long l, const BracketTable& tbl) {
  std::map<std::pair<long, long>, SymPoly> memo;
  std::function<const SymPoly&(long, long)> H_of =
      [&](long gg, long ll) -> const SymPoly& {
    auto key = std::make_pair(gg, ll);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, build_H_polys(gg, ll, tbl)).first;
    return it->second;
  };
  return recursion_lhs(g, l, H_of(g, l)) - recursion_rhs(g, l, H_of) -
         recursion_boundary(g, l);
}

// Triangular inversion of the left side operator: on the coefficient of
// z^e it reads (2g-2+l+|e|) h_e plus strictly lower monomials, and the
// diagonal is positive, so ascending in degree is exact.
inline SymPoly invert_recursion_lhs(long g, long l, const SymPoly& R) {
  long dmax = 3 * (2 * g - 2 + l);
  SymPoly H(l);
  for (long d = 0; d <= dmax; ++d)
    for_each_composition(l, d, [&](const std::vector<long>& e) {
      Rational v = R.coeff(e);
      for (long i = 0; i < l; ++i) {
        long p = e[static_cast<std::size_t>(i)];
        if (p >= 1) {
          std::vector<long> em = e;
          --em[static_cast<std::size_t>(i)];
          v -= Rational(p - 1) * H.coeff(em);
        }
      }
      v /= Rational(2 * g - 2 + l + d);
      H.add_coeff(e, v);
    });
  return H;
}

// Reads the brackets back out of Hhat_{g,l} by peeling phi products from the
// top total phi-degree down; the leading monomial of each multiset is the
// descending exponent vector with coefficient prod (2d-1)!!.  Every valid
// key is recorded, zeros included, and any component outside the Hodge
// range or the phi span throws.
inline void extract_brackets(long g, long l, const SymPoly& H,
                             BracketTable& tbl) {
  if (!H.is_symmetric())
    throw std::runtime_error("Hhat_{g,l} is not symmetric");
  SymPoly residual = H;
  long smax = 3 * g - 3 + l;
  for (long s = smax; s >= 0; --s) {
    long j = smax - s;
    for_each_multiset(l, s, [&](const std::vector<long>& ds) {
      std::vector<long> e(ds.rbegin(), ds.rend());
      for (long& x : e) x = 2 * x + 1;
      Rational lead(1);
      for (long dd : ds) lead *= Numbers::double_factorial_odd(2 * dd - 1);
      Rational b = residual.coeff(e) / lead;
      if (j <= g)
        tbl.set(BracketKey(g, j, ds), j % 2 ? -b : b);
      else if (!(b == 0))
        throw std::runtime_error(
            "Hhat_{g,l} has a phi component outside the Hodge range");
      if (!(b == 0)) residual = residual - phi_orbit(l, ds, b);
    });
  }
  if (!residual.is_zero())
    throw std::runtime_error("Hhat_{g,l} is not in the phi product span");
}

// Solves the recursion for every stable (g,l) in the box and extracts the
// brackets.  The boundary terms at (0,3) and (1,1) drive the whole tower,
// so there are no hardcoded seeds; each solved polynomial is checked back
// against the equation before use.
inline BracketTable hodge_table_via_recursion(long g_max, long l_max) {
  if (g_max < 0 || l_max < 1)
    throw std::invalid_argument("hodge_table_via_recursion needs a box");
  std::map<std::pair<long, long>, SymPoly> memo;
  std::function<const SymPoly&(long, long)> getH =
      [&](long g, long l) -> const SymPoly& {
    auto key = std::make_pair(g, l);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    SymPoly R = recursion_rhs(g, l, getH) + recursion_boundary(g, l);
    SymPoly H = invert_recursion_lhs(g, l, R);
    if (!(recursion_lhs(g, l, H) - R).is_zero())
      throw std::runtime_error("recursion solve failed to verify");
    return memo.emplace(key, std::move(H)).first->second;
  };
  BracketTable tbl(Provenance::recursion);
  for (long g = 0; g <= g_max; ++g)
    for (long l = 1; l <= l_max; ++l)
      if (is_stable(g, l)) extract_brackets(g, l, getH(g, l), tbl);
  return tbl;
}

// ----- the cut-and-join series ---------------------------------------------

// e^H = e^{beta M_0} e^{q_1} with beta carried on the u slot; H is the log,
// truncated to beta <= beta_order and weight <= weight_cap.
inline GradedPoly hurwitz_series(long beta_order, long weight_cap) {
  if (beta_order < 0 || weight_cap < 1)
    throw std::invalid_argument("hurwitz_series needs nonnegative orders");
  long cap = weight_cap + beta_order;
  DiffOperator M0 = op_M(0, cap);
  GradedPoly term = exp_poly(GradedPoly::var(VarFamily::q, 1, cap));
  GradedPoly acc = term;
  for (long r = 1; r <= beta_order; ++r) {
    term = M0.apply(term).mul_u(1).scale(rat(1, r));
    acc = acc + term;
  }
  // The log regenerates powers of beta beyond the ones summed into acc, and
  // those overshoot coefficients are garbage.  Cut at the requested order.
  return u_truncate(log_poly(acc), beta_order);
}

// The closed genus zero one and two point parts:
// H_{0,1} = sum_b b^{b-2}/b! beta^{b-1} q_b and
// H_{0,2} = 1/2 sum b_1^{b_1} b_2^{b_2} / ((b_1+b_2) b_1! b_2!)
//           beta^{b_1+b_2} q_{b_1} q_{b_2}.
inline GradedPoly hurwitz_h01(long beta_order, long weight_cap) {
  GradedPoly h = GradedPoly::zero(VarFamily::q, weight_cap + beta_order);
  for (long b = 1; b <= weight_cap && b - 1 <= beta_order; ++b) {
    Rational c =
        Rational(int_pow(b, b - 1)) /
        (Rational(b) * Rational(Numbers::factorial(static_cast<unsigned long>(b))));
    h.set_coeff(Monomial(b - 1, {b}), c);
  }
  return h;
}

inline GradedPoly hurwitz_h02(long beta_order, long weight_cap) {
  GradedPoly h = GradedPoly::zero(VarFamily::q, weight_cap + beta_order);
  for (long b1 = 1; 2 * b1 <= std::min(beta_order, weight_cap); ++b1)
    for (long b2 = b1; b1 + b2 <= std::min(beta_order, weight_cap); ++b2) {
      Rational c =
          Rational(int_pow(b1, b1) * int_pow(b2, b2)) /
          (Rational(b1 + b2) *
           Rational(Numbers::factorial(static_cast<unsigned long>(b1)) *
                    Numbers::factorial(static_cast<unsigned long>(b2))));
      if (b1 == b2) c /= 2;
      h.set_coeff(Monomial(b1 + b2, {b1, b2}), c);
    }
  return h;
}

}  // namespace hodgevir

#endif  // HODGEVIR_TABLES_HPP

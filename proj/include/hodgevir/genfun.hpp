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

#ifndef HODGEVIR_GENFUN_HPP
#define HODGEVIR_GENFUN_HPP

#include <stdexcept>

#include "hodgevir/brackets.hpp"
#include "hodgevir/named_series.hpp"
#include "hodgevir/qring.hpp"

namespace hodgevir {

// The linear q-polynomial substituted for t_n when passing to times
// variables: the coefficients of phi_n(z) spread over q_m with u soaking up
// the missing weight, so every term has weight 2n+1.
inline GradedPoly phi_tilde(long n) {
  if (n < 0) throw std::domain_error("phi_tilde needs n >= 0");
  TruncatedSeries phi = phi_poly(n);
  GradedPoly p = GradedPoly::zero(VarFamily::q);
  for (long m = 1; m <= 2 * n + 1; ++m) {
    Rational c = phi.coeff(m);
    if (c == 0) continue;
    p.set_coeff(Monomial(2 * n + 1 - m, {m}), c);
  }
  return p;
}

// The same polynomial grown from q_1 by n applications of
// L_{-2} + 2u L_{-1} + u^2 L_0 - q_1^2/2.  On linear states the quadratic
// multiplier inside L_{-2} cancels against the subtracted q_1^2/2 and the
// whole operator reduces to the shift rule q_k -> k(q_{k+2} + 2u q_{k+1}
// + u^2 q_k), which keeps the state linear.
inline GradedPoly phi_tilde_by_recursion(long n) {
  if (n < 0) throw std::domain_error("phi_tilde needs n >= 0");
  GradedPoly p = GradedPoly::var(VarFamily::q, 1);
  for (long step = 0; step < n; ++step) {
    GradedPoly next = GradedPoly::zero(VarFamily::q);
    for (const auto& [m, c] : p.terms()) {
      if (m.vars.size() != 1)
        throw std::logic_error("recursion state must stay linear in q");
      long k = m.vars[0];
      next.add_term(Monomial(m.u_exp, {k + 2}), c * Rational(k));
      next.add_term(Monomial(m.u_exp + 1, {k + 1}), c * Rational(2 * k));
      next.add_term(Monomial(m.u_exp + 2, {k}), c * Rational(k));
    }
    p = next;
  }
  return p;
}

// Assemble the generating function of a bracket table through the given
// weight.  In times variables each bracket contributes
// (-1)^j u^{2j} prod t_{d_i} divided by the symmetry factor; in q variables
// every t_{d} factor is replaced by phi_tilde(d).  Either way the term of a
// (g, n) bracket is homogeneous of weight 3(2g - 2 + n).  The caller vouches
// that the table is complete through the requested cap.
inline GradedPoly build_gen_function(const BracketTable& tbl, VarFamily fam,
                                     long cap) {
  GradedPoly acc = GradedPoly::zero(fam, cap);
  for (const auto& [key, val] : tbl.entries()) {
    long wt = 3 * (2 * key.g - 2 + key.n());
    if (wt > cap) continue;
    Rational w = val / Rational(aut_factor(key.ds));
    if (key.j % 2 == 1) w = -w;
    if (fam == VarFamily::t) {
      GradedPoly piece = GradedPoly::zero(fam, cap);
      piece.set_coeff(Monomial(2 * key.j, key.ds), w);
      acc = acc + piece;
    } else {
      GradedPoly piece = GradedPoly::u_power(fam, 2 * key.j);
      for (long d : key.ds) piece = piece * phi_tilde(d);
      acc = acc + piece.scale(w).truncated(cap);
    }
  }
  return acc;
}

}  // namespace hodgevir

#endif  // HODGEVIR_GENFUN_HPP

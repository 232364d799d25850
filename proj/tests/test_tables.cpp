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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "hodgevir/brackets.hpp"
#include "hodgevir/diffop.hpp"
#include "hodgevir/genfun.hpp"
#include "hodgevir/numbers.hpp"
#include "hodgevir/qring.hpp"
#include "hodgevir/tables.hpp"

namespace {

using namespace hodgevir;

// The heavy tables are shared across sections; building them once keeps the
// suite quick.
const BracketTable& kdv12() {
  static const BracketTable t = witten_table(12);
  return t;
}

const BracketTable& hodge12() {
  static const BracketTable t = hodge_table_via_W(12);
  return t;
}

GradedPoly state(VarFamily f, long u, std::vector<long> vars) {
  GradedPoly p = GradedPoly::zero(f);
  p.set_coeff(Monomial(u, std::move(vars)), rat(1));
  return p;
}

Rational g0_value(const std::vector<long>& ds) {
  long n = static_cast<long>(ds.size());
  Rational v = Rational(Numbers::factorial(static_cast<unsigned long>(n - 3)));
  for (long d : ds)
    v /= Rational(Numbers::factorial(static_cast<unsigned long>(d)));
  return v;
}

// Checks the string and dilaton identities at every key of the table whose
// reduced bracket is still stable; the reduced keys sit three weights lower,
// so they are always inside the cap.
void check_string_dilaton(const BracketTable& tbl) {
  for (const auto& [key, val] : tbl.entries()) {
    long n = static_cast<long>(key.ds.size());
    if (!is_stable(key.g, n - 1)) continue;
    auto removed_one = [&](long value) {
      std::vector<long> base = key.ds;
      base.erase(std::find(base.begin(), base.end(), value));
      return base;
    };
    if (std::count(key.ds.begin(), key.ds.end(), 0L) > 0) {
      std::vector<long> base = removed_one(0);
      Rational rhs(0);
      for (std::size_t k = 0; k < base.size(); ++k) {
        if (base[k] < 1) continue;
        std::vector<long> red = base;
        --red[k];
        std::sort(red.begin(), red.end());
        rhs += tbl.get(BracketKey(key.g, key.j, red));
      }
      INFO("string at " << key.str());
      REQUIRE(val == rhs);
    }
    if (std::count(key.ds.begin(), key.ds.end(), 1L) > 0) {
      std::vector<long> base = removed_one(1);
      INFO("dilaton at " << key.str());
      REQUIRE(val == Rational(2 * key.g - 2 + n - 1) *
                         tbl.get(BracketKey(key.g, key.j, base)));
    }
  }
}

long q_weight(const Monomial& m) {
  long w = 0;
  for (long b : m.vars) w += b;
  return w;
}

// Every coefficient of p inside the beta/weight window must vanish; outside
// the window the truncations differ and nothing is claimed.
void require_window_zero(const GradedPoly& p, long bo, long wc) {
  for (const auto& [m, c] : p.terms()) {
    if (m.u_exp > bo || q_weight(m) > wc) continue;
    INFO("u^" << m.u_exp << ", q weight " << q_weight(m));
    REQUIRE(c == 0);
  }
}

// F_H(beta): the q-side generating function with each monomial u^x prod q_b
// rescaled onto beta^{(x + 4 sum b)/3}; the exponent is integral because the
// u power and the weight agree mod 3.
GradedPoly fh_beta(const BracketTable& tbl, long bo, long wc) {
  GradedPoly src = build_gen_function(tbl, VarFamily::q, 3 * bo + wc);
  GradedPoly out = GradedPoly::zero(VarFamily::q, bo + wc);
  for (const auto& [m, c] : src.terms()) {
    long num = m.u_exp + 4 * q_weight(m);
    REQUIRE(num % 3 == 0);
    long beta = num / 3;
    if (beta > bo || q_weight(m) > wc) continue;
    out.set_coeff(Monomial(beta, m.vars), c);
  }
  return out;
}

// sum_m a_{-m} beta^m X_{-m}, optionally completed to L_{-m} by the
// quadratic tail (1/2) sum_{i+j=m} q_i q_j.
DiffOperator lowering_flow(long bo, long max_idx, bool full_l) {
  std::vector<Rational> a = a_flow_neg(static_cast<std::size_t>(bo));
  DiffOperator op(VarFamily::q);
  for (long m = 1; m <= bo; ++m) {
    Rational am = a[static_cast<std::size_t>(m)];
    op = op + op_X_down(m, max_idx).scale(am).shifted_u(m);
    if (full_l)
      for (long i = 1; i < m; ++i)
        op.add_term(am * rat(1, 2), m, {i, m - i}, {});
  }
  return op;
}

}  // namespace

TEST_CASE("the Virasoro constraints rebuild the descendent table") {
  const BracketTable& tbl = kdv12();
  REQUIRE(tbl.provenance() == Provenance::virasoro);

  SECTION("the forced seeds and the first removals") {
    REQUIRE(tbl.get(BracketKey(0, 0, {0, 0, 0})) == rat(1));
    REQUIRE(tbl.get(BracketKey(1, 0, {1})) == rat(1, 24));
    REQUIRE(tbl.get(BracketKey(0, 0, {0, 0, 0, 1})) == rat(1));
    REQUIRE(tbl.get(BracketKey(1, 0, {0, 2})) == rat(1, 24));
    REQUIRE(tbl.get(BracketKey(1, 0, {1, 1})) == rat(1, 24));
    REQUIRE(tbl.get(BracketKey(1, 0, {0, 0, 3})) == rat(1, 24));
    REQUIRE(tbl.get(BracketKey(1, 0, {0, 1, 2})) == rat(1, 12));
    REQUIRE(tbl.get(BracketKey(1, 0, {1, 1, 1})) == rat(1, 12));
    REQUIRE(tbl.get(BracketKey(2, 0, {4})) == rat(1, 1152));
  }

  SECTION("genus zero matches the closed factorial form") {
    long checked = 0;
    for (const auto& [key, val] : tbl.entries()) {
      if (key.g != 0) continue;
      REQUIRE(val == g0_value(key.ds));
      ++checked;
    }
    // Weight 3(n-2) <= 12 allows n <= 6: one key each for n = 3, 4 and
    // two resp. three ways to spread the dimension for n = 5, 6.
    REQUIRE(checked == 7);
  }

  SECTION("every key inside the cap is present") {
    for (long s = 1; 3 * s <= 12; ++s)
      for (long g = 0; 2 * g <= s + 1; ++g)
        for_each_multiset(s + 2 - 2 * g, g + s - 1,
                          [&, g_ = g](const std::vector<long>& ds) {
                            REQUIRE(tbl.has(BracketKey(g_, 0, ds)));
                          });
  }

  SECTION("string and dilaton hold across the table") {
    check_string_dilaton(tbl);
  }
}

TEST_CASE("the Bernoulli flow produces the Hodge table") {
  const BracketTable& tbl = hodge12();
  REQUIRE(tbl.provenance() == Provenance::mumford_w);

  SECTION("the classical small values") {
    REQUIRE(tbl.get(BracketKey(1, 1, {0})) == rat(1, 24));
    REQUIRE(tbl.get(BracketKey(1, 1, {0, 1})) == rat(1, 24));
    REQUIRE(tbl.get(BracketKey(0, 0, {0, 0, 0, 1})) == rat(1));
  }

  SECTION("the lambda-free slice is the descendent table") {
    for (const auto& [key, val] : kdv12().entries()) {
      INFO(key.str());
      REQUIRE(tbl.get(key) == val);
    }
  }

  SECTION("only admissible keys are ever stored") {
    for (const auto& [key, val] : tbl.entries()) {
      REQUIRE(key.j >= 0);
      REQUIRE(key.j <= key.g);
      REQUIRE(key.dimension_ok());
      REQUIRE_FALSE(val == 0);
    }
    // A lambda power above the genus is identically zero, and the table
    // answers for it without storing it.
    REQUIRE(tbl.has(BracketKey(0, 1, {0, 0})));
    REQUIRE(tbl.get(BracketKey(0, 1, {0, 0})) == 0);
    REQUIRE_THROWS_AS(tbl.get(BracketKey(3, 3, {4})), std::out_of_range);
  }

  SECTION("string and dilaton hold with the lambda insertions") {
    check_string_dilaton(tbl);
  }
}

TEST_CASE("symmetric polynomials divide exactly") {
  SECTION("synthetic division recovers the cyclotomic-like quotient") {
    SymPoly p(2);
    p.add_coeff({3, 0}, rat(1));
    p.add_coeff({0, 3}, rat(-1));
    SymPoly q = divide_exact(p, 0, 1);
    REQUIRE(q.coeff({2, 0}) == rat(1));
    REQUIRE(q.coeff({1, 1}) == rat(1));
    REQUIRE(q.coeff({0, 2}) == rat(1));
    REQUIRE(q.terms().size() == 3);
  }

  SECTION("a nonzero remainder is refused") {
    SymPoly p(2);
    p.add_coeff({2, 0}, rat(1));
    p.add_coeff({0, 1}, rat(1));
    REQUIRE_THROWS_AS(divide_exact(p, 0, 1), std::runtime_error);
  }

  SECTION("embedding and the diagonal restriction") {
    SymPoly p(2);
    p.add_coeff({2, 1}, rat(5));
    SymPoly wide = p.embed(4, {3, 1});
    REQUIRE(wide.coeff({0, 1, 0, 2}) == rat(5));
    SymPoly diag = p.merge_vars(0, 1);
    REQUIRE(diag.coeff({3}) == rat(5));
    REQUIRE(p.apply_D(1).coeff({2, 1}) == rat(1) * rat(5));
    REQUIRE(p.apply_D(1).coeff({2, 3}) == rat(5));
  }

  SECTION("symmetry detection") {
    SymPoly s(2);
    s.add_coeff({2, 1}, rat(7));
    REQUIRE_FALSE(s.is_symmetric());
    s.add_coeff({1, 2}, rat(7));
    REQUIRE(s.is_symmetric());
  }
}

TEST_CASE("the bracket polynomials and their recursion") {
  SECTION("the two seed polynomials come out exactly") {
    SymPoly h03 = build_H_polys(0, 3, hodge12());
    REQUIRE(h03.coeff({1, 1, 1}) == rat(1));
    REQUIRE(h03.terms().size() == 1);

    SymPoly h11 = build_H_polys(1, 1, hodge12());
    REQUIRE(h11.coeff({1}) == 0);
    REQUIRE(h11.coeff({2}) == rat(1, 12));
    REQUIRE(h11.coeff({3}) == rat(1, 24));
    REQUIRE(h11.total_degree() == 3);
  }

  SECTION("higher polynomials are symmetric with the right degree") {
    SymPoly h12 = build_H_polys(1, 2, hodge12());
    REQUIRE(h12.is_symmetric());
    REQUIRE(h12.total_degree() == 6);
    SymPoly h04 = build_H_polys(0, 4, hodge12());
    REQUIRE(h04.is_symmetric());
    REQUIRE(h04.total_degree() == 6);
  }

  SECTION("an incomplete table cannot fake a polynomial") {
    BracketTable thin = hodge_table_via_W(6);
    REQUIRE_THROWS_AS(build_H_polys(2, 1, thin), std::out_of_range);
  }

  SECTION("the recursion residual vanishes on the honest table") {
    REQUIRE(recursion_check(0, 4, hodge12()).is_zero());
    REQUIRE(recursion_check(1, 1, hodge12()).is_zero());
    REQUIRE(recursion_check(1, 2, hodge12()).is_zero());
    REQUIRE(recursion_check(2, 1, hodge12()).is_zero());
  }

  SECTION("a single corrupted bracket leaves a residual") {
    BracketTable tamper = hodge12();
    tamper.set(BracketKey(1, 0, {1}), rat(1, 23));
    REQUIRE_FALSE(recursion_check(1, 1, tamper).is_zero());
  }
}

TEST_CASE("the recursion solves the tower from the boundary terms") {
  SECTION("the small box reproduces the seeds and genus one") {
    BracketTable rec = hodge_table_via_recursion(1, 3);
    REQUIRE(rec.provenance() == Provenance::recursion);
    REQUIRE(rec.get(BracketKey(0, 0, {0, 0, 0})) == rat(1));
    REQUIRE(rec.get(BracketKey(1, 0, {1})) == rat(1, 24));
    REQUIRE(rec.get(BracketKey(1, 1, {0})) == rat(1, 24));
    for (const auto& [key, val] : rec.entries()) {
      INFO(key.str());
      REQUIRE(hodge12().get(key) == val);
    }
  }

  SECTION("genus two from one puncture agrees with the W route") {
    BracketTable rec = hodge_table_via_recursion(2, 1);
    REQUIRE(rec.get(BracketKey(2, 0, {4})) == rat(1, 1152));
    long shared = 0;
    for (const auto& [key, val] : rec.entries()) {
      INFO(key.str());
      REQUIRE(hodge12().get(key) == val);
      ++shared;
    }
    REQUIRE(shared == 5);
  }
}

TEST_CASE("phi evaluations and the kappa factorization") {
  SECTION("phi at minus one sees only the constant flow") {
    auto eval_minus_one = [](long n) {
      Rational v(0);
      std::vector<Rational> c = phi_coeffs(n);
      for (long e = 0; e < static_cast<long>(c.size()); ++e)
        v += (e % 2 ? -c[static_cast<std::size_t>(e)]
                    : c[static_cast<std::size_t>(e)]);
      return v;
    };
    REQUIRE(eval_minus_one(0) == rat(-1));
    for (long n = 1; n <= 8; ++n) REQUIRE(eval_minus_one(n) == 0);
  }

  SECTION("phi_n factors through z (1+z)^{n+1}") {
    for (long n = 2; n <= 8; ++n) {
      TruncatedSeries k = kappa_poly(n);
      REQUIRE(k.coeff(0) == rat(1));
      for (long e = n; e <= k.order(); ++e) REQUIRE(k.coeff(e) == 0);
      TruncatedSeries rebuilt =
          one_plus_z("z", 2 * n + 4).pow(n + 1).shift_exp(1) * k;
      TruncatedSeries phi = phi_poly(n);
      for (long e = 0; e <= 2 * n + 1; ++e)
        REQUIRE(rebuilt.coeff(e) == phi.coeff(e));
    }
  }

  SECTION("the dilaton contraction c_n sees only n = 1") {
    for (long n = 0; n <= 8; ++n) {
      GradedPoly pt = phi_tilde(n);
      Rational c(0);
      for (long k = 0; k <= 2 * n - 2; ++k) {
        Rational coeff = pt.coeff(Monomial(2 * n - 2 - k, {k + 3}));
        Rational binom = Rational(Numbers::binomial(
            static_cast<unsigned long>(k + 2), 2));
        c += (k % 2 ? -binom : binom) * coeff;
      }
      REQUIRE(c == (n == 1 ? rat(1) : rat(0)));
    }
  }
}

TEST_CASE("the cut-and-join series and its closed genus zero parts") {
  SECTION("order zero is the single point count") {
    REQUIRE(poly_agrees(hurwitz_series(0, 6),
                        GradedPoly::var(VarFamily::q, 1, 6)));
  }

  SECTION("one transposition joins two sheets") {
    GradedPoly expect = GradedPoly::zero(VarFamily::q, 7);
    expect.set_coeff(Monomial(0, {1}), rat(1));
    expect.set_coeff(Monomial(1, {2}), rat(1, 2));
    REQUIRE(poly_agrees(hurwitz_series(1, 6), expect));
  }

  SECTION("the one and two point parts match the closed forms") {
    GradedPoly H = hurwitz_series(4, 10);
    REQUIRE(H.coeff(Monomial(2, {3})) == rat(1, 2));
    GradedPoly h01 = hurwitz_h01(4, 10);
    for (const auto& [m, c] : h01.terms()) {
      INFO("one point at u^" << m.u_exp);
      REQUIRE(H.coeff(m) == c);
    }
    GradedPoly h02 = hurwitz_h02(4, 10);
    REQUIRE(h02.coeff(Monomial(2, {1, 1})) == rat(1, 4));
    for (const auto& [m, c] : h02.terms()) {
      INFO("two point at u^" << m.u_exp);
      REQUIRE(H.coeff(m) == c);
    }
  }

  SECTION("the lowering coefficients flow z onto its defining series") {
    std::vector<Rational> a = a_flow_neg(8);
    TruncatedSeries z = TruncatedSeries::monomial("z", rat(1), 1, 9);
    TruncatedSeries w =
        TruncatedSeries::monomial("z", rat(1), 1, 12) *
        one_plus_z("z", 12).reciprocal();
    TruncatedSeries target = w * w.scale(rat(-1)).exp_series();
    TruncatedSeries got = exp_derivation_apply(a, -1, {}, z);
    for (long e = 1; e <= 9; ++e) REQUIRE(got.coeff(e) == target.coeff(e));
  }
}

TEST_CASE("the lowering flow connects Hurwitz numbers to Hodge integrals") {
  const long bo = 4;
  const long wc = 6;
  const long cap = bo + wc;
  GradedPoly H = hurwitz_series(bo, wc);
  GradedPoly h01 = hurwitz_h01(bo, wc);
  GradedPoly h02 = hurwitz_h02(bo, wc);
  GradedPoly expected = fh_beta(hodge_table_via_W(9), bo, wc);
  DiffOperator X = lowering_flow(bo, cap, false);
  DiffOperator L = lowering_flow(bo, cap, true);

  SECTION("the X flow strips the unstable parts down to F_H") {
    GradedPoly reduced = exp_apply(X.scale(rat(-1)), H - h01 - h02);
    require_window_zero(reduced - expected, bo, wc);
  }

  SECTION("completing X to L absorbs the two point part") {
    std::vector<GradedPoly> probes;
    probes.push_back(GradedPoly::constant(VarFamily::q, rat(1), cap));
    probes.push_back(state(VarFamily::q, 0, {1}).truncated(cap));
    probes.push_back(state(VarFamily::q, 0, {2, 3}).truncated(cap));
    probes.push_back(state(VarFamily::q, 1, {1, 2}).truncated(cap));
    GradedPoly factor = exp_poly(h02.scale(rat(-1)));
    for (const auto& p : probes) {
      GradedPoly lhs = exp_apply(L.scale(rat(-1)), p);
      GradedPoly rhs = exp_apply(X.scale(rat(-1)), factor * p);
      require_window_zero(lhs - rhs, bo, wc);
    }
  }

  SECTION("the assembled product form of e^H") {
    GradedPoly rebuilt =
        exp_poly(h01) * exp_apply(L, exp_poly(expected));
    require_window_zero(rebuilt - exp_poly(H), bo, wc);
  }
}

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

#ifndef HODGEVIR_NUMBERS_HPP
#define HODGEVIR_NUMBERS_HPP

#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "hodgevir/rational.hpp"

namespace hodgevir {

// Combinatorial number families shared by the series and operator layers.
// Caches are per-instance and append-only; there is no global mutable state.
class Numbers {
  public:
    Numbers() = default;
    Numbers(const Numbers&) = delete;
    Numbers& operator=(const Numbers&) = delete;

    // B_m with t/(e^t - 1) = sum B_m t^m / m!, so B_1 = -1/2.
    Rational bernoulli(std::size_t m) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (bern_.size() <= m) {
            const std::size_t n = bern_.size();
            if (n == 0) {
                bern_.push_back(1);
                continue;
            }
            // sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1.
            Rational acc = 0;
            for (std::size_t j = 0; j < n; ++j)
                acc += Rational(binomial(n + 1, j)) * bern_[j];
            bern_.push_back(-acc / Rational(static_cast<long>(n) + 1));
        }
        return bern_[m];
    }

    // (2m-1)!! = 1*3*...*(2m-1); (-1)!! = 1; (-2n-1)!! = (-1)^n / (2n-1)!!.
    static Rational double_factorial_odd(long k) {
        if (k % 2 == 0) throw std::domain_error("double factorial needs an odd argument");
        if (k >= -1) {
            Integer p = 1;
            for (long i = 3; i <= k; i += 2) p *= i;
            return Rational(p);
        }
        const long n = (-k - 1) / 2;  // k = -2n-1
        const Rational base = double_factorial_odd(2 * n - 1);
        return n % 2 == 0 ? 1 / base : -1 / base;
    }

    // Permutations of n elements with exactly k cycles, every cycle of
    // length >= 3.  Element n either extends one of the existing cycles
    // (n-1 slots) or closes a fresh 3-cycle with an ordered pair from the
    // remaining n-1 elements:
    //   d(n, k) = (n-1) d(n-1, k) + (n-1)(n-2) d(n-3, k-1).
    Integer d3_count(std::size_t n, std::size_t k) const {
        if (n < 3 * k) return 0;
        if (k == 0) return n == 0 ? 1 : 0;
        std::lock_guard<std::mutex> lock(mu_);
        while (d3_.size() <= n) {
            const std::size_t m = d3_.size();
            std::vector<Integer> row(m / 3 + 1, 0);
            row[0] = (m == 0) ? 1 : 0;
            for (std::size_t j = 1; 3 * j <= m; ++j) {
                Integer v = Integer(m - 1) * d3_at(m - 1, j);
                v += Integer((m - 1) * (m - 2)) * d3_at(m - 3, j - 1);
                row[j] = v;
            }
            d3_.push_back(std::move(row));
        }
        return d3_[n][k];
    }

    static Integer binomial(unsigned long n, unsigned long k) {
        Integer r;
        mpz_bin_uiui(r.get_mpz_t(), n, k);
        return r;
    }

    static Integer factorial(unsigned long n) {
        Integer r;
        mpz_fac_ui(r.get_mpz_t(), n);
        return r;
    }

  private:
    Integer d3_at(std::size_t n, std::size_t k) const {
        if (n < 3 * k) return 0;
        return d3_[n][k];
    }

    mutable std::mutex mu_;
    mutable std::vector<Rational> bern_;
    mutable std::vector<std::vector<Integer>> d3_;
};

}  // namespace hodgevir

#endif  // HODGEVIR_NUMBERS_HPP

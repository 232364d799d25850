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

#ifndef HODGEVIR_RATIONAL_HPP
#define HODGEVIR_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hodgevir {

// The coefficient field everywhere: arbitrary-precision rationals, always in
// lowest terms with positive denominator.  GMP's mpq_class keeps arithmetic
// results canonical; the factories below canonicalize explicit constructions.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts exactly the serialized forms "p" and "p/q" (decimal, optional '-').
inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("unparsable rational: \"" + s + "\"");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: \"" + s + "\"");
    r.canonicalize();
    return r;
}

// "p/q" with q > 0 and gcd(p,q) = 1; plain "p" when q = 1.
inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline Rational rat_pow(const Rational& base, long exp) {
    if (exp == 0) return 1;
    if (base == 0 && exp < 0) throw std::domain_error("0 raised to negative power");
    const unsigned long mag = static_cast<unsigned long>(exp < 0 ? -exp : exp);
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), mag);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), mag);
    if (exp < 0) {
        if (r == 0) throw std::domain_error("0 raised to negative power");
        r = 1 / r;
    }
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace hodgevir

#endif  // HODGEVIR_RATIONAL_HPP

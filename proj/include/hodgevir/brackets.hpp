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

#ifndef HODGEVIR_BRACKETS_HPP
#define HODGEVIR_BRACKETS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hodgevir/numbers.hpp"
#include "hodgevir/rational.hpp"

namespace hodgevir {

// One correlator <lambda_j tau_{d_1} ... tau_{d_n}>_g; pure descendent
// brackets carry j = 0.  Values are stored raw, with no symmetry factor.
struct BracketKey {
  long g = 0;
  long j = 0;
  std::vector<long> ds;

  BracketKey(long g_, long j_, std::vector<long> ds_)
      : g(g_), j(j_), ds(std::move(ds_)) {
    std::sort(ds.begin(), ds.end());
  }

  long n() const { return static_cast<long>(ds.size()); }
  long dim() const { return 3 * g - 3 + n(); }
  bool dimension_ok() const {
    return j + std::accumulate(ds.begin(), ds.end(), 0L) == dim();
  }

  friend bool operator<(const BracketKey& a, const BracketKey& b) {
    return std::tie(a.g, a.j, a.ds) < std::tie(b.g, b.j, b.ds);
  }
  friend bool operator==(const BracketKey& a, const BracketKey& b) {
    return a.g == b.g && a.j == b.j && a.ds == b.ds;
  }

  std::string str() const {
    std::ostringstream os;
    os << "<";
    if (j > 0) os << "lambda_" << j << " ";
    for (std::size_t i = 0; i < ds.size(); ++i)
      os << (i ? " " : "") << "tau_" << ds[i];
    os << ">_" << g;
    return os.str();
  }
};

// The product of factorials of the multiplicities of a sorted index list;
// the symmetry factor between ordered and multiset sums.
inline Integer aut_factor(const std::vector<long>& ds) {
  Integer f = 1;
  std::size_t i = 0;
  while (i < ds.size()) {
    std::size_t j = i;
    while (j < ds.size() && ds[j] == ds[i]) ++j;
    f *= Numbers::factorial(static_cast<long>(j - i));
    i = j;
  }
  return f;
}

// How a table was computed.  Cross-checking tables of different provenance
// against each other is the main consistency test of the whole library.
enum class Provenance { virasoro, mumford_w, recursion };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::virasoro: return "virasoro";
    case Provenance::mumford_w: return "mumford_w";
    default: return "recursion";
  }
}

// A finite store of bracket values.  Brackets violating the dimension
// condition are identically zero and need no entry; anything else that is
// missing throws, so an incomplete table cannot silently poison a sum.
class BracketTable {
public:
  BracketTable() = default;
  explicit BracketTable(Provenance p) : provenance_(p) {}

  void set(const BracketKey& k, const Rational& v) {
    if (!k.dimension_ok())
      throw std::invalid_argument("bracket " + k.str() +
                                  " violates the dimension condition");
    Rational c = v;
    c.canonicalize();
    values_[k] = c;
  }

  bool has(const BracketKey& k) const {
    return !k.dimension_ok() || values_.count(k) > 0;
  }

  Rational get(const BracketKey& k) const {
    if (!k.dimension_ok()) return Rational(0);
    auto it = values_.find(k);
    if (it == values_.end())
      throw std::out_of_range("bracket " + k.str() + " is not in the table");
    return it->second;
  }

  const std::map<BracketKey, Rational>& entries() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Provenance provenance() const { return provenance_; }

private:
  std::map<BracketKey, Rational> values_;
  Provenance provenance_ = Provenance::virasoro;
};

}  // namespace hodgevir

#endif  // HODGEVIR_BRACKETS_HPP

// Copyright 2026 The AWTP-PD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>

#include "awtp/ffield.hpp"

namespace awtp {

/// Coefficient-form polynomial over F_q, lowest degree first.
class Polynomial {
 public:
  explicit Polynomial(FieldVector coefficients) : coeffs_(std::move(coefficients)) {}

  const FieldVector& coefficients() const { return coeffs_; }
  FieldElement operator()(const FieldElement& x) const;

 private:
  FieldVector coeffs_;
};

using InterpolationPoint = std::pair<FieldElement, FieldElement>;

/// Lagrange interpolation of n points with distinct abscissae; the result has
/// exactly n coefficients (degree <= n-1, trailing zeros kept).
Polynomial interpolate(std::span<const InterpolationPoint> points);

struct ExtractorParams {
  std::size_t n;  // input length
  std::size_t m;  // output length
  PrimeModulus q;

  /// Throws unless 1 <= m <= n and q >= n + m.
  void validate() const;
};

/// Seedless Reed-Solomon extractor: interpolates f with f(i) = x_i for
/// i = 0..n-1 and returns (f(n), ..., f(n+m-1)).
FieldVector extract(std::span<const FieldElement> x, std::size_t m);

/// An (n, m) symbol-fixing source: the positions in `free_positions` are
/// uniform and independent, every other position holds its fixed value.
class SymbolFixingSource {
 public:
  SymbolFixingSource(const PrimeModulus& q, std::size_t n, std::set<std::size_t> free_positions,
                     std::map<std::size_t, FieldElement> fixed_values);

  std::size_t length() const { return n_; }
  std::size_t free_count() const { return free_.size(); }
  const std::set<std::size_t>& free_positions() const { return free_; }

  /// Min-entropy in bits: free_count * log2 q.
  double min_entropy_bits() const;

  /// The source sample obtained by writing `free_values` (in ascending
  /// position order) into the free slots.
  FieldVector sample(std::span<const FieldElement> free_values) const;

 private:
  std::size_t n_;
  std::set<std::size_t> free_;
  std::map<std::size_t, FieldElement> fixed_;
  PrimeModulus q_;
};

struct UniformityCheck {
  std::size_t sources = 0;  // (free set, fixed values) patterns enumerated
  std::size_t cases = 0;    // (source, m) pairs checked
  std::size_t skipped = 0;  // m <= free count but q < n + m
  bool uniform = true;
  std::string first_failure;
};

/// For every n in [1, max_n], every non-empty free set, every assignment of
/// the fixed positions and every admissible m <= free count, checks that
/// each of the q^m outputs is hit exactly q^(free - m) times.
UniformityCheck check_extractor_uniformity(const PrimeModulus& q, std::size_t max_n);

}  // namespace awtp

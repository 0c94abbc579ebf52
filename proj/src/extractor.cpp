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

#include "awtp/extractor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace awtp {

FieldElement Polynomial::operator()(const FieldElement& x) const {
  if (coeffs_.empty()) return FieldElement::zero(PrimeModulus(x.modulus_value()));
  FieldElement acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial interpolate(std::span<const InterpolationPoint> points) {
  if (points.empty()) throw std::invalid_argument("interpolate: no points");
  const std::size_t n = points.size();
  const PrimeModulus q(points.front().first.modulus_value());
  if (n > q.value()) throw std::invalid_argument("interpolate: more points than field elements");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].first == points[j].first) {
        throw std::invalid_argument("interpolate: repeated abscissa");
      }
    }
  }

  // master(X) = prod_j (X - x_j), degree n.
  FieldVector master(n + 1, FieldElement::zero(q));
  master[0] = FieldElement::one(q);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k > 0; --k) {
      master[k] = master[k - 1] - points[j].first * master[k];
    }
    master[0] = -(points[j].first * master[0]);
  }

  FieldVector coeffs(n, FieldElement::zero(q));
  FieldVector basis(n, FieldElement::zero(q));
  for (std::size_t i = 0; i < n; ++i) {
    const FieldElement& xi = points[i].first;
    // basis = master / (X - x_i) by synthetic division.
    FieldElement carry = master[n];
    for (std::size_t k = n; k > 0; --k) {
      basis[k - 1] = carry;
      carry = master[k - 1] + carry * xi;
    }
    FieldElement denom = FieldElement::one(q);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) denom *= xi - points[j].first;
    }
    const FieldElement scale = points[i].second * denom.inv();
    for (std::size_t k = 0; k < n; ++k) coeffs[k] += scale * basis[k];
  }
  return Polynomial(std::move(coeffs));
}

void ExtractorParams::validate() const {
  if (n == 0) throw std::invalid_argument("extractor input length must be positive");
  if (m == 0 || m > n) {
    throw std::invalid_argument("extractor output length " + std::to_string(m) +
                                " outside [1, " + std::to_string(n) + "]");
  }
  if (q.value() < n + m) {
    throw std::invalid_argument("extractor needs q >= n + m (q = " + std::to_string(q.value()) +
                                ", n + m = " + std::to_string(n + m) + ")");
  }
}

FieldVector extract(std::span<const FieldElement> x, std::size_t m) {
  if (x.empty()) throw std::invalid_argument("extractor input length must be positive");
  const PrimeModulus q(x.front().modulus_value());
  const std::size_t n = x.size();
  ExtractorParams{n, m, q}.validate();

  std::vector<InterpolationPoint> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.emplace_back(FieldElement(i, q), x[i]);
  const Polynomial f = interpolate(points);

  FieldVector out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(f(FieldElement(n + i, q)));
  return out;
}

SymbolFixingSource::SymbolFixingSource(const PrimeModulus& q, std::size_t n,
                                       std::set<std::size_t> free_positions,
                                       std::map<std::size_t, FieldElement> fixed_values)
    : n_(n), free_(std::move(free_positions)), fixed_(std::move(fixed_values)), q_(q) {
  if (free_.size() + fixed_.size() != n) {
    throw std::invalid_argument("symbol-fixing source: positions do not cover [0, n)");
  }
  for (std::size_t p : free_) {
    if (p >= n || fixed_.contains(p)) {
      throw std::invalid_argument("symbol-fixing source: free and fixed positions overlap");
    }
  }
  for (const auto& [p, v] : fixed_) {
    if (p >= n) throw std::invalid_argument("symbol-fixing source: fixed position out of range");
    if (v.modulus_value() != q_.value()) throw ModulusMismatch();
  }
}

double SymbolFixingSource::min_entropy_bits() const {
  return static_cast<double>(free_.size()) * std::log2(static_cast<double>(q_.value()));
}

FieldVector SymbolFixingSource::sample(std::span<const FieldElement> free_values) const {
  if (free_values.size() != free_.size()) {
    throw std::invalid_argument("symbol-fixing source: wrong number of free values");
  }
  FieldVector out;
  out.reserve(n_);
  auto next_free = free_values.begin();
  for (std::size_t p = 0; p < n_; ++p) {
    if (free_.contains(p)) {
      if (next_free->modulus_value() != q_.value()) throw ModulusMismatch();
      out.push_back(*next_free++);
    } else {
      out.push_back(fixed_.at(p));
    }
  }
  return out;
}

namespace {

FieldVector digits(std::uint64_t idx, std::size_t count, const PrimeModulus& q) {
  FieldVector out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(idx % q.value(), q);
    idx /= q.value();
  }
  return out;
}

std::uint64_t power(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

}  // namespace

UniformityCheck check_extractor_uniformity(const PrimeModulus& q, std::size_t max_n) {
  UniformityCheck out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::set<std::size_t> free;
      std::vector<std::size_t> fixed_positions;
      for (std::size_t p = 0; p < n; ++p) {
        if (mask >> p & 1) {
          free.insert(p);
        } else {
          fixed_positions.push_back(p);
        }
      }
      const std::size_t f = free.size();
      for (std::uint64_t fv = 0; fv < power(q.value(), fixed_positions.size()); ++fv) {
        const FieldVector values = digits(fv, fixed_positions.size(), q);
        std::map<std::size_t, FieldElement> fixed;
        for (std::size_t k = 0; k < fixed_positions.size(); ++k) fixed.emplace(fixed_positions[k], values[k]);
        const SymbolFixingSource source(q, n, free, fixed);
        ++out.sources;

        for (std::size_t m = 1; m <= f; ++m) {
          if (q.value() < n + m) {
            ++out.skipped;
            continue;
          }
          ++out.cases;
          std::map<std::vector<std::uint64_t>, std::uint64_t> hits;
          for (std::uint64_t a = 0; a < power(q.value(), f); ++a) {
            std::vector<std::uint64_t> key;
            for (const FieldElement& y : extract(source.sample(digits(a, f, q)), m)) key.push_back(y.value());
            ++hits[key];
          }
          const std::uint64_t expect = power(q.value(), f - m);
          const bool ok = hits.size() == power(q.value(), m) &&
                          std::all_of(hits.begin(), hits.end(), [&](const auto& h) { return h.second == expect; });
          if (!ok && out.uniform) {
            out.uniform = false;
            out.first_failure = "q=" + std::to_string(q.value()) + " n=" + std::to_string(n) +
                                " free=" + std::to_string(f) + " m=" + std::to_string(m);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace awtp

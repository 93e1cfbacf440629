// Copyright 2026 The Authors.
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

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "spectral_submod/matrix.hpp"

namespace spectral_submod {

// A subset of the ground set {0, ..., dim-1}, stored as a bitmask.
//
// Indices are zero-based in the API; reports print them one-based to match
// the usual mathematical notation [m] = {1, ..., m}.
class IndexSet {
 public:
  static constexpr std::size_t kMaxDim = 63;

  IndexSet() = default;

  IndexSet(std::size_t dim, std::uint64_t mask) : dim_(dim), mask_(mask) {
    check_dim(dim);
    if (dim < 64 && (mask >> dim) != 0)
      throw DimensionError("index set mask has bits beyond its dimension");
  }

  IndexSet(std::size_t dim, std::initializer_list<std::size_t> indices)
      : IndexSet(dim, std::vector<std::size_t>(indices)) {}

  IndexSet(std::size_t dim, const std::vector<std::size_t>& indices) : dim_(dim) {
    check_dim(dim);
    for (std::size_t i : indices) {
      if (i >= dim)
        throw DimensionError("index " + std::to_string(i) +
                             " out of range for dimension " + std::to_string(dim));
      mask_ |= std::uint64_t{1} << i;
    }
  }

  static IndexSet empty(std::size_t dim) { return IndexSet(dim, std::uint64_t{0}); }
  static IndexSet full(std::size_t dim) {
    check_dim(dim);
    return IndexSet(dim, dim == 0 ? 0 : (~std::uint64_t{0} >> (64 - dim)));
  }
  // {0, ..., k-1}
  static IndexSet first(std::size_t dim, std::size_t k) {
    if (k > dim) throw DimensionError("prefix longer than the ground set");
    return IndexSet(dim, k == 0 ? 0 : (~std::uint64_t{0} >> (64 - k)));
  }

  std::size_t dim() const { return dim_; }
  std::uint64_t mask() const { return mask_; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool is_empty() const { return mask_ == 0; }

  bool contains(std::size_t i) const {
    return i < dim_ && ((mask_ >> i) & 1U) != 0;
  }
  bool subset_of(const IndexSet& o) const { return (mask_ & ~o.mask_) == 0; }
  bool disjoint(const IndexSet& o) const { return (mask_ & o.mask_) == 0; }

  IndexSet operator|(const IndexSet& o) const { return {same_dim(o), mask_ | o.mask_}; }
  IndexSet operator&(const IndexSet& o) const { return {same_dim(o), mask_ & o.mask_}; }
  IndexSet complement() const { return {dim_, full(dim_).mask_ & ~mask_}; }
  IndexSet with(std::size_t i) const { return IndexSet(dim_, mask_) | IndexSet(dim_, {i}); }

  // Ascending enumeration.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t m = mask_; m != 0; m &= m - 1)
      out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
  }

  // "{1,3}" in one-based notation.
  std::string to_string() const {
    std::string s = "{";
    bool first_item = true;
    for (std::size_t i : indices()) {
      if (!first_item) s += ",";
      s += std::to_string(i + 1);
      first_item = false;
    }
    return s + "}";
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) {
    return a.mask_ <=> b.mask_;
  }

 private:
  static void check_dim(std::size_t dim) {
    if (dim > kMaxDim) throw DimensionError("index sets support at most 63 elements");
  }
  std::size_t same_dim(const IndexSet& o) const {
    if (o.dim_ != dim_) throw DimensionError("index sets over different ground sets");
    return dim_;
  }

  std::size_t dim_ = 0;
  std::uint64_t mask_ = 0;
};

// Number of subsets of an m-element ground set.
inline std::uint64_t subset_count(std::size_t m) { return std::uint64_t{1} << m; }

}  // namespace spectral_submod

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

//
// Spectral set functions w(I) = tr f(A[I]) and their modularity defects.
//
// The defect of a pair is
//   delta(I, J) = w(I) + w(J) - w(I u J) - w(I n J),
// nonnegative for every pair iff w is submodular and nonpositive for every
// pair iff w is supermodular.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "spectral_submod/extended_real.hpp"
#include "spectral_submod/hermitian.hpp"
#include "spectral_submod/index_set.hpp"
#include "spectral_submod/spectral_function.hpp"

namespace spectral_submod {

inline ExtendedReal spectral_trace(const HermitianMatrix& a, const SpectralFunction& f,
                                   const IndexSet& set) {
  if (set.is_empty()) {
    if (set.dim() != a.dim()) throw DimensionError("index set dimension mismatch");
    return 0.0;
  }
  return trace_function(principal_submatrix(a, set), f);
}

// Defect from the four lattice values. Operands are ordered by mask so that
// delta(I, J) and delta(J, I) are bitwise equal, and a comparable pair
// (I subset of J) gives exactly zero.
inline ExtendedReal combine_defect(const IndexSet& i, const IndexSet& j, ExtendedReal wi,
                                   ExtendedReal wj, ExtendedReal w_union,
                                   ExtendedReal w_inter) {
  if (j < i) std::swap(wi, wj);
  return (wi - w_union) + (wj - w_inter);
}

inline ExtendedReal delta(const HermitianMatrix& a, const SpectralFunction& f,
                          const IndexSet& i, const IndexSet& j) {
  const IndexSet u = i | j;
  const IndexSet n = i & j;
  return combine_defect(i, j, spectral_trace(a, f, i), spectral_trace(a, f, j),
                        spectral_trace(a, f, u), spectral_trace(a, f, n));
}

// Values of a set function on every subset of [m], indexed by bitmask.
class SetFunctionTable {
 public:
  SetFunctionTable(std::size_t dim, std::vector<ExtendedReal> values)
      : dim_(dim), values_(std::move(values)) {
    if (dim > 20) throw BudgetError("set function tables support at most 20 elements");
    if (values_.size() != subset_count(dim))
      throw DimensionError("set function table needs 2^m values");
  }

  // Evaluates w on every subset; `threads` workers split the mask range.
  static SetFunctionTable build(std::size_t dim,
                                const std::function<ExtendedReal(const IndexSet&)>& w,
                                unsigned threads = 1) {
    if (dim > 20) throw BudgetError("set function tables support at most 20 elements");
    const std::uint64_t n = subset_count(dim);
    std::vector<ExtendedReal> values(n);
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t mask = begin; mask < end; ++mask)
        values[mask] = w(IndexSet(dim, mask));
    };
    run_partitioned(n, threads, work);
    return SetFunctionTable(dim, std::move(values));
  }

  static SetFunctionTable spectral(const HermitianMatrix& a, const SpectralFunction& f,
                                   unsigned threads = 1) {
    return build(
        a.dim(), [&](const IndexSet& s) { return spectral_trace(a, f, s); }, threads);
  }

  std::size_t dim() const { return dim_; }
  ExtendedReal operator[](std::uint64_t mask) const { return values_[mask]; }
  ExtendedReal at(const IndexSet& s) const { return values_[s.mask()]; }
  std::span<const ExtendedReal> values() const { return values_; }

  // max over finite values of |w(I)|.
  double finite_scale() const {
    double s = 0.0;
    for (ExtendedReal v : values_)
      if (v.is_finite()) s = std::max(s, std::abs(v.value()));
    return s;
  }

  ExtendedReal defect(const IndexSet& i, const IndexSet& j) const {
    return combine_defect(i, j, at(i), at(j), at(i | j), at(i & j));
  }

  template <typename Work>
  static void run_partitioned(std::uint64_t n, unsigned threads, Work&& work) {
    threads = std::max(1U, threads);
    if (threads == 1 || n < 64) {
      work(std::uint64_t{0}, n);
      return;
    }
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::uint64_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t b = std::min<std::uint64_t>(n, t * chunk);
      const std::uint64_t e = std::min<std::uint64_t>(n, b + chunk);
      pool.emplace_back([&, b, e, t] {
        try {
          work(b, e);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

 private:
  std::size_t dim_;
  std::vector<ExtendedReal> values_;
};

enum class Verdict { kSubmodular, kSupermodular, kModular, kNeither };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kSubmodular:
      return "submodular";
    case Verdict::kSupermodular:
      return "supermodular";
    case Verdict::kModular:
      return "modular";
    case Verdict::kNeither:
      return "neither";
  }
  return "neither";
}

inline bool satisfies_submodular(Verdict v) {
  return v == Verdict::kSubmodular || v == Verdict::kModular;
}
inline bool satisfies_supermodular(Verdict v) {
  return v == Verdict::kSupermodular || v == Verdict::kModular;
}

struct Witness {
  IndexSet i;
  IndexSet j;
  double delta = 0.0;
};

struct ModularityReport {
  static constexpr std::size_t kMaxWitnesses = 16;

  Verdict verdict = Verdict::kModular;
  double min_delta = 0.0;
  double max_delta = 0.0;
  std::optional<Witness> argmin;
  std::optional<Witness> argmax;
  // Pairs with delta < -tolerance (submodularity fails), most extreme first.
  std::vector<Witness> submodular_violations;
  // Pairs with delta > tolerance (supermodularity fails), most extreme first.
  std::vector<Witness> supermodular_violations;
  std::uint64_t submodular_violation_count = 0;
  std::uint64_t supermodular_violation_count = 0;
  double tolerance = 0.0;
  std::uint64_t pairs_evaluated = 0;
  // Pairs where one of the four values is infinite.
  std::uint64_t pairs_skipped = 0;
};

namespace detail {

// Keeps the kMaxWitnesses largest |delta|, ties by (I, J) ascending.
inline void keep_extreme(std::vector<Witness>& list, const Witness& w) {
  auto before = [](const Witness& a, const Witness& b) {
    const double x = std::abs(a.delta);
    const double y = std::abs(b.delta);
    if (x != y) return x > y;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  if (list.size() == ModularityReport::kMaxWitnesses && !before(w, list.back())) return;
  list.insert(std::upper_bound(list.begin(), list.end(), w, before), w);
  if (list.size() > ModularityReport::kMaxWitnesses) list.pop_back();
}

}  // namespace detail

inline double default_tolerance(const SetFunctionTable& table) {
  return 1e-9 * std::max(1.0, table.finite_scale());
}

// Scans every unordered pair I < J (lexicographic on masks).
inline ModularityReport classify_set_function(const SetFunctionTable& table,
                                              std::optional<double> tol = std::nullopt) {
  ModularityReport r;
  r.tolerance = tol.value_or(default_tolerance(table));
  if (r.tolerance < 0) throw DomainError("tolerance must be nonnegative");
  const std::size_t m = table.dim();
  const std::uint64_t n = subset_count(m);
  bool any = false;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = a + 1; b < n; ++b) {
      const ExtendedReal wa = table[a];
      const ExtendedReal wb = table[b];
      const ExtendedReal wu = table[a | b];
      const ExtendedReal wn = table[a & b];
      if (!wa.is_finite() || !wb.is_finite() || !wu.is_finite() || !wn.is_finite()) {
        ++r.pairs_skipped;
        continue;
      }
      const IndexSet i(m, a);
      const IndexSet j(m, b);
      const double d = combine_defect(i, j, wa, wb, wu, wn).value();
      ++r.pairs_evaluated;
      const Witness w{i, j, d};
      if (!any || d < r.min_delta) {
        r.min_delta = d;
        r.argmin = w;
      }
      if (!any || d > r.max_delta) {
        r.max_delta = d;
        r.argmax = w;
      }
      any = true;
      if (d < -r.tolerance) {
        ++r.submodular_violation_count;
        detail::keep_extreme(r.submodular_violations, w);
      } else if (d > r.tolerance) {
        ++r.supermodular_violation_count;
        detail::keep_extreme(r.supermodular_violations, w);
      }
    }
  }
  const bool sub = r.submodular_violation_count == 0;
  const bool super = r.supermodular_violation_count == 0;
  if (sub && super) {
    r.verdict = Verdict::kModular;
  } else if (sub) {
    r.verdict = Verdict::kSubmodular;
  } else if (super) {
    r.verdict = Verdict::kSupermodular;
  } else {
    r.verdict = Verdict::kNeither;
  }
  return r;
}

// Exhaustive classification of I -> tr f(A[I]); m <= 14.
inline ModularityReport classify_modularity(const HermitianMatrix& a, const SpectralFunction& f,
                                            std::optional<double> tol = std::nullopt,
                                            unsigned threads = 1) {
  if (a.dim() > 14)
    throw BudgetError("exhaustive classification supports m <= 14, got m = " +
                      std::to_string(a.dim()));
  return classify_set_function(SetFunctionTable::spectral(a, f, threads), tol);
}

struct MonotonicityReport {
  bool nondecreasing = true;
  double tolerance = 0.0;
  // First covering pair I -> I u {i} with w(I) > w(I u {i}) + tol.
  std::optional<IndexSet> from;
  std::optional<IndexSet> to;
  ExtendedReal w_from;
  ExtendedReal w_to;
};

// Checks w(I) <= w(I u {i}) + tol over all covering pairs, which suffices for
// monotonicity on the whole lattice.
inline MonotonicityReport check_nondecreasing(const SetFunctionTable& table,
                                              std::optional<double> tol = std::nullopt) {
  MonotonicityReport r;
  r.tolerance = tol.value_or(default_tolerance(table));
  const std::size_t m = table.dim();
  for (std::uint64_t mask = 0; mask < subset_count(m); ++mask) {
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) continue;
      const std::uint64_t up = mask | (std::uint64_t{1} << i);
      const ExtendedReal lo = table[mask];
      const ExtendedReal hi = table[up];
      bool violated = false;
      if (lo.is_finite() && hi.is_finite()) {
        violated = lo.value() > hi.value() + r.tolerance;
      } else {
        violated = lo > hi;
      }
      if (violated) {
        r.nondecreasing = false;
        r.from = IndexSet(m, mask);
        r.to = IndexSet(m, up);
        r.w_from = lo;
        r.w_to = hi;
        return r;
      }
    }
  }
  return r;
}

inline MonotonicityReport is_nondecreasing(const HermitianMatrix& a, const SpectralFunction& f,
                                           std::optional<double> tol = std::nullopt) {
  return check_nondecreasing(SetFunctionTable::spectral(a, f), tol);
}

}  // namespace spectral_submod

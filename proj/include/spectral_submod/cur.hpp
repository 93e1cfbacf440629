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
// CUR approximation of nonnegative definite matrices: greedy maximal-volume
// pivot selection, exhaustive maximal volume mu_k, and the entrywise error
// bounds that tie them together.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spectral_submod/extended_real.hpp"
#include "spectral_submod/hermitian.hpp"
#include "spectral_submod/index_set.hpp"
#include "spectral_submod/matrix.hpp"
#include "spectral_submod/set_functions.hpp"

namespace spectral_submod {

struct Pivot {
  std::size_t index = 0;
  double value = 0.0;
};

struct CurSelection {
  IndexSet indices;
  // Running product t of the pivots; det A[indices] unless degenerate.
  double det_product = 1.0;
  std::vector<Pivot> pivots;
  // A zero pivot was met: indices = {0..k-1} and det_product = 0.
  bool degenerate = false;
};

// Greedy selection by maximal remaining diagonal pivot with Schur-complement
// updates of the unselected block. Ties go to the smallest index.
inline CurSelection greedy_select(const HermitianMatrix& a, std::size_t k) {
  const std::size_t m = a.dim();
  if (k < 1 || k > m)
    throw DomainError("k must satisfy 1 <= k <= m (k = " + std::to_string(k) +
                      ", m = " + std::to_string(m) + ")");
  ComplexMatrix w = a.matrix();
  const double norm = entrywise_max_norm(w);
  double max_diag = 0.0;
  for (std::size_t i = 0; i < m; ++i) max_diag = std::max(max_diag, w(i, i).real());
  const double zero_pivot = 1e-12 * max_diag;
  const double psd_floor = -1e-9 * norm;

  std::vector<bool> remaining(m, true);
  CurSelection sel;
  sel.indices = IndexSet::empty(m);
  auto check_psd = [&] {
    for (std::size_t p = 0; p < m; ++p)
      if (remaining[p] && w(p, p).real() < psd_floor) {
        std::ostringstream os;
        os.precision(17);
        os << "matrix is not nonnegative definite: remaining diagonal entry " << p + 1
           << " is " << w(p, p).real();
        throw DomainError(os.str());
      }
  };
  check_psd();

  while (true) {
    std::size_t best = m;
    double best_val = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      if (!remaining[p]) continue;
      if (best == m || w(p, p).real() > best_val) {
        best = p;
        best_val = w(p, p).real();
      }
    }
    if (best_val <= zero_pivot) {
      sel.pivots.push_back({best, best_val});
      sel.indices = IndexSet::first(m, k);
      sel.det_product = 0.0;
      sel.degenerate = true;
      return sel;
    }
    sel.indices = sel.indices.with(best);
    remaining[best] = false;
    sel.det_product *= best_val;
    sel.pivots.push_back({best, best_val});
    if (sel.indices.size() == k) return sel;

    const cplx piv = w(best, best);
    for (std::size_t p = 0; p < m; ++p) {
      if (!remaining[p]) continue;
      const cplx api = w(p, best);
      for (std::size_t q = 0; q < m; ++q) {
        if (!remaining[q]) continue;
        w(p, q) -= api * w(best, q) / piv;
      }
    }
    check_psd();
  }
}

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    visit(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

struct MaxVolume {
  double value = 0.0;
  IndexSet rows;
  IndexSet cols;
};

inline constexpr std::uint64_t kPrincipalScanBudget = 100000;
inline constexpr std::uint64_t kFullScanBudget = 10000000;

// mu_k(A) = max |det A[I, J]| over |I| = |J| = k, by enumeration. With
// principal_only the scan is restricted to I = J. Ties keep the
// lexicographically first (I, J).
inline MaxVolume mu_k_exhaustive(const ComplexMatrix& a, std::size_t k, bool principal_only) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (k < 1 || k > std::min(m, n)) throw DomainError("k out of range for mu_k");
  if (principal_only && m != n) throw DimensionError("principal scan needs a square matrix");
  const std::uint64_t rows = binomial(m, k);
  const std::uint64_t cols = binomial(n, k);
  if (principal_only) {
    if (rows > kPrincipalScanBudget)
      throw BudgetError("principal mu_k scan needs " + std::to_string(rows) +
                        " determinants (budget 1e5)");
  } else if (cols != 0 && rows > kFullScanBudget / cols) {
    throw BudgetError("full mu_k scan exceeds the 1e7 determinant budget");
  }

  MaxVolume best;
  bool first = true;
  ComplexMatrix sub(k, k);
  for_each_combination(m, k, [&](const std::vector<std::size_t>& ri) {
    auto consider = [&](const std::vector<std::size_t>& ci) {
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) sub(r, c) = a(ri[r], ci[c]);
      const double v = std::abs(determinant(sub));
      if (first || v > best.value) {
        best.value = v;
        best.rows = IndexSet(m, ri);
        best.cols = IndexSet(n, ci);
        first = false;
      }
    };
    if (principal_only) {
      consider(ri);
    } else {
      for_each_combination(n, k, consider);
    }
  });
  return best;
}

inline MaxVolume mu_k_exhaustive(const HermitianMatrix& a, std::size_t k, bool principal_only) {
  return mu_k_exhaustive(a.matrix(), k, principal_only);
}

// sigma_{k+1}(A) (zero-based index k), 0 when k >= m.
inline double sigma_after(const HermitianMatrix& a, std::size_t k) {
  const auto sv = singular_values(a);
  return k < sv.size() ? sv[k] : 0.0;
}

struct CurResult {
  IndexSet indices;
  ComplexMatrix approximant;  // C A[I]^-1 R
  double achieved_error = 0.0;
  double det_core = 0.0;
  double sigma_k1 = 0.0;
  std::optional<double> mu_k;
  // mu_k (k+1) sigma_{k+1} / det A[I]; +inf when mu_k was not computable.
  ExtendedReal bound = ExtendedReal::pos_inf();
  std::string bound_note;
};

inline bool is_nonnegative_definite(const HermitianMatrix& a) {
  const auto ev = eigenvalues(a);
  return ev.empty() || ev.back() >= -rank_tolerance(ev);
}

// Maximal volume for the bound: a principal scan when A is nonnegative
// definite (the maximum is attained on the diagonal), otherwise the full scan.
inline std::optional<MaxVolume> mu_k_for_bound(const HermitianMatrix& a, std::size_t k,
                                               std::string& note) {
  const bool psd = is_nonnegative_definite(a);
  try {
    auto mv = mu_k_exhaustive(a, k, psd);
    note = psd ? "mu_k by exhaustive principal scan" : "mu_k by exhaustive full scan";
    return mv;
  } catch (const BudgetError& e) {
    note = std::string("bound unavailable: ") + e.what();
    return std::nullopt;
  }
}

inline CurResult cur_build(const HermitianMatrix& a, const IndexSet& set) {
  const std::size_t m = a.dim();
  const std::size_t k = set.size();
  if (set.dim() != m) throw DimensionError("index set dimension mismatch");
  if (k == 0) throw DomainError("CUR needs a nonempty index set");
  const HermitianMatrix core = principal_submatrix(a, set);
  const auto core_ev = eigenvalues(core);
  if (numerical_rank(core_ev) < k)
    throw DomainError("singular core A[I] for I = " + set.to_string());

  CurResult r;
  r.indices = set;
  const IndexSet all = IndexSet::full(m);
  const ComplexMatrix c = rectangular_submatrix(a.matrix(), all, set);
  const ComplexMatrix rows = rectangular_submatrix(a.matrix(), set, all);
  const LuDecomposition<cplx> lu(core.matrix());
  r.det_core = lu.determinant().real();
  r.approximant = c * lu.solve(rows);
  r.achieved_error = entrywise_max_norm(a.matrix() - r.approximant);
  r.sigma_k1 = sigma_after(a, k);
  if (auto mv = mu_k_for_bound(a, k, r.bound_note)) {
    r.mu_k = mv->value;
    r.bound = mv->value / std::abs(r.det_core) * static_cast<double>(k + 1) * r.sigma_k1;
  }
  return r;
}

// (a_1 ... a_k / det A[I]) (k+1) sigma_{k+1}(A) with a_1 >= ... >= a_k the
// largest diagonal entries. Dominates the mu_k bound by Hadamard's inequality.
inline double hadamard_upper_bound(const HermitianMatrix& a, const IndexSet& set, std::size_t k) {
  const std::size_t m = a.dim();
  if (k < 1 || k > m) throw DomainError("k out of range");
  const HermitianMatrix core = principal_submatrix(a, set);
  const auto core_ev = eigenvalues(core);
  if (core_ev.empty() || numerical_rank(core_ev) < core_ev.size())
    throw DomainError("singular core A[I] for I = " + set.to_string());
  const double det = determinant(core.matrix()).real();
  std::vector<double> diag(m);
  for (std::size_t i = 0; i < m; ++i) diag[i] = a.diag(i);
  std::sort(diag.begin(), diag.end(), std::greater<>());
  double top = 1.0;
  for (std::size_t i = 0; i < k; ++i) top *= diag[i];
  return top / det * static_cast<double>(k + 1) * sigma_after(a, k);
}

struct GreedyBoundReport {
  CurSelection selection;
  double lhs = 0.0;  // det A[I_greedy]
  double rhs = 0.0;  // mu_k^(1 - 1/e)
  double mu_k = 0.0;
  bool holds = false;
  // Theory preconditions: w(I) = log det A[I] nondecreasing, and the
  // sufficient condition lambda_min(A) >= 1.
  MonotonicityReport monotonicity;
  bool lambda_min_at_least_one = false;
  // (k+1) mu_k^(1/e) sigma_{k+1}, valid when w is nondecreasing.
  double greedy_cur_bound = 0.0;
  std::optional<CurResult> cur;
};

inline GreedyBoundReport greedy_bound_check(const HermitianMatrix& a, std::size_t k) {
  GreedyBoundReport r;
  r.selection = greedy_select(a, k);
  const auto ev = eigenvalues(a);
  r.lambda_min_at_least_one = !ev.empty() && ev.back() >= 1.0;
  r.monotonicity = is_nondecreasing(a, SpectralFunction::log());
  const MaxVolume mv = mu_k_exhaustive(a, k, true);
  r.mu_k = mv.value;
  r.lhs = r.selection.det_product;
  r.rhs = std::pow(r.mu_k, 1.0 - 1.0 / std::numbers::e);
  r.holds = r.lhs + 1e-10 * std::max(1.0, r.rhs) >= r.rhs;
  r.greedy_cur_bound = static_cast<double>(k + 1) * std::pow(r.mu_k, 1.0 / std::numbers::e) *
                       sigma_after(a, k);
  if (!r.selection.degenerate) r.cur = cur_build(a, r.selection.indices);
  return r;
}

struct FrobeniusCore {
  ComplexMatrix core;
  double frobenius_error = 0.0;
};

// Frobenius-optimal middle factor C^+ A R^+ for C = A[:, J], R = A[I, :].
inline FrobeniusCore optimal_core_frobenius(const ComplexMatrix& a, const IndexSet& rows,
                                            const IndexSet& cols) {
  const ComplexMatrix c = rectangular_submatrix(a, IndexSet::full(a.rows()), cols);
  const ComplexMatrix r = rectangular_submatrix(a, rows, IndexSet::full(a.cols()));
  FrobeniusCore out;
  out.core = pseudo_inverse(c) * a * pseudo_inverse(r);
  out.frobenius_error = frobenius_norm(a - c * out.core * r);
  return out;
}

// ||A - C A[I,J]^-1 R||_F, or nullopt when A[I,J] is singular.
inline std::optional<double> cur_frobenius_error(const ComplexMatrix& a, const IndexSet& rows,
                                                 const IndexSet& cols) {
  const ComplexMatrix c = rectangular_submatrix(a, IndexSet::full(a.rows()), cols);
  const ComplexMatrix r = rectangular_submatrix(a, rows, IndexSet::full(a.cols()));
  const LuDecomposition<cplx> lu(rectangular_submatrix(a, rows, cols));
  if (lu.singular()) return std::nullopt;
  return frobenius_norm(a - c * lu.solve(r));
}

}  // namespace spectral_submod

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
// Reference matrices, block counterexamples for the power traces
// T_p(I, A) = tr A[I]^p, the regime table scan, and auxiliary trace
// inequalities (disjoint-block majorization, the three-matrix power trace
// inequality, convexity of A -> tr f(A[I])).
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_submod/cur.hpp"
#include "spectral_submod/hermitian.hpp"
#include "spectral_submod/index_set.hpp"
#include "spectral_submod/random.hpp"
#include "spectral_submod/set_functions.hpp"
#include "spectral_submod/spectral_function.hpp"

namespace spectral_submod {

namespace reference {

// Positive definite 3x3 with det 30; delta(t^-1, {1,2}, {1,3}) = 16/35.
inline HermitianMatrix inverse_power_example() {
  return HermitianMatrix(RealMatrix{{5, -12, 9}, {-12, 33, -24}, {9, -24, 19}});
}

// Positive definite 3x3 with delta(t^2/(1+t), {1,2}, {1,3}) = 44/1085.
inline HermitianMatrix operator_convex_example() {
  return HermitianMatrix(RealMatrix{{1, -2, -2}, {-2, 6, 4}, {-2, 4, 8}});
}

// e1 e3^T + e3 e1^T.
inline HermitianMatrix corner_exchange() {
  return HermitianMatrix(RealMatrix{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}});
}

// Tridiagonal with zero diagonal, b12 = 1, b23 = 2.
inline HermitianMatrix jacobi_example() {
  return HermitianMatrix(RealMatrix{{0, 1, 0}, {1, 0, 2}, {0, 2, 0}});
}

inline SpectralFunction operator_convex_map() {
  return SpectralFunction::custom(
      "t^2/(1+t)", [](double t) { return t * t / (1.0 + t); }, Interval::nonnegative());
}

// t^n on the whole real line (Power is restricted to [0, inf)).
inline SpectralFunction monomial(int n) {
  return SpectralFunction::custom(
      "t^" + std::to_string(n), [n](double t) { return std::pow(t, n); },
      Interval::real_line());
}

}  // namespace reference

// [m] = L1 u L2 u L3 with I = L1 u L2 and J = L2 u L3.
struct BlockPartition {
  IndexSet l1;
  IndexSet l2;
  IndexSet l3;

  IndexSet i() const { return l1 | l2; }
  IndexSet j() const { return l2 | l3; }

  // L1 = {0}, L3 = {m-1}, L2 = the rest.
  static BlockPartition canonical(std::size_t m) {
    if (m < 3) throw DomainError("block partitions need m >= 3");
    BlockPartition p;
    p.l1 = IndexSet(m, {0});
    p.l3 = IndexSet(m, {m - 1});
    p.l2 = (p.l1 | p.l3).complement();
    return p;
  }
};

// Random partition into three nonempty parts; m >= 3.
inline BlockPartition random_partition(std::size_t m, Rng& rng) {
  if (m < 3) throw DomainError("block partitions need m >= 3");
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  std::uniform_int_distribution<std::size_t> cut1(1, m - 2);
  const std::size_t a = cut1(rng);
  std::uniform_int_distribution<std::size_t> cut2(a + 1, m - 1);
  const std::size_t b = cut2(rng);
  const auto at = [&](std::size_t k) { return idx.begin() + static_cast<std::ptrdiff_t>(k); };
  BlockPartition p;
  p.l1 = IndexSet(m, std::vector<std::size_t>(at(0), at(a)));
  p.l2 = IndexSet(m, std::vector<std::size_t>(at(a), at(b)));
  p.l3 = IndexSet(m, std::vector<std::size_t>(at(b), idx.end()));
  return p;
}

// Hermitian B with zero diagonal blocks and standard complex Gaussian
// off-diagonal blocks; B13 = 0 when zero_corner.
inline HermitianMatrix random_block_matrix(const BlockPartition& p, bool zero_corner, Rng& rng) {
  const std::size_t m = p.l1.dim();
  auto part = [&](std::size_t i) { return p.l1.contains(i) ? 1 : p.l2.contains(i) ? 2 : 3; };
  ComplexMatrix b(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const int pi = part(i);
      const int pj = part(j);
      if (pi == pj || (zero_corner && pi + pj == 4 && pi != 2)) continue;
      b(i, j) = complex_gaussian(rng);
      b(j, i) = std::conj(b(i, j));
    }
  return HermitianMatrix(b);
}

inline ComplexMatrix block(const HermitianMatrix& b, const IndexSet& rows, const IndexSet& cols) {
  return rectangular_submatrix(b.matrix(), rows, cols);
}

// -2 tr(B13 B13*)
inline double quadratic_block_defect(const HermitianMatrix& b, const BlockPartition& p) {
  const ComplexMatrix b13 = block(b, p.l1, p.l3);
  return -2.0 * (b13 * b13.adjoint()).trace().real();
}

// -4 tr(B12* B12 B23 B23*), the quartic defect when B13 = 0.
inline double quartic_block_defect(const HermitianMatrix& b, const BlockPartition& p) {
  const ComplexMatrix b12 = block(b, p.l1, p.l2);
  const ComplexMatrix b23 = block(b, p.l2, p.l3);
  return -4.0 * (b12.adjoint() * b12 * b23 * b23.adjoint()).trace().real();
}

struct ReproductionItem {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double abs_error = 0.0;
  bool pass = false;
};

inline constexpr double kReproductionTolerance = 1e-10;

// Recomputes the fixed counterexample values and the block identities on
// their reference matrices.
inline std::vector<ReproductionItem> run_paper_examples() {
  std::vector<ReproductionItem> out;
  auto add = [&](std::string name, ExtendedReal computed, double expected) {
    ReproductionItem item;
    item.name = std::move(name);
    item.computed = computed.value();
    item.expected = expected;
    item.abs_error = std::abs(item.computed - expected);
    item.pass = computed.is_finite() && item.abs_error <= kReproductionTolerance;
    out.push_back(item);
  };
  const IndexSet i12(3, {0, 1});
  const IndexSet i13(3, {0, 2});
  const IndexSet i23(3, {1, 2});
  add("delta(t^-1, {1,2}, {1,3}, A) = 16/35",
      delta(reference::inverse_power_example(), SpectralFunction::power(-1), i12, i13),
      16.0 / 35.0);
  add("delta(t^2/(1+t), {1,2}, {1,3}, A) = 44/1085",
      delta(reference::operator_convex_example(), reference::operator_convex_map(), i12, i13),
      44.0 / 1085.0);
  const HermitianMatrix corner = reference::corner_exchange();
  const BlockPartition p3 = BlockPartition::canonical(3);
  add("delta(t^2, {1,2}, {2,3}, e1e3' + e3e1') = -2 tr(B13 B13*)",
      delta(corner, reference::monomial(2), i12, i23), quadratic_block_defect(corner, p3));
  const HermitianMatrix jac = reference::jacobi_example();
  add("delta(t^3, {1,2}, {2,3}, B) = 0 for B13 = 0", delta(jac, reference::monomial(3), i12, i23),
      0.0);
  add("delta(t^4, {1,2}, {2,3}, B) = -4 tr(B12* B12 B23 B23*)",
      delta(jac, reference::monomial(4), i12, i23), quartic_block_defect(jac, p3));
  return out;
}

enum class CounterexampleRegime { kBetween2And3, kAbove3, kNegative, kNear2 };

inline std::string to_string(CounterexampleRegime r) {
  switch (r) {
    case CounterexampleRegime::kBetween2And3:
      return "p in (2,3)";
    case CounterexampleRegime::kAbove3:
      return "p > 3";
    case CounterexampleRegime::kNegative:
      return "p < 0";
    case CounterexampleRegime::kNear2:
      return "p near 2";
  }
  return "?";
}

struct BlockCounterexample {
  HermitianMatrix a;
  IndexSet i;
  IndexSet j;
  double p = 0.0;
  double delta = 0.0;
  double tolerance = 0.0;
  double s = 0.0;
  int attempt = 0;  // 0 = canonical block, >0 = seeded random block
};

namespace detail {

// B with B13 = 0 and every L2 vertex joined to L1 and L3 (B12 B23 != 0), or
// with all off-diagonal entries 1 (B13 != 0). Scaled to spectral norm 1.
inline HermitianMatrix canonical_block(std::size_t m, bool corner) {
  RealMatrix b(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const bool touches_l2 = (i != 0 && i != m - 1) || (j != 0 && j != m - 1);
      if (corner || touches_l2) b(i, j) = 1.0;
    }
  HermitianMatrix h(b);
  const auto sv = singular_values(h);
  return (1.0 / sv.front()) * h;
}

inline HermitianMatrix random_block(std::size_t m, bool corner, Rng& rng) {
  const BlockPartition p = BlockPartition::canonical(m);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  RealMatrix b(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool across = (p.l1.contains(i) && p.l3.contains(j)) ||
                          (p.l3.contains(i) && p.l1.contains(j));
      if (across && !corner) continue;
      b(i, j) = b(j, i) = u(rng);
    }
  HermitianMatrix h(b);
  const auto sv = singular_values(h);
  return (1.0 / sv.front()) * h;
}

inline double regime_exponent(CounterexampleRegime r) {
  switch (r) {
    case CounterexampleRegime::kBetween2And3:
      return 2.5;
    case CounterexampleRegime::kAbove3:
      return 3.5;
    case CounterexampleRegime::kNegative:
      return -1.0;
    case CounterexampleRegime::kNear2:
      return 2.0;
  }
  return 2.0;
}

// Expected sign of delta(t^p, I, J, Id + sB) for small s.
inline int regime_sign(CounterexampleRegime r) {
  return r == CounterexampleRegime::kBetween2And3 ? 1 : -1;
}

}  // namespace detail

// Strict witness for a regime of T_p on A = Id + s B:
// p in (2,3) gives delta > 0, p > 3 and p < 0 give delta < 0 (quartic term of
// the expansion in s with B13 = 0), and p near 2 gives delta < 0 from the
// quadratic term with B13 != 0, checked on p = 1.90, 1.95, 1.99, 2.0.
// s runs over 0.5, 0.25, ... before seeded random blocks are tried.
inline BlockCounterexample construct_block_counterexample(CounterexampleRegime regime,
                                                          std::size_t m, std::uint64_t seed) {
  const BlockPartition part = BlockPartition::canonical(m);
  const bool corner = regime == CounterexampleRegime::kNear2;
  const int sign = detail::regime_sign(regime);
  std::vector<double> exponents{detail::regime_exponent(regime)};
  if (regime == CounterexampleRegime::kNear2) exponents = {1.90, 1.95, 1.99, 2.0};

  constexpr int kRandomAttempts = 16;
  constexpr int kShiftSteps = 12;
  for (int attempt = 0; attempt <= kRandomAttempts; ++attempt) {
    Rng rng = make_rng(seed, 0xB10C, static_cast<std::uint64_t>(attempt));
    const HermitianMatrix b =
        attempt == 0 ? detail::canonical_block(m, corner) : detail::random_block(m, corner, rng);
    double s = 0.5;
    for (int step = 0; step < kShiftSteps; ++step, s *= 0.5) {
      const HermitianMatrix a = HermitianMatrix::identity(m) + s * b;
      BlockCounterexample best;
      bool all_strict = true;
      for (double p : exponents) {
        const SpectralFunction f = SpectralFunction::power(p);
        const double tol = default_tolerance(SetFunctionTable::spectral(a, f));
        const double d = delta(a, f, part.i(), part.j()).finite_value();
        if (!(sign * d > 10.0 * tol)) {
          all_strict = false;
          break;
        }
        best = {a, part.i(), part.j(), p, d, tol, s, attempt};
      }
      if (all_strict) return best;
    }
  }
  std::ostringstream os;
  os << "no strict witness found for regime " << to_string(regime) << " with m = " << m
     << ", seed = " << seed << " (" << kRandomAttempts << " random blocks, s down to 2^-"
     << kShiftSteps << ")";
  throw ConvergenceError(os.str());
}

// Eigenvalues of A[I] for every I, so that many functions can share one
// eigendecomposition per subset.
class SubsetSpectra {
 public:
  explicit SubsetSpectra(const HermitianMatrix& a) : dim_(a.dim()) {
    if (dim_ > 14) throw BudgetError("subset spectra support m <= 14");
    spectra_.resize(subset_count(dim_));
    for (std::uint64_t mask = 1; mask < spectra_.size(); ++mask)
      spectra_[mask] = eigenvalues(principal_submatrix(a, IndexSet(dim_, mask)));
  }

  SetFunctionTable table(const SpectralFunction& f) const {
    std::vector<ExtendedReal> v(spectra_.size());
    for (std::size_t mask = 0; mask < spectra_.size(); ++mask)
      v[mask] = trace_from_eigenvalues(spectra_[mask], f);
    return SetFunctionTable(dim_, std::move(v));
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> spectra_;
};

enum class RegimeClaim { kSubmodular, kSupermodular, kModular, kMayViolateSub, kMayViolateSuper };
enum class RegimeStatus { kReproduced, kWitnessFound, kConjecturalTested, kFailed };

inline std::string to_string(RegimeClaim c) {
  switch (c) {
    case RegimeClaim::kSubmodular:
      return "submodular";
    case RegimeClaim::kSupermodular:
      return "supermodular";
    case RegimeClaim::kModular:
      return "modular";
    case RegimeClaim::kMayViolateSub:
      return "may-violate-sub";
    case RegimeClaim::kMayViolateSuper:
      return "may-violate-super";
  }
  return "?";
}

inline std::string to_string(RegimeStatus s) {
  switch (s) {
    case RegimeStatus::kReproduced:
      return "reproduced";
    case RegimeStatus::kWitnessFound:
      return "witness_found";
    case RegimeStatus::kConjecturalTested:
      return "conjectural-tested";
    case RegimeStatus::kFailed:
      return "failed";
  }
  return "?";
}

struct SampleStatistics {
  std::uint64_t matrices = 0;
  std::uint64_t classifications = 0;
  std::uint64_t pairs_evaluated = 0;
  std::uint64_t violations = 0;
  // Most extreme delta in the direction the claim forbids.
  double worst_delta = 0.0;
  double max_tolerance = 0.0;
};

struct ScanRecord {
  std::string row;
  std::size_t m = 0;
  std::uint64_t sample = 0;
  double p = 0.0;
  double min_delta = 0.0;
  double max_delta = 0.0;
  double tolerance = 0.0;
};

struct RegimeRow {
  std::string p_range;
  std::string m_constraint;
  RegimeClaim claim = RegimeClaim::kSubmodular;
  RegimeStatus status = RegimeStatus::kFailed;
  std::string source;
  std::vector<double> exponents;
  std::optional<BlockCounterexample> witness;
  std::optional<SampleStatistics> statistics;
  std::string note;
};

inline RegimeRow make_regime_row(std::string p_range, std::string m_constraint, RegimeClaim claim,
                                 std::string source) {
  RegimeRow row;
  row.p_range = std::move(p_range);
  row.m_constraint = std::move(m_constraint);
  row.claim = claim;
  row.source = std::move(source);
  return row;
}

struct Table1Options {
  std::uint64_t samples = 200;
  std::uint64_t seed = 1;
  std::size_t min_m = 2;
  std::size_t max_m = 6;
  unsigned threads = 1;
};

namespace detail {

// Classifies T_p for every exponent on `samples` random PSD matrices of each
// size; violations are counted against `claim`.
inline SampleStatistics sample_regime(const std::string& row_name, RegimeClaim claim,
                                      const std::vector<double>& exponents,
                                      const std::vector<std::size_t>& sizes, bool positive_definite,
                                      const Table1Options& opt,
                                      std::vector<ScanRecord>* records) {
  struct PerSample {
    std::vector<ScanRecord> recs;
    std::uint64_t pairs = 0;
    std::uint64_t violations = 0;
    double worst = 0.0;
    double max_tol = 0.0;
  };
  SampleStatistics st;
  std::uint64_t stream = std::hash<std::string>{}(row_name) & 0xffffffffULL;
  for (std::size_t m : sizes) {
    std::vector<PerSample> results(opt.samples);
    SetFunctionTable::run_partitioned(
        opt.samples, opt.threads, [&](std::uint64_t begin, std::uint64_t end) {
          for (std::uint64_t k = begin; k < end; ++k) {
            Rng rng = make_rng(opt.seed, stream * 64 + m, k);
            const HermitianMatrix a = random_psd(m, rng, positive_definite);
            const SubsetSpectra spectra(a);
            PerSample& ps = results[k];
            for (double p : exponents) {
              const ModularityReport rep =
                  classify_set_function(spectra.table(SpectralFunction::power(p)));
              ps.pairs += rep.pairs_evaluated;
              ps.max_tol = std::max(ps.max_tol, rep.tolerance);
              if (claim == RegimeClaim::kSubmodular) {
                ps.violations += rep.submodular_violation_count;
                ps.worst = std::min(ps.worst, rep.min_delta);
              } else {
                ps.violations += rep.supermodular_violation_count;
                ps.worst = std::max(ps.worst, rep.max_delta);
              }
              ps.recs.push_back({row_name, m, k, p, rep.min_delta, rep.max_delta, rep.tolerance});
            }
          }
        });
    for (auto& ps : results) {
      ++st.matrices;
      st.classifications += exponents.size();
      st.pairs_evaluated += ps.pairs;
      st.violations += ps.violations;
      st.max_tolerance = std::max(st.max_tolerance, ps.max_tol);
      st.worst_delta = claim == RegimeClaim::kSubmodular ? std::min(st.worst_delta, ps.worst)
                                                         : std::max(st.worst_delta, ps.worst);
      if (records) records->insert(records->end(), ps.recs.begin(), ps.recs.end());
    }
  }
  return st;
}

}  // namespace detail

// One row per line of the regime table for T_p(I, A) = tr A[I]^p on
// nonnegative definite A. Guaranteed rows are checked on random matrices,
// "may not" rows are discharged by a stored strict witness, and the two m = 2
// rows whose proofs are omitted are sampled and labelled conjectural-tested.
inline std::vector<RegimeRow> table1_scan(const Table1Options& opt,
                                          std::vector<ScanRecord>* records = nullptr) {
  if (opt.samples < 1) throw DomainError("table1 scan needs at least one sample");
  std::vector<std::size_t> sizes;
  for (std::size_t m = opt.min_m; m <= opt.max_m; ++m) sizes.push_back(m);
  std::vector<RegimeRow> rows;

  auto witness_row = [&](std::string p_range, RegimeClaim claim, std::string source,
                         CounterexampleRegime regime) {
    RegimeRow row = make_regime_row(std::move(p_range), "m >= 3", claim, std::move(source));
    try {
      BlockCounterexample w = construct_block_counterexample(regime, 3, opt.seed);
      const double again = delta(w.a, SpectralFunction::power(w.p), w.i, w.j).finite_value();
      const bool sign_ok = claim == RegimeClaim::kMayViolateSub ? w.delta < -10 * w.tolerance
                                                                : w.delta > 10 * w.tolerance;
      row.exponents = {w.p};
      if (sign_ok && std::abs(again - w.delta) <= 1e-12) row.status = RegimeStatus::kWitnessFound;
      row.witness = std::move(w);
    } catch (const Error& e) {
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  };

  auto sampled_row = [&](std::string p_range, std::string m_constraint, RegimeClaim claim,
                         std::string source, std::vector<double> exponents,
                         const std::vector<std::size_t>& row_sizes, bool conjectural) {
    RegimeRow row = make_regime_row(p_range, std::move(m_constraint), claim, std::move(source));
    row.exponents = exponents;
    // Negative powers need positive definite samples.
    const bool pd = std::any_of(exponents.begin(), exponents.end(), [](double p) { return p < 0; });
    row.statistics = detail::sample_regime(p_range + " / " + row.m_constraint, claim, exponents,
                                           row_sizes, pd, opt, records);
    if (row.statistics->violations == 0)
      row.status = conjectural ? RegimeStatus::kConjecturalTested : RegimeStatus::kReproduced;
    if (conjectural) row.note = "no proof available; empirical check only";
    rows.push_back(std::move(row));
  };

  {
    // Fixed example for p = -1.
    RegimeRow row =
        make_regime_row("p = -1", "m >= 3", RegimeClaim::kMayViolateSuper, "fixed 3x3 example");
    BlockCounterexample w;
    w.a = reference::inverse_power_example();
    w.i = IndexSet(3, {0, 1});
    w.j = IndexSet(3, {0, 2});
    w.p = -1.0;
    w.delta = delta(w.a, SpectralFunction::power(-1), w.i, w.j).finite_value();
    w.tolerance = default_tolerance(SetFunctionTable::spectral(w.a, SpectralFunction::power(-1)));
    row.exponents = {-1.0};
    if (w.delta > 10 * w.tolerance) row.status = RegimeStatus::kWitnessFound;
    row.witness = w;
    rows.push_back(std::move(row));
  }
  witness_row("p < 0", RegimeClaim::kMayViolateSub, "block construction, quartic term",
              CounterexampleRegime::kNegative);
  sampled_row("p < 0", "m = 2", RegimeClaim::kSupermodular, "omitted", {-0.5, -1.0, -2.0, -3.0},
              {2}, true);
  sampled_row("0 <= p <= 1", "any m", RegimeClaim::kSubmodular, "power trace theorem",
              {0.0, 0.25, 0.5, 0.75, 1.0}, sizes, false);
  sampled_row("1 <= p <= 2", "any m", RegimeClaim::kSupermodular, "power trace theorem",
              {1.0, 1.25, 1.5, 1.75, 2.0}, sizes, false);
  sampled_row("p > 2", "m = 2", RegimeClaim::kSupermodular, "omitted", {2.5, 3.0, 4.0, 5.0}, {2},
              true);
  witness_row("p = 2", RegimeClaim::kMayViolateSub, "block construction, quadratic term",
              CounterexampleRegime::kNear2);
  witness_row("p in (2,3)", RegimeClaim::kMayViolateSuper, "block construction, quartic term",
              CounterexampleRegime::kBetween2And3);
  witness_row("p > 3", RegimeClaim::kMayViolateSub, "block construction, quartic term",
              CounterexampleRegime::kAbove3);
  return rows;
}

inline bool table1_passed(const std::vector<RegimeRow>& rows) {
  return std::none_of(rows.begin(), rows.end(),
                      [](const RegimeRow& r) { return r.status == RegimeStatus::kFailed; });
}

enum class MatrixClass { kNonnegativeDefinite, kMMatrix };

// Direction that T_f is proved to satisfy for the class, if any. Power(1) is
// modular; Log needs an invertible matrix.
inline std::optional<Verdict> guaranteed_verdict(const SpectralFunction& f, MatrixClass cls) {
  using Kind = SpectralFunction::Kind;
  switch (f.kind()) {
    case Kind::kLog:
      return Verdict::kSubmodular;
    case Kind::kXLogX:
      return Verdict::kSupermodular;
    case Kind::kCustom:
      return std::nullopt;
    case Kind::kPower:
      break;
  }
  const double p = f.exponent();
  if (p == 1.0) return Verdict::kModular;
  if (p >= 0.0 && p < 1.0) return Verdict::kSubmodular;
  if (p > 1.0 && p <= 2.0) return Verdict::kSupermodular;
  if (p < 0.0 && cls == MatrixClass::kMMatrix) return Verdict::kSupermodular;
  return std::nullopt;
}

inline bool verdict_consistent(Verdict expected, Verdict got) {
  switch (expected) {
    case Verdict::kSubmodular:
      return satisfies_submodular(got);
    case Verdict::kSupermodular:
      return satisfies_supermodular(got);
    case Verdict::kModular:
      return got == Verdict::kModular;
    case Verdict::kNeither:
      return true;
  }
  return false;
}

struct InequalityCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

// For disjoint I, J: the concatenated spectra of A[I] and A[J] are majorized
// by the spectrum of A[I u J].
inline InequalityCheck majorization_check(const HermitianMatrix& a, const IndexSet& i,
                                          const IndexSet& j) {
  if (!i.disjoint(j))
    throw DomainError("majorization check needs disjoint index sets, got " + i.to_string() +
                      " and " + j.to_string());
  if (!is_nonnegative_definite(a)) throw DomainError("majorization check needs a PSD matrix");
  std::vector<double> joint;
  for (const IndexSet& s : {i, j})
    if (!s.is_empty()) {
      const auto ev = eigenvalues(principal_submatrix(a, s));
      joint.insert(joint.end(), ev.begin(), ev.end());
    }
  std::sort(joint.begin(), joint.end(), std::greater<>());
  const IndexSet u = i | j;
  const std::vector<double> whole =
      u.is_empty() ? std::vector<double>{} : eigenvalues(principal_submatrix(a, u));
  double scale = 1.0;
  for (double v : whole) scale = std::max(scale, std::abs(v));
  const double tol = 1e-9 * scale * std::max<std::size_t>(1, whole.size());
  InequalityCheck r;
  r.holds = true;
  double sx = 0.0;
  double sy = 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < whole.size(); ++k) {
    sx += joint[k];
    sy += whole[k];
    worst = std::max(worst, sx - sy);
    if (sx > sy + tol) r.holds = false;
  }
  if (std::abs(sx - sy) > tol) r.holds = false;
  r.lhs = worst;
  r.rhs = tol;
  return r;
}

// tr(A+B+C)^p + tr C^p <= tr(A+C)^p + tr(B+C)^p for PSD A, B, C and p in [0, 1].
inline InequalityCheck rio_inequality_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                            const HermitianMatrix& c, double p) {
  if (a.dim() != b.dim() || a.dim() != c.dim()) throw DimensionError("matrices differ in size");
  if (p < 0.0 || p > 1.0) throw DomainError("exponent must lie in [0, 1]");
  for (const HermitianMatrix* m : {&a, &b, &c})
    if (!is_nonnegative_definite(*m)) throw DomainError("matrices must be nonnegative definite");
  const SpectralFunction f = SpectralFunction::power(p);
  InequalityCheck r;
  r.lhs = trace_function(a + b + c, f).finite_value() + trace_function(c, f).finite_value();
  r.rhs = trace_function(a + c, f).finite_value() + trace_function(b + c, f).finite_value();
  r.holds = r.lhs <= r.rhs + 1e-9 * std::max(1.0, std::abs(r.rhs));
  return r;
}

// Midpoint convexity of A -> tr f(A[I]).
inline InequalityCheck trace_convexity_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                             const SpectralFunction& f, const IndexSet& i) {
  const HermitianMatrix mid = 0.5 * (a + b);
  InequalityCheck r;
  r.lhs = spectral_trace(mid, f, i).finite_value();
  r.rhs = 0.5 * (spectral_trace(a, f, i).finite_value() + spectral_trace(b, f, i).finite_value());
  r.holds = r.lhs <= r.rhs + 1e-9 * std::max(1.0, std::abs(r.rhs));
  return r;
}

}  // namespace spectral_submod

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


#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace spectral_submod;
using namespace spectral_submod::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const HermitianMatrix kAex = reference::inverse_power_example();

// Standard greedy for w = log det: repeatedly add argmax det A[I u {i}],
// determinants recomputed from scratch; ties to the smallest index.
std::vector<std::size_t> greedy_oracle(const HermitianMatrix& a, std::size_t k) {
  const std::size_t m = a.dim();
  IndexSet chosen = IndexSet::empty(m);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = m;
    double best_det = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (chosen.contains(i)) continue;
      const double d = oracle_determinant(principal_submatrix(a, chosen.with(i)).matrix()).real();
      if (d > best_det * (1 + 1e-12)) {
        best = i;
        best_det = d;
      }
    }
    chosen = chosen.with(best);
    order.push_back(best);
  }
  return order;
}

}  // namespace

TEST_CASE("greedy_select examples", "[greedy]") {
  const CurSelection d = greedy_select(HermitianMatrix::diagonal({3, 2, 1}), 2);
  CHECK(d.indices == IndexSet(3, {0, 1}));
  CHECK(d.det_product == 6.0);
  const CurSelection ex = greedy_select(kAex, 2);
  CHECK(ex.indices == IndexSet(3, {1, 2}));
  REQUIRE(ex.pivots.size() == 2);
  CHECK(ex.pivots[0].index == 1);
  CHECK(ex.pivots[0].value == 33.0);
  CHECK_THAT(ex.pivots[1].value, WithinRel(17.0 / 11.0, 1e-14));
  CHECK_THAT(ex.det_product, WithinRel(51.0, 1e-14));
  const CurSelection z = greedy_select(HermitianMatrix(ComplexMatrix(3, 3)), 2);
  CHECK(z.degenerate);
  CHECK(z.indices == IndexSet(3, {0, 1}));
  CHECK(z.det_product == 0.0);
  CHECK_THROWS_AS(greedy_select(HermitianMatrix::diagonal({1, -1}), 1), DomainError);
  CHECK_THROWS_AS(greedy_select(kAex, 0), DomainError);
}

TEST_CASE("greedy pivots match the log-det greedy oracle", "[greedy][oracle]") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng = make_rng(77, 0, s);
    const std::size_t m = 2 + s % 7;
    const HermitianMatrix a = random_psd(m, rng, true);
    const std::size_t k = 1 + s % std::min<std::size_t>(m, 4);
    const CurSelection sel = greedy_select(a, k);
    REQUIRE_FALSE(sel.degenerate);
    std::vector<std::size_t> order;
    double prod = 1.0;
    for (const Pivot& p : sel.pivots) {
      order.push_back(p.index);
      prod *= p.value;
    }
    REQUIRE(order == greedy_oracle(a, k));
    REQUIRE_THAT(sel.det_product, WithinRel(prod, 1e-10));
    const auto ev = eigenvalues(principal_submatrix(a, sel.indices));
    double det = 1.0;
    for (double l : ev) det *= l;
    REQUIRE_THAT(sel.det_product, WithinRel(det, 1e-8));
  }
}

TEST_CASE("mu_k examples", "[mu_k]") {
  const MaxVolume p = mu_k_exhaustive(kAex, 2, true);
  CHECK_THAT(p.value, WithinRel(51.0, 1e-12));
  CHECK(p.rows == IndexSet(3, {1, 2}));
  const MaxVolume f = mu_k_exhaustive(kAex, 2, false);
  CHECK_THAT(f.value, WithinRel(51.0, 1e-12));
  CHECK(f.rows == f.cols);
  const MaxVolume id = mu_k_exhaustive(HermitianMatrix::identity(4), 2, false);
  CHECK(id.value == 1.0);
  CHECK(id.rows == IndexSet(4, {0, 1}));
  CHECK(id.cols == IndexSet(4, {0, 1}));
  CHECK_THROWS_AS(mu_k_exhaustive(HermitianMatrix::identity(40), 20, true), BudgetError);
  CHECK_THROWS_AS(mu_k_exhaustive(HermitianMatrix::identity(20), 8, false), BudgetError);
}

TEST_CASE("combinations are lexicographic", "[mu_k]") {
  std::vector<std::vector<std::size_t>> seen;
  for_each_combination(4, 2, [&](const std::vector<std::size_t>& c) { seen.push_back(c); });
  CHECK(seen == std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("maximal volume of a PSD matrix is principal", "[mu_k][property]") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng = make_rng(707, 0, s);
    const std::size_t m = 2 + s % 5;
    const HermitianMatrix a = random_psd(m, rng);
    const std::size_t k = 1 + s % std::min<std::size_t>(m, 3);
    const MaxVolume full = mu_k_exhaustive(a, k, false);
    const MaxVolume principal = mu_k_exhaustive(a, k, true);
    REQUIRE(std::abs(full.value - principal.value) <= 1e-10 * std::max(1.0, full.value));
  }
}

TEST_CASE("cur_build examples", "[cur]") {
  Rng rng = make_rng(3);
  const ComplexMatrix g = random_complex_gaussian(5, 2, rng);
  const HermitianMatrix low(g * g.adjoint());
  const CurResult r = cur_build(low, greedy_select(low, 2).indices);
  CHECK(r.achieved_error <= 1e-8);

  const CurResult ex = cur_build(kAex, IndexSet(3, {1, 2}));
  const double s3 = singular_values(kAex).back();
  CHECK(ex.achieved_error <= 3.0 * s3 + 1e-8);
  CHECK_THAT(ex.bound.value(), WithinRel(3.0 * s3, 1e-8));

  const CurResult id = cur_build(HermitianMatrix::identity(3), IndexSet(3, {0, 1}));
  CHECK(max_abs_diff(id.approximant, ComplexMatrix::diagonal(std::vector<double>{1, 1, 0})) < 1e-15);
  CHECK(id.achieved_error == 1.0);
  CHECK_THROWS_AS(cur_build(HermitianMatrix::diagonal({1, 0, 1}), IndexSet(3, {0, 1})), DomainError);
}

TEST_CASE("CUR bound and interpolation on random PD matrices", "[cur][property]") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng rng = make_rng(808, 0, s);
    const std::size_t m = 2 + s % 7;
    const HermitianMatrix a = random_pd_lambda_min_one(m, rng);
    const std::size_t k = 1 + s % std::min<std::size_t>(m, 4);
    const CurSelection sel = greedy_select(a, k);
    const CurResult r = cur_build(a, sel.indices);
    REQUIRE(r.bound.is_finite());
    REQUIRE(r.achieved_error <= r.bound.value() + 1e-8);
    const ComplexMatrix resid = a.matrix() - r.approximant;
    for (std::size_t i : sel.indices.indices())
      for (std::size_t j = 0; j < m; ++j) {
        REQUIRE(std::abs(resid(i, j)) <= 1e-8);
        REQUIRE(std::abs(resid(j, i)) <= 1e-8);
      }
    REQUIRE(hadamard_upper_bound(a, sel.indices, k) >= r.bound.value() - 1e-9);
  }
}

TEST_CASE("hadamard bound examples", "[cur]") {
  const HermitianMatrix d = HermitianMatrix::diagonal({4, 3, 2, 1});
  CHECK_THAT(hadamard_upper_bound(d, IndexSet(4, {0, 1}), 2), WithinRel(3.0 * 2.0, 1e-12));
  const double s3 = singular_values(kAex).back();
  CHECK_THAT(hadamard_upper_bound(kAex, IndexSet(3, {1, 2}), 2), WithinRel(33.0 * 19.0 / 51.0 * 3.0 * s3, 1e-10));
  CHECK_THAT(hadamard_upper_bound(HermitianMatrix::identity(4), IndexSet(4, {1, 3}), 2), WithinRel(3.0, 1e-12));
}

TEST_CASE("greedy bound check examples", "[greedy]") {
  const GreedyBoundReport d = greedy_bound_check(HermitianMatrix::diagonal({4, 3, 2}), 2);
  CHECK(d.holds);
  CHECK(d.lhs == 12.0);
  CHECK(d.mu_k == 12.0);
  const GreedyBoundReport ex = greedy_bound_check(kAex, 2);
  CHECK(ex.holds);
  CHECK_THAT(ex.lhs, WithinRel(51.0, 1e-12));
  CHECK_THAT(ex.mu_k, WithinRel(51.0, 1e-12));
  CHECK_THAT(ex.rhs, WithinRel(std::pow(51.0, 1 - 1 / std::numbers::e), 1e-12));
  CHECK_FALSE(ex.monotonicity.nondecreasing);
  CHECK_FALSE(ex.lambda_min_at_least_one);
}

TEST_CASE("greedy guarantee on PD matrices with lambda_min >= 1", "[greedy][property]") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng = make_rng(909, 0, s);
    const std::size_t m = 2 + s % 7;
    const HermitianMatrix a = random_pd_lambda_min_one(m, rng);
    const std::size_t k = 1 + s % std::min<std::size_t>(m, 4);
    const GreedyBoundReport r = greedy_bound_check(a, k);
    REQUIRE(r.lambda_min_at_least_one);
    REQUIRE(r.monotonicity.nondecreasing);
    REQUIRE(r.holds);
  }
}

TEST_CASE("Frobenius-optimal core", "[cur]") {
  const FrobeniusCore id = optimal_core_frobenius(ComplexMatrix::identity(3), IndexSet(3, {0, 1}), IndexSet(3, {0, 1}));
  CHECK(max_abs_diff(id.core, ComplexMatrix::identity(2)) < 1e-12);
  CHECK_THAT(id.frobenius_error, WithinAbs(1.0, 1e-12));
  Rng rng = make_rng(6);
  const ComplexMatrix g = random_complex_gaussian(5, 2, rng);
  const ComplexMatrix low = g * g.adjoint();
  CHECK(optimal_core_frobenius(low, IndexSet(5, {0, 1}), IndexSet(5, {0, 1})).frobenius_error <= 1e-8);
  const IndexSet s(3, {1, 2});
  CHECK(optimal_core_frobenius(kAex.matrix(), s, s).frobenius_error <= *cur_frobenius_error(kAex.matrix(), s, s) + 1e-8);
  for (int rep = 0; rep < 30; ++rep) {
    const ComplexMatrix a = random_complex_gaussian(5, 5, rng);
    const IndexSet rows(5, {0, 2});
    const IndexSet cols(5, {1, 4});
    const auto plain = cur_frobenius_error(a, rows, cols);
    REQUIRE(plain.has_value());
    REQUIRE(optimal_core_frobenius(a, rows, cols).frobenius_error <= *plain + 1e-8);
  }
}

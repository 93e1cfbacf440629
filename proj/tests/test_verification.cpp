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

#include "support.hpp"

using namespace spectral_submod;
using namespace spectral_submod::testing;
using Catch::Matchers::WithinAbs;


TEST_CASE("reference examples reproduce", "[examples]") {
  const auto items = run_paper_examples();
  REQUIRE(items.size() == 5);
  for (const auto& it : items) {
    INFO(it.name);
    CHECK(it.pass);
  }
}

TEST_CASE("block identities on random block matrices", "[blocks][property]") {
  Rng rng = make_rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t m = 3 + static_cast<std::size_t>(rep) % 4;
    const BlockPartition p = random_partition(m, rng);
    const HermitianMatrix b = random_block_matrix(p, false, rng);
    const double d2 = delta(b, reference::monomial(2), p.i(), p.j()).value();
    CHECK(close_rel(d2, quadratic_block_defect(b, p), 1e-9));
    const HermitianMatrix c = random_block_matrix(p, true, rng);
    CHECK(std::abs(delta(c, reference::monomial(3), p.i(), p.j()).value()) <= 1e-9 * std::max(1.0, entrywise_max_norm(c)));
    CHECK(close_rel(delta(c, reference::monomial(4), p.i(), p.j()).value(), quartic_block_defect(c, p), 1e-9));
  }
}

TEST_CASE("block counterexamples have the predicted sign", "[blocks]") {
  for (std::size_t m : {3, 4, 6}) {
    const auto pos = construct_block_counterexample(CounterexampleRegime::kBetween2And3, m, 1);
    CHECK(pos.delta > 10 * pos.tolerance);
    for (auto r : {CounterexampleRegime::kAbove3, CounterexampleRegime::kNegative, CounterexampleRegime::kNear2}) {
      const auto w = construct_block_counterexample(r, m, 1);
      CHECK(w.delta < -10 * w.tolerance);
      CHECK_THAT(delta(w.a, SpectralFunction::power(w.p), w.i, w.j).value(), WithinAbs(w.delta, 1e-12));
    }
  }
  CHECK_THROWS_AS(construct_block_counterexample(CounterexampleRegime::kAbove3, 2, 1), DomainError);
}

TEST_CASE("sign persists for p approaching 2", "[blocks]") {
  const auto w = construct_block_counterexample(CounterexampleRegime::kNear2, 3, 1);
  for (double p : {1.90, 1.95, 1.99, 2.0})
    CHECK(delta(w.a, SpectralFunction::power(p), w.i, w.j).value() < 0.0);
}

TEST_CASE("counterexamples are deterministic", "[blocks]") {
  const auto a = construct_block_counterexample(CounterexampleRegime::kNegative, 5, 9);
  const auto b = construct_block_counterexample(CounterexampleRegime::kNegative, 5, 9);
  CHECK(a.delta == b.delta);
  CHECK(a.a.matrix() == b.a.matrix());
}

TEST_CASE("table1 scan rows", "[table1]") {
  Table1Options opt;
  opt.samples = 20;
  opt.seed = 3;
  opt.threads = 2;
  const auto rows = table1_scan(opt);
  REQUIRE(rows.size() == 9);
  CHECK(table1_passed(rows));
  int conjectural = 0;
  for (const auto& r : rows) {
    INFO(r.p_range << " " << r.m_constraint);
    if (r.status == RegimeStatus::kConjecturalTested) ++conjectural;
    if (r.claim == RegimeClaim::kMayViolateSub || r.claim == RegimeClaim::kMayViolateSuper) {
      REQUIRE(r.witness.has_value());
      CHECK(r.status == RegimeStatus::kWitnessFound);
    } else {
      REQUIRE(r.statistics.has_value());
      CHECK(r.statistics->violations == 0);
    }
  }
  CHECK(conjectural == 2);
  const auto again = table1_scan(opt);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].status == again[k].status);
    if (rows[k].statistics) CHECK(rows[k].statistics->worst_delta == again[k].statistics->worst_delta);
  }
  opt.samples = 0;
  CHECK_THROWS_AS(table1_scan(opt), DomainError);
}

TEST_CASE("majorization examples", "[majorization]") {
  CHECK(majorization_check(HermitianMatrix::diagonal({3, 1, 2}), IndexSet(3, {0}), IndexSet(3, {1, 2})).holds);
  CHECK(majorization_check(reference::inverse_power_example(), IndexSet(3, {0}), IndexSet(3, {1, 2})).holds);
  CHECK_THROWS_AS(majorization_check(reference::jacobi_example(), IndexSet(3, {0, 1}), IndexSet(3, {1, 2})), DomainError);
  Rng rng = make_rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 2 + static_cast<std::size_t>(rep) % 5;
    const HermitianMatrix a = random_psd(m, rng);
    BlockPartition p{IndexSet(m, {0}), IndexSet::empty(m), IndexSet(m, {1})};
    if (m >= 3) p = random_partition(m, rng);
    REQUIRE(majorization_check(a, p.l1, p.l3).holds);
  }
}

TEST_CASE("three-matrix power trace inequality", "[rio]") {
  const HermitianMatrix a = HermitianMatrix::identity(2);
  const InequalityCheck eq = rio_inequality_check(a, 2.0 * a, HermitianMatrix(ComplexMatrix(2, 2)), 1.0);
  CHECK_THAT(eq.lhs, WithinAbs(eq.rhs, 1e-12));
  const InequalityCheck id = rio_inequality_check(a, a, a, 0.5);
  CHECK_THAT(id.lhs, WithinAbs(2 * std::sqrt(3.0) + 2.0, 1e-12));
  CHECK_THAT(id.rhs, WithinAbs(4 * std::sqrt(2.0), 1e-12));
  CHECK(id.holds);
  CHECK_THROWS_AS(rio_inequality_check(a, a, a, 1.5), DomainError);
  CHECK_THROWS_AS(rio_inequality_check(a, a, HermitianMatrix::diagonal({1, -1}), 0.5), DomainError);
  Rng rng = make_rng(10);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep) % 5;
    const HermitianMatrix x = random_psd(m, rng);
    const HermitianMatrix y = random_psd(m, rng);
    const HermitianMatrix z = random_psd(m, rng);
    for (double p : {0.25, 0.5, 0.75}) REQUIRE(rio_inequality_check(x, y, z, p).holds);
  }
}

TEST_CASE("guaranteed verdicts", "[regimes]") {
  CHECK(guaranteed_verdict(SpectralFunction::power(0.5), MatrixClass::kNonnegativeDefinite) == Verdict::kSubmodular);
  CHECK(guaranteed_verdict(SpectralFunction::power(1), MatrixClass::kNonnegativeDefinite) == Verdict::kModular);
  CHECK(guaranteed_verdict(SpectralFunction::power(1.5), MatrixClass::kNonnegativeDefinite) == Verdict::kSupermodular);
  CHECK_FALSE(guaranteed_verdict(SpectralFunction::power(-1), MatrixClass::kNonnegativeDefinite).has_value());
  CHECK(guaranteed_verdict(SpectralFunction::power(-1), MatrixClass::kMMatrix) == Verdict::kSupermodular);
  CHECK_FALSE(guaranteed_verdict(SpectralFunction::power(3), MatrixClass::kMMatrix).has_value());
  CHECK(verdict_consistent(Verdict::kSubmodular, Verdict::kModular));
  CHECK_FALSE(verdict_consistent(Verdict::kModular, Verdict::kSubmodular));
}

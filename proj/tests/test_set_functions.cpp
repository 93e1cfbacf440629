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
using Catch::Matchers::WithinRel;

namespace {

const HermitianMatrix kAex = reference::inverse_power_example();

// Double-loop classification with four independent traces per pair.
struct OracleVerdict {
  double min_delta = 0.0;
  double max_delta = 0.0;
};

OracleVerdict oracle_classify(const HermitianMatrix& a, const std::function<double(double)>& f) {
  const std::size_t m = a.dim();
  OracleVerdict r;
  for (std::uint64_t i = 0; i < subset_count(m); ++i)
    for (std::uint64_t j = i + 1; j < subset_count(m); ++j) {
      const IndexSet si(m, i);
      const IndexSet sj(m, j);
      const double d = oracle_trace(a, si, f) + oracle_trace(a, sj, f) -
                       oracle_trace(a, si | sj, f) - oracle_trace(a, si & sj, f);
      r.min_delta = std::min(r.min_delta, d);
      r.max_delta = std::max(r.max_delta, d);
    }
  return r;
}

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

}  // namespace

TEST_CASE("spectral_trace examples", "[trace]") {
  CHECK_THAT(spectral_trace(kAex, SpectralFunction::power(-1), IndexSet(3, {0, 1})).value(),
             WithinAbs(38.0 / 21.0, 1e-12));
  CHECK(spectral_trace(kAex, SpectralFunction::log(), IndexSet::empty(3)).value() == 0.0);
  CHECK(spectral_trace(kAex, SpectralFunction::power(-2), IndexSet::empty(3)).value() == 0.0);
  for (double p : {-1.0, 0.0, 0.5, 3.0})
    CHECK_THAT(spectral_trace(HermitianMatrix::identity(5), SpectralFunction::power(p), IndexSet(5, {0, 3, 4})).value(),
               WithinAbs(3.0, 1e-12));
}

TEST_CASE("delta examples", "[delta]") {
  const IndexSet i12(3, {0, 1});
  const IndexSet i13(3, {0, 2});
  CHECK_THAT(delta(kAex, SpectralFunction::power(-1), i12, i13).value(), WithinAbs(16.0 / 35.0, 1e-10));
  CHECK_THAT(delta(reference::operator_convex_example(), reference::operator_convex_map(), i12, i13).value(),
             WithinAbs(44.0 / 1085.0, 1e-10));
  CHECK(delta(kAex, SpectralFunction::log(), i12, i12).value() == 0.0);
}

TEST_CASE("delta is exactly symmetric and vanishes on comparable pairs", "[delta][property]") {
  Rng rng = make_rng(101);
  for (std::size_t m = 1; m <= 6; ++m) {
    const HermitianMatrix a = random_psd(m, rng, true);
    for (const SpectralFunction& f : {SpectralFunction::power(0.5), SpectralFunction::xlogx(), SpectralFunction::log()}) {
      const SetFunctionTable t = SetFunctionTable::spectral(a, f);
      for (std::uint64_t i = 0; i < subset_count(m); ++i)
        for (std::uint64_t j = 0; j < subset_count(m); ++j) {
          const IndexSet si(m, i);
          const IndexSet sj(m, j);
          const ExtendedReal d1 = t.defect(si, sj);
          const ExtendedReal d2 = t.defect(sj, si);
          REQUIRE(d1.value() == d2.value());
          if (si.subset_of(sj)) REQUIRE(d1.value() == 0.0);
        }
    }
  }
}

TEST_CASE("classify_modularity examples", "[classify]") {
  Rng rng = make_rng(5150);
  const HermitianMatrix a = random_psd(5, rng);
  CHECK(classify_modularity(a, SpectralFunction::power(1.5)).verdict == Verdict::kSupermodular);
  CHECK(classify_modularity(a, SpectralFunction::power(0.5)).verdict == Verdict::kSubmodular);
  CHECK(classify_modularity(random_hermitian(5, rng), reference::monomial(1)).verdict == Verdict::kModular);
  CHECK_THROWS_AS(classify_modularity(HermitianMatrix::identity(15), SpectralFunction::power(1)), BudgetError);
}

TEST_CASE("classification regimes on random PSD matrices", "[classify][property]") {
  for (std::size_t m = 3; m <= 6; ++m) {
    for (std::uint64_t k = 0; k < 200; ++k) {
      Rng rng = make_rng(9, m, k);
      const HermitianMatrix a = random_psd(m, rng, true);
      for (double p : {0.0, 0.25, 0.5, 0.75, 1.0})
        REQUIRE(satisfies_submodular(classify_modularity(a, SpectralFunction::power(p)).verdict));
      for (double p : {1.0, 1.25, 1.5, 1.75, 2.0})
        REQUIRE(satisfies_supermodular(classify_modularity(a, SpectralFunction::power(p)).verdict));
      REQUIRE(satisfies_supermodular(classify_modularity(a, SpectralFunction::xlogx()).verdict));
      REQUIRE(satisfies_submodular(classify_modularity(a, SpectralFunction::log()).verdict));
    }
  }
}

TEST_CASE("classification agrees with a double-loop oracle", "[classify][oracle]") {
  Rng rng = make_rng(123);
  const std::vector<std::pair<SpectralFunction, std::function<double(double)>>> fs{
      {SpectralFunction::power(0.5), [](double x) { return std::sqrt(std::max(0.0, x)); }},
      {SpectralFunction::power(3.0), [](double x) { return std::pow(std::max(0.0, x), 3.0); }},
      {SpectralFunction::xlogx(), [](double x) { return xlogx(std::max(0.0, x)); }},
  };
  for (int rep = 0; rep < 50; ++rep) {
    const HermitianMatrix a = random_psd(3 + rep % 3, rng, true);
    const auto& [f, scalar] = fs[static_cast<std::size_t>(rep) % fs.size()];
    const ModularityReport r = classify_modularity(a, f, std::nullopt, 2);
    const OracleVerdict o = oracle_classify(a, scalar);
    const double scale = 1e-9 * std::max(1.0, SetFunctionTable::spectral(a, f).finite_scale());
    REQUIRE_THAT(r.min_delta, WithinAbs(o.min_delta, scale));
    REQUIRE_THAT(r.max_delta, WithinAbs(o.max_delta, scale));
    const bool sub = o.min_delta >= -r.tolerance;
    const bool super = o.max_delta <= r.tolerance;
    REQUIRE(satisfies_submodular(r.verdict) == sub);
    REQUIRE(satisfies_supermodular(r.verdict) == super);
  }
}

TEST_CASE("witnesses re-evaluate and are ordered", "[classify]") {
  const ModularityReport r = classify_modularity(kAex, SpectralFunction::power(-1));
  REQUIRE(r.verdict == Verdict::kNeither);
  REQUIRE_FALSE(r.supermodular_violations.empty());
  REQUIRE(r.supermodular_violations.size() <= ModularityReport::kMaxWitnesses);
  for (const auto* list : {&r.submodular_violations, &r.supermodular_violations}) {
    for (std::size_t k = 0; k < list->size(); ++k) {
      const Witness& w = (*list)[k];
      CHECK_THAT(delta(kAex, SpectralFunction::power(-1), w.i, w.j).value(), WithinAbs(w.delta, 1e-12));
      if (k > 0) CHECK(std::abs((*list)[k - 1].delta) >= std::abs(w.delta));
    }
  }
  CHECK(r.argmax.has_value());
}

TEST_CASE("threaded classification is deterministic", "[classify]") {
  Rng rng = make_rng(4);
  const HermitianMatrix a = random_hermitian(7, rng);
  const ModularityReport one = classify_modularity(a, reference::monomial(2), std::nullopt, 1);
  const ModularityReport many = classify_modularity(a, reference::monomial(2), std::nullopt, 4);
  CHECK(one.min_delta == many.min_delta);
  CHECK(one.max_delta == many.max_delta);
  REQUIRE(one.submodular_violations.size() == many.submodular_violations.size());
  for (std::size_t k = 0; k < one.submodular_violations.size(); ++k) {
    CHECK(one.submodular_violations[k].i == many.submodular_violations[k].i);
    CHECK(one.submodular_violations[k].delta == many.submodular_violations[k].delta);
  }
}

TEST_CASE("pairs with infinite values are skipped", "[classify]") {
  const HermitianMatrix a = HermitianMatrix::diagonal({1, 0, 2});
  const ModularityReport r = classify_modularity(a, SpectralFunction::log());
  CHECK(r.pairs_skipped > 0);
  CHECK(r.pairs_evaluated + r.pairs_skipped == subset_count(3) * (subset_count(3) - 1) / 2);
  CHECK(satisfies_submodular(r.verdict));
}

TEST_CASE("is_nondecreasing examples", "[monotone]") {
  CHECK(is_nondecreasing(2.0 * HermitianMatrix::identity(4), SpectralFunction::log()).nondecreasing);
  Rng rng = make_rng(77);
  CHECK(is_nondecreasing(random_pd_lambda_min_one(5, rng), SpectralFunction::log()).nondecreasing);
  const MonotonicityReport r = is_nondecreasing(HermitianMatrix::diagonal({0.1, 0.2}), SpectralFunction::log());
  CHECK_FALSE(r.nondecreasing);
  REQUIRE(r.from.has_value());
  CHECK(r.from->is_empty());
  CHECK(*r.to == IndexSet(2, {0}));
}

TEST_CASE("convexity of A -> tr f(A[I])", "[convexity][property]") {
  Rng rng = make_rng(15);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t m = 2 + static_cast<std::size_t>(rep) % 4;
    const HermitianMatrix a = random_psd(m, rng, true);
    const HermitianMatrix b = random_psd(m, rng, true);
    for (const SpectralFunction& f : {SpectralFunction::xlogx(), SpectralFunction::power(1.5), SpectralFunction::power(2)})
      for (std::uint64_t mask = 1; mask < subset_count(m); ++mask)
        REQUIRE(trace_convexity_check(a, b, f, IndexSet(m, mask)).holds);
  }
}

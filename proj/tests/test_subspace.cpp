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

namespace {

ComplexVector e(std::size_t m, std::size_t i) {
  ComplexVector v(m);
  v[i] = 1.0;
  return v;
}

ComplexVector add(ComplexVector a, const ComplexVector& b, double sign = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += sign * b[i];
  return a;
}

// Residual ||P(W) x - x|| for every basis vector x of U.
double containment_residual(const Subspace& u, const Subspace& w) {
  const ComplexMatrix r = w.projector() * u.basis() - u.basis();
  return u.dim() == 0 ? 0.0 : entrywise_max_norm(r);
}

}  // namespace

TEST_CASE("orthonormalize examples", "[subspace]") {
  CHECK(orthonormalize(3, {e(3, 0), e(3, 0), e(3, 1)}).dim() == 2);
  ComplexVector two = e(3, 0);
  two[0] = 2.0;
  const Subspace s = orthonormalize(3, {two});
  CHECK(s.dim() == 1);
  CHECK(std::abs(s.basis()(0, 0) - 1.0) < 1e-15);
  const Subspace p = orthonormalize(3, {add(e(3, 0), e(3, 1)), add(e(3, 0), e(3, 1), -1.0)});
  CHECK(p.dim() == 2);
  CHECK(p.orthonormality_defect() < 1e-15);
  CHECK_THROWS_AS(orthonormalize(3, {e(2, 0)}), DimensionError);
}

TEST_CASE("compress examples", "[subspace]") {
  Rng rng = make_rng(12);
  const HermitianMatrix a = random_hermitian(5, rng);
  const IndexSet set(5, {1, 3});
  const auto c = eigenvalues(compress(a, Subspace::coordinate(set)));
  const auto d = eigenvalues(principal_submatrix(a, set));
  for (std::size_t k = 0; k < c.size(); ++k) CHECK_THAT(c[k], WithinAbs(d[k], 1e-12));
  const Subspace full = random_subspace(5, 5, rng);
  const auto f = eigenvalues(compress(a, full));
  const auto g = eigenvalues(a);
  for (std::size_t k = 0; k < 5; ++k) CHECK_THAT(f[k], WithinAbs(g[k], 1e-10));
  const Subspace u = random_subspace(5, 3, rng);
  CHECK(max_abs_diff(compress(HermitianMatrix::identity(5), u).matrix(), ComplexMatrix::identity(3)) < 1e-12);
}

TEST_CASE("compress orientation is entry (i, j) = x_j* A x_i", "[subspace]") {
  const HermitianMatrix a(ComplexMatrix{{1.0, cplx(0, 1)}, {cplx(0, -1), 2.0}});
  const Subspace id(ComplexMatrix::identity(2));
  const HermitianMatrix c = compress(a, id);
  CHECK(c(0, 1) == a(1, 0));
  CHECK(c(1, 0) == a(0, 1));
}

TEST_CASE("sum and intersection examples", "[subspace]") {
  const std::size_t m = 3;
  const Subspace s1 = orthonormalize(m, {e(m, 0)});
  const Subspace s2 = orthonormalize(m, {e(m, 1)});
  CHECK(subspace_sum(s1, s2).dim() == 2);
  CHECK(subspace_sum(s1, s1).dim() == 1);
  CHECK(subspace_sum(s1, orthonormalize(m, {add(e(m, 0), e(m, 1))})).dim() == 2);
  const Subspace u = orthonormalize(m, {e(m, 0), e(m, 1)});
  const Subspace v = orthonormalize(m, {e(m, 1), e(m, 2)});
  const Subspace meet = subspace_intersection(u, v);
  REQUIRE(meet.dim() == 1);
  CHECK(std::abs(std::abs(meet.basis()(1, 0)) - 1.0) < 1e-10);
  CHECK(subspace_intersection(u, u).dim() == 2);
  CHECK(subspace_intersection(s1, s2).dim() == 0);
}

TEST_CASE("subspace_delta examples", "[subspace]") {
  Rng rng = make_rng(99);
  const HermitianMatrix a = random_psd(5, rng, true);
  const SpectralFunction f = SpectralFunction::power(1.5);
  for (std::uint64_t i = 0; i < 32; i += 3)
    for (std::uint64_t j = 0; j < 32; j += 5) {
      const IndexSet si(5, i);
      const IndexSet sj(5, j);
      CHECK_THAT(subspace_delta(a, f, Subspace::coordinate(si), Subspace::coordinate(sj)).value(),
                 WithinAbs(delta(a, f, si, sj).value(), 1e-9));
    }
  const Subspace u = random_subspace(5, 2, rng);
  CHECK_THAT(subspace_delta(a, f, u, u).value(), WithinAbs(0.0, 1e-9));
}

TEST_CASE("compatible pairs follow the index-set regimes", "[subspace][property]") {
  const SpectralFunction fs[] = {SpectralFunction::power(0.5), SpectralFunction::power(1.5),
                                 SpectralFunction::power(2), SpectralFunction::xlogx()};
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng = make_rng(31, 0, k);
    const std::size_t m = 1 + k % 6;
    const HermitianMatrix a = random_psd(m, rng);
    for (int pair = 0; pair < 20; ++pair) {
      const SubspacePair uv = random_compatible_pair(m, rng);
      REQUIRE(max_abs_diff(uv.u.projector() * uv.v.projector(), uv.v.projector() * uv.u.projector()) <= 1e-10);
      for (const SpectralFunction& f : fs) {
        const double d = subspace_delta(a, f, uv.u, uv.v).value();
        const double tol = 1e-8 * std::max(1.0, trace_function(a, f).value());
        if (f.kind() == SpectralFunction::Kind::kPower && f.exponent() < 1)
          REQUIRE(d >= -tol);
        else
          REQUIRE(d <= tol);
      }
    }
  }
}

TEST_CASE("generic pairs can break the lattice inequality", "[subspace]") {
  // Two lines close to each other span the plane and meet in zero.
  const HermitianMatrix a = HermitianMatrix::diagonal({1, 0});
  const double e = 0.1;
  const auto line = [](double x, double y) { return orthonormalize(2, {{x, y}}); };
  const Subspace u0 = line(std::sin(e), std::cos(e));
  const Subspace v0 = line(-std::sin(e), std::cos(e));
  REQUIRE(subspace_intersection(u0, v0).dim() == 0);
  const double d_half = subspace_delta(a, SpectralFunction::power(0.5), u0, v0).value();
  CHECK_THAT(d_half, WithinAbs(2 * std::sin(e) - 1, 1e-12));
  CHECK(d_half < 0);

  const Subspace u1 = line(std::cos(e), std::sin(e));
  const Subspace v1 = line(std::cos(e), -std::sin(e));
  const double d_two = subspace_delta(a, SpectralFunction::power(2), u1, v1).value();
  CHECK_THAT(d_two, WithinAbs(2 * std::pow(std::cos(e), 4) - 1, 1e-12));
  CHECK(d_two > 0);
}

TEST_CASE("subspace lattice properties on random samples", "[subspace][property]") {
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng = make_rng(2718, 0, k);
    const std::size_t m = 1 + k % 6;
    const HermitianMatrix a = random_psd(m, rng);
    const auto spec = eigenvalues(a);
    for (int pair = 0; pair < 20; ++pair) {
      const Subspace u = random_subspace(m, rng);
      const Subspace v = random_subspace(m, rng);
      const Subspace sum = subspace_sum(u, v);
      const Subspace meet = subspace_intersection(u, v);
      REQUIRE(sum.dim() + meet.dim() == u.dim() + v.dim());
      REQUIRE(meet.orthonormality_defect() <= 1e-10);
      REQUIRE(sum.orthonormality_defect() <= 1e-10);
      REQUIRE(containment_residual(meet, u) <= 1e-8);
      REQUIRE(containment_residual(meet, v) <= 1e-8);
      REQUIRE(containment_residual(u, sum) <= 1e-8);
      if (u.dim() == 0) continue;
      const auto cu = eigenvalues(compress(a, u));
      const double tol = 1e-10 * std::max(1.0, spec.front());
      REQUIRE(cu.front() <= spec.front() + tol);
      REQUIRE(cu.back() >= spec.back() - tol);
      for (std::size_t j = 0; j < cu.size(); ++j) REQUIRE(cu[j] <= spec[j] + tol);
    }
  }
}

TEST_CASE("top eigenvectors attain the top eigenvalues", "[subspace]") {
  Rng rng = make_rng(1);
  const HermitianMatrix a = random_hermitian(6, rng);
  const EigenDecomposition eig = hermitian_eig(a);
  for (std::size_t j = 1; j <= 6; ++j) {
    ComplexMatrix x(6, j);
    for (std::size_t c = 0; c < j; ++c)
      for (std::size_t i = 0; i < 6; ++i) x(i, c) = eig.vectors(i, c);
    const auto cu = eigenvalues(compress(a, Subspace(x)));
    for (std::size_t i = 0; i < j; ++i) CHECK_THAT(cu[i], WithinAbs(eig.eigenvalues[i], 1e-9));
  }
}

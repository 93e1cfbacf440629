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
// Random test ensembles. All generators are deterministic functions of the
// engine state.
//

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spectral_submod/hermitian.hpp"
#include "spectral_submod/matrix.hpp"
#include "spectral_submod/mmatrix.hpp"
#include "spectral_submod/subspace.hpp"

namespace spectral_submod {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; derives independent per-sample seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0) {
  return Rng(mix_seed(seed ^ mix_seed(stream * 0x100000001b3ULL + index)));
}

// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
inline cplx complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline ComplexMatrix random_complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = complex_gaussian(rng);
  return g;
}

// G G* with G an m x m standard complex Gaussian matrix. With `shift`, adds
// eps Id where eps = 1e-6 tr(G G*) / m.
inline HermitianMatrix random_psd(std::size_t m, Rng& rng, bool shift = false) {
  const ComplexMatrix g = random_complex_gaussian(m, m, rng);
  ComplexMatrix a = g * g.adjoint();
  if (shift) {
    const double eps = 1e-6 * a.trace().real() / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) a(i, i) += eps;
  }
  return HermitianMatrix(a);
}

// G G* + Id, so lambda_min >= 1.
inline HermitianMatrix random_pd_lambda_min_one(std::size_t m, Rng& rng) {
  const ComplexMatrix g = random_complex_gaussian(m, m, rng);
  return HermitianMatrix(g * g.adjoint() + ComplexMatrix::identity(m));
}

inline HermitianMatrix random_hermitian(std::size_t m, Rng& rng) {
  const ComplexMatrix g = random_complex_gaussian(m, m, rng);
  return HermitianMatrix((g + g.adjoint()) * cplx(0.5));
}

// Entries uniform on [0, 1).
inline RealMatrix random_nonnegative(std::size_t m, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealMatrix b(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) b(i, j) = u(rng);
  return b;
}

// s Id - B with B uniform nonnegative and s = rho(B) (1 + u), u ~ U[0.1, 1].
inline RealMatrix random_invertible_mmatrix(std::size_t m, Rng& rng, bool symmetric = false) {
  RealMatrix b = random_nonnegative(m, rng);
  if (symmetric)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < i; ++j) b(i, j) = b(j, i);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  const double s = spectral_radius(b) * (1.0 + u(rng));
  RealMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = (i == j ? s : 0.0) - b(i, j);
  return a;
}

// Orthonormalized span of r standard complex Gaussian vectors.
inline Subspace random_subspace(std::size_t m, std::size_t r, Rng& rng) {
  std::vector<ComplexVector> vs;
  for (std::size_t k = 0; k < r; ++k) {
    ComplexVector v(m);
    for (auto& c : v) c = complex_gaussian(rng);
    vs.push_back(std::move(v));
  }
  return orthonormalize(m, vs);
}

// Dimension drawn uniformly from {0, ..., m}.
inline Subspace random_subspace(std::size_t m, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, m);
  const std::size_t r = d(rng);
  return random_subspace(m, r, rng);
}

struct SubspacePair {
  Subspace u;
  Subspace v;
};

// U and V spanned by random subsets of one random orthonormal basis, so P(U)
// and P(V) commute. Each basis vector lands in U only, V only, both or neither.
inline SubspacePair random_compatible_pair(std::size_t m, Rng& rng) {
  const Subspace q = random_subspace(m, m, rng);
  std::uniform_int_distribution<int> label(0, 3);
  std::vector<ComplexVector> us;
  std::vector<ComplexVector> vs;
  for (const ComplexVector& x : q.vectors()) {
    const int l = label(rng);
    if (l & 1) us.push_back(x);
    if (l & 2) vs.push_back(x);
  }
  return {orthonormalize(m, us), orthonormalize(m, vs)};
}

}  // namespace spectral_submod

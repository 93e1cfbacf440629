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
// Finite-dimensional subspaces of C^m, their lattice operations, and
// compressions A(U) of a hermitian matrix to a subspace.
//

#pragma once

#include <cmath>
#include <vector>

#include "spectral_submod/extended_real.hpp"
#include "spectral_submod/hermitian.hpp"
#include "spectral_submod/index_set.hpp"
#include "spectral_submod/matrix.hpp"
#include "spectral_submod/spectral_function.hpp"

namespace spectral_submod {

using ComplexVector = std::vector<cplx>;

// A subspace with an orthonormal basis stored as the columns of an m x r matrix.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim) : basis_(ambient_dim, 0) {}
  // Columns must already be orthonormal; see orthonormalize().
  explicit Subspace(ComplexMatrix orthonormal_columns) : basis_(std::move(orthonormal_columns)) {}

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const ComplexMatrix& basis() const { return basis_; }

  ComplexVector vector(std::size_t k) const {
    ComplexVector v(ambient_dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = basis_(i, k);
    return v;
  }

  std::vector<ComplexVector> vectors() const {
    std::vector<ComplexVector> out;
    for (std::size_t k = 0; k < dim(); ++k) out.push_back(vector(k));
    return out;
  }

  // Orthogonal projector P(U) = X X*.
  ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

  // max |(X*X - Id)_ij|
  double orthonormality_defect() const {
    return entrywise_max_norm(basis_.adjoint() * basis_ - ComplexMatrix::identity(dim()));
  }

  static Subspace coordinate(const IndexSet& set) {
    const auto idx = set.indices();
    ComplexMatrix x(set.dim(), idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) x(idx[k], k) = 1.0;
    return Subspace(std::move(x));
  }

 private:
  ComplexMatrix basis_;
};

// Modified Gram-Schmidt with one re-orthogonalization pass. A vector whose
// residual norm is <= tol * max(1, |input|) is dropped.
inline Subspace orthonormalize(std::size_t ambient_dim, const std::vector<ComplexVector>& vectors,
                               double tol = 1e-8) {
  std::vector<ComplexVector> kept;
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw DimensionError("vector length differs from ambient dimension");
    double in_norm = 0.0;
    for (const cplx& c : v) in_norm += std::norm(c);
    in_norm = std::sqrt(in_norm);
    ComplexVector w = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < ambient_dim; ++i) proj += std::conj(q[i]) * w[i];
        for (std::size_t i = 0; i < ambient_dim; ++i) w[i] -= proj * q[i];
      }
    }
    double norm = 0.0;
    for (const cplx& c : w) norm += std::norm(c);
    norm = std::sqrt(norm);
    if (norm <= tol * std::max(1.0, in_norm)) continue;
    for (cplx& c : w) c /= norm;
    kept.push_back(std::move(w));
  }
  ComplexMatrix x(ambient_dim, kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k)
    for (std::size_t i = 0; i < ambient_dim; ++i) x(i, k) = kept[k][i];
  return Subspace(std::move(x));
}

// Matrix of A(U) in the stored basis x_1..x_r, entry (i, j) = <A x_i, x_j>
// = x_j* A x_i.
inline HermitianMatrix compress(const HermitianMatrix& a, const Subspace& u) {
  if (u.ambient_dim() != a.dim()) throw DimensionError("subspace lives in a different space");
  const ComplexMatrix& x = u.basis();
  const ComplexMatrix ax = a.matrix() * x;
  const std::size_t r = u.dim();
  ComplexMatrix out(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.dim(); ++k) s += std::conj(x(k, j)) * ax(k, i);
      out(i, j) = s;
    }
  return HermitianMatrix(out);
}

inline Subspace subspace_sum(const Subspace& u, const Subspace& v, double tol = 1e-8) {
  if (u.ambient_dim() != v.ambient_dim()) throw DimensionError("subspaces live in different spaces");
  auto all = u.vectors();
  for (auto& w : v.vectors()) all.push_back(std::move(w));
  return orthonormalize(u.ambient_dim(), all, tol);
}

// U n V as the eigenspace of P(U) P(V) P(U) for eigenvalues within tol of 1.
inline Subspace subspace_intersection(const Subspace& u, const Subspace& v, double tol = 1e-8) {
  if (u.ambient_dim() != v.ambient_dim()) throw DimensionError("subspaces live in different spaces");
  const std::size_t m = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace(m);
  const ComplexMatrix pu = u.projector();
  const ComplexMatrix k = pu * v.projector() * pu;
  const auto eig = hermitian_eig(HermitianMatrix(k));
  std::vector<ComplexVector> picked;
  for (std::size_t c = 0; c < m; ++c) {
    if (std::abs(eig.eigenvalues[c] - 1.0) > tol) continue;
    ComplexVector w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = eig.vectors(i, c);
    picked.push_back(std::move(w));
  }
  return orthonormalize(m, picked);
}

inline ExtendedReal subspace_trace(const HermitianMatrix& a, const SpectralFunction& f,
                                   const Subspace& u) {
  if (u.dim() == 0) return 0.0;
  return trace_function(compress(a, u), f);
}

// tr f(A(U)) + tr f(A(V)) - tr f(A(U+V)) - tr f(A(U n V)).
inline ExtendedReal subspace_delta(const HermitianMatrix& a, const SpectralFunction& f,
                                   const Subspace& u, const Subspace& v) {
  const Subspace sum = subspace_sum(u, v);
  const Subspace meet = subspace_intersection(u, v);
  return (subspace_trace(a, f, u) - subspace_trace(a, f, sum)) +
         (subspace_trace(a, f, v) - subspace_trace(a, f, meet));
}

}  // namespace spectral_submod

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

// Test-only oracles backed by Eigen.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "spectral_submod.hpp"

namespace spectral_submod::testing {

using EigenMatrix = Eigen::MatrixXcd;

inline EigenMatrix to_eigen(const ComplexMatrix& a) {
  EigenMatrix out(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  return out;
}

inline EigenMatrix to_eigen(const HermitianMatrix& a) { return to_eigen(a.matrix()); }

inline ComplexMatrix from_eigen(const EigenMatrix& a) {
  ComplexMatrix out(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = a(i, j);
  return out;
}

// Descending eigenvalues from Eigen's self-adjoint solver.
inline std::vector<double> oracle_eigenvalues(const HermitianMatrix& a) {
  if (a.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<EigenMatrix> es(to_eigen(a), Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

inline std::vector<double> oracle_singular_values(const ComplexMatrix& a) {
  Eigen::JacobiSVD<EigenMatrix> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

inline std::complex<double> oracle_determinant(const ComplexMatrix& a) {
  if (a.rows() == 0) return 1.0;
  return to_eigen(a).determinant();
}

// tr f(A[I]) with a fresh Eigen decomposition of the submatrix.
inline double oracle_trace(const HermitianMatrix& a, const IndexSet& set,
                           const std::function<double(double)>& f) {
  if (set.is_empty()) return 0.0;
  double s = 0.0;
  for (double l : oracle_eigenvalues(principal_submatrix(a, set))) s += f(l);
  return s;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return entrywise_max_norm(a - b);
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace spectral_submod::testing

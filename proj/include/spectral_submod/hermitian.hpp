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
// Dense hermitian linear algebra: cyclic Jacobi eigensolver, matrix functions
// through the spectral calculus, submatrix extraction, singular values and the
// Moore-Penrose inverse.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_submod/extended_real.hpp"
#include "spectral_submod/index_set.hpp"
#include "spectral_submod/matrix.hpp"
#include "spectral_submod/spectral_function.hpp"

namespace spectral_submod {

// Relative asymmetry accepted (and averaged away) when building a
// HermitianMatrix from a general one.
inline constexpr double kHermitianTolerance = 1e-9;

class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  // Accepts m when ||m - m*||_max <= 1e-9 max(1, ||m||_max) and stores
  // (m + m*) / 2.
  explicit HermitianMatrix(const ComplexMatrix& m) : a_(m) {
    if (!m.square()) throw DimensionError("hermitian matrix must be square");
    const double scale = std::max(1.0, entrywise_max_norm(m));
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const cplx x = m(i, j);
        const cplx y = std::conj(m(j, i));
        if (std::abs(x - y) > kHermitianTolerance * scale) {
          std::ostringstream os;
          os << "matrix is not hermitian: entry (" << i + 1 << "," << j + 1
             << ") differs from the conjugate of (" << j + 1 << "," << i + 1
             << ") by " << std::abs(x - y);
          throw DomainError(os.str());
        }
        const cplx avg = 0.5 * (x + y);
        a_(i, j) = avg;
        a_(j, i) = std::conj(avg);
      }
    }
  }
  explicit HermitianMatrix(const RealMatrix& m) : HermitianMatrix(to_complex(m)) {}
  HermitianMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
      : HermitianMatrix(ComplexMatrix(rows)) {}

  static HermitianMatrix identity(std::size_t n) {
    return HermitianMatrix(ComplexMatrix::identity(n));
  }
  static HermitianMatrix diagonal(std::span<const double> d) {
    return HermitianMatrix(ComplexMatrix::diagonal(d));
  }
  static HermitianMatrix diagonal(std::initializer_list<double> d) {
    const std::vector<double> v(d);
    return diagonal(std::span<const double>(v));
  }

  std::size_t dim() const { return a_.rows(); }
  const ComplexMatrix& matrix() const { return a_; }
  cplx operator()(std::size_t i, std::size_t j) const { return a_(i, j); }
  double diag(std::size_t i) const { return a_(i, i).real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.a_ + b.a_);
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(a.a_ * cplx(s));
  }

 private:
  ComplexMatrix a_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix vectors;            // orthonormal columns
};

struct JacobiOptions {
  double relative_off_diagonal = 1e-14;
  int max_sweeps = 100;
};

// Cyclic Jacobi eigensolver for hermitian matrices.
//
// Each rotation first removes the phase of a_pq with a diagonal unitary and then
// applies the real symmetric Jacobi rotation. Iterates until the off-diagonal
// Frobenius mass is below relative_off_diagonal * ||A||_F.
inline EigenDecomposition hermitian_eig(const HermitianMatrix& h,
                                        const JacobiOptions& opt = {}) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = opt.relative_off_diagonal * frobenius_norm(a);
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_mass() > target) {
    if (sweep++ >= opt.max_sweeps)
      throw ConvergenceError("Jacobi eigensolver did not converge in " +
                             std::to_string(opt.max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p,q): [[c, s], [-s conj(phase), c conj(phase)]]
        const cplx upp = c;
        const cplx upq = s;
        const cplx uqp = -s * std::conj(phase);
        const cplx uqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

inline std::vector<double> eigenvalues(const HermitianMatrix& h) {
  return hermitian_eig(h).eigenvalues;
}

// Eigenvalues with |lambda| <= 1e-10 * m * max(1, max |lambda|) count as zero.
inline double rank_tolerance(std::span<const double> eigenvalues) {
  double top = 0.0;
  for (double l : eigenvalues) top = std::max(top, std::abs(l));
  return 1e-10 * static_cast<double>(eigenvalues.size()) * std::max(1.0, top);
}

inline std::size_t numerical_rank(std::span<const double> eigenvalues) {
  const double tol = rank_tolerance(eigenvalues);
  return static_cast<std::size_t>(std::count_if(
      eigenvalues.begin(), eigenvalues.end(), [&](double l) { return std::abs(l) > tol; }));
}

namespace detail {

inline std::string eigenvalue_domain_message(const SpectralFunction& f, double lambda) {
  std::ostringstream os;
  os.precision(17);
  os << "eigenvalue " << lambda << " lies outside the domain of " << f.name();
  return os.str();
}

// f applied to one eigenvalue under the rank-tolerance conventions; may be
// +/-inf for singular inputs to Power(p<0) and Log.
inline ExtendedReal apply_scalar(const SpectralFunction& f, double lambda, double tol) {
  using Kind = SpectralFunction::Kind;
  const bool zero = std::abs(lambda) <= tol;
  switch (f.kind()) {
    case Kind::kPower: {
      if (lambda < -tol) throw DomainError(eigenvalue_domain_message(f, lambda));
      const double p = f.exponent();
      if (zero) {
        if (p > 0) return 0.0;
        if (p == 0) return 0.0;  // tr A^0 counts the nonzero eigenvalues
        return ExtendedReal::pos_inf();
      }
      return p == 0 ? 1.0 : std::pow(lambda, p);
    }
    case Kind::kXLogX:
      if (lambda < -tol) throw DomainError(eigenvalue_domain_message(f, lambda));
      return zero ? 0.0 : lambda * std::log(lambda);
    case Kind::kLog:
      if (lambda < -tol) throw DomainError(eigenvalue_domain_message(f, lambda));
      if (zero) return ExtendedReal::neg_inf();
      return std::log(lambda);
    case Kind::kCustom: {
      const Interval e = f.domain();
      if (e.contains(lambda)) return f(lambda);
      if (e.lo_closed && lambda < e.lo && e.lo - lambda <= tol) return f(e.lo);
      if (e.hi_closed && lambda > e.hi && lambda - e.hi <= tol) return f(e.hi);
      throw DomainError(eigenvalue_domain_message(f, lambda));
    }
  }
  return 0.0;
}

}  // namespace detail

// sum_i f(lambda_i) for a given spectrum, with the library conventions:
// Power(0) counts the numerical rank, Power(p<0) of a singular spectrum is
// +inf, Log of a singular spectrum is -inf, and the empty spectrum gives 0.
inline ExtendedReal trace_from_eigenvalues(std::span<const double> eigenvalues,
                                           const SpectralFunction& f) {
  if (eigenvalues.empty()) return 0.0;
  const double tol = rank_tolerance(eigenvalues);
  bool pos_inf = false;
  bool neg_inf = false;
  double sum = 0.0;
  for (double l : eigenvalues) {
    const ExtendedReal v = detail::apply_scalar(f, l, tol);
    if (v.is_pos_inf()) {
      pos_inf = true;
    } else if (v.is_neg_inf()) {
      neg_inf = true;
    } else {
      sum += v.value();
    }
  }
  if (pos_inf && neg_inf) throw DomainError("trace mixes +inf and -inf");
  if (pos_inf) return ExtendedReal::pos_inf();
  if (neg_inf) return ExtendedReal::neg_inf();
  return sum;
}

inline ExtendedReal trace_function(const HermitianMatrix& a, const SpectralFunction& f) {
  const auto ev = eigenvalues(a);
  return trace_from_eigenvalues(ev, f);
}

// U diag(f(lambda)) U*. Singular inputs that would produce an infinite
// eigenvalue (Log, negative powers) are domain errors here.
inline HermitianMatrix matrix_function(const HermitianMatrix& a, const SpectralFunction& f) {
  const std::size_t n = a.dim();
  const auto eig = hermitian_eig(a);
  const double tol = rank_tolerance(eig.eigenvalues);
  std::vector<double> fl(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ExtendedReal v = detail::apply_scalar(f, eig.eigenvalues[i], tol);
    if (!v.is_finite())
      throw DomainError(detail::eigenvalue_domain_message(f, eig.eigenvalues[i]) +
                        " (singular argument)");
    // Power(0) maps zero eigenvalues to 0, so A^0 is the range projector.
    fl[i] = v.value();
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eig.vectors(i, k) * fl[k] * std::conj(eig.vectors(j, k));
      out(i, j) = s;
    }
  return HermitianMatrix(out);
}

// A[I]: rows and columns in I, ascending. The empty set yields a 0x0 matrix.
inline HermitianMatrix principal_submatrix(const HermitianMatrix& a, const IndexSet& set) {
  if (set.dim() != a.dim())
    throw DimensionError("index set dimension " + std::to_string(set.dim()) +
                         " does not match matrix dimension " + std::to_string(a.dim()));
  const auto idx = set.indices();
  ComplexMatrix out(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = a(idx[r], idx[c]);
  return HermitianMatrix(out);
}

// A[I, J] for a general matrix.
template <Scalar T>
Matrix<T> rectangular_submatrix(const Matrix<T>& a, const IndexSet& rows,
                                const IndexSet& cols) {
  if (rows.dim() != a.rows() || cols.dim() != a.cols())
    throw DimensionError("index sets do not match the matrix shape");
  const auto ri = rows.indices();
  const auto ci = cols.indices();
  Matrix<T> out(ri.size(), ci.size());
  for (std::size_t r = 0; r < ri.size(); ++r)
    for (std::size_t c = 0; c < ci.size(); ++c) out(r, c) = a(ri[r], ci[c]);
  return out;
}

template <Scalar T>
ComplexMatrix to_complex_if_needed(const Matrix<T>& m) {
  if constexpr (is_complex<T>::value) {
    return m;
  } else {
    return to_complex(m);
  }
}

// Singular values of a general matrix, descending: square roots of the
// eigenvalues of M*M (clamped at zero).
template <Scalar T>
std::vector<double> singular_values(const Matrix<T>& m) {
  if (m.cols() == 0 || m.rows() == 0) return {};
  const ComplexMatrix c = to_complex_if_needed(m);
  const auto ev = eigenvalues(HermitianMatrix(c.adjoint() * c));
  std::vector<double> out(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) out[i] = std::sqrt(std::max(0.0, ev[i]));
  return out;
}

inline std::vector<double> singular_values(const HermitianMatrix& h) {
  auto ev = eigenvalues(h);
  for (double& v : ev) v = std::abs(v);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

// Moore-Penrose inverse. Singular values sigma_i <= tol * sigma_1 are treated
// as zero; sigma comes from the eigendecomposition of M*M so tol should not be
// set much below 1e-8.
inline ComplexMatrix pseudo_inverse(const ComplexMatrix& m, double tol = 1e-7) {
  const std::size_t cols = m.cols();
  if (m.rows() == 0 || cols == 0) return ComplexMatrix(cols, m.rows());
  const auto eig = hermitian_eig(HermitianMatrix(m.adjoint() * m));
  const double top = std::sqrt(std::max(0.0, eig.eigenvalues.front()));
  // (M*M)^+ restricted to the retained singular subspace, then times M*.
  ComplexMatrix gram_pinv(cols, cols);
  if (top > 0.0) {
    for (std::size_t k = 0; k < cols; ++k) {
      const double sigma = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
      if (sigma <= tol * top) continue;
      const double w = 1.0 / (sigma * sigma);
      for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          gram_pinv(i, j) += eig.vectors(i, k) * w * std::conj(eig.vectors(j, k));
    }
  }
  return gram_pinv * m.adjoint();
}

inline ComplexMatrix pseudo_inverse(const RealMatrix& m, double tol = 1e-7) {
  return pseudo_inverse(to_complex(m), tol);
}

inline double entrywise_max_norm(const HermitianMatrix& h) {
  return entrywise_max_norm(h.matrix());
}

}  // namespace spectral_submod

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
// M-matrices A = s Id - B (B >= 0 entrywise, s >= rho(B)) and traces of their
// powers and logarithms defined by power series in B.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_submod/extended_real.hpp"
#include "spectral_submod/hermitian.hpp"
#include "spectral_submod/index_set.hpp"
#include "spectral_submod/matrix.hpp"
#include "spectral_submod/set_functions.hpp"
#include "spectral_submod/spectral_function.hpp"

namespace spectral_submod {

inline void require_nonnegative(const RealMatrix& b) {
  if (!b.square()) throw DimensionError("expected a square matrix");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!(b(i, j) >= 0.0)) {
        std::ostringstream os;
        os << "matrix is not entrywise nonnegative: entry (" << i + 1 << "," << j + 1
           << ") = " << b(i, j);
        throw DomainError(os.str());
      }
}

// Certified enclosure lower <= rho(B) <= upper.
struct PerronBracket {
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;

  double estimate() const { return 0.5 * (lower + upper); }
};

struct PerronOptions {
  double relative_gap = 1e-10;
  int max_iterations = 200000;
};

// Power iteration on B + Id from the all-ones vector with Collatz-Wielandt
// bounds. For a positive vector x, max_i (Bx)_i / x_i bounds rho from above;
// for a nonnegative x, min over the support of (Bx)_i / x_i bounds it from
// below. The lower bound is also taken on truncated supports, which is what
// closes the bracket for reducible matrices such as diag(3, 2).
inline PerronBracket perron_bracket(const RealMatrix& b, const PerronOptions& opt = {}) {
  require_nonnegative(b);
  const std::size_t n = b.rows();
  PerronBracket br;
  if (n == 0) return br;

  std::vector<double> x(n, 1.0);
  std::vector<double> y(n);
  std::vector<double> z(n);
  auto mul = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += b(i, j) * in[j];
      out[i] = s;
    }
  };

  double best_lower = 0.0;
  double best_upper = std::numeric_limits<double>::infinity();
  constexpr double kCuts[] = {0.0, 1e-12, 1e-8, 1e-4, 1e-2};
  for (int it = 0; it <= opt.max_iterations; ++it) {
    mul(x, y);
    double up = 0.0;
    for (std::size_t i = 0; i < n; ++i) up = std::max(up, y[i] / x[i]);
    best_upper = std::min(best_upper, up);

    const double xmax = *std::max_element(x.begin(), x.end());
    for (double cut : kCuts) {
      for (std::size_t i = 0; i < n; ++i) z[i] = x[i] >= cut * xmax ? x[i] : 0.0;
      mul(z, y);
      double lo = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i)
        if (z[i] > 0.0) lo = std::min(lo, y[i] / z[i]);
      if (std::isfinite(lo)) best_lower = std::max(best_lower, lo);
    }

    br.iterations = it;
    if (best_upper - best_lower <= opt.relative_gap * best_upper) {
      br.lower = best_lower;
      br.upper = best_upper;
      return br;
    }

    // x <- (B + Id) x, rescaled; stays strictly positive.
    mul(x, y);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += y[i];
      norm = std::max(norm, x[i]);
    }
    for (double& v : x) v /= norm;
  }

  // Diagnostic only: the symmetric part's top eigenvalue bounds rho from above.
  RealMatrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (b(i, j) + b(j, i));
  std::ostringstream os;
  os.precision(17);
  os << "spectral radius bracket [" << best_lower << ", " << best_upper
     << "] did not close within " << opt.max_iterations
     << " iterations (symmetric-part bound " << eigenvalues(HermitianMatrix(sym)).front()
     << ")";
  throw ConvergenceError(os.str());
}

inline double spectral_radius(const RealMatrix& b) { return perron_bracket(b).estimate(); }

struct MMatrixSplit {
  double s = 0.0;
  RealMatrix b;
  double rho = 0.0;
  double rho_upper = 0.0;
  bool singular = false;

  std::size_t dim() const { return b.rows(); }
};

// Writes A = s Id - B with s = max_i a_ii, the smallest shift that makes B
// nonnegative.
inline MMatrixSplit validate_and_split(const RealMatrix& a) {
  if (!a.square()) throw DimensionError("M-matrix must be square");
  const std::size_t n = a.rows();
  if (n == 0) throw DimensionError("M-matrix must have dimension >= 1");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && a(i, j) > 0.0) {
        std::ostringstream os;
        os << "not a Z-matrix: off-diagonal entry (" << i + 1 << "," << j + 1
           << ") = " << a(i, j) << " is positive";
        throw DomainError(os.str());
      }
  MMatrixSplit sp;
  sp.s = a(0, 0);
  for (std::size_t i = 1; i < n; ++i) sp.s = std::max(sp.s, a(i, i));
  sp.b = RealMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sp.b(i, j) = (i == j ? sp.s : 0.0) - a(i, j);
  const PerronBracket br = perron_bracket(sp.b);
  sp.rho = br.estimate();
  sp.rho_upper = br.upper;
  const double band = 1e-10 * std::max(1.0, std::abs(sp.s));
  if (sp.s < sp.rho - band) {
    std::ostringstream os;
    os.precision(17);
    os << "not an M-matrix: shift s = " << sp.s << " is below rho(B) = " << sp.rho;
    throw DomainError(os.str());
  }
  sp.singular = std::abs(sp.s - sp.rho) <= band;
  return sp;
}

struct SeriesOptions {
  // Truncate once the certified tail bound drops below tol * max(1, |sum|).
  double tol = 1e-13;
  std::size_t max_terms = 1000000;
  // Ratios rho/s above this take the limit route for Power(p >= 0) and XLogX.
  double near_singular_ratio = 1.0 - 1e-6;
  int max_limit_steps = 16;
  // Agreement required between successive extrapolated limits.
  double limit_tol = 1e-10;
  std::size_t limit_fit_points = 6;
};

struct SeriesTrace {
  ExtendedReal value;
  std::size_t terms = 0;
  bool via_limit = false;
};

namespace detail {

// tr of the series for (t Id - B) with t > rho_upper, in powers of X = B / t.
inline double series_at(const RealMatrix& b, double rho_upper, double t,
                        const SpectralFunction& f, const SeriesOptions& opt,
                        std::size_t& terms) {
  using Kind = SpectralFunction::Kind;
  const std::size_t n = b.rows();
  const double m = static_cast<double>(n);
  const double r = rho_upper / t;
  if (!(r < 1.0))
    throw ConvergenceError("series diverges: rho(B)/t = " + std::to_string(r) + " >= 1");

  RealMatrix x = b * (1.0 / t);
  RealMatrix pw = RealMatrix::identity(n);
  double rpow = 1.0;  // r^i
  double sum = 0.0;

  const double p = f.exponent();
  double binom = 1.0;  // binom(p, i)
  const double tp = f.kind() == Kind::kPower ? std::pow(t, p) : 0.0;
  const double logt = std::log(t);

  for (std::size_t i = 0;; ++i) {
    // Certified bound on the remaining terms i, i+1, ... using |tr X^j| <= m r^j.
    if (i >= 1) {
      double tail = std::numeric_limits<double>::infinity();
      switch (f.kind()) {
        case Kind::kPower:
          if (p < 0) {
            const double q = (static_cast<double>(i) - p) / (static_cast<double>(i) + 1.0);
            if (q * r < 1.0) tail = m * tp * std::abs(binom) * rpow / (1.0 - q * r);
          } else if (static_cast<double>(i) > p) {
            tail = m * tp * std::abs(binom) * rpow / (1.0 - r);
          }
          break;
        case Kind::kLog:
          tail = m * rpow / (static_cast<double>(i) * (1.0 - r));
          break;
        case Kind::kXLogX:
          if (i >= 2) {
            const double di = static_cast<double>(i);
            tail = m * t * rpow / (di * (di - 1.0) * (1.0 - r));
          }
          break;
        case Kind::kCustom:
          break;
      }
      if (tail <= opt.tol * std::max(1.0, std::abs(sum))) {
        terms = i;
        return sum;
      }
      if (i >= opt.max_terms)
        throw ConvergenceError("series tail bound not certified within " +
                               std::to_string(opt.max_terms) + " terms");
      pw = pw * x;
    }
    const double tr = pw.trace();
    switch (f.kind()) {
      case Kind::kPower:
        sum += tp * binom * ((i % 2 == 0) ? tr : -tr);
        binom *= (p - static_cast<double>(i)) / (static_cast<double>(i) + 1.0);
        break;
      case Kind::kLog:
        sum += i == 0 ? m * logt : -tr / static_cast<double>(i);
        break;
      case Kind::kXLogX:
        if (i == 0) {
          sum += m * t * logt;
        } else if (i == 1) {
          sum -= (1.0 + logt) * t * tr;
        } else {
          const double di = static_cast<double>(i);
          sum += t * tr / (di * (di - 1.0));
        }
        break;
      case Kind::kCustom:
        throw DomainError("series traces support Power, Log and XLogX only");
    }
    rpow *= r;
  }
}

// sum_{i<=p} binom(p,i) s^{p-i} (-1)^i tr B^i for integer p >= 0; exact at s = rho.
inline double finite_power_series(const RealMatrix& b, double s, int p) {
  const std::size_t n = b.rows();
  RealMatrix pw = RealMatrix::identity(n);
  double binom = 1.0;
  double sum = 0.0;
  for (int i = 0; i <= p; ++i) {
    if (i > 0) pw = pw * b;
    const double term = binom * std::pow(s, p - i) * pw.trace();
    sum += (i % 2 == 0) ? term : -term;
    binom = binom * (p - i) / (i + 1.0);
  }
  return sum;
}

}  // namespace detail

// tr A^p, tr log A or tr A log A for the M-matrix A = s Id - B from the power
// series in B.
//
// Singular A: tr log A = -inf and tr A^p = +inf for p < 0; for p >= 0 and
// A log A the value is lim_{t -> s+} of the trace for t Id - B, evaluated along
// t_j = s (1 + 2^-j) until successive values agree to tol. Integer powers are
// polynomials in B and are evaluated exactly at t = s, so tr A^0 = m.
inline SeriesTrace series_trace_detailed(const MMatrixSplit& split, const SpectralFunction& f,
                                         const SeriesOptions& opt = {}) {
  using Kind = SpectralFunction::Kind;
  if (f.kind() == Kind::kCustom)
    throw DomainError("series traces support Power, Log and XLogX only");
  SeriesTrace out;
  const std::size_t n = split.dim();
  if (n == 0) return out;

  const double s = split.s;
  const double ratio = s > 0 ? split.rho_upper / s : std::numeric_limits<double>::infinity();
  const bool nonnegative_power = f.kind() == Kind::kPower && f.exponent() >= 0;
  const bool limit_route =
      split.singular || (ratio > opt.near_singular_ratio &&
                         (nonnegative_power || f.kind() == Kind::kXLogX));

  if (!limit_route) {
    out.value = detail::series_at(split.b, split.rho_upper, s, f, opt, out.terms);
    return out;
  }
  if (f.kind() == Kind::kLog) {
    out.value = ExtendedReal::neg_inf();
    return out;
  }
  if (f.kind() == Kind::kPower && f.exponent() < 0) {
    out.value = ExtendedReal::pos_inf();
    return out;
  }
  if (f.kind() == Kind::kPower && f.exponent() == std::floor(f.exponent()) &&
      f.exponent() <= 64) {
    out.value = detail::finite_power_series(split.b, s, static_cast<int>(f.exponent()));
    out.terms = static_cast<std::size_t>(f.exponent()) + 1;
    return out;
  }

  // Zero eigenvalues of A contribute exactly h^p (or h log h) to the trace at
  // t = s + h; the rest is analytic in h. Fit {1, phi(h), h, h^2, ...} to the
  // most recent samples and read off the constant term.
  out.via_limit = true;
  const double base = s > 0 ? s : 1.0;
  const auto phi = [&](double x) {
    return f.kind() == Kind::kXLogX ? x * std::log(x) : std::pow(x, f.exponent());
  };
  std::vector<double> xs;
  std::vector<double> vs;
  double previous = 0.0;
  for (int j = 1; j <= opt.max_limit_steps; ++j) {
    const double x = std::ldexp(1.0, -j);
    const double t = (s > 0 ? s : 0.0) + base * x;
    std::size_t terms = 0;
    vs.push_back(detail::series_at(split.b, split.rho_upper, t, f, opt, terms));
    xs.push_back(x);
    out.terms += terms;
    const std::size_t n = std::min<std::size_t>(xs.size(), opt.limit_fit_points);
    RealMatrix lhs(n, n);
    RealMatrix rhs(n, 1);
    for (std::size_t r = 0; r < n; ++r) {
      const double xr = xs[xs.size() - n + r];
      for (std::size_t c = 0; c < n; ++c)
        lhs(r, c) = c == 0 ? 1.0 : c == 1 ? phi(xr) : std::pow(xr, static_cast<double>(c - 1));
      rhs(r, 0) = vs[vs.size() - n + r];
    }
    const LuDecomposition<double> lu(lhs);
    const double v = lu.singular() ? vs.back() : lu.solve(rhs)(0, 0);
    if (j > 2 && std::abs(v - previous) < opt.limit_tol * std::max(1.0, std::abs(v))) {
      out.value = v;
      return out;
    }
    previous = v;
  }
  throw ConvergenceError("limit t -> s+ did not settle within " +
                         std::to_string(opt.max_limit_steps) + " steps");
}

inline ExtendedReal series_trace(const MMatrixSplit& split, const SpectralFunction& f,
                                 const SeriesOptions& opt = {}) {
  return series_trace_detailed(split, f, opt).value;
}

template <Scalar T>
Matrix<T> principal_block(const Matrix<T>& a, const IndexSet& set) {
  return rectangular_submatrix(a, set, set);
}

// w(I) = tr f(A[I]) for an M-matrix, each A[I] split with its own minimal shift.
inline SetFunctionTable mmatrix_set_function(const RealMatrix& a, const SpectralFunction& f,
                                             const SeriesOptions& opt = {}) {
  validate_and_split(a);
  return SetFunctionTable::build(a.rows(), [&](const IndexSet& set) -> ExtendedReal {
    if (set.is_empty()) return 0.0;
    return series_trace(validate_and_split(principal_block(a, set)), f, opt);
  });
}

// tr B[I]^n by repeated multiplication.
inline double trace_power(const RealMatrix& b, const IndexSet& set, int n) {
  if (set.is_empty()) return 0.0;
  const RealMatrix sub = principal_block(b, set);
  RealMatrix pw = sub;
  for (int k = 1; k < n; ++k) pw = pw * sub;
  return pw.trace();
}

// Sum of the weights B_{i1 i2} B_{i2 i3} ... B_{in i1} over all closed walks of
// length n with every vertex in I. Brute force; |I| <= 8 and n <= 8.
inline double walk_trace_oracle(const RealMatrix& b, const IndexSet& set, int n) {
  require_nonnegative(b);
  if (set.dim() != b.rows()) throw DimensionError("index set dimension mismatch");
  if (n < 1) throw DomainError("walk length must be positive");
  if (n > 8 || set.size() > 8)
    throw BudgetError("walk enumeration is capped at n <= 8 and |I| <= 8");
  const auto idx = set.indices();
  if (idx.empty()) return 0.0;
  const std::size_t k = idx.size();
  std::vector<std::size_t> walk(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (int step = 0; step < n; ++step) {
      const std::size_t from = idx[walk[static_cast<std::size_t>(step)]];
      const std::size_t to = idx[walk[static_cast<std::size_t>((step + 1) % n)]];
      w *= b(from, to);
    }
    total += w;
    std::size_t pos = 0;
    while (pos < walk.size() && ++walk[pos] == k) walk[pos++] = 0;
    if (pos == walk.size()) break;
  }
  return total;
}

}  // namespace spectral_submod

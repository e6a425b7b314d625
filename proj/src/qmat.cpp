// Copyright 2026 The nosplit developers
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

#include "qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace nosplit {

namespace {

bool finite(const cplx& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(const CMatrix& m, const char* who) {
  require(matrix_is_finite(m), ErrorCode::non_finite,
          std::string(who) + ": non-finite matrix entry");
}

// Make the largest-modulus component of a column real and nonnegative.
// Keeps eigenvector/singular-vector output deterministic in degenerate cases.
void fix_column_phase(CMatrix& m, int col) {
  int arg = 0;
  double best = -1.0;
  for (int r = 0; r < m.rows(); ++r) {
    double a = std::abs(m(r, col));
    if (a > best) {
      best = a;
      arg = r;
    }
  }
  if (best <= 0.0) return;
  cplx phase = std::conj(m(arg, col)) / best;
  for (int r = 0; r < m.rows(); ++r) m(r, col) *= phase;
}

EigenSystem eigen2(const CMatrix& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const cplx b = h(0, 1);
  const double ab = std::abs(b);
  const double mean = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), ab);
  double lam0 = mean - rad;
  double lam1 = mean + rad;

  CMatrix v(2, 2);
  if (ab == 0.0) {
    if (a <= d) {
      lam0 = a;
      lam1 = d;
      v(0, 0) = 1.0;
      v(1, 1) = 1.0;
    } else {
      lam0 = d;
      lam1 = a;
      v(1, 0) = 1.0;
      v(0, 1) = 1.0;
    }
  } else {
    // Eigenvector (b, lam - a) for the root farther from a (no cancellation),
    // the other column is its orthogonal complement.
    const double lf = (d >= a) ? lam1 : lam0;
    const double y = lf - a;
    const double nrm = std::sqrt(std::norm(b) + y * y);
    const cplx vf0 = b / nrm;
    const cplx vf1 = cplx(y / nrm, 0.0);
    const cplx vo0 = -std::conj(vf1);
    const cplx vo1 = std::conj(vf0);
    if (lf == lam1) {
      v(0, 0) = vo0;
      v(1, 0) = vo1;
      v(0, 1) = vf0;
      v(1, 1) = vf1;
    } else {
      v(0, 0) = vf0;
      v(1, 0) = vf1;
      v(0, 1) = vo0;
      v(1, 1) = vo1;
    }
  }
  fix_column_phase(v, 0);
  fix_column_phase(v, 1);
  return {{lam0, lam1}, v};
}

double off_diagonal_norm(const CMatrix& a) {
  double acc = 0.0;
  for (int p = 0; p < a.rows(); ++p)
    for (int q = 0; q < a.cols(); ++q)
      if (p != q) acc += std::norm(a(p, q));
  return std::sqrt(acc);
}

EigenSystem eigen_jacobi(const CMatrix& h) {
  const int n = h.rows();
  CMatrix a = h;
  CMatrix v = CMatrix::identity(n);
  // The absolute 1e-14 target is unattainable in doubles for large-norm
  // inputs, so the off-diagonal mass threshold scales with the input norm.
  const double stop = 1e-14 * std::max(1.0, frobenius_norm(a));
  const int max_sweeps = 64;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double ab = std::abs(apq);
        if (ab == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / ab;  // e^{i theta}
        const cplx em = std::conj(phase);
        const double tau = (aqq - app) / (2.0 * ab);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- J' A J with J the complex plane rotation in the (p,q) plane:
        // J(p,p)=c, J(p,q)=s, J(q,p)=-s e^{-i theta}, J(q,q)=c e^{-i theta}.
        for (int r = 0; r < n; ++r) {
          const cplx arp = a(r, p);
          const cplx arq = a(r, q);
          a(r, p) = c * arp - (s * em) * arq;
          a(r, q) = s * arp + (c * em) * arq;
        }
        for (int r = 0; r < n; ++r) {
          const cplx apr = a(p, r);
          const cplx aqr = a(q, r);
          a(p, r) = c * apr - (s * phase) * aqr;
          a(q, r) = s * apr + (c * phase) * aqr;
        }
        for (int r = 0; r < n; ++r) {
          const cplx vrp = v(r, p);
          const cplx vrq = v(r, q);
          v(r, p) = c * vrp - (s * em) * vrq;
          v(r, q) = s * vrp + (c * em) * vrq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  require(off_diagonal_norm(a) <= 1e-12 * std::max(1.0, frobenius_norm(h)),
          ErrorCode::numerical, "hermitian_eigen: Jacobi sweep did not converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (int r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    fix_column_phase(out.eigenvectors, k);
  }
  return out;
}

}  // namespace

CMatrix::CMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {
  require(rows > 0 && cols > 0, ErrorCode::invalid_argument,
          "CMatrix: dimensions must be positive");
}

CMatrix::CMatrix(int rows, int cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require(rows > 0 && cols > 0, ErrorCode::invalid_argument,
          "CMatrix: dimensions must be positive");
  require(entries_.size() == static_cast<std::size_t>(rows) * cols,
          ErrorCode::invalid_argument, "CMatrix: entry count does not match shape");
  for (const auto& z : entries_)
    require(finite(z), ErrorCode::non_finite, "CMatrix: non-finite entry");
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  require(cols_ == rhs.rows_, ErrorCode::dimension_mismatch,
          "CMatrix: incompatible shapes for product");
  CMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const cplx aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
    }
  }
  return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorCode::dimension_mismatch,
          "CMatrix: incompatible shapes for sum");
  CMatrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
  return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorCode::dimension_mismatch,
          "CMatrix: incompatible shapes for difference");
  CMatrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= rhs.entries_[i];
  return out;
}

std::vector<cplx> CMatrix::apply(std::span<const cplx> v) const {
  require(static_cast<int>(v.size()) == cols_, ErrorCode::dimension_mismatch,
          "CMatrix: vector length does not match column count");
  std::vector<cplx> out(rows_);
  for (int i = 0; i < rows_; ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

cplx CMatrix::trace() const {
  require(is_square(), ErrorCode::dimension_mismatch, "CMatrix: trace of non-square");
  cplx acc = 0.0;
  for (int i = 0; i < rows_; ++i) acc += (*this)(i, i);
  return acc;
}

CMatrix operator*(const cplx& s, const CMatrix& m) {
  CMatrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = s * m(i, j);
  return out;
}

bool matrix_is_finite(const CMatrix& m) {
  for (const auto& z : m.data())
    if (!finite(z)) return false;
  return true;
}

double frobenius_norm(const CMatrix& m) {
  double acc = 0.0;
  for (const auto& z : m.data()) acc += std::norm(z);
  return std::sqrt(acc);
}

double max_abs_entry(const CMatrix& m) {
  double acc = 0.0;
  for (const auto& z : m.data()) acc = std::max(acc, std::abs(z));
  return acc;
}

CMatrix adjoint(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  require_finite(a, "tensor");
  require_finite(b, "tensor");
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia)
    for (int ja = 0; ja < a.cols(); ++ja) {
      const cplx f = a(ia, ja);
      if (f == 0.0) continue;
      for (int ib = 0; ib < b.rows(); ++ib)
        for (int jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
    }
  return out;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (!m.is_square() || m.rows() == 0) return false;
  if (!matrix_is_finite(m)) return false;
  const CMatrix g = adjoint(m) * m;
  double acc = 0.0;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      const cplx target = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      acc += std::norm(g(i, j) - target);
    }
  return std::sqrt(acc) <= tol;
}

EigenSystem hermitian_eigen(const CMatrix& h, double tol) {
  require(h.is_square() && h.rows() >= 1, ErrorCode::invalid_argument,
          "hermitian_eigen: square matrix required");
  require_finite(h, "hermitian_eigen");
  require(frobenius_norm(h - adjoint(h)) <= tol, ErrorCode::not_hermitian,
          "hermitian_eigen: matrix is not Hermitian within tolerance");

  const cplx half(0.5, 0.0);
  const CMatrix hs = half * (h + adjoint(h));
  if (hs.rows() == 1) {
    CMatrix v(1, 1);
    v(0, 0) = 1.0;
    return {{hs(0, 0).real()}, v};
  }
  if (hs.rows() == 2) return eigen2(hs);
  return eigen_jacobi(hs);
}

CMatrix unitary_from_hermitian(const CMatrix& h) {
  const EigenSystem es = hermitian_eigen(h, 1e-10);
  const int n = h.rows();
  std::vector<cplx> ph(n);
  for (int k = 0; k < n; ++k)
    ph[k] = cplx(std::cos(es.eigenvalues[k]), std::sin(es.eigenvalues[k]));
  CMatrix u(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += es.eigenvectors(r, k) * ph[k] * std::conj(es.eigenvectors(c, k));
      u(r, c) = acc;
    }
  return u;
}

Svd2x2 svd2x2(const CMatrix& m) {
  require(m.rows() == 2 && m.cols() == 2, ErrorCode::invalid_argument,
          "svd2x2: 2x2 matrix required");
  require_finite(m, "svd2x2");

  CMatrix mm = adjoint(m) * m;
  const cplx half(0.5, 0.0);
  mm = half * (mm + adjoint(mm));
  const EigenSystem es = hermitian_eigen(mm, 1e-8);

  // Eigenvalues come out ascending; singular values are reported descending.
  double s0 = std::sqrt(std::max(es.eigenvalues[1], 0.0));
  double s1 = std::sqrt(std::max(es.eigenvalues[0], 0.0));

  CMatrix right(2, 2);
  right(0, 0) = es.eigenvectors(0, 1);
  right(1, 0) = es.eigenvectors(1, 1);
  right(0, 1) = es.eigenvectors(0, 0);
  right(1, 1) = es.eigenvectors(1, 0);

  const double zero_tol = 1e-14;
  CMatrix left = CMatrix::identity(2);
  if (s0 >= zero_tol) {
    // The normal-matrix route only resolves small singular values to about
    // sqrt(eps) * ||m||; refine both through the left images m v_k. With
    // u1 taken from the re-orthogonalized second image, U S V' differs from
    // m only by the dropped <u0, m v1> u0 v1' term, which is O(eps ||m||).
    std::vector<cplx> v0{right(0, 0), right(1, 0)};
    const std::vector<cplx> w0 = m.apply(v0);
    const double n0 = std::sqrt(std::norm(w0[0]) + std::norm(w0[1]));
    left(0, 0) = w0[0] / n0;
    left(1, 0) = w0[1] / n0;
    s0 = n0;

    std::vector<cplx> v1{right(0, 1), right(1, 1)};
    std::vector<cplx> w1 = m.apply(v1);
    const cplx proj = std::conj(left(0, 0)) * w1[0] + std::conj(left(1, 0)) * w1[1];
    w1[0] -= proj * left(0, 0);
    w1[1] -= proj * left(1, 0);
    const double n1 = std::sqrt(std::norm(w1[0]) + std::norm(w1[1]));
    if (n1 > 0.0) {
      left(0, 1) = w1[0] / n1;
      left(1, 1) = w1[1] / n1;
      s1 = n1;
    } else {
      // The second image vanished identically (exact rank 1): complete the
      // basis in canonical order, taking the first standard basis vector
      // with a usable residual after projecting out column 0.
      for (int k = 0; k < 2; ++k) {
        cplx e0 = (k == 0) ? 1.0 : 0.0;
        cplx e1 = (k == 1) ? 1.0 : 0.0;
        cplx p = std::conj(left(0, 0)) * e0 + std::conj(left(1, 0)) * e1;
        cplx r0 = e0 - p * left(0, 0);
        cplx r1 = e1 - p * left(1, 0);
        double nr = std::sqrt(std::norm(r0) + std::norm(r1));
        if (nr > 1e-6) {
          left(0, 1) = r0 / nr;
          left(1, 1) = r1 / nr;
          break;
        }
      }
      s1 = 0.0;
    }
    s1 = std::min(s1, s0);
  }
  return {s0, s1, left, right};
}

CMatrix gram_schmidt_unitary(const CMatrix& m) {
  require(m.is_square() && m.rows() >= 1, ErrorCode::invalid_argument,
          "gram_schmidt_unitary: square matrix required");
  require_finite(m, "gram_schmidt_unitary");
  const int n = m.rows();
  CMatrix q = m;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      cplx proj = 0.0;
      for (int r = 0; r < n; ++r) proj += std::conj(q(r, i)) * q(r, j);
      for (int r = 0; r < n; ++r) q(r, j) -= proj * q(r, i);
    }
    double nrm = 0.0;
    for (int r = 0; r < n; ++r) nrm += std::norm(q(r, j));
    nrm = std::sqrt(nrm);
    require(nrm > 1e-12, ErrorCode::rank_deficient,
            "gram_schmidt_unitary: rank-deficient input");
    for (int r = 0; r < n; ++r) q(r, j) /= nrm;

    // Phase of the implicit triangular factor's diagonal entry <q_j, m_j>;
    // multiplying by its conjugate phase pins the Haar-correct convention.
    cplx rjj = 0.0;
    for (int r = 0; r < n; ++r) rjj += std::conj(q(r, j)) * m(r, j);
    const double arjj = std::abs(rjj);
    if (arjj > 0.0) {
      const cplx ph = std::conj(rjj) / arjj;
      for (int r = 0; r < n; ++r) q(r, j) *= ph;
    }
  }
  return q;
}

}  // namespace nosplit

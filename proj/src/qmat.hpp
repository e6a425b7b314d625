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

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "error.hpp"

namespace nosplit {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Sized for the dimensions this project
// needs (2 and 4), but the eigen/orthonormalization paths accept any square
// size. Entries supplied from outside must be finite.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);
  CMatrix(int rows, int cols, std::vector<cplx> entries);

  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
  const cplx& operator()(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }

  const std::vector<cplx>& data() const { return entries_; }

  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix operator+(const CMatrix& rhs) const;
  CMatrix operator-(const CMatrix& rhs) const;

  // Matrix-vector product.
  std::vector<cplx> apply(std::span<const cplx> v) const;

  cplx trace() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> entries_;
};

CMatrix operator*(const cplx& s, const CMatrix& m);

bool matrix_is_finite(const CMatrix& m);
double frobenius_norm(const CMatrix& m);
double max_abs_entry(const CMatrix& m);

CMatrix adjoint(const CMatrix& m);

// Kronecker product with index convention
// (i_a * rows_b + i_b, j_a * cols_b + j_b).
CMatrix tensor(const CMatrix& a, const CMatrix& b);

// True iff ||m'm - I||_F <= tol. Non-finite input compares false.
bool is_unitary(const CMatrix& m, double tol);

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // unitary, columns match eigenvalue order
};

// Hermitian eigendecomposition: closed-form quadratic for d = 2, cyclic
// complex Jacobi rotations otherwise. `tol` bounds the admissible
// ||h - h'||_F; beyond it the input is rejected as not Hermitian.
EigenSystem hermitian_eigen(const CMatrix& h, double tol = 1e-10);

// exp(iH) for Hermitian H, via the eigendecomposition.
CMatrix unitary_from_hermitian(const CMatrix& h);

struct Svd2x2 {
  double sigma0;  // >= sigma1 >= 0
  double sigma1;
  CMatrix left;   // unitary
  CMatrix right;  // unitary; m = left * diag(sigma) * adjoint(right)
};

Svd2x2 svd2x2(const CMatrix& m);

// Modified Gram-Schmidt orthonormalization with the column phases fixed so
// that the implicit triangular factor has a real positive diagonal. Applied
// to a Ginibre sample this yields a Haar-distributed unitary.
CMatrix gram_schmidt_unitary(const CMatrix& m);

}  // namespace nosplit

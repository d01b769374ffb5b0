// SPDX-License-Identifier: Apache-2.0
//
// mrc-bounds  C++ library for capacity bounds and relay placement in Gaussian multicast relay channels
// Copyright (C) 2026 The mrc-bounds authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mrc {

// Dense row-major matrix sized for the small problems in this library
// (bordered Hessians up to 4x4, covariance blocks up to 5x5).
class Matrix {
public:
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("Matrix: dimensions must be positive");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    // Leading principal submatrix of order k.
    Matrix leading(int k) const {
        if (k < 1 || k > rows_ || k > cols_)
            throw std::invalid_argument("Matrix::leading: order out of range");
        Matrix m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    // Principal submatrix on a strictly increasing index set.
    Matrix principal(const std::vector<int>& idx) const {
        const int k = static_cast<int>(idx.size());
        if (k < 1) throw std::invalid_argument("Matrix::principal: empty index set");
        Matrix m(k, k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (idx[i] < 0 || idx[i] >= rows_ || idx[j] < 0 || idx[j] >= cols_)
                    throw std::invalid_argument("Matrix::principal: index out of range");
                m(i, j) = (*this)(idx[i], idx[j]);
            }
        }
        return m;
    }

    Matrix transposed() const {
        Matrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    // Determinant by LU elimination with partial pivoting.
    double determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix::determinant: matrix not square");
        Matrix lu(*this);
        const int n = rows_;
        double det = 1.0;
        for (int col = 0; col < n; ++col) {
            int pivot = col;
            for (int i = col + 1; i < n; ++i)
                if (std::abs(lu(i, col)) > std::abs(lu(pivot, col))) pivot = i;
            if (lu(pivot, col) == 0.0) return 0.0;
            if (pivot != col) {
                for (int j = 0; j < n; ++j) std::swap(lu(pivot, j), lu(col, j));
                det = -det;
            }
            det *= lu(col, col);
            for (int i = col + 1; i < n; ++i) {
                const double factor = lu(i, col) / lu(col, col);
                for (int j = col; j < n; ++j) lu(i, j) -= factor * lu(col, j);
            }
        }
        return det;
    }

private:
    int rows_;
    int cols_;
    std::vector<double> a_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("add: dimensions differ");
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline Matrix scaled(const Matrix& a, double s) {
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

}  // namespace mrc

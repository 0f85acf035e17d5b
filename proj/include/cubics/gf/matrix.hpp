#pragma once

// Dense matrices over a finite field with exact Gaussian elimination.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cubics/gf/field.hpp"

namespace cubics::gf {

class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix transposed() const;
  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const;

 private:
  FieldPtr field_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

// Reduces m to reduced row echelon form in place and returns the pivot columns.
std::vector<std::size_t> rref_in_place(Matrix& m);

std::size_t rank(Matrix m);
Elem determinant(Matrix m);

// Basis of {v : m v = 0}. One vector per free column f, with v[f] = 1 and
// zeros on the other free columns; this basis is unique for a given kernel.
std::vector<std::vector<Elem>> nullspace(const Matrix& m);

// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<Elem>> solve(const Matrix& m, std::span<const Elem> b);

}  // namespace cubics::gf

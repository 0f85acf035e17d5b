#include "cubics/gf/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace cubics::gf {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.field_->one();
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  if (!field_->same_as(*o.field_)) throw std::invalid_argument("matrix field mismatch");
  const Field& f = *field_;
  Matrix out(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = at(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out.at(r, c) = f.add(out.at(r, c), f.mul(a, o.at(k, c)));
    }
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_->same_as(*o.field_) && data_ == o.data_;
}

std::vector<std::size_t> rref_in_place(Matrix& m) {
  const Field& f = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m.at(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    const Elem inv = f.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Elem factor = m.at(i, c);
      if (factor.is_zero()) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return rref_in_place(m).size(); }

Elem determinant(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Field& f = *m.field();
  Elem det = f.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m.at(sel, c).is_zero()) ++sel;
    if (sel == n) return f.zero();
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(c, j));
      det = f.neg(det);
    }
    const Elem pivot = m.at(c, c);
    det = f.mul(det, pivot);
    const Elem inv = f.inv(pivot);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem factor = f.mul(m.at(i, c), inv);
      if (factor.is_zero()) continue;
      for (std::size_t j = c; j < n; ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(c, j)));
    }
  }
  return det;
}

std::vector<std::vector<Elem>> nullspace(const Matrix& m) {
  Matrix r = m;
  const auto pivots = rref_in_place(r);
  const Field& f = *m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Elem>> solve(const Matrix& m, std::span<const Elem> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side has wrong length");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  const auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<Elem> x(m.cols(), m.field()->zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols());
  return x;
}

}  // namespace cubics::gf

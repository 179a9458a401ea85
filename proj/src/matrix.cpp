#include "tsa/matrix.hpp"

#include <algorithm>

namespace tsa {
namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!same_field(a, b)) fail(errc::field_mismatch, "matrices over different fields");
}

}  // namespace

Matrix::Matrix(std::shared_ptr<const Field> field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  data_.assign(rows_ * cols_, field_->zero());
}

Matrix Matrix::identity(std::shared_ptr<const Field> field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.field_->one();
  return m;
}

Matrix Matrix::from_rows(std::shared_ptr<const Field> field,
                         const std::vector<std::vector<FieldElement>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(std::move(field), r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) fail(errc::shape_mismatch, "ragged row list");
    for (std::size_t j = 0; j < c; ++j) {
      require_same_field(*m.field_, *rows[i][j].field);
      m.at(i, j) = m.field_->make(rows[i][j].a, rows[i][j].b);
    }
  }
  return m;
}

Matrix Matrix::from_columns(std::shared_ptr<const Field> field,
                            const std::vector<std::vector<FieldElement>>& columns) {
  std::size_t c = columns.size();
  std::size_t r = c == 0 ? 0 : columns.front().size();
  Matrix m(std::move(field), r, c);
  for (std::size_t j = 0; j < c; ++j) {
    if (columns[j].size() != r) fail(errc::shape_mismatch, "ragged column list");
    for (std::size_t i = 0; i < r; ++i) {
      require_same_field(*m.field_, *columns[j][i].field);
      m.at(i, j) = m.field_->make(columns[j][i].a, columns[j][i].b);
    }
  }
  return m;
}

const FieldElement& Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) fail(errc::bad_index, "matrix index out of range");
  return data_[r * cols_ + c];
}

FieldElement& Matrix::at(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= cols_) fail(errc::bad_index, "matrix index out of range");
  return data_[r * cols_ + c];
}

std::vector<FieldElement> Matrix::row(std::size_t r) const {
  std::vector<FieldElement> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(at(r, c));
  return out;
}

std::vector<FieldElement> Matrix::column(std::size_t c) const {
  std::vector<FieldElement> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return out;
}

bool Matrix::operator==(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != other.data_[i]) return false;
  return true;
}

RrefResult rref(const Matrix& m) {
  Matrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < r.cols() && pivot_row < r.rows(); ++c) {
    std::size_t sel = r.rows();
    for (std::size_t i = pivot_row; i < r.rows(); ++i) {
      if (!r.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel == r.rows()) continue;
    if (sel != pivot_row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(sel, j), r.at(pivot_row, j));
    FieldElement scale = inv(r.at(pivot_row, c));
    for (std::size_t j = c; j < r.cols(); ++j) r.at(pivot_row, j) *= scale;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == pivot_row || r.at(i, c).is_zero()) continue;
      FieldElement factor = r.at(i, c);
      for (std::size_t j = c; j < r.cols(); ++j)
        r.at(i, j) -= factor * r.at(pivot_row, j);
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  return {std::move(r), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivot_cols.size(); }

std::vector<std::vector<FieldElement>> kernel_basis(const Matrix& m) {
  auto [r, pivots] = rref(m);
  const Field& f = *m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<FieldElement>> basis;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<FieldElement> v(m.cols(), f.zero());
    v[free_col] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix submatrix_rows(const Matrix& m, const std::vector<std::size_t>& row_indices) {
  std::vector<std::size_t> sorted = row_indices;
  std::sort(sorted.begin(), sorted.end());
  Matrix out(m.field(), sorted.size(), m.cols());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= m.rows()) fail(errc::bad_index, "row index out of range");
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(sorted[i], j);
  }
  return out;
}

std::vector<FieldElement> mat_vec(const Matrix& m, const std::vector<FieldElement>& x) {
  if (x.size() != m.cols()) fail(errc::shape_mismatch, "matrix-vector shape mismatch");
  const Field& f = *m.field();
  std::vector<FieldElement> out(m.rows(), f.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * x[j];
  return out;
}

Matrix mat_mat(const Matrix& a, const Matrix& b) {
  require_same_field(*a.field(), *b.field());
  if (a.cols() != b.rows()) fail(errc::shape_mismatch, "matrix-matrix shape mismatch");
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElement& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

bool is_zero(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) return false;
  return true;
}

Matrix adjacency(const Topology& t, const std::shared_ptr<const Field>& field) {
  const int K = t.user_count();
  Matrix a(field, K, K);
  for (auto [i, j] : t.edges()) {
    a.at(i - 1, j - 1) = field->one();
    a.at(j - 1, i - 1) = field->one();
  }
  return a;
}

}  // namespace tsa

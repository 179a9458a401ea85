#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "tsa/field.hpp"
#include "tsa/topology.hpp"

namespace tsa {

/// Dense row-major matrix over one field.  All linear algebra here is exact;
/// no floating point anywhere.  Row/column indices are 0-based.
class Matrix {
 public:
  Matrix(std::shared_ptr<const Field> field, std::size_t rows, std::size_t cols);

  static Matrix identity(std::shared_ptr<const Field> field, std::size_t n);
  static Matrix from_rows(std::shared_ptr<const Field> field,
                          const std::vector<std::vector<FieldElement>>& rows);
  static Matrix from_columns(std::shared_ptr<const Field> field,
                             const std::vector<std::vector<FieldElement>>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::shared_ptr<const Field>& field() const { return field_; }

  const FieldElement& at(std::size_t r, std::size_t c) const;
  FieldElement& at(std::size_t r, std::size_t c);

  std::vector<FieldElement> row(std::size_t r) const;
  std::vector<FieldElement> column(std::size_t c) const;

  bool operator==(const Matrix& other) const;

 private:
  std::shared_ptr<const Field> field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> data_;
};

struct RrefResult {
  Matrix matrix;
  std::vector<std::size_t> pivot_cols;  // ascending
};

/// Gauss-Jordan reduced row echelon form.  Pivot selection scans rows
/// top-down for the first nonzero entry, so the output is deterministic.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Canonical basis of { x : m x = 0 }, one vector per free column of the
/// rref, free columns in increasing order.  Dimension is cols - rank.
std::vector<std::vector<FieldElement>> kernel_basis(const Matrix& m);

/// Rows extracted in increasing index order.
Matrix submatrix_rows(const Matrix& m, const std::vector<std::size_t>& row_indices);

std::vector<FieldElement> mat_vec(const Matrix& m, const std::vector<FieldElement>& x);
Matrix mat_mat(const Matrix& a, const Matrix& b);

bool is_zero(const Matrix& m);

/// K x K symmetric 0/1 adjacency matrix over the given field, zero diagonal.
Matrix adjacency(const Topology& t, const std::shared_ptr<const Field>& field);

}  // namespace tsa

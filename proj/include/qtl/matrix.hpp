#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtl/cyclo.hpp"

namespace qtl {

/// Dense matrix over a cyclotomic field, row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols, const CycloField& field);

  static ExactMatrix identity(std::size_t n, const CycloField& field);
  /// Matrix unit E_{ij} (0-based).
  static ExactMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j,
                          const CycloField& field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const CycloField& field() const { return *field_; }

  const CycloNum& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  CycloNum& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_identity() const;

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix& operator*=(const CycloNum& s);
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(const CycloNum& s, ExactMatrix a) { return a *= s; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  /// a += s * b
  void add_scaled(const CycloNum& s, const ExactMatrix& b);

  ExactMatrix transpose() const;
  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b);
  std::vector<CycloNum> column(std::size_t j) const;
  /// Matrix with the given columns.
  static ExactMatrix from_columns(const std::vector<std::vector<CycloNum>>& cols, std::size_t rows,
                                  const CycloField& field);

  /// First (row, col) where the two matrices differ, if any.
  std::optional<std::pair<std::size_t, std::size_t>> first_difference(const ExactMatrix& o) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  const CycloField* field_ = &CycloField::get(1);
  std::vector<CycloNum> a_;
};

ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);
std::vector<CycloNum> apply(const ExactMatrix& a, const std::vector<CycloNum>& v);

/// Incremental row echelon basis: feed vectors, keeps a reduced basis of their span.
class RowReducer {
 public:
  RowReducer(std::size_t width, const CycloField& field);

  /// Reduces `v` against the basis; stores and returns true if it was independent.
  bool add(std::vector<CycloNum> v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  bool contains(std::vector<CycloNum> v) const;
  /// Basis of the null space of the stored rows (as column vectors).
  std::vector<std::vector<CycloNum>> kernel() const;
  const std::vector<std::vector<CycloNum>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  void reduce(std::vector<CycloNum>& v) const;

  std::size_t width_;
  const CycloField* field_;
  // Each stored row is monic at its pivot and zero at every other stored pivot.
  std::vector<std::vector<CycloNum>> rows_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const ExactMatrix& a);
/// Basis of {x : A x = 0}.
std::vector<std::vector<CycloNum>> kernel(const ExactMatrix& a);
/// Some X with A X = B, or nullopt if inconsistent.
std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b);
/// Throws DivisionByZero when singular.
ExactMatrix inverse(const ExactMatrix& a);

}  // namespace qtl

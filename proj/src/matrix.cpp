#include "qtl/matrix.hpp"

#include "qtl/errors.hpp"

namespace qtl {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, const CycloField& field)
    : rows_(rows), cols_(cols), field_(&field), a_(rows * cols, CycloNum(field, Rational(0))) {}

ExactMatrix ExactMatrix::identity(std::size_t n, const CycloField& field) {
  ExactMatrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycloNum(field, Rational(1));
  return m;
}

ExactMatrix ExactMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j,
                              const CycloField& field) {
  ExactMatrix m(rows, cols, field);
  m(i, j) = CycloNum(field, Rational(1));
  return m;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool ExactMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum");
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!o.a_[i].is_zero()) a_[i] += o.a_[i];
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference");
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!o.a_[i].is_zero()) a_[i] -= o.a_[i];
  return *this;
}

ExactMatrix& ExactMatrix::operator*=(const CycloNum& s) {
  for (auto& x : a_)
    if (!x.is_zero()) x *= s;
  return *this;
}

void ExactMatrix::add_scaled(const CycloNum& s, const ExactMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("matrix add_scaled");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!b.a_[i].is_zero()) a_[i] += s * b.a_[i];
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
  const CycloField& f = a.field_->degree() >= b.field_->degree() ? *a.field_ : *b.field_;
  ExactMatrix c(a.rows_, b.cols_, f);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const auto& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j) += aik * bkj;
      }
    }
  return c;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (!(a.a_[i] == b.a_[i])) return false;
  return true;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_, *field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ExactMatrix ExactMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  ExactMatrix out(nr, nc, *field_);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void ExactMatrix::set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b) {
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::vector<CycloNum> ExactMatrix::column(std::size_t j) const {
  std::vector<CycloNum> v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<std::vector<CycloNum>>& cols, std::size_t rows,
                                      const CycloField& field) {
  ExactMatrix m(rows, cols.size(), field);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

std::optional<std::pair<std::size_t, std::size_t>> ExactMatrix::first_difference(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return std::pair<std::size_t, std::size_t>{0, 0};
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!((*this)(i, j) == o(i, j))) return std::pair{i, j};
  return std::nullopt;
}

ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b) {
  const CycloField& f = a.field().degree() >= b.field().degree() ? a.field() : b.field();
  ExactMatrix c(a.rows() * b.rows(), a.cols() * b.cols(), f);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) { return a * b - b * a; }

std::vector<CycloNum> apply(const ExactMatrix& a, const std::vector<CycloNum>& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector product");
  std::vector<CycloNum> out(a.rows(), CycloNum(a.field(), Rational(0)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

RowReducer::RowReducer(std::size_t width, const CycloField& field) : width_(width), field_(&field) {}

void RowReducer::reduce(std::vector<CycloNum>& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (v[p].is_zero()) continue;
    const CycloNum factor = v[p];
    const auto& row = rows_[r];
    for (std::size_t j = 0; j < width_; ++j)
      if (!row[j].is_zero()) v[j] -= factor * row[j];
  }
}

bool RowReducer::add(std::vector<CycloNum> v) {
  if (v.size() != width_) throw DimensionMismatch("RowReducer::add");
  reduce(v);
  std::size_t p = 0;
  while (p < width_ && v[p].is_zero()) ++p;
  if (p == width_) return false;
  const CycloNum inv = v[p].inverse();
  for (auto& x : v)
    if (!x.is_zero()) x *= inv;
  // Keep the basis fully reduced: clear the new pivot from earlier rows.
  for (auto& row : rows_) {
    if (row[p].is_zero()) continue;
    const CycloNum factor = row[p];
    for (std::size_t j = 0; j < width_; ++j)
      if (!v[j].is_zero()) row[j] -= factor * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool RowReducer::contains(std::vector<CycloNum> v) const {
  reduce(v);
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<std::vector<CycloNum>> RowReducer::kernel() const {
  std::vector<bool> is_pivot(width_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  std::vector<std::vector<CycloNum>> basis;
  for (std::size_t free = 0; free < width_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<CycloNum> x(width_, CycloNum(*field_, Rational(0)));
    x[free] = CycloNum(*field_, Rational(1));
    for (std::size_t r = 0; r < rows_.size(); ++r) x[pivots_[r]] = -rows_[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank(const ExactMatrix& a) {
  RowReducer rr(a.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<CycloNum> row;
    row.reserve(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rr.add(std::move(row));
  }
  return rr.rank();
}

std::vector<std::vector<CycloNum>> kernel(const ExactMatrix& a) {
  RowReducer rr(a.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<CycloNum> row;
    row.reserve(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rr.add(std::move(row));
  }
  return rr.kernel();
}

std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve");
  // Reduce the augmented matrix [A | B]; inconsistency shows up as a pivot in the B part.
  const std::size_t n = a.cols(), k = b.cols();
  RowReducer rr(n + k, a.field().degree() >= b.field().degree() ? a.field() : b.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<CycloNum> row;
    row.reserve(n + k);
    for (std::size_t j = 0; j < n; ++j) row.push_back(a(i, j));
    for (std::size_t j = 0; j < k; ++j) row.push_back(b(i, j));
    rr.add(std::move(row));
  }
  // The rows are fully reduced, so with free variables at zero each pivot
  // variable reads off directly from the B part of its row.
  ExactMatrix x(n, k, a.field());
  for (std::size_t r = 0; r < rr.rank(); ++r) {
    const std::size_t p = rr.pivots()[r];
    if (p >= n) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) x(p, j) = rr.rows()[r][n + j];
  }
  return x;
}

ExactMatrix inverse(const ExactMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<std::vector<CycloNum>> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i].reserve(2 * n);
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(a(i, j));
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(CycloNum(a.field(), Rational(i == j ? 1 : 0)));
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw DivisionByZero("singular matrix");
    std::swap(m[piv], m[col]);
    const CycloNum inv = m[col][col].inverse();
    for (auto& x : m[col])
      if (!x.is_zero()) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const CycloNum factor = m[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j)
        if (!m[col][j].is_zero()) m[r][j] -= factor * m[col][j];
    }
  }
  ExactMatrix out(n, n, a.field());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m[i][n + j];
  return out;
}

}  // namespace qtl

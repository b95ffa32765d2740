#pragma once

// Dense matrices over GF(p^k) and the row-reduction kernel: rank, kernel,
// solve, inverse, and subspaces held in reduced row echelon form.

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "modlie/error.hpp"
#include "modlie/field.hpp"

namespace modlie {

using Vec = std::vector<code_t>;

/// Row-major dense matrix. All entries live in one field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(const FieldPtr& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_ints(const FieldPtr& f, const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionError("from_ints: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = f->from_int(rows[i][j]);
    }
    return m;
  }

  static Matrix from_rows(const FieldPtr& f, std::size_t cols, const std::vector<Vec>& rows) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("from_rows: wrong row length");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const FieldPtr& f, std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionError("from_columns: wrong column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const FieldPtr& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  code_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  code_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<code_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const code_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
  Vec col_vec(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  const std::vector<code_t>& data() const { return data_; }

  bool is_zero() const {
    for (auto x : data_)
      if (x) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ &&
           (f_ == o.f_ || rows_ * cols_ == 0);
  }

  Matrix transpose() const {
    Matrix t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    same_shape(o);
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = f_->add(data_[i], o.data_[i]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    same_shape(o);
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = f_->sub(data_[i], o.data_[i]);
    return r;
  }

  Matrix operator-() const {
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = f_->neg(data_[i]);
    return r;
  }

  Matrix scaled(code_t s) const {
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = f_->mul(s, data_[i]);
    return r;
  }

  /// this += s * o
  void add_scaled(const Matrix& o, code_t s) {
    same_shape(o);
    if (s == 0) return;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (o.data_[i]) data_[i] = f_->add(data_[i], f_->mul(s, o.data_[i]));
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix product: inner dimensions differ");
    Matrix r(f_ ? f_ : o.f_, rows_, o.cols_);
    if (f_ && f_->is_prime_field()) {
      const std::uint64_t p = f_->p();
      std::vector<std::uint64_t> acc(o.cols_);
      for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        int pending = 0;
        for (std::size_t k = 0; k < cols_; ++k) {
          const std::uint64_t a = (*this)(i, k);
          if (!a) continue;
          const code_t* orow = o.data_.data() + k * o.cols_;
          for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += a * orow[j];
          // Each summand is < p^2 <= 2^32; flush well before overflow.
          if (++pending == 1 << 20) {
            for (auto& x : acc) x %= p;
            pending = 0;
          }
        }
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = static_cast<code_t>(acc[j] % p);
      }
      return r;
    }
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const code_t a = (*this)(i, k);
        if (!a) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (o(k, j)) r(i, j) = f_->add(r(i, j), f_->mul(a, o(k, j)));
      }
    return r;
  }

  Vec apply(std::span<const code_t> v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector product: length mismatch");
    Vec r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      code_t s = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (v[j] && (*this)(i, j)) s = f_->add(s, f_->mul((*this)(i, j), v[j]));
      r[i] = s;
    }
    return r;
  }

  Matrix pow(std::uint64_t e) const {
    if (!square()) throw DimensionError("matrix power of a non-square matrix");
    Matrix result = identity(f_, rows_), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  code_t trace() const {
    if (!square()) throw DimensionError("trace of a non-square matrix");
    code_t t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t = f_->add(t, (*this)(i, i));
    return t;
  }

  /// Block-diagonal sum.
  static Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix r(a.f_ ? a.f_ : b.f_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
    return r;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + f_->format((*this)(i, j));
      s += "]\n";
    }
    return s;
  }

 private:
  void same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shapes differ");
    if (f_ != o.f_ && rows_ * cols_ > 0) throw ParentMismatch("matrices over different fields");
  }

  FieldPtr f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<code_t> data_;
};

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

namespace detail {

// row_dst -= factor * row_src, starting at column `from`.
inline void axpy_row(const Field& f, std::span<code_t> dst, std::span<const code_t> src,
                     code_t factor, std::size_t from) {
  if (factor == 0) return;
  if (f.is_prime_field()) {
    const std::uint32_t p = f.p(), nf = p - factor;
    for (std::size_t c = from; c < dst.size(); ++c)
      if (src[c]) dst[c] = static_cast<code_t>((dst[c] + std::uint64_t{nf} * src[c]) % p);
    return;
  }
  const code_t nf = f.neg(factor);
  for (std::size_t c = from; c < dst.size(); ++c)
    if (src[c]) dst[c] = f.add(dst[c], f.mul(nf, src[c]));
}

inline void scale_row(const Field& f, std::span<code_t> r, code_t s, std::size_t from) {
  for (std::size_t c = from; c < r.size(); ++c)
    if (r[c]) r[c] = f.mul(s, r[c]);
}

}  // namespace detail

/// In-place reduced row echelon form. Pivoting takes the first nonzero
/// column and, within it, the first row at or below the current one.
/// Returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.rows() == 0 || m.cols() == 0) return pivots;
  const Field& f = *m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    detail::scale_row(f, m.row(r), f.inv(m(r, c)), c);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m(i, c)) detail::axpy_row(f, m.row(i), m.row(r), m(i, c), c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

class Subspace;

/// Right kernel {x : A x = 0} as a Subspace of F^cols.
Subspace kernel(const Matrix& a);

/// A subspace of F^n stored by its reduced row echelon basis, so equal
/// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FieldPtr f, std::size_t ambient) : basis_(std::move(f), 0, ambient) {}

  /// Span of the rows of `spanning`.
  static Subspace span(const Matrix& spanning) {
    Matrix m = spanning;
    auto piv = rref(m);
    Matrix b(m.field(), piv.size(), m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
      std::copy(m.row(i).begin(), m.row(i).end(), b.row(i).begin());
    return Subspace(std::move(b), std::move(piv));
  }

  static Subspace span(const FieldPtr& f, std::size_t ambient, const std::vector<Vec>& vecs) {
    return span(Matrix::from_rows(f, ambient, vecs));
  }

  static Subspace full(const FieldPtr& f, std::size_t n) { return span(Matrix::identity(f, n)); }

  const FieldPtr& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec basis_vec(std::size_t i) const { return basis_.row_vec(i); }
  std::vector<Vec> basis_vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_vec(i));
    return out;
  }

  /// v minus its projection along the echelon basis; zero iff v is inside.
  Vec reduce(Vec v) const {
    check_len(v.size());
    const Field& f = *field();
    for (std::size_t i = 0; i < dim(); ++i)
      if (code_t c = v[pivots_[i]]) detail::axpy_row(f, v, basis_.row(i), c, 0);
    return v;
  }

  bool contains(std::span<const code_t> v) const {
    Vec r = reduce(Vec(v.begin(), v.end()));
    for (auto x : r)
      if (x) return false;
    return true;
  }

  bool contains(const Subspace& o) const {
    same_ambient(o);
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of v (assumed inside) with respect to the echelon basis.
  Vec coordinates(std::span<const code_t> v) const {
    check_len(v.size());
    Vec c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  /// Columns that are not pivots; the matching unit vectors complete the
  /// basis to the whole space.
  std::vector<std::size_t> non_pivots() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient(); ++c) {
      if (k < pivots_.size() && pivots_[k] == c) {
        ++k;
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  Subspace operator+(const Subspace& o) const {
    same_ambient(o);
    Matrix m(field(), dim() + o.dim(), ambient());
    for (std::size_t i = 0; i < dim(); ++i) std::copy(basis_.row(i).begin(), basis_.row(i).end(), m.row(i).begin());
    for (std::size_t i = 0; i < o.dim(); ++i)
      std::copy(o.basis_.row(i).begin(), o.basis_.row(i).end(), m.row(dim() + i).begin());
    return span(m);
  }

  Subspace intersect(const Subspace& o) const {
    same_ambient(o);
    if (dim() == 0 || o.dim() == 0) return Subspace(field(), ambient());
    // Left kernel of [U; V]: combinations a U + b V = 0; then a U spans U cap V.
    Matrix stacked(field(), dim() + o.dim(), ambient());
    for (std::size_t i = 0; i < dim(); ++i)
      std::copy(basis_.row(i).begin(), basis_.row(i).end(), stacked.row(i).begin());
    for (std::size_t i = 0; i < o.dim(); ++i)
      std::copy(o.basis_.row(i).begin(), o.basis_.row(i).end(), stacked.row(dim() + i).begin());
    Subspace left = kernel(stacked.transpose());
    const Field& f = *field();
    std::vector<Vec> vecs;
    for (std::size_t t = 0; t < left.dim(); ++t) {
      Vec v(ambient(), 0);
      for (std::size_t i = 0; i < dim(); ++i)
        if (code_t a = left.basis_(t, i)) detail::axpy_row(f, v, basis_.row(i), f.neg(a), 0);
      vecs.push_back(std::move(v));
    }
    return span(field(), ambient(), vecs);
  }

  bool operator==(const Subspace& o) const {
    return ambient() == o.ambient() && dim() == o.dim() && basis_.data() == o.basis_.data();
  }

  /// Image under a linear map given as a matrix acting on column vectors.
  Subspace image_under(const Matrix& a) const {
    if (a.cols() != ambient()) throw DimensionError("image_under: matrix width");
    std::vector<Vec> vecs;
    for (std::size_t i = 0; i < dim(); ++i) vecs.push_back(a.apply(basis_.row(i)));
    return span(field(), a.rows(), vecs);
  }

 private:
  Subspace(Matrix b, std::vector<std::size_t> piv) : basis_(std::move(b)), pivots_(std::move(piv)) {}

  void check_len(std::size_t n) const {
    if (n != ambient()) throw DimensionError("vector length differs from ambient dimension");
  }
  void same_ambient(const Subspace& o) const {
    if (ambient() != o.ambient()) throw DimensionError("subspaces of different ambient spaces");
  }

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace kernel(const Matrix& a) {
  Matrix m = a;
  auto piv = rref(m);
  const Field& f = *a.field();
  std::vector<bool> is_piv(a.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec> vecs;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_piv[free]) continue;
    Vec v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(m(i, free));
    vecs.push_back(std::move(v));
  }
  return Subspace::span(a.field(), a.cols(), vecs);
}

/// Result of solve_linear: one particular solution (free variables set to
/// zero) when the system is consistent, and the full kernel of A.
struct LinearSolution {
  std::optional<Vec> particular;
  Subspace kernel;
};

inline LinearSolution solve_linear(const Matrix& a, std::span<const code_t> b) {
  if (b.size() != a.rows()) throw DimensionError("solve_linear: right-hand side length");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  LinearSolution out{std::nullopt, kernel(a)};
  if (!piv.empty() && piv.back() == a.cols()) return out;
  Vec x(a.cols(), 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, a.cols());
  out.particular = std::move(x);
  return out;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(a.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix inv(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// dim(U+V), dim(U cap V) and containment in one call.
struct SubspaceRelations {
  Subspace sum;
  Subspace intersection;
  bool u_in_v;
  bool v_in_u;
};

inline SubspaceRelations subspace_ops(const Subspace& u, const Subspace& v) {
  return {u + v, u.intersect(v), v.contains(u), u.contains(v)};
}

}  // namespace modlie

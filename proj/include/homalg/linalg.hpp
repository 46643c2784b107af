#pragma once

// Exact sparse linear algebra over the rationals.
//
// Elimination runs on rows bucketed by their leading column. Each column is
// resolved by choosing, among the rows that currently lead there, the one
// whose leading entry has the smallest bit size (lowest original row index on
// ties), and clearing the leading entry of the other rows in the bucket.
// Rows that never share a column never interact, so block-diagonal inputs
// are reduced block by block without any explicit decomposition.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homalg/parallel.hpp"
#include "homalg/rational.hpp"

namespace homalg {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by homology computations when consecutive maps do not compose to
/// zero.
class NonzeroComposite : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using SparseVector = std::map<std::size_t, Rational>;
using DenseVector = std::vector<Rational>;

/// y += a * x, dropping entries that cancel.
inline void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (a == 0) return;
  for (const auto& [i, v] : x) {
    auto [it, inserted] = y.try_emplace(i, a * v);
    if (!inserted) {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

inline SparseVector scaled(const SparseVector& x, const Rational& a) {
  SparseVector out;
  if (a == 0) return out;
  for (const auto& [i, v] : x) out.emplace(i, a * v);
  return out;
}

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
    SparseMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DimensionMismatch("ragged dense matrix");
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Rational& v) {
    check_index(r, c);
    if (v == 0)
      data_[r].erase(c);
    else
      data_[r][c] = v;
  }

  void add(std::size_t r, std::size_t c, const Rational& v) {
    check_index(r, c);
    if (v == 0) return;
    auto [it, inserted] = data_[r].try_emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) data_[r].erase(it);
    }
  }

  /// Adds a * x into column c.
  void add_column(std::size_t c, const SparseVector& x, const Rational& a = 1) {
    for (const auto& [r, v] : x) add(r, c, a * v);
  }

  Rational at(std::size_t r, std::size_t c) const {
    check_index(r, c);
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rational(0) : it->second;
  }

  const SparseVector& row(std::size_t r) const { return data_.at(r); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
    return t;
  }

  SparseVector apply(const SparseVector& x) const {
    SparseVector y;
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational acc = 0;
      for (const auto& [c, v] : data_[r]) {
        auto it = x.find(c);
        if (it != x.end()) acc += v * it->second;
      }
      if (acc != 0) y.emplace(r, std::move(acc));
    }
    return y;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    SparseMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (const auto& [k, v] : a.data_[r]) axpy(out.data_[r], v, b.data_[k]);
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
      throw std::out_of_range("matrix index (" + std::to_string(r) + ", " + std::to_string(c) +
                              ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> data_;
};

namespace detail {

struct Entry {
  std::size_t col;
  Rational value;
};
using Row = std::vector<Entry>;

// target -= factor * pivot, dropping entries that cancel.
inline void subtract_multiple(Row& target, const Rational& factor, const Row& pivot) {
  Row out;
  out.reserve(target.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target[i].col < pivot[j].col)) {
      out.push_back(std::move(target[i++]));
    } else if (i == target.size() || pivot[j].col < target[i].col) {
      out.push_back({pivot[j].col, -factor * pivot[j].value});
      ++j;
    } else {
      Rational v = target[i].value - factor * pivot[j].value;
      if (v != 0) out.push_back({target[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  target = std::move(out);
}

}  // namespace detail

/// Row echelon form: pivot rows normalized to a leading 1, sorted by pivot
/// column. When `reduced` is set the pivot columns are cleared above and
/// below each pivot.
struct Echelon {
  std::size_t cols = 0;
  std::vector<std::size_t> pivot_cols;
  std::vector<detail::Row> rows;

  std::size_t rank() const { return pivot_cols.size(); }
};

inline Echelon echelon_form(const SparseMatrix& m, bool reduced = false) {
  using detail::Row;
  const std::size_t nrows = m.rows();
  std::vector<Row> work(nrows);
  std::vector<std::vector<std::size_t>> bucket(m.cols());
  for (std::size_t r = 0; r < nrows; ++r) {
    const auto& src = m.row(r);
    work[r].reserve(src.size());
    for (const auto& [c, v] : src) work[r].push_back({c, v});
    if (!work[r].empty()) bucket[work[r].front().col].push_back(r);
  }

  Echelon e;
  e.cols = m.cols();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto candidates = std::move(bucket[c]);
    if (candidates.empty()) continue;
    std::size_t best = candidates.front();
    std::size_t best_bits = bit_size(work[best].front().value);
    for (std::size_t r : candidates) {
      const std::size_t bits = bit_size(work[r].front().value);
      if (bits < best_bits || (bits == best_bits && r < best)) {
        best = r;
        best_bits = bits;
      }
    }
    Row pivot = std::move(work[best]);
    if (pivot.front().value != 1) {
      const Rational inv = 1 / pivot.front().value;
      for (auto& entry : pivot) entry.value *= inv;
    }
    for (std::size_t r : candidates) {
      if (r == best) continue;
      Rational factor = work[r].front().value;
      detail::subtract_multiple(work[r], factor, pivot);
      if (!work[r].empty()) bucket[work[r].front().col].push_back(r);
    }
    e.pivot_cols.push_back(c);
    e.rows.push_back(std::move(pivot));
  }

  if (reduced && !e.rows.empty()) {
    std::vector<std::ptrdiff_t> pivot_of(m.cols(), -1);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
      pivot_of[e.pivot_cols[i]] = static_cast<std::ptrdiff_t>(i);
    for (std::size_t i = e.rows.size(); i-- > 0;) {
      for (;;) {
        auto& row = e.rows[i];
        std::size_t pos = 1;
        while (pos < row.size() && pivot_of[row[pos].col] < 0) ++pos;
        if (pos == row.size()) break;
        const Rational factor = row[pos].value;
        detail::subtract_multiple(row, factor, e.rows[static_cast<std::size_t>(pivot_of[row[pos].col])]);
      }
    }
  }
  return e;
}

namespace detail {

struct IntEntry {
  std::size_t col;
  Integer value;
};
using IntRow = std::vector<IntEntry>;

// Scales a rational row to a primitive integer row with the same span.
inline IntRow primitive_row(const SparseVector& src) {
  Integer lcm = 1;
  for (const auto& [c, v] : src) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(src.size());
  Integer g = 0;
  for (const auto& [c, v] : src) {
    Integer x = v.get_num() * (lcm / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    out.push_back({c, std::move(x)});
  }
  if (g > 1)
    for (auto& e : out) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  return out;
}

// target = p·target − t·pivot with p, t the leading entries, then divided by
// its content. The leading column cancels.
inline void cross_eliminate(IntRow& target, const IntRow& pivot) {
  const Integer p = pivot.front().value, t = target.front().value;
  IntRow out;
  out.reserve(target.size() + pivot.size());
  std::size_t i = 1, j = 1;
  Integer v;
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target[i].col < pivot[j].col)) {
      v = p * target[i].value;
      out.push_back({target[i++].col, v});
    } else if (i == target.size() || pivot[j].col < target[i].col) {
      v = -t * pivot[j].value;
      out.push_back({pivot[j++].col, v});
    } else {
      v = p * target[i].value - t * pivot[j].value;
      if (v != 0) out.push_back({target[i].col, v});
      ++i;
      ++j;
    }
  }
  Integer g = 0;
  for (const auto& e : out) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
    if (g == 1) return void(target = std::move(out));
  }
  if (g > 1)
    for (auto& e : out) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  target = std::move(out);
}

}  // namespace detail

/// Exact rank by fraction-free elimination on primitive integer rows, with
/// the same pivot rule as echelon_form.
inline std::size_t rank(const SparseMatrix& m) {
  std::vector<detail::IntRow> work(m.rows());
  std::vector<std::vector<std::size_t>> bucket(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    work[r] = detail::primitive_row(m.row(r));
    if (!work[r].empty()) bucket[work[r].front().col].push_back(r);
  }
  std::size_t rk = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto candidates = std::move(bucket[c]);
    if (candidates.empty()) continue;
    std::size_t best = candidates.front();
    std::size_t best_bits = mpz_sizeinbase(work[best].front().value.get_mpz_t(), 2);
    for (std::size_t r : candidates) {
      const std::size_t bits = mpz_sizeinbase(work[r].front().value.get_mpz_t(), 2);
      if (bits < best_bits || (bits == best_bits && r < best)) {
        best = r;
        best_bits = bits;
      }
    }
    const detail::IntRow pivot = std::move(work[best]);
    for (std::size_t r : candidates) {
      if (r == best) continue;
      detail::cross_eliminate(work[r], pivot);
      if (!work[r].empty()) bucket[work[r].front().col].push_back(r);
    }
    ++rk;
  }
  return rk;
}

/// True iff a·b = 0. Rows of a and columns of b are first scaled to
/// primitive integer vectors, which does not change whether the product
/// vanishes, so the accumulation runs over integers.
inline bool product_is_zero(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  const SparseMatrix bt = b.transpose();
  std::vector<std::vector<std::pair<std::size_t, Integer>>> bi(b.rows());
  for (std::size_t j = 0; j < bt.rows(); ++j)
    for (auto& e : detail::primitive_row(bt.row(j))) bi[e.col].emplace_back(j, std::move(e.value));
  std::vector<Integer> acc(b.cols());
  std::vector<std::size_t> touched;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    touched.clear();
    for (const auto& e : detail::primitive_row(a.row(r)))
      for (const auto& [j, v] : bi[e.col]) {
        if (acc[j] == 0) touched.push_back(j);
        acc[j] += e.value * v;
      }
    bool zero = true;
    for (std::size_t j : touched) {
      if (acc[j] != 0) zero = false;
      acc[j] = 0;
    }
    if (!zero) return false;
  }
  return true;
}


/// A linear subspace of Q^ambient_dim held by an independent list of dense
/// basis vectors.
class Subspace {
 public:
  Subspace() = default;

  /// Zero subspace of the given ambient space.
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  /// Takes `basis` as given; throws if a vector has the wrong length or the
  /// vectors are dependent.
  Subspace(std::size_t ambient_dim, std::vector<DenseVector> basis)
      : ambient_(ambient_dim), basis_(std::move(basis)) {
    for (const auto& v : basis_)
      if (v.size() != ambient_) throw DimensionMismatch("basis vector length differs from ambient dimension");
    if (homalg::rank(as_rows()) != basis_.size())
      throw std::invalid_argument("subspace basis vectors are linearly dependent");
  }

  /// Span of arbitrary vectors, returned with its reduced-echelon basis (a
  /// canonical form: equal subspaces get equal bases).
  static Subspace span(std::size_t ambient_dim, const std::vector<DenseVector>& vectors) {
    SparseMatrix m(vectors.size(), ambient_dim);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      if (vectors[r].size() != ambient_dim) throw DimensionMismatch("vector length differs from ambient dimension");
      for (std::size_t c = 0; c < ambient_dim; ++c) m.set(r, c, vectors[r][c]);
    }
    return from_echelon(echelon_form(m, true), ambient_dim);
  }

  static Subspace full(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
      DenseVector v(ambient_dim, Rational(0));
      v[i] = 1;
      s.basis_.push_back(std::move(v));
    }
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<DenseVector>& basis() const { return basis_; }

  /// Basis vectors as the rows of a matrix.
  SparseMatrix as_rows() const {
    SparseMatrix m(basis_.size(), ambient_);
    for (std::size_t r = 0; r < basis_.size(); ++r)
      for (std::size_t c = 0; c < ambient_; ++c) m.set(r, c, basis_[r][c]);
    return m;
  }

  /// Coordinates of v in this basis, or nullopt when v is not in the span.
  std::optional<DenseVector> coordinates(const DenseVector& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("vector length differs from ambient dimension");
    // Solve basis^T * x = v through the reduced echelon form of [basis^T | v].
    const std::size_t k = basis_.size();
    SparseMatrix aug(ambient_, k + 1);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < ambient_; ++i) aug.set(i, j, basis_[j][i]);
    for (std::size_t i = 0; i < ambient_; ++i) aug.set(i, k, v[i]);
    const Echelon e = echelon_form(aug, true);
    DenseVector x(k, Rational(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      if (e.pivot_cols[r] == k) return std::nullopt;
      for (const auto& entry : e.rows[r])
        if (entry.col == k) x[e.pivot_cols[r]] = entry.value;
    }
    return x;
  }

  bool contains(const DenseVector& v) const { return coordinates(v).has_value(); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  static Subspace from_echelon(const Echelon& e, std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (const auto& row : e.rows) {
      DenseVector v(ambient_dim, Rational(0));
      for (const auto& entry : row) v[entry.col] = entry.value;
      s.basis_.push_back(std::move(v));
    }
    return s;
  }

  std::size_t ambient_ = 0;
  std::vector<DenseVector> basis_;
};

/// Basis of {v : m v = 0}: one vector per non-pivot column of the reduced
/// echelon form.
inline Subspace kernel_basis(const SparseMatrix& m) {
  const Echelon e = echelon_form(m, true);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<DenseVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    DenseVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      for (const auto& entry : e.rows[r])
        if (entry.col == f) v[e.pivot_cols[r]] = -entry.value;
    basis.push_back(std::move(v));
  }
  return Subspace(m.cols(), std::move(basis));
}

/// a ∩ b, returned in canonical (reduced echelon) form.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("intersect: ambient dimensions " + std::to_string(a.ambient_dim()) + " and " +
                            std::to_string(b.ambient_dim()) + " differ");
  const std::size_t n = a.ambient_dim(), p = a.dim(), q = b.dim();
  // Columns a_1..a_p, -b_1..-b_q; a kernel vector (λ, μ) gives Σ λ_i a_i ∈ a ∩ b.
  SparseMatrix m(n, p + q);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < n; ++i) m.set(i, j, a.basis()[j][i]);
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < n; ++i) m.set(i, p + j, -b.basis()[j][i]);
  const Subspace ker = kernel_basis(m);
  std::vector<DenseVector> vectors;
  for (const auto& coeffs : ker.basis()) {
    DenseVector v(n, Rational(0));
    for (std::size_t j = 0; j < p; ++j)
      if (coeffs[j] != 0)
        for (std::size_t i = 0; i < n; ++i) v[i] += coeffs[j] * a.basis()[j][i];
    vectors.push_back(std::move(v));
  }
  return Subspace::span(n, vectors);
}

/// dim ker(d_out) / im(d_in) for the composable pair
///   domain(d_in) --d_in--> X --d_out--> codomain(d_out).
inline std::size_t homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (d_in.rows() != d_out.cols())
    throw DimensionMismatch("homology_dim: d_in has " + std::to_string(d_in.rows()) + " rows but d_out has " +
                            std::to_string(d_out.cols()) + " columns");
  if (!product_is_zero(d_out, d_in)) throw NonzeroComposite("homology_dim: d_out * d_in is nonzero");
  return d_out.cols() - rank(d_out) - rank(d_in);
}

/// A bounded chain complex C_0 <- C_1 <- ... <- C_N. boundaries[k - 1] is the
/// map C_k -> C_{k-1}.
struct ChainComplex {
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> boundaries;
};

/// Homology dimensions of every position. Checks the shape of each map and
/// that consecutive maps compose to zero; ranks are computed once per map.
inline std::vector<std::size_t> homology(const ChainComplex& cx) {
  const std::size_t n = cx.dims.size();
  if (n == 0) return {};
  if (cx.boundaries.size() + 1 != n) throw DimensionMismatch("chain complex: need one boundary per positive degree");
  for (std::size_t k = 1; k < n; ++k) {
    const auto& d = cx.boundaries[k - 1];
    if (d.rows() != cx.dims[k - 1] || d.cols() != cx.dims[k])
      throw DimensionMismatch("chain complex: boundary " + std::to_string(k) + " has the wrong shape");
  }
  for (std::size_t k = 2; k < n; ++k)
    if (!product_is_zero(cx.boundaries[k - 2], cx.boundaries[k - 1]))
      throw NonzeroComposite("chain complex: boundary " + std::to_string(k - 1) + " after " + std::to_string(k) +
                             " is nonzero");
  std::vector<std::size_t> ranks(n + 1, 0);  // ranks[k] = rank of C_k -> C_{k-1}
  for (std::size_t k = 1; k < n; ++k) ranks[k] = rank(cx.boundaries[k - 1]);
  std::vector<std::size_t> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = cx.dims[k] - ranks[k] - ranks[k + 1];
  return out;
}

}  // namespace homalg

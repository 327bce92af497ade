#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laver/errors.hpp"

namespace laver {

using Int = boost::multiprecision::cpp_int;

/// Dense exact-integer matrix.  Entries are arbitrary precision: normal-form
/// algorithms can blow up intermediate values even on {0,+-1} inputs.
class IntegerMatrix {
 public:
  static constexpr std::size_t default_max_elements = std::size_t{1} << 24;

  IntegerMatrix() = default;

  IntegerMatrix(std::size_t rows, std::size_t cols,
                std::size_t max_elements = default_max_elements)
      : rows_(rows), cols_(cols) {
    if (cols != 0 && rows > max_elements / cols)
      throw size_limit_error("matrix of " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " entries exceeds the element budget");
    data_.assign(rows * cols, Int(0));
  }

  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> init)
      : IntegerMatrix(init.size(), init.size() ? init.begin()->size() : 0) {
    std::size_t i = 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      std::size_t j = 0;
      for (long long v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static IntegerMatrix identity(std::size_t k) {
    IntegerMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const IntegerMatrix&) const = default;

  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }

  IntegerMatrix transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  /// row a += c * row b
  void add_row_multiple(std::size_t a, std::size_t b, const Int& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
  }

  /// col a += c * col b
  void add_col_multiple(std::size_t a, std::size_t b, const Int& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += c * (*this)(i, b);
  }

  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
  }

  std::vector<Int> row_vector(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  std::vector<Int> col_vector(std::size_t j) const {
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

inline IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += aik * b(k, j);
    }
  return out;
}

namespace detail {

inline void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  Int old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
  while (r != 0) {
    Int q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * ss;
    std::swap(old_s, ss);
    old_t -= q * tt;
    std::swap(old_t, tt);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

// quotient rounded toward minus infinity; requires b > 0
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

}  // namespace detail

struct SmithResult {
  IntegerMatrix d;  // diagonal with d_1 | d_2 | ...
  IntegerMatrix u;  // unimodular, u * m * v = d
  IntegerMatrix v;
  std::size_t rank = 0;

  std::vector<Int> diagonal() const {
    std::vector<Int> out;
    for (std::size_t i = 0; i < d.rows() && i < d.cols(); ++i) out.push_back(d(i, i));
    return out;
  }
};

/// Diagonalization by unimodular row/column operations, pivoting on the
/// minimal absolute value to limit entry growth.
inline SmithResult smith_normal_form(IntegerMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntegerMatrix u = IntegerMatrix::identity(m);
  IntegerMatrix v = IntegerMatrix::identity(n);
  std::size_t rank = 0;

  for (std::size_t t = 0; t < m && t < n; ++t) {
    // locate a minimal-magnitude nonzero entry in the trailing submatrix
    auto find_pivot = [&]() -> std::optional<std::pair<std::size_t, std::size_t>> {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      Int best_abs = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          Int mag = abs(a(i, j));
          if (!best || mag < best_abs) {
            best = {{i, j}};
            best_abs = mag;
          }
        }
      return best;
    };

    auto first = find_pivot();
    if (!first) break;  // trailing submatrix is zero

    for (;;) {
      auto piv = find_pivot();
      a.swap_rows(t, piv->first);
      u.swap_rows(t, piv->first);
      a.swap_cols(t, piv->second);
      v.swap_cols(t, piv->second);

      bool residue = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Int q = a(i, t) / a(t, t);
        a.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Int q = a(t, j) / a(t, t);
        a.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (a(t, j) != 0) residue = true;
      }
      if (residue) continue;  // strictly smaller entries appeared; re-pivot

      // divisibility pass: d_t must divide the whole trailing block
      bool fixed = true;
      for (std::size_t i = t + 1; i < m && fixed; ++i)
        for (std::size_t j = t + 1; j < n && fixed; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }

    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
    ++rank;
  }
  return {std::move(a), std::move(u), std::move(v), rank};
}

struct HermiteResult {
  IntegerMatrix h;  // row echelon, positive pivots, entries above reduced
  IntegerMatrix u;  // unimodular, u * m = h
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Row-style Hermite normal form with recorded transform.
inline HermiteResult hermite_normal_form(IntegerMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntegerMatrix u = IntegerMatrix::identity(m);
  std::size_t r = 0;
  std::vector<std::size_t> pivots;

  for (std::size_t j = 0; j < n && r < m; ++j) {
    for (;;) {
      std::optional<std::size_t> best;
      Int best_abs = 0;
      for (std::size_t i = r; i < m; ++i) {
        if (a(i, j) == 0) continue;
        Int mag = abs(a(i, j));
        if (!best || mag < best_abs) {
          best = i;
          best_abs = mag;
        }
      }
      if (!best) break;
      a.swap_rows(r, *best);
      u.swap_rows(r, *best);
      bool residue = false;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (a(i, j) == 0) continue;
        Int q = a(i, j) / a(r, j);
        a.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
        if (a(i, j) != 0) residue = true;
      }
      if (!residue) break;
    }
    if (a(r, j) == 0) continue;  // no pivot in this column
    if (a(r, j) < 0) {
      a.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = detail::floor_div(a(i, j), a(r, j));
      a.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    pivots.push_back(j);
    ++r;
  }
  return {std::move(a), std::move(u), r, std::move(pivots)};
}

inline std::size_t rank(const IntegerMatrix& m) { return hermite_normal_form(m).rank; }

/// Basis of the kernel lattice {x : M x = 0}, returned as matrix rows.
/// The rows of the recorded Hermite transform of M^T beyond its rank kill
/// M^T from the left, i.e. they are kernel vectors of M; being part of a
/// unimodular matrix, they form a basis of the full (saturated) kernel.
inline IntegerMatrix kernel_basis(const IntegerMatrix& m) {
  HermiteResult h = hermite_normal_form(m.transposed());
  const std::size_t nullity = m.cols() - h.rank;
  IntegerMatrix k(nullity, m.cols());
  for (std::size_t i = 0; i < nullity; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) k(i, j) = h.u(h.rank + i, j);
  return k;
}

/// Solves M x = b over the integers via the Hermite form of M^T; the form is
/// computed once, so repeated right-hand sides are cheap.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntegerMatrix& m)
      : m_rows_(m.rows()), m_cols_(m.cols()), hnf_(hermite_normal_form(m.transposed())) {}

  std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const {
    if (b.size() != m_rows_) throw std::invalid_argument("right-hand side size mismatch");
    // u * M^T = h  implies  M * u^T = h^T; peel b along the pivot structure
    std::vector<Int> residual = b;
    std::vector<Int> y(hnf_.h.rows(), Int(0));
    for (std::size_t k = 0; k < hnf_.rank; ++k) {
      const std::size_t j = hnf_.pivot_cols[k];
      const Int& d = hnf_.h(k, j);
      if (residual[j] % d != 0) return std::nullopt;
      Int coef = residual[j] / d;
      if (coef != 0)
        for (std::size_t i = 0; i < m_rows_; ++i) residual[i] -= coef * hnf_.h(k, i);
      y[k] = std::move(coef);
    }
    for (const auto& v : residual)
      if (v != 0) return std::nullopt;
    std::vector<Int> x(m_cols_, Int(0));
    for (std::size_t k = 0; k < hnf_.rank; ++k) {
      if (y[k] == 0) continue;
      for (std::size_t j = 0; j < m_cols_; ++j) x[j] += y[k] * hnf_.u(k, j);
    }
    return x;
  }

 private:
  std::size_t m_rows_, m_cols_;
  HermiteResult hnf_;
};

inline std::optional<std::vector<Int>> solve_in_lattice(const IntegerMatrix& m,
                                                        const std::vector<Int>& b) {
  return LatticeSolver(m).solve(b);
}

struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, in divisibility order

  bool operator==(const AbelianGroup&) const = default;

  std::string describe() const {
    if (free_rank == 0 && torsion.empty()) return "0";
    std::string out;
    if (free_rank == 1) out = "Z";
    else if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) {
      if (!out.empty()) out += " + ";
      out += "Z/" + t.str();
    }
    return out;
  }
};

/// Structure of ker(B) / im(A), for consecutive maps with B * A = 0.
/// The image generators (columns of A) are rewritten in a kernel basis of B;
/// the Smith form of the coefficient matrix gives free rank and torsion.
inline AbelianGroup quotient_group(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (b.cols() != a.rows())
    throw std::invalid_argument("quotient_group: dimension mismatch between maps");
  if (!(b * a).is_zero())
    throw std::invalid_argument("quotient_group: composition of the maps is nonzero");

  IntegerMatrix kernel = kernel_basis(b);  // rows are basis vectors
  const std::size_t nullity = kernel.rows();

  LatticeSolver solver(kernel.transposed());
  IntegerMatrix coeffs(nullity, a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    auto c = solver.solve(a.col_vector(j));
    if (!c) throw std::logic_error("quotient_group: image vector escapes the kernel lattice");
    for (std::size_t i = 0; i < nullity; ++i) coeffs(i, j) = (*c)[i];
  }

  SmithResult snf = smith_normal_form(std::move(coeffs));
  AbelianGroup g;
  g.free_rank = nullity - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.d(i, i) > 1) g.torsion.push_back(snf.d(i, i));
  return g;
}

/// Fraction-free (Bareiss) determinant; used to certify unimodularity.
inline Int determinant(IntegerMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      a.swap_rows(k, swap_row);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Incremental Z-row-space accumulator.  Feeding rows one at a time keeps
/// memory at O(rank * cols) however many rows are streamed; every update is
/// a unimodular 2x2 combine, so the stored rows span exactly the same row
/// lattice (hence define the same kernel) as the input stream.
class RowSpace {
 public:
  explicit RowSpace(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Returns true if the row enlarged the space.
  bool add_row(std::vector<Int> v) {
    if (v.size() != cols_) throw std::invalid_argument("row width mismatch");
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j] == 0) continue;
      auto it = rows_.find(j);
      if (it == rows_.end()) {
        if (v[j] < 0)
          for (auto& x : v) x = -x;
        rows_.emplace(j, std::move(v));
        return true;
      }
      std::vector<Int>& p = it->second;
      if (v[j] % p[j] == 0) {
        Int q = v[j] / p[j];
        for (std::size_t t = j; t < cols_; ++t) v[t] -= q * p[t];
      } else {
        Int g, s, t;
        detail::xgcd(p[j], v[j], g, s, t);
        Int pj_g = p[j] / g, vj_g = v[j] / g;
        for (std::size_t c = j; c < cols_; ++c) {
          Int np = s * p[c] + t * v[c];
          Int nv = pj_g * v[c] - vj_g * p[c];
          p[c] = std::move(np);
          v[c] = std::move(nv);
        }
      }
    }
    return false;
  }

  /// Snapshot of the accumulated rows in pivot order (echelon by column).
  IntegerMatrix basis_matrix() const {
    IntegerMatrix m(rows_.size(), cols_);
    std::size_t i = 0;
    for (const auto& [piv, row] : rows_) {
      for (std::size_t j = piv; j < cols_; ++j) m(i, j) = row[j];
      ++i;
    }
    return m;
  }

 private:
  std::size_t cols_;
  std::map<std::size_t, std::vector<Int>> rows_;  // pivot column -> row
};

}  // namespace laver

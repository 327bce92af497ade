#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "laver/errors.hpp"

namespace laver {

/// Shift tables: the unique binary operation on {1, ..., 2^n} satisfying
///
///   p * 1     = p + 1  (mod 2^n, representatives 1..2^n)
///   p * (q*1) = (p*q) * (p*1)
///
/// Every row p is periodic with a power-of-two period per(p) and strictly
/// increases up to the period, ending in 2^n.  Rows are therefore stored
/// compressed to their first per(p) entries and lookups reduce to a bitmask.
///
/// Construction fills rows for p descending from 2^n - 1 (row 2^n is the
/// identity) via p*(q+1) = (p*q)*(p+1); since p*q > p this only ever reads
/// rows that are already complete.
class LaverTable {
 public:
  using value_type = std::uint32_t;

  /// Hard default on the table order; build() refuses larger n.
  static constexpr unsigned default_max_n = 16;

  static LaverTable build(unsigned n, unsigned max_n = default_max_n) {
    if (n > max_n)
      throw size_limit_error("table order 2^" + std::to_string(n) +
                             " exceeds the cap n <= " + std::to_string(max_n));
    LaverTable t;
    t.init_rows(n);
    if (n >= 1) t.init_thresholds();
    return t;
  }

  /// Validating factory used by deserialisers: adopts period-compressed
  /// rows after checking the cheap structural invariants (power-of-two
  /// periods, strictly increasing stored rows ending in 2^n, first entry
  /// p+1 mod 2^n).  Does not re-verify the defining laws; the check suites
  /// do that on demand.
  static LaverTable from_stored_rows(unsigned n,
                                     const std::vector<std::vector<value_type>>& rows) {
    const std::uint64_t N = std::uint64_t{1} << n;
    if (rows.size() != N) throw format_error("row count does not match table order");
    LaverTable t;
    t.n_ = n;
    t.size_ = static_cast<value_type>(N);
    t.offset_.reserve(N + 1);
    t.period_.reserve(N);
    t.offset_.push_back(0);
    for (std::uint64_t p = 1; p <= N; ++p) {
      const auto& row = rows[p - 1];
      if (row.empty() || !std::has_single_bit(row.size()) || row.size() > N)
        throw format_error("row " + std::to_string(p) + " has a bad period");
      if (row.front() != (p % N) + 1)
        throw format_error("row " + std::to_string(p) + " does not start at p+1");
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] < 1 || row[i] > N)
          throw format_error("row " + std::to_string(p) + " has out-of-range values");
        if (i > 0 && row[i] <= row[i - 1])
          throw format_error("row " + std::to_string(p) + " is not strictly increasing");
      }
      if (row.back() != N)
        throw format_error("row " + std::to_string(p) + " does not end in 2^n");
      t.period_.push_back(static_cast<value_type>(row.size()));
      t.values_.insert(t.values_.end(), row.begin(), row.end());
      t.offset_.push_back(t.values_.size());
    }
    if (n >= 1) t.init_thresholds();
    return t;
  }

  /// Test-only escape hatch: adopts arbitrary full rows (period 2^n each)
  /// without any validation, so broken tables can be manufactured for
  /// negative tests.  Nothing in the library constructs invalid tables.
  static LaverTable from_rows_unchecked(unsigned n,
                                        std::vector<std::vector<value_type>> rows) {
    LaverTable t;
    t.n_ = n;
    t.size_ = value_type{1} << n;
    t.offset_.push_back(0);
    for (auto& row : rows) {
      t.period_.push_back(static_cast<value_type>(row.size()));
      t.values_.insert(t.values_.end(), row.begin(), row.end());
      t.offset_.push_back(t.values_.size());
    }
    return t;
  }

  unsigned n() const { return n_; }

  /// Number of elements, 2^n.
  value_type size() const { return size_; }

  /// p * q.  Arguments outside 1..2^n raise std::domain_error.
  value_type apply(value_type p, value_type q) const {
    require_element(p, "p");
    require_element(q, "q");
    const value_type per = period_[p - 1];
    return values_[offset_[p - 1] + ((q - 1) & (per - 1))];
  }

  /// Row period; always a power of two.
  value_type period(value_type p) const {
    require_element(p, "p");
    return period_[p - 1];
  }

  /// Count of leading entries of row p that agree with row p one order
  /// down.  Defined for 1 <= p <= 2^(n-1), n >= 1.
  value_type threshold(value_type p) const {
    if (n_ == 0) throw std::domain_error("threshold: table of order 1 has no predecessor");
    if (p < 1 || p > size_ / 2)
      throw std::domain_error("threshold: p must lie in 1..2^(n-1)");
    return threshold_[p - 1];
  }

  /// The second monoid operation p o q = p*(q+1) - 1 (and p o 2^n = p).
  /// Satisfies (x o y) * z = x * (y * z) with neutral element 2^n.
  value_type compose(value_type p, value_type q) const {
    require_element(p, "p");
    require_element(q, "q");
    if (q == size_) return p;
    return apply(p, q + 1) - 1;
  }

  /// Row p unrolled to full length 2^n.
  std::vector<value_type> left_translation_row(value_type p) const {
    require_element(p, "p");
    std::vector<value_type> row(size_);
    const value_type per = period_[p - 1];
    const value_type* stored = values_.data() + offset_[p - 1];
    for (value_type q = 0; q < size_; ++q) row[q] = stored[q & (per - 1)];
    return row;
  }

  /// Row p compressed to its period.
  std::span<const value_type> stored_row(value_type p) const {
    require_element(p, "p");
    return {values_.data() + offset_[p - 1], period_[p - 1]};
  }

  friend bool operator==(const LaverTable& a, const LaverTable& b) {
    return a.n_ == b.n_ && a.period_ == b.period_ && a.values_ == b.values_;
  }

 private:
  LaverTable() = default;

  void require_element(value_type x, const char* name) const {
    if (x < 1 || x > size_)
      throw std::domain_error(std::string(name) + " = " + std::to_string(x) +
                              " is outside 1..2^" + std::to_string(n_));
  }

  void init_rows(unsigned n) {
    n_ = n;
    size_ = value_type{1} << n;
    const value_type N = size_;
    std::vector<std::vector<value_type>> rows(N);
    rows[N - 1].resize(N);
    for (value_type q = 1; q <= N; ++q) rows[N - 1][q - 1] = q;
    for (value_type p = N - 1; p >= 1; --p) {
      auto& row = rows[p - 1];
      value_type v = p + 1;  // p * 1
      row.push_back(v);
      while (v != N) {
        // p*(q+1) = (p*q)*(p+1); the row of v = p*q > p is already built.
        const auto& vrow = rows[v - 1];
        v = vrow[p & (static_cast<value_type>(vrow.size()) - 1)];  // v * (p+1)
        if (!row.empty() && v <= row.back())
          throw std::logic_error("construction produced a non-increasing row");
        row.push_back(v);
      }
      if (!std::has_single_bit(row.size()))
        throw std::logic_error("construction produced a non-power-of-two period");
    }
    offset_.reserve(N + 1);
    period_.reserve(N);
    offset_.push_back(0);
    for (value_type p = 1; p <= N; ++p) {
      period_.push_back(static_cast<value_type>(rows[p - 1].size()));
      values_.insert(values_.end(), rows[p - 1].begin(), rows[p - 1].end());
      offset_.push_back(values_.size());
    }
  }

  // Leading-agreement counts against the table one order down.  Row p of
  // the smaller table never needs unrolling: agreement can only extend to
  // its period, where the two rows separate again (the larger row either
  // repeats or jumps by 2^(n-1)).
  void init_thresholds() {
    LaverTable prev;
    prev.init_rows(n_ - 1);
    const value_type half = size_ / 2;
    threshold_.resize(half);
    for (value_type p = 1; p <= half; ++p) {
      const auto cur = stored_row(p);
      const auto low = prev.stored_row(p);
      value_type t = 0;
      while (t < low.size() && t < cur.size() && cur[t] == low[t]) ++t;
      threshold_[p - 1] = t;
    }
  }

  unsigned n_ = 0;
  value_type size_ = 0;
  std::vector<value_type> values_;
  std::vector<std::uint64_t> offset_;
  std::vector<value_type> period_;
  std::vector<value_type> threshold_;
};

/// Reduction {1..2^n} -> {1..2^m}, m <= n: the representative of p mod 2^m.
/// A homomorphism of both operations.
inline LaverTable::value_type project(unsigned n, unsigned m, LaverTable::value_type p) {
  if (m > n) throw std::domain_error("project: m must not exceed n");
  const auto N = LaverTable::value_type{1} << n;
  if (p < 1 || p > N) throw std::domain_error("project: p is outside 1..2^n");
  return ((p - 1) & ((LaverTable::value_type{1} << m) - 1)) + 1;
}

}  // namespace laver

#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laver/report.hpp"
#include "laver/table.hpp"

namespace laver {

/// Set of values appearing in column q, i.e. { p * q : p }.
inline std::vector<LaverTable::value_type> column_set(const LaverTable& t,
                                                      LaverTable::value_type q) {
  boost::dynamic_bitset<> seen(t.size());
  for (LaverTable::value_type p = 1; p <= t.size(); ++p) seen.set(t.apply(p, q) - 1);
  std::vector<LaverTable::value_type> out;
  for (auto i = seen.find_first(); i != boost::dynamic_bitset<>::npos; i = seen.find_next(i))
    out.push_back(static_cast<LaverTable::value_type>(i + 1));
  return out;
}

struct LatticeResult {
  bool is_lattice = true;
  LaverTable::value_type a = 0, b = 0;  // witness pair when not a lattice
  std::string missing;                  // "join" or "meet"
};

/// Right-divisibility order: q <| r iff r appears in column q.  Column sets
/// are kept as bitsets so order queries are word-parallel subset tests.
class DivisibilityPoset {
 public:
  using value_type = LaverTable::value_type;
  using bitset = boost::dynamic_bitset<>;

  static constexpr unsigned default_max_n = 10;

  explicit DivisibilityPoset(const LaverTable& t, unsigned max_n = default_max_n)
      : n_(t.n()), size_(t.size()) {
    if (t.n() > max_n)
      throw size_limit_error("poset construction capped at n <= " + std::to_string(max_n));
    above_.assign(size_, bitset(size_));
    below_.assign(size_, bitset(size_));
    for (value_type q = 1; q <= size_; ++q) {
      auto& col = above_[q - 1];
      for (value_type p = 1; p <= size_; ++p) col.set(t.apply(p, q) - 1);
    }
    for (value_type q = 1; q <= size_; ++q)
      for (auto r = above_[q - 1].find_first(); r != bitset::npos;
           r = above_[q - 1].find_next(r))
        below_[r].set(q - 1);
  }

  unsigned n() const { return n_; }
  value_type size() const { return size_; }

  /// q <| r: r is a right divisor target of q (r lies in column q).
  bool divides(value_type q, value_type r) const {
    require(q), require(r);
    return above_[q - 1].test(r - 1);
  }

  /// Bitset of {r : q <| r}; this is exactly the column set of q.
  const bitset& above(value_type q) const {
    require(q);
    return above_[q - 1];
  }

  const bitset& below(value_type r) const {
    require(r);
    return below_[r - 1];
  }

  /// Cover pairs (a, b) of the order, sorted ascending.
  std::vector<std::pair<value_type, value_type>> hasse() const {
    std::vector<std::pair<value_type, value_type>> covers;
    for (value_type a = 1; a <= size_; ++a) {
      bitset up = above_[a - 1];
      up.reset(a - 1);
      for (auto b = up.find_first(); b != bitset::npos; b = up.find_next(b)) {
        bitset between = up & below_[b];
        between.reset(b);
        if (between.none()) covers.emplace_back(a, static_cast<value_type>(b + 1));
      }
    }
    return covers;
  }

  std::optional<value_type> lub(value_type a, value_type b) const {
    require(a), require(b);
    const bitset uppers = above_[a - 1] & above_[b - 1];
    for (auto u = uppers.find_first(); u != bitset::npos; u = uppers.find_next(u))
      if (uppers.is_subset_of(above_[u])) return static_cast<value_type>(u + 1);
    return std::nullopt;
  }

  std::optional<value_type> glb(value_type a, value_type b) const {
    require(a), require(b);
    const bitset lowers = below_[a - 1] & below_[b - 1];
    for (auto g = lowers.find_first(); g != bitset::npos; g = lowers.find_next(g))
      if (lowers.is_subset_of(below_[g])) return static_cast<value_type>(g + 1);
    return std::nullopt;
  }

  /// Scans all pairs for joins and meets; reports the first pair missing one.
  LatticeResult is_lattice() const {
    for (value_type a = 1; a <= size_; ++a)
      for (value_type b = a + 1; b <= size_; ++b) {
        if (!lub(a, b)) return {false, a, b, "join"};
        if (!glb(a, b)) return {false, a, b, "meet"};
      }
    return {};
  }

  /// Reflexivity, antisymmetry, transitivity, the initial element 1 and the
  /// final element 2^n, and the column criterion
  /// p <| q  iff  column(p) contains column(q).
  CheckReport check_order_axioms() const {
    CheckReport rep;
    rep.suite = "order-axioms";
    for (value_type q = 1; q <= size_; ++q, ++rep.cases)
      if (!divides(q, q)) rep.fail({q}, "q <| q", "not reflexive");
    for (value_type q = 1; q <= size_; ++q)
      for (value_type r = 1; r <= size_; ++r, ++rep.cases) {
        if (q != r && divides(q, r) && divides(r, q))
          rep.fail({q, r}, "antisymmetry", "both q <| r and r <| q");
        const bool criterion = above_[r - 1].is_subset_of(above_[q - 1]);
        if (divides(q, r) != criterion)
          rep.fail({q, r}, criterion ? "q <| r" : "not q <| r",
                   divides(q, r) ? "q <| r" : "not q <| r");
      }
    for (value_type q = 1; q <= size_; ++q) {
      ++rep.cases;
      // transitivity as a subset test: everything above r stays above q
      for (auto r = above_[q - 1].find_first(); r != bitset::npos;
           r = above_[q - 1].find_next(r))
        if (!above_[r].is_subset_of(above_[q - 1])) {
          rep.fail({q, static_cast<value_type>(r + 1)}, "transitive", "chain escapes");
          break;
        }
    }
    for (value_type q = 1; q <= size_; ++q, ++rep.cases) {
      if (!divides(1, q)) rep.fail({1, q}, "1 <| q", "violated");
      if (!divides(q, size_)) rep.fail({q, size_}, "q <| 2^n", "violated");
    }
    return rep;
  }

 private:
  void require(value_type x) const {
    if (x < 1 || x > size_) throw std::domain_error("element outside 1..2^n");
  }

  unsigned n_;
  value_type size_;
  std::vector<bitset> above_;
  std::vector<bitset> below_;
};

/// Structural facts tying the order at level n to level n-1 and to the
/// table itself:
///   - column(q) = column(q + 2^(n-1)) plus the extra element q, for small q
///   - r <| q at level n-1 iff r+2^(n-1) <| q+2^(n-1) at level n
///   - q is an immediate predecessor of q + 2^(n-1)
///   - the tail p <| 2^n - 2^(n-2) <| 2^(n-1) <| 2^n (p != 2^(n-1), 2^n)
///     together with 2^(n-2) * (2^n - 2^(n-2)) = 2^(n-1)
///   - column(2^(n-1) + 1) = {2, ..., 2^n}
inline CheckReport check_structure(const LaverTable& t,
                                   unsigned max_n = DivisibilityPoset::default_max_n) {
  CheckReport rep;
  rep.suite = "poset-structure";
  const auto N = t.size();
  const unsigned n = t.n();
  DivisibilityPoset poset(t, max_n);
  if (n == 0) return rep;

  const auto half = N / 2;
  for (LaverTable::value_type q = 1; q <= half; ++q, ++rep.cases) {
    auto expected = poset.above(q + half);
    expected.set(q - 1);
    if (poset.above(q) != expected || poset.above(q + half).test(q - 1))
      rep.fail({q}, "column(q) = column(q + 2^(n-1)) + {q}", "differs");
  }

  LaverTable small = LaverTable::build(n - 1);
  DivisibilityPoset sposet(small, max_n);
  for (LaverTable::value_type r = 1; r <= half; ++r)
    for (LaverTable::value_type q = 1; q <= half; ++q, ++rep.cases)
      if (sposet.divides(r, q) != poset.divides(r + half, q + half))
        rep.fail({r, q}, "level n-1 order matches shifted level n order", "differs");

  for (LaverTable::value_type q = 1; q <= half; ++q, ++rep.cases) {
    if (!poset.divides(q, q + half)) {
      rep.fail({q}, "q <| q + 2^(n-1)", "violated");
      continue;
    }
    auto between = poset.above(q) & poset.below(q + half);
    between.reset(q - 1);
    between.reset(q + half - 1);
    if (between.any())
      rep.fail({q}, "q + 2^(n-1) covers q", "intermediate element exists");
  }

  if (n >= 2) {
    const auto quarter = N / 4;
    ++rep.cases;
    if (t.apply(quarter, N - quarter) != half)
      rep.fail({quarter, N - quarter}, std::to_string(half),
               std::to_string(t.apply(quarter, N - quarter)));
    for (LaverTable::value_type p = 1; p < N; ++p) {
      if (p == half) continue;
      ++rep.cases;
      if (!poset.divides(p, N - quarter) || !poset.divides(N - quarter, half) ||
          !poset.divides(half, N))
        rep.fail({p}, "p <| 2^n - 2^(n-2) <| 2^(n-1) <| 2^n", "violated");
    }
  }

  ++rep.cases;
  {
    auto col = poset.above(half + 1);
    boost::dynamic_bitset<> expected(N);
    expected.set();
    expected.reset(0);
    if (col != expected) rep.fail({half + 1}, "column = {2..2^n}", "differs");
  }
  return rep;
}

/// Cross-level column membership: 2^n - r occurs in column q of the level-n
/// table iff 2^m - r occurs in column (q mod 2^m) at the base level m, where
/// m is the smallest exponent with r < 2^m.  For r = 1 the base criterion is
/// "q odd".  r = 0 reads as the value 2^n, which occurs in every column.
inline CheckReport occurrence_check(unsigned nmax, LaverTable::value_type r,
                                    unsigned max_n = LaverTable::default_max_n) {
  unsigned m = 0;
  while ((LaverTable::value_type{1} << m) <= r) ++m;
  if (m > nmax)
    throw std::domain_error("occurrence_check: no level nmax or below has 2^m > r");

  CheckReport rep;
  rep.suite = "occurrences(r=" + std::to_string(r) + ")";

  LaverTable base = LaverTable::build(m, max_n);
  std::vector<bool> base_occurs(base.size() + 1);
  for (LaverTable::value_type q = 1; q <= base.size(); ++q) {
    bool found = false;
    for (LaverTable::value_type p = 1; p <= base.size() && !found; ++p)
      found = base.apply(p, q) == base.size() - r;
    base_occurs[q] = found;
  }

  for (unsigned n = m; n <= nmax; ++n) {
    LaverTable t = LaverTable::build(n, max_n);
    const auto N = t.size();
    const auto target = N - r;
    for (LaverTable::value_type q = 1; q <= N; ++q, ++rep.cases) {
      bool found = false;
      for (LaverTable::value_type p = 1; p <= N && !found; ++p)
        found = t.apply(p, q) == target;
      const bool expected = base_occurs[project(n, m, q)];
      if (found != expected)
        rep.fail({n, q}, expected ? "occurs" : "does not occur",
                 found ? "occurs" : "does not occur");
      if (r == 1) {
        ++rep.cases;
        if (found != (q % 2 == 1))
          rep.fail({n, q}, "occurs exactly for odd q", found ? "occurs" : "does not occur");
      }
    }
  }
  return rep;
}

/// The symmetric variant q ~ r iff r appears in *row* q is not transitive:
/// 1 ~ 2^n (the row of 1 ends in 2^n) and 2^n ~ 1 (row 2^n is the identity),
/// yet no entry of row 1 equals 1.  Vacuous for n = 0.
inline CheckReport beforesym_demo(const LaverTable& t) {
  CheckReport rep;
  rep.suite = "beforesym";
  if (t.n() == 0) return rep;
  const auto N = t.size();
  auto row_contains = [&](LaverTable::value_type q, LaverTable::value_type r) {
    for (LaverTable::value_type p = 1; p <= N; ++p)
      if (t.apply(q, p) == r) return true;
    return false;
  };
  ++rep.cases;
  if (!row_contains(1, N)) rep.fail({1, N}, "1 ~ 2^n", "missing");
  ++rep.cases;
  if (!row_contains(N, 1)) rep.fail({N, 1}, "2^n ~ 1", "missing");
  ++rep.cases;
  if (row_contains(1, 1)) rep.fail({1, 1}, "not 1 ~ 1", "present");
  return rep;
}

}  // namespace laver

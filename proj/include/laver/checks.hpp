#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "laver/report.hpp"
#include "laver/table.hpp"

namespace laver {

/// Controls for exhaustive-vs-sampled triple sweeps.  A sweep over N^3
/// inputs runs exhaustively while N^3 <= exhaustive_limit, otherwise it
/// draws `samples` uniform triples from the stated seed.
struct SweepBudget {
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 24;
  std::uint64_t samples = std::uint64_t{1} << 20;
  std::uint64_t seed = 0x1a5e7;
};

namespace detail {

// Full table flattened for tight loops: entry(p,q) at (p-1)<<n | (q-1).
inline std::vector<LaverTable::value_type> unroll(const LaverTable& t) {
  const auto N = t.size();
  std::vector<LaverTable::value_type> flat(static_cast<std::size_t>(N) * N);
  for (LaverTable::value_type p = 1; p <= N; ++p) {
    auto row = t.left_translation_row(p);
    std::copy(row.begin(), row.end(), flat.begin() + (std::size_t(p - 1) << t.n()));
  }
  return flat;
}

template <typename F>
inline void sweep_triples(LaverTable::value_type N, const SweepBudget& budget,
                          std::uint64_t& cases, F&& visit) {
  const std::uint64_t total = std::uint64_t(N) * N * N;
  if (total <= budget.exhaustive_limit) {
    for (LaverTable::value_type x = 1; x <= N; ++x)
      for (LaverTable::value_type y = 1; y <= N; ++y)
        for (LaverTable::value_type z = 1; z <= N; ++z) visit(x, y, z);
    cases += total;
  } else {
    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<LaverTable::value_type> pick(1, N);
    for (std::uint64_t s = 0; s < budget.samples; ++s) visit(pick(rng), pick(rng), pick(rng));
    cases += budget.samples;
  }
}

}  // namespace detail

/// Sweeps x*(y*z) == (x*y)*(x*z) over all (or sampled) triples.
inline CheckReport check_selfdistributivity(const LaverTable& t, SweepBudget budget = {}) {
  CheckReport rep;
  rep.suite = "selfdistributivity";
  const auto N = t.size();
  const auto flat = detail::unroll(t);
  const unsigned n = t.n();
  auto op = [&](LaverTable::value_type a, LaverTable::value_type b) {
    return flat[(std::size_t(a - 1) << n) | (b - 1)];
  };
  detail::sweep_triples(N, budget, rep.cases, [&](auto x, auto y, auto z) {
    const auto lhs = op(x, op(y, z));
    const auto rhs = op(op(x, y), op(x, z));
    if (lhs != rhs)
      rep.fail({x, y, z}, std::to_string(lhs), std::to_string(rhs));
  });
  return rep;
}

inline constexpr std::array<std::string_view, 7> identity_suites = {
    "last-column", "monotone", "plus-one", "last-rows", "parity", "valuation", "monoid"};

/// Named identity sweeps over one table; suite "all" merges every one.
///
///   last-column  p * 2^n == 2^n
///   monotone     p < p * q for p < 2^n
///   plus-one     p*q == p*q' implies p*(q+1) == p*(q'+1) (cyclically)
///   last-rows    row 2^n - 1 is constant 2^n, row 2^n is the identity
///   parity       p*q odd iff p even and q odd (n >= 1)
///   valuation    with 2^d || p: p*q == q exactly for q > 2^n - 2^d
///   monoid       o is associative with neutral 2^n, (x o y)*z == x*(y*z),
///                x o y == (x*y) o x, and x*(y o z) == (x*y) o (x*z)
inline CheckReport check_identities(const LaverTable& t, std::string_view suite,
                                    SweepBudget budget = {}) {
  if (suite == "all") {
    CheckReport rep;
    rep.suite = "identities:all";
    for (auto s : identity_suites) rep.merge(check_identities(t, s, budget));
    return rep;
  }

  CheckReport rep;
  rep.suite = std::string(suite);
  const auto N = t.size();
  const unsigned n = t.n();
  const auto flat = detail::unroll(t);
  auto op = [&](LaverTable::value_type a, LaverTable::value_type b) {
    return flat[(std::size_t(a - 1) << n) | (b - 1)];
  };

  if (suite == "last-column") {
    for (LaverTable::value_type p = 1; p <= N; ++p, ++rep.cases)
      if (op(p, N) != N) rep.fail({p, N}, std::to_string(N), std::to_string(op(p, N)));
  } else if (suite == "monotone") {
    for (LaverTable::value_type p = 1; p < N; ++p)
      for (LaverTable::value_type q = 1; q <= N; ++q, ++rep.cases)
        if (op(p, q) <= p) rep.fail({p, q}, "> " + std::to_string(p), std::to_string(op(p, q)));
  } else if (suite == "plus-one") {
    std::vector<LaverTable::value_type> next(N + 1);
    for (LaverTable::value_type p = 1; p <= N; ++p) {
      std::fill(next.begin(), next.end(), 0);
      for (LaverTable::value_type q = 1; q <= N; ++q, ++rep.cases) {
        const auto v = op(p, q);
        const auto w = op(p, q % N + 1);
        if (next[v] == 0)
          next[v] = w;
        else if (next[v] != w)
          rep.fail({p, q}, std::to_string(next[v]), std::to_string(w));
      }
    }
  } else if (suite == "last-rows") {
    for (LaverTable::value_type q = 1; q <= N; ++q, ++rep.cases)
      if (op(N, q) != q) rep.fail({N, q}, std::to_string(q), std::to_string(op(N, q)));
    if (N >= 2) {
      for (LaverTable::value_type q = 1; q <= N; ++q, ++rep.cases)
        if (op(N - 1, q) != N) rep.fail({N - 1, q}, std::to_string(N), std::to_string(op(N - 1, q)));
      ++rep.cases;
      if (t.period(N - 1) != 1) rep.fail({N - 1}, "period 1", std::to_string(t.period(N - 1)));
    }
    ++rep.cases;
    if (t.period(N) != N) rep.fail({N}, "period " + std::to_string(N), std::to_string(t.period(N)));
  } else if (suite == "parity") {
    if (n >= 1) {
      for (LaverTable::value_type p = 1; p <= N; ++p)
        for (LaverTable::value_type q = 1; q <= N; ++q, ++rep.cases) {
          const bool odd = op(p, q) % 2 == 1;
          const bool expect = p % 2 == 0 && q % 2 == 1;
          if (odd != expect)
            rep.fail({p, q}, expect ? "odd" : "even", odd ? "odd" : "even");
        }
    }
  } else if (suite == "valuation") {
    for (LaverTable::value_type p = 1; p <= N; ++p) {
      const unsigned d = static_cast<unsigned>(std::countr_zero(p));
      const LaverTable::value_type bound = N - (LaverTable::value_type{1} << d);
      for (LaverTable::value_type q = 1; q <= N; ++q, ++rep.cases) {
        const bool fixed = op(p, q) == q;
        if (fixed != (q > bound))
          rep.fail({p, q}, q > bound ? "fixed" : "moved", fixed ? "fixed" : "moved");
      }
    }
  } else if (suite == "monoid") {
    std::vector<LaverTable::value_type> comp(static_cast<std::size_t>(N) * N);
    for (LaverTable::value_type p = 1; p <= N; ++p)
      for (LaverTable::value_type q = 1; q <= N; ++q)
        comp[(std::size_t(p - 1) << n) | (q - 1)] = q == N ? p : op(p, q + 1) - 1;
    auto co = [&](LaverTable::value_type a, LaverTable::value_type b) {
      return comp[(std::size_t(a - 1) << n) | (b - 1)];
    };
    for (LaverTable::value_type p = 1; p <= N; ++p) {
      rep.cases += 2;
      if (co(p, N) != p) rep.fail({p, N}, std::to_string(p), std::to_string(co(p, N)));
      if (co(N, p) != p) rep.fail({N, p}, std::to_string(p), std::to_string(co(N, p)));
    }
    for (LaverTable::value_type x = 1; x <= N; ++x)
      for (LaverTable::value_type y = 1; y <= N; ++y, ++rep.cases)
        if (co(x, y) != co(op(x, y), x))
          rep.fail({x, y}, std::to_string(co(x, y)), std::to_string(co(op(x, y), x)));
    detail::sweep_triples(N, budget, rep.cases, [&](auto x, auto y, auto z) {
      const auto a1 = co(co(x, y), z), a2 = co(x, co(y, z));
      if (a1 != a2) rep.fail({x, y, z}, std::to_string(a2), std::to_string(a1));
      const auto m1 = op(co(x, y), z), m2 = op(x, op(y, z));
      if (m1 != m2) rep.fail({x, y, z}, std::to_string(m2), std::to_string(m1));
      const auto d1 = op(x, co(y, z)), d2 = co(op(x, y), op(x, z));
      if (d1 != d2) rep.fail({x, y, z}, std::to_string(d2), std::to_string(d1));
    });
  } else {
    throw std::invalid_argument("unknown identity suite: " + std::string(suite));
  }
  return rep;
}

}  // namespace laver

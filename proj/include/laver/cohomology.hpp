#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laver/cochain.hpp"
#include "laver/errors.hpp"
#include "laver/integer_matrix.hpp"
#include "laver/report.hpp"
#include "laver/table.hpp"

namespace laver {

/// Default table-level caps for the exact kernel computations; the cost is
/// driven by the number of k-tuples, so the cap shrinks with the arity.
constexpr unsigned default_kernel_cap(unsigned k) {
  if (k <= 1) return 8;
  if (k == 2) return 5;
  if (k == 3) return 3;
  return 2;
}

namespace detail {

template <class Fn>
bool for_each_tuple_until(unsigned n, unsigned k, Fn&& fn) {
  const Cochain::value_type N = static_cast<Cochain::value_type>(std::size_t{1} << n);
  std::vector<Cochain::value_type> xs(k, 1);
  for (;;) {
    if (!fn(const_cast<const std::vector<Cochain::value_type>&>(xs))) return false;
    unsigned pos = k;
    while (pos > 0 && xs[pos - 1] == N) xs[--pos] = 1;
    if (pos == 0) return true;
    ++xs[pos - 1];
  }
}

inline std::size_t flat_index(unsigned n, const std::vector<Cochain::value_type>& xs) {
  const std::size_t N = std::size_t{1} << n;
  std::size_t idx = 0;
  for (auto x : xs) idx = idx * N + (x - 1);
  return idx;
}

/// Sparse row of the arity-k differential matrix for one (k+1)-tuple,
/// as sorted (column, coefficient) pairs with zero entries dropped.
inline std::vector<std::pair<std::size_t, std::int64_t>> differential_row(
    const LaverTable& t, const std::vector<Cochain::value_type>& xs) {
  const unsigned k1 = static_cast<unsigned>(xs.size());
  std::vector<std::pair<std::size_t, std::int64_t>> row;
  std::int64_t sign = 1;
  for (unsigned i = 1; i <= k1; ++i, sign = -sign) {
    row.emplace_back(flat_index(t.n(), face_map(t, k1, i, FaceKind::action, xs)), sign);
    row.emplace_back(flat_index(t.n(), face_map(t, k1, i, FaceKind::trivial, xs)), -sign);
  }
  std::sort(row.begin(), row.end());
  std::vector<std::pair<std::size_t, std::int64_t>> out;
  for (const auto& [col, c] : row) {
    if (!out.empty() && out.back().first == col)
      out.back().second += c;
    else
      out.emplace_back(col, c);
  }
  std::erase_if(out, [](const auto& p) { return p.second == 0; });
  return out;
}

}  // namespace detail

/// The distinguished basis candidates for the k-cocycle lattice: the
/// elementary cocycles away from the penultimate row, plus the constant.
inline std::vector<Cochain> cocycle_family(const LaverTable& t, unsigned k) {
  const auto N = static_cast<Cochain::value_type>(t.size());
  std::vector<Cochain> fam;
  if (k == 1) {
    fam.push_back(const_cochain(t, 1));
  } else if (k == 2) {
    for (Cochain::value_type q = 1; q < N; ++q) fam.push_back(phi2(t, q));
    fam.push_back(const_cochain(t, 2));
  } else if (k == 3) {
    for (Cochain::value_type p = 1; p <= N; ++p) {
      if (N > 1 && p == N - 1) continue;
      for (Cochain::value_type q = 1; q <= N; ++q) {
        auto f = phi3(t, p, q);
        if (!f.is_zero()) fam.push_back(std::move(f));
      }
    }
    fam.push_back(const_cochain(t, 3));
  } else {
    throw std::invalid_argument("cocycle_family: no distinguished family in this arity");
  }
  return fam;
}

/// Closed-form rank of the k-cocycle lattice.
inline std::size_t expected_cocycle_rank(unsigned n, unsigned k) {
  const std::size_t N = std::size_t{1} << n;
  switch (k) {
    case 1: return 1;
    case 2: return N;
    case 3: return N * N - N + 1;
    case 4: return N * N * N - N * N + N;
    default: throw std::invalid_argument("expected_cocycle_rank: arity out of range");
  }
}

namespace detail {

/// Rank of the family evaluated on the tuples starting at the penultimate
/// row; full rank there certifies linear independence.
inline std::size_t family_eval_rank(const LaverTable& t, const std::vector<Cochain>& fam) {
  if (fam.empty()) return 0;
  const unsigned k = fam.front().arity();
  const std::size_t N = t.size();
  std::size_t coords = 1;
  for (unsigned i = 0; i + 1 < k; ++i) coords *= N;
  const std::size_t offset = (N - 1 - (N > 1 ? 1 : 0)) * coords;  // row N-1, or row 1 if N=1
  IntegerMatrix m(fam.size(), coords);
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = 0; j < coords; ++j) m(i, j) = fam[i][offset + j];
  return rank(m);
}

struct StreamedRowSpace {
  RowSpace space;
  bool stopped_early = false;
};

/// Feeds the rows of the arity-k differential matrix into a row-space
/// accumulator, deduplicating repeats.  If target_rank is set the stream
/// stops once the accumulated rank reaches it; the caller is responsible
/// for knowing (from exhibited kernel vectors) that the rank cannot exceed
/// the target, which makes the early stop exact.
inline StreamedRowSpace stream_differential_rows(const LaverTable& t, unsigned k,
                                                 std::size_t cols,
                                                 std::optional<std::size_t> target_rank) {
  StreamedRowSpace out{RowSpace(cols), false};
  std::set<std::vector<std::pair<std::size_t, std::int64_t>>> seen;
  bool completed = for_each_tuple_until(
      t.n(), k + 1, [&](const std::vector<Cochain::value_type>& xs) {
        auto row = differential_row(t, xs);
        if (row.empty() || !seen.insert(row).second) return true;
        std::vector<Int> dense(cols, Int(0));
        for (const auto& [col, c] : row) dense[col] = c;
        out.space.add_row(std::move(dense));
        return !(target_rank && out.space.rank() >= *target_rank);
      });
  out.stopped_early = !completed;
  return out;
}

/// Streamed row space of the differential, with the early stop enabled only
/// when the distinguished cocycle family checks out as an exact certificate.
inline StreamedRowSpace differential_row_space(const LaverTable& t, unsigned k,
                                               std::size_t cols) {
  std::optional<std::size_t> target;
  if (k >= 1 && k <= 3) {
    auto fam = cocycle_family(t, k);
    bool certified = family_eval_rank(t, fam) == fam.size();
    for (const auto& f : fam)
      if (certified && !is_cocycle(t, f)) certified = false;
    if (certified) target = cols - fam.size();
  }
  return stream_differential_rows(t, k, cols, target);
}

inline std::size_t checked_cochain_dim(const LaverTable& t, unsigned k, unsigned max_n,
                                       const char* what) {
  if (t.n() > max_n)
    throw size_limit_error(std::string(what) + ": table level " + std::to_string(t.n()) +
                           " exceeds the cap " + std::to_string(max_n));
  std::size_t cols = 1;
  for (unsigned i = 0; i < k; ++i) cols *= t.size();
  return cols;
}

}  // namespace detail

/// Dense matrix of the arity-k differential; rows are indexed by
/// (k+1)-tuples and columns by k-tuples, both big-endian.
inline IntegerMatrix differential_matrix(const LaverTable& t, unsigned k,
                                         std::size_t max_elements =
                                             IntegerMatrix::default_max_elements) {
  std::size_t cols = 1;
  for (unsigned i = 0; i < k; ++i) cols *= t.size();
  const std::size_t rows = cols * t.size();
  IntegerMatrix m(rows, cols, max_elements);
  std::size_t r = 0;
  detail::for_each_tuple_until(t.n(), k + 1, [&](const std::vector<Cochain::value_type>& xs) {
    for (const auto& [col, c] : detail::differential_row(t, xs)) m(r, col) = c;
    ++r;
    return true;
  });
  return m;
}

/// Rank of the k-cocycle lattice (the kernel of the arity-k differential).
inline std::size_t cocycle_rank(const LaverTable& t, unsigned k,
                                unsigned max_n = 0) {
  if (max_n == 0) max_n = default_kernel_cap(k);
  const std::size_t cols = detail::checked_cochain_dim(t, k, max_n, "cocycle_rank");
  auto streamed = detail::differential_row_space(t, k, cols);
  return cols - streamed.space.rank();
}

/// Basis of the k-cocycle lattice, one cocycle per row of the result.
inline IntegerMatrix cochain_kernel(const LaverTable& t, unsigned k,
                                    unsigned max_n = 0) {
  if (max_n == 0) max_n = default_kernel_cap(k);
  const std::size_t cols = detail::checked_cochain_dim(t, k, max_n, "cochain_kernel");
  auto streamed = detail::differential_row_space(t, k, cols);
  return kernel_basis(streamed.space.basis_matrix());
}

struct CocycleSpace {
  std::size_t rank = 0;          // rank of the cocycle lattice
  std::vector<Cochain> basis;    // the verified distinguished family
};

/// Computes the k-cocycle lattice rank and certifies the distinguished
/// family: every member satisfies the cocycle equation, the members are
/// linearly independent, and they are as many as the lattice rank.
inline CocycleSpace cocycle_space(const LaverTable& t, unsigned k,
                                  unsigned max_n = 0) {
  if (k != 2 && k != 3)
    throw std::invalid_argument("cocycle_space: only arities 2 and 3 carry a family");
  if (max_n == 0) max_n = default_kernel_cap(k);
  const std::size_t cols = detail::checked_cochain_dim(t, k, max_n, "cocycle_space");

  auto fam = cocycle_family(t, k);
  for (const auto& f : fam)
    if (!is_cocycle(t, f))
      throw std::logic_error("cocycle_space: family member fails the cocycle equation");
  if (detail::family_eval_rank(t, fam) != fam.size())
    throw std::logic_error("cocycle_space: family is not linearly independent");
  if (fam.size() != expected_cocycle_rank(t.n(), k))
    throw std::logic_error("cocycle_space: family size disagrees with the closed form");

  auto streamed = detail::stream_differential_rows(t, k, cols, cols - fam.size());
  const std::size_t nullity = cols - streamed.space.rank();
  if (nullity != fam.size())
    throw std::logic_error("cocycle_space: lattice rank disagrees with the family");
  return {nullity, std::move(fam)};
}

/// Witness for "phi is a coboundary": some cochain one arity down whose
/// differential is phi, if one exists over the integers.
inline std::optional<Cochain> is_coboundary(const LaverTable& t, const Cochain& phi,
                                            std::size_t max_elements =
                                                IntegerMatrix::default_max_elements) {
  if (phi.level() != t.n()) throw std::invalid_argument("is_coboundary: table level mismatch");
  if (phi.arity() == 0) throw std::invalid_argument("is_coboundary: arity must be positive");
  const unsigned k = phi.arity() - 1;
  IntegerMatrix m = differential_matrix(t, k, max_elements);
  std::vector<Int> b(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) b[i] = phi[i];
  auto x = solve_in_lattice(m, b);
  if (!x) return std::nullopt;
  Cochain witness(t.n(), k);
  for (std::size_t i = 0; i < witness.size(); ++i)
    witness[i] = static_cast<std::int64_t>((*x)[i]);
  return witness;
}

/// Cohomology group in arity k: kernel of the arity-k differential modulo
/// the image of the arity-(k-1) one.
inline AbelianGroup cohomology(const LaverTable& t, unsigned k,
                               unsigned max_n = 0) {
  if (k < 1 || k > 3) throw std::invalid_argument("cohomology: arity out of range");
  if (max_n == 0) max_n = default_kernel_cap(k);
  IntegerMatrix kernel = cochain_kernel(t, k, max_n);
  const std::size_t nullity = kernel.rows();

  LatticeSolver solver(kernel.transposed());
  std::size_t gen_count = 1;
  for (unsigned i = 0; i + 1 < k; ++i) gen_count *= t.size();
  IntegerMatrix coeffs(nullity, gen_count);
  std::size_t g = 0;
  detail::for_each_tuple_until(t.n(), k - 1, [&](const std::vector<Cochain::value_type>& xs) {
    Cochain indicator(t.n(), k - 1);
    indicator.value_at(xs) = 1;
    Cochain image = differential(t, k - 1, indicator);
    std::vector<Int> b(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) b[i] = image[i];
    auto c = solver.solve(b);
    if (!c) throw std::logic_error("cohomology: coboundary escapes the cocycle lattice");
    for (std::size_t i = 0; i < nullity; ++i) coeffs(i, g) = (*c)[i];
    ++g;
    return true;
  });

  SmithResult snf = smith_normal_form(std::move(coeffs));
  AbelianGroup out;
  out.free_rank = nullity - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.d(i, i) > 1) out.torsion.push_back(snf.d(i, i));
  return out;
}

/// Exhaustively verifies, on every basis chain, that the two boundary
/// flavors square to zero and anticommute, and that faces commute in the
/// simplicial pattern.
inline CheckReport bicomplex_check(const LaverTable& t, unsigned k) {
  CheckReport rep{"bicomplex"};
  if (k < 2) return rep;
  const std::size_t N = t.size();
  std::size_t lower = 1;
  for (unsigned i = 0; i + 2 < k; ++i) lower *= N;

  detail::for_each_tuple_until(t.n(), k, [&](const std::vector<Cochain::value_type>& xs) {
    auto composite = [&](FaceKind outer, FaceKind inner) {
      std::vector<std::int64_t> acc(lower, 0);
      std::int64_t sign_i = 1;
      for (unsigned i = 1; i <= k; ++i, sign_i = -sign_i) {
        auto mid = face_map(t, k, i, inner, xs);
        std::int64_t sign_j = 1;
        for (unsigned j = 1; j <= k - 1; ++j, sign_j = -sign_j)
          acc[detail::flat_index(t.n(), face_map(t, k - 1, j, outer, mid))] +=
              sign_i * sign_j;
      }
      return acc;
    };
    auto is_zero = [](const std::vector<std::int64_t>& v) {
      for (auto x : v)
        if (x != 0) return false;
      return true;
    };
    std::vector<std::uint64_t> witness(xs.begin(), xs.end());

    rep.cases += 1;
    if (!is_zero(composite(FaceKind::action, FaceKind::action)))
      rep.fail(witness, "zero square of the acting boundary", "nonzero");
    rep.cases += 1;
    if (!is_zero(composite(FaceKind::trivial, FaceKind::trivial)))
      rep.fail(witness, "zero square of the dropping boundary", "nonzero");
    rep.cases += 1;
    {
      auto ab = composite(FaceKind::action, FaceKind::trivial);
      auto ba = composite(FaceKind::trivial, FaceKind::action);
      bool ok = true;
      for (std::size_t i = 0; i < lower; ++i)
        if (ab[i] + ba[i] != 0) ok = false;
      if (!ok) rep.fail(witness, "anticommuting mixed boundaries", "nonzero sum");
    }

    for (unsigned i = 2; i <= k; ++i)
      for (unsigned j = 1; j < i; ++j)
        for (FaceKind outer : {FaceKind::action, FaceKind::trivial})
          for (FaceKind inner : {FaceKind::action, FaceKind::trivial}) {
            rep.cases += 1;
            auto left = face_map(t, k - 1, j, outer, face_map(t, k, i, inner, xs));
            auto right = face_map(t, k - 1, i - 1, inner, face_map(t, k, j, outer, xs));
            if (left != right)
              rep.fail(witness, "commuting face pair",
                       "mismatch at (" + std::to_string(j) + "," + std::to_string(i) + ")");
          }
    return true;
  });
  return rep;
}

}  // namespace laver

#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "laver/cochain.hpp"
#include "laver/errors.hpp"
#include "laver/report.hpp"
#include "laver/table.hpp"

namespace laver {

/// A positive braid word on a fixed number of strands.  The letter i is the
/// positive crossing of strand positions (i, i+1), counted from the bottom;
/// there are no inverse letters.
struct BraidWord {
  unsigned strands = 1;
  std::vector<unsigned> letters;

  bool operator==(const BraidWord&) const = default;
};

/// Parses a whitespace-separated list of generator indices.
inline BraidWord parse_word(std::string_view text, unsigned strands) {
  if (strands == 0) throw format_error("parse_word: at least one strand required");
  BraidWord w{strands, {}};
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw format_error("parse_word: bad generator token '" + token + "'");
    if (value == 0 || value >= strands)
      throw format_error("parse_word: generator " + token + " out of range on " +
                         std::to_string(strands) + " strands");
    w.letters.push_back(value);
  }
  return w;
}

/// Input colors of one crossing.  The lower strand overcrosses: inputs
/// (lower a, upper b) leave as (a |> b, a), and the crossing weight reads
/// the inputs.  In shadow mode the color of the region above the crossing
/// is recorded as well.
struct CrossingRecord {
  unsigned letter = 0;
  LaverTable::value_type lower = 0;
  LaverTable::value_type upper = 0;
  std::optional<LaverTable::value_type> region;

  bool operator==(const CrossingRecord&) const = default;
};

struct ColoringTrace {
  std::vector<LaverTable::value_type> initial;
  std::vector<CrossingRecord> records;
  std::vector<LaverTable::value_type> finals;
};

namespace detail {

inline ColoringTrace propagate(const LaverTable& t, const BraidWord& w,
                               std::vector<LaverTable::value_type> colors,
                               std::optional<LaverTable::value_type> top) {
  using V = LaverTable::value_type;
  if (colors.size() != w.strands)
    throw std::invalid_argument("color_propagate: one color per strand required");
  for (V c : colors)
    if (c < 1 || c > t.size())
      throw std::invalid_argument("color_propagate: color out of range");
  if (top && (*top < 1 || *top > t.size()))
    throw std::invalid_argument("color_propagate: top region color out of range");

  ColoringTrace trace{colors, {}, {}};
  trace.records.reserve(w.letters.size());
  for (unsigned i : w.letters) {
    if (i == 0 || i >= w.strands)
      throw std::invalid_argument("color_propagate: letter out of range");
    const V a = colors[i - 1];
    const V b = colors[i];
    CrossingRecord rec{i, a, b, std::nullopt};
    if (top) {
      // upper-region color: the top color pushed down through every strand
      // strictly above position i+1
      V r = *top;
      for (std::size_t j = colors.size(); j > i + 1; --j) r = t.apply(colors[j - 1], r);
      rec.region = r;
    }
    trace.records.push_back(rec);
    colors[i - 1] = t.apply(a, b);
    colors[i] = a;
  }
  trace.finals = std::move(colors);
  return trace;
}

inline std::int64_t weight_sum2(const ColoringTrace& trace, const Cochain& phi) {
  const std::size_t N = phi.table_size();
  std::int64_t s = 0;
  for (const auto& rec : trace.records)
    s += phi[(rec.lower - std::size_t{1}) * N + (rec.upper - 1)];
  return s;
}

inline std::int64_t weight_sum3(const ColoringTrace& trace, const Cochain& phi) {
  const std::size_t N = phi.table_size();
  std::int64_t s = 0;
  for (const auto& rec : trace.records)
    s += phi[((rec.lower - std::size_t{1}) * N + (rec.upper - 1)) * N + (*rec.region - 1)];
  return s;
}

inline void require_weight(const LaverTable& t, const Cochain& phi, unsigned arity,
                           const char* what) {
  if (phi.level() != t.n())
    throw std::invalid_argument(std::string(what) + ": weight lives on another table");
  if (phi.arity() != arity)
    throw std::invalid_argument(std::string(what) + ": weight arity must be " +
                                std::to_string(arity));
}

}  // namespace detail

/// Pushes strand colors through the word bottom-left to top-right and
/// records the input colors of every crossing.
inline ColoringTrace color_propagate(const LaverTable& t, const BraidWord& w,
                                     std::vector<LaverTable::value_type> colors) {
  return detail::propagate(t, w, std::move(colors), std::nullopt);
}

/// Shadow variant: also records the upper-region color of every crossing,
/// the regions being colored downward from `top`.
inline ColoringTrace color_propagate(const LaverTable& t, const BraidWord& w,
                                     std::vector<LaverTable::value_type> colors,
                                     LaverTable::value_type top) {
  return detail::propagate(t, w, std::move(colors), top);
}

/// Region color below each strand of a horizontal slice: the region above
/// all strands is `top`, and crossing a strand colored s turns the region
/// color r into s |> r.
inline std::vector<LaverTable::value_type> region_colors(
    const LaverTable& t, const std::vector<LaverTable::value_type>& colors,
    LaverTable::value_type top) {
  using V = LaverTable::value_type;
  if (top < 1 || top > t.size())
    throw std::invalid_argument("region_colors: top region color out of range");
  for (V c : colors)
    if (c < 1 || c > t.size())
      throw std::invalid_argument("region_colors: color out of range");
  std::vector<V> below(colors.size());
  V r = top;
  for (std::size_t j = colors.size(); j > 0; --j) below[j - 1] = r = t.apply(colors[j - 1], r);
  return below;
}

/// Crossing-weight sum of a 2-cocycle over the word, L:Use2Cocycle style.
/// The cocycle condition is a contract: without it the sum is not a braid
/// invariant.
inline std::int64_t invariant2(const LaverTable& t, const BraidWord& w,
                               std::vector<LaverTable::value_type> colors,
                               const Cochain& phi) {
  detail::require_weight(t, phi, 2, "invariant2");
  if (!is_cocycle(t, phi))
    throw std::invalid_argument("invariant2: the weight is not a 2-cocycle");
  return detail::weight_sum2(color_propagate(t, w, std::move(colors)), phi);
}

/// Crossing-weight sum of a 3-cocycle with the upper-region color as the
/// third slot, L:Use3Cocycle style.
inline std::int64_t invariant3(const LaverTable& t, const BraidWord& w,
                               std::vector<LaverTable::value_type> colors,
                               LaverTable::value_type top, const Cochain& phi) {
  detail::require_weight(t, phi, 3, "invariant3");
  if (!is_cocycle(t, phi))
    throw std::invalid_argument("invariant3: the weight is not a 3-cocycle");
  return detail::weight_sum3(color_propagate(t, w, std::move(colors), top), phi);
}

/// Every word one positional rewrite away: braid-relation triples
/// s_i s_{i+1} s_i <-> s_{i+1} s_i s_{i+1} and far commutations
/// s_i s_j <-> s_j s_i with |i - j| >= 2.
inline std::vector<BraidWord> rewrites(const BraidWord& w) {
  std::vector<BraidWord> out;
  for (std::size_t p = 0; p + 1 < w.letters.size(); ++p) {
    const unsigned x = w.letters[p];
    const unsigned y = w.letters[p + 1];
    if (x + 2 <= y || y + 2 <= x) {
      BraidWord v = w;
      std::swap(v.letters[p], v.letters[p + 1]);
      out.push_back(std::move(v));
    }
    if (p + 2 < w.letters.size() && w.letters[p + 2] == x && (x + 1 == y || y + 1 == x)) {
      BraidWord v = w;
      v.letters[p] = y;
      v.letters[p + 1] = x;
      v.letters[p + 2] = y;
      out.push_back(std::move(v));
    }
  }
  return out;
}

/// Coloring sweep budget: exhaustive while the coloring count stays within
/// the limit, otherwise a seeded uniform sample.
struct RewriteBudget {
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 16;
  std::size_t samples = std::size_t{1} << 12;
  std::uint64_t seed = 0x1a5e7;
};

enum class RewriteMode { arc, shadow };

namespace detail {

template <class Fn>
void for_each_coloring(const LaverTable& t, unsigned strands, const RewriteBudget& budget,
                       Fn&& fn) {
  using V = LaverTable::value_type;
  const unsigned bits = t.n() * strands;
  if (bits < 64 && (std::uint64_t{1} << bits) <= budget.exhaustive_limit) {
    std::vector<V> colors(strands, 1);
    for (;;) {
      fn(const_cast<const std::vector<V>&>(colors));
      std::size_t pos = strands;
      while (pos > 0 && colors[pos - 1] == t.size()) colors[--pos] = 1;
      if (pos == 0) return;
      ++colors[pos - 1];
    }
  }
  std::mt19937_64 rng(budget.seed);
  std::uniform_int_distribution<V> dist(1, static_cast<V>(t.size()));
  std::vector<V> colors(strands);
  for (std::size_t s = 0; s < budget.samples; ++s) {
    for (auto& c : colors) c = dist(rng);
    fn(const_cast<const std::vector<V>&>(colors));
  }
}

}  // namespace detail

/// Empirical Reidemeister-III check: every one-step rewrite of the word must
/// preserve the final colors and the weight sums of all given cochains, over
/// exhaustive or budget-sampled colorings (and over every top region color
/// in shadow mode).  The weights are deliberately not required to be
/// cocycles — feeding a non-cocycle is how the check shows its power.
/// Failure witnesses are encoded as (rewrite index, weight index,
/// colors... [, top color]).
inline CheckReport rewrite_check(const LaverTable& t, const BraidWord& w, RewriteMode mode,
                                 const std::vector<Cochain>& phis,
                                 const RewriteBudget& budget = {}) {
  using V = LaverTable::value_type;
  const unsigned arity = mode == RewriteMode::arc ? 2 : 3;
  for (const auto& phi : phis) detail::require_weight(t, phi, arity, "rewrite_check");
  CheckReport rep;
  rep.suite = mode == RewriteMode::arc ? "rewrites(arc)" : "rewrites(shadow)";
  const auto variants = rewrites(w);
  if (variants.empty() || phis.empty()) return rep;

  const auto N = static_cast<V>(t.size());
  std::vector<std::int64_t> base_sums(phis.size());
  detail::for_each_coloring(t, w.strands, budget, [&](const std::vector<V>& colors) {
    auto witness = [&](std::size_t vi, std::size_t pi, V top) {
      std::vector<std::uint64_t> in{vi, pi};
      in.insert(in.end(), colors.begin(), colors.end());
      if (top) in.push_back(top);
      return in;
    };
    const V top_count = mode == RewriteMode::shadow ? N : V{1};
    for (V top = 1; top <= top_count; ++top) {
      const bool shadow = mode == RewriteMode::shadow;
      auto base = detail::propagate(t, w, colors, shadow ? std::optional<V>{top} : std::nullopt);
      for (std::size_t pi = 0; pi < phis.size(); ++pi)
        base_sums[pi] = shadow ? detail::weight_sum3(base, phis[pi])
                               : detail::weight_sum2(base, phis[pi]);
      for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        auto alt = detail::propagate(t, variants[vi], colors,
                                     shadow ? std::optional<V>{top} : std::nullopt);
        const bool finals_ok = alt.finals == base.finals;
        for (std::size_t pi = 0; pi < phis.size(); ++pi) {
          ++rep.cases;
          if (!finals_ok) {
            rep.fail(witness(vi, pi, shadow ? top : V{0}), "equal final colors", "differ");
            continue;
          }
          const std::int64_t s = shadow ? detail::weight_sum3(alt, phis[pi])
                                        : detail::weight_sum2(alt, phis[pi]);
          if (s != base_sums[pi])
            rep.fail(witness(vi, pi, shadow ? top : V{0}), "equal weight sums",
                     std::to_string(base_sums[pi]) + " vs " + std::to_string(s));
        }
      }
    }
  });
  return rep;
}

inline CheckReport rewrite_check(const LaverTable& t, const BraidWord& w, RewriteMode mode,
                                 const Cochain& phi, const RewriteBudget& budget = {}) {
  return rewrite_check(t, w, mode, std::vector<Cochain>{phi}, budget);
}

}  // namespace laver

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laver/errors.hpp"
#include "laver/table.hpp"

namespace laver {

/// Integer-valued function on k-tuples of table elements, stored densely.
/// Tuples are indexed big-endian: the leftmost argument is most significant.
class Cochain {
 public:
  using value_type = LaverTable::value_type;

  static constexpr std::size_t default_max_values = std::size_t{1} << 24;

  Cochain(unsigned n, unsigned k, std::size_t max_values = default_max_values)
      : n_(n), k_(k) {
    const std::size_t size = checked_size(n, k, max_values);
    values_.assign(size, 0);
  }

  unsigned level() const { return n_; }
  unsigned arity() const { return k_; }
  std::size_t table_size() const { return std::size_t{1} << n_; }
  std::size_t size() const { return values_.size(); }

  const std::vector<std::int64_t>& values() const { return values_; }
  std::int64_t& operator[](std::size_t idx) { return values_[idx]; }
  const std::int64_t& operator[](std::size_t idx) const { return values_[idx]; }

  std::size_t index_of(const std::vector<value_type>& xs) const {
    if (xs.size() != k_) throw std::invalid_argument("tuple arity mismatch");
    const std::size_t N = table_size();
    std::size_t idx = 0;
    for (value_type x : xs) {
      if (x < 1 || x > N) throw std::domain_error("tuple entry out of range");
      idx = idx * N + (x - 1);
    }
    return idx;
  }

  std::int64_t value_at(const std::vector<value_type>& xs) const {
    return values_[index_of(xs)];
  }
  std::int64_t& value_at(const std::vector<value_type>& xs) {
    return values_[index_of(xs)];
  }

  template <class... Args>
  std::int64_t operator()(Args... xs) const {
    return value_at(std::vector<value_type>{static_cast<value_type>(xs)...});
  }
  template <class... Args>
  std::int64_t& operator()(Args... xs) {
    return value_at(std::vector<value_type>{static_cast<value_type>(xs)...});
  }

  bool is_zero() const {
    for (auto v : values_)
      if (v != 0) return false;
    return true;
  }

  bool operator==(const Cochain&) const = default;

  Cochain& operator+=(const Cochain& o) {
    require_shape(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    require_shape(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  Cochain& operator*=(std::int64_t c) {
    for (auto& v : values_) v *= c;
    return *this;
  }

  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(std::int64_t c, Cochain a) { return a *= c; }
  friend Cochain operator-(Cochain a) { return a *= -1; }

 private:
  static std::size_t checked_size(unsigned n, unsigned k, std::size_t max_values) {
    std::size_t size = 1;
    const std::size_t N = std::size_t{1} << n;
    for (unsigned i = 0; i < k; ++i) {
      if (size > max_values / N)
        throw size_limit_error("cochain of order 2^" + std::to_string(n) + " and arity " +
                               std::to_string(k) + " exceeds the value budget");
      size *= N;
    }
    return size;
  }

  void require_shape(const Cochain& o) const {
    if (n_ != o.n_ || k_ != o.k_)
      throw std::invalid_argument("cochain shape mismatch");
  }

  unsigned n_, k_;
  std::vector<std::int64_t> values_;
};

/// Which kind of face of the complex: one acts with the table operation on
/// everything to the right of the removed slot, the other just removes it.
enum class FaceKind { action, trivial };

/// i-th face of a k-tuple, 1-based slot index.
inline std::vector<Cochain::value_type> face_map(const LaverTable& t, unsigned k, unsigned i,
                                                 FaceKind kind,
                                                 const std::vector<Cochain::value_type>& xs) {
  if (xs.size() != k) throw std::invalid_argument("tuple arity mismatch");
  if (i < 1 || i > k) throw std::domain_error("face index out of range");
  std::vector<Cochain::value_type> out;
  out.reserve(k - 1);
  for (unsigned j = 1; j <= k; ++j) {
    if (j == i) continue;
    if (kind == FaceKind::action && j > i)
      out.push_back(t.apply(xs[i - 1], xs[j - 1]));
    else
      out.push_back(xs[j - 1]);
  }
  return out;
}

namespace detail {

/// Runs fn over every k-tuple (entries 1..2^n) in index order.
template <class Fn>
void for_each_tuple(unsigned n, unsigned k, Fn&& fn) {
  const Cochain::value_type N = static_cast<Cochain::value_type>(std::size_t{1} << n);
  std::vector<Cochain::value_type> xs(k, 1);
  for (;;) {
    fn(const_cast<const std::vector<Cochain::value_type>&>(xs));
    unsigned pos = k;
    while (pos > 0 && xs[pos - 1] == N) xs[--pos] = 1;
    if (pos == 0) return;
    ++xs[pos - 1];
  }
}

/// One value of the differential, evaluated through the face maps:
/// the alternating sum over slots of (action face minus trivial face).
inline std::int64_t differential_value(const LaverTable& t, const Cochain& phi,
                                       const std::vector<Cochain::value_type>& xs) {
  const unsigned k1 = static_cast<unsigned>(xs.size());
  std::int64_t acc = 0, sign = 1;
  for (unsigned i = 1; i <= k1; ++i, sign = -sign) {
    acc += sign * phi.value_at(face_map(t, k1, i, FaceKind::action, xs));
    acc -= sign * phi.value_at(face_map(t, k1, i, FaceKind::trivial, xs));
  }
  return acc;
}

}  // namespace detail

/// Coboundary of an arity-k cochain, written out per arity for the small
/// cases used everywhere; higher arities go through the face maps.
inline Cochain differential(const LaverTable& t, unsigned k, const Cochain& phi,
                            std::size_t max_values = Cochain::default_max_values) {
  if (phi.arity() != k) throw std::invalid_argument("differential: arity mismatch");
  if (phi.level() != t.n()) throw std::invalid_argument("differential: table level mismatch");
  Cochain out(t.n(), k + 1, max_values);
  using v = Cochain::value_type;
  switch (k) {
    case 0:
      // both faces of a point agree, so the alternating sum collapses
      break;
    case 1:
      detail::for_each_tuple(t.n(), 2, [&](const std::vector<v>& xs) {
        const v x = xs[0], y = xs[1];
        out.value_at(xs) = phi(t.apply(x, y)) - phi(y);
      });
      break;
    case 2:
      detail::for_each_tuple(t.n(), 3, [&](const std::vector<v>& xs) {
        const v x = xs[0], y = xs[1], z = xs[2];
        out.value_at(xs) = phi(t.apply(x, y), t.apply(x, z)) + phi(x, z) -
                           phi(x, t.apply(y, z)) - phi(y, z);
      });
      break;
    case 3:
      detail::for_each_tuple(t.n(), 4, [&](const std::vector<v>& xs) {
        const v x = xs[0], y = xs[1], z = xs[2], w = xs[3];
        out.value_at(xs) = phi(t.apply(x, y), t.apply(x, z), t.apply(x, w)) -
                           phi(y, z, w) - phi(x, t.apply(y, z), t.apply(y, w)) +
                           phi(x, z, w) + phi(x, y, t.apply(z, w)) - phi(x, y, w);
      });
      break;
    default:
      detail::for_each_tuple(t.n(), k + 1, [&](const std::vector<v>& xs) {
        out.value_at(xs) = detail::differential_value(t, phi, xs);
      });
      break;
  }
  return out;
}

/// Same map computed purely through the face maps, as a cross-check.
inline Cochain differential_via_faces(const LaverTable& t, unsigned k, const Cochain& phi,
                                      std::size_t max_values = Cochain::default_max_values) {
  if (phi.arity() != k) throw std::invalid_argument("differential: arity mismatch");
  if (phi.level() != t.n()) throw std::invalid_argument("differential: table level mismatch");
  Cochain out(t.n(), k + 1, max_values);
  detail::for_each_tuple(t.n(), k + 1, [&](const std::vector<Cochain::value_type>& xs) {
    out.value_at(xs) = detail::differential_value(t, phi, xs);
  });
  return out;
}

/// Streaming cocycle test; never materializes the coboundary.  The small
/// arities get dedicated loops since they run over every (k+1)-tuple on
/// tables up to order 256.
inline bool is_cocycle(const LaverTable& t, const Cochain& phi) {
  if (phi.level() != t.n()) throw std::invalid_argument("is_cocycle: table level mismatch");
  using v = Cochain::value_type;
  const v N = static_cast<v>(t.size());
  const auto& f = phi.values();
  switch (phi.arity()) {
    case 1:
      for (v x = 1; x <= N; ++x)
        for (v y = 1; y <= N; ++y)
          if (f[t.apply(x, y) - 1] != f[y - 1]) return false;
      return true;
    case 2: {
      auto at = [&](v a, v b) { return f[std::size_t{a} * N - N + b - 1]; };
      for (v x = 1; x <= N; ++x)
        for (v y = 1; y <= N; ++y) {
          const v xy = t.apply(x, y);
          for (v z = 1; z <= N; ++z)
            if (at(xy, t.apply(x, z)) + at(x, z) != at(x, t.apply(y, z)) + at(y, z))
              return false;
        }
      return true;
    }
    case 3: {
      auto at = [&](v a, v b, v c) {
        return f[(std::size_t{a} * N - N + b - 1) * N + c - 1];
      };
      for (v x = 1; x <= N; ++x)
        for (v y = 1; y <= N; ++y) {
          const v xy = t.apply(x, y);
          for (v z = 1; z <= N; ++z) {
            const v xz = t.apply(x, z), yz = t.apply(y, z);
            for (v w = 1; w <= N; ++w)
              if (at(xy, xz, t.apply(x, w)) + at(x, z, w) + at(x, y, t.apply(z, w)) !=
                  at(y, z, w) + at(x, yz, t.apply(y, w)) + at(x, y, w))
                return false;
          }
        }
      return true;
    }
    default: {
      bool ok = true;
      detail::for_each_tuple(t.n(), phi.arity() + 1,
                             [&](const std::vector<Cochain::value_type>& xs) {
                               if (ok && detail::differential_value(t, phi, xs) != 0)
                                 ok = false;
                             });
      return ok;
    }
  }
}

/// Elementary 2-cocycle attached to a column value q: counts appearances of
/// q as the right input minus appearances as the product.
inline Cochain phi2(const LaverTable& t, Cochain::value_type q) {
  if (q < 1 || q > t.size()) throw std::domain_error("phi2: q out of range");
  Cochain out(t.n(), 2);
  detail::for_each_tuple(t.n(), 2, [&](const std::vector<Cochain::value_type>& xs) {
    out.value_at(xs) = (xs[1] == q ? 1 : 0) - (t.apply(xs[0], xs[1]) == q ? 1 : 0);
  });
  return out;
}

/// {0,1}-valued aggregate of phi2 over all divisors of q: it fires when q
/// sits in the column of y but not in the column of x*y.
inline Cochain psi2(const LaverTable& t, Cochain::value_type q) {
  if (q < 1 || q > t.size()) throw std::domain_error("psi2: q out of range");
  const auto N = static_cast<Cochain::value_type>(t.size());
  // in_column[y] <=> q appears in column y <=> y divides q
  std::vector<bool> in_column(N + 1, false);
  for (Cochain::value_type y = 1; y <= N; ++y)
    for (Cochain::value_type p = 1; p <= N; ++p)
      if (t.apply(p, y) == q) {
        in_column[y] = true;
        break;
      }
  Cochain out(t.n(), 2);
  detail::for_each_tuple(t.n(), 2, [&](const std::vector<Cochain::value_type>& xs) {
    out.value_at(xs) =
        (in_column[xs[1]] && !in_column[t.apply(xs[0], xs[1])]) ? 1 : 0;
  });
  return out;
}

inline Cochain const_cochain(const LaverTable& t, unsigned k, std::int64_t value = 1) {
  Cochain out(t.n(), k);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = value;
  return out;
}

/// The constant 2-cocycle retouched by elementary ones so that its
/// penultimate row is the indicator of the last column.
inline Cochain const_prime(const LaverTable& t) {
  const auto N = static_cast<Cochain::value_type>(t.size());
  Cochain out(t.n(), 2);
  detail::for_each_tuple(t.n(), 2, [&](const std::vector<Cochain::value_type>& xs) {
    out.value_at(xs) =
        1 - (xs[1] != N ? 1 : 0) + (t.apply(xs[0], xs[1]) != N ? 1 : 0);
  });
  return out;
}

/// Sum of the elementary 2-cocycles over the lower half {1..2^(n-1)}.
inline Cochain theta(const LaverTable& t) {
  if (t.n() == 0) throw std::domain_error("theta: needs order at least 2");
  const auto half = static_cast<Cochain::value_type>(t.size() / 2);
  Cochain out(t.n(), 2);
  detail::for_each_tuple(t.n(), 2, [&](const std::vector<Cochain::value_type>& xs) {
    out.value_at(xs) =
        (xs[1] <= half ? 1 : 0) - (t.apply(xs[0], xs[1]) <= half ? 1 : 0);
  });
  return out;
}

/// Coordinates of a 2-cocycle in the elementary basis: phi equals
/// sum of lambda[q-1] * phi2(q) over q < 2^n, plus c times the constant.
struct Decomposition2 {
  std::vector<std::int64_t> lambda;
  std::int64_t c = 0;
};

inline Decomposition2 decompose2(const LaverTable& t, const Cochain& phi) {
  if (phi.arity() != 2 || phi.level() != t.n())
    throw std::invalid_argument("decompose2: expected a 2-cochain on this table");
  if (!is_cocycle(t, phi)) throw std::invalid_argument("decompose2: not a 2-cocycle");
  Decomposition2 d;
  const auto N = static_cast<Cochain::value_type>(t.size());
  if (t.n() == 0) {
    d.c = phi(1, 1);
    return d;
  }
  // a 2-cocycle is pinned down by its penultimate row
  const Cochain::value_type pen = N - 1;
  d.c = phi(pen, N);
  d.lambda.resize(N - 1);
  for (Cochain::value_type q = 1; q < N; ++q) d.lambda[q - 1] = phi(pen, q) - d.c;
  return d;
}

/// Elementary 3-cocycle attached to a pair (p, q).
inline Cochain phi3(const LaverTable& t, Cochain::value_type p, Cochain::value_type q) {
  const auto N = static_cast<Cochain::value_type>(t.size());
  if (p < 1 || p > N || q < 1 || q > N) throw std::domain_error("phi3: pair out of range");
  Cochain out(t.n(), 3);
  detail::for_each_tuple(t.n(), 3, [&](const std::vector<Cochain::value_type>& xs) {
    const auto x = xs[0], y = xs[1], z = xs[2];
    std::int64_t v = 0;
    if (y == p && z == q) v += 1;
    if (t.apply(x, y) == p && t.apply(x, z) == q) v -= 1;
    if (x == p && z == q) v -= 1;
    if (x == p && t.apply(y, z) == q) v += 1;
    out.value_at(xs) = v;
  });
  return out;
}

/// phi3 with the top pair shifted by the constant cocycle, which makes the
/// restriction to the penultimate row behave uniformly.
inline Cochain phi3_prime(const LaverTable& t, Cochain::value_type p, Cochain::value_type q) {
  const auto N = static_cast<Cochain::value_type>(t.size());
  Cochain out = phi3(t, p, q);
  if (p == N && q == N) out += const_cochain(t, 3);
  return out;
}

/// Pullback of a cochain on a smaller table through reduction mod 2^m.
inline Cochain lift_cochain(const LaverTable& t, const Cochain& phi) {
  if (phi.level() > t.n()) throw std::invalid_argument("lift_cochain: source level too large");
  Cochain out(t.n(), phi.arity());
  std::vector<Cochain::value_type> reduced(phi.arity());
  detail::for_each_tuple(t.n(), phi.arity(), [&](const std::vector<Cochain::value_type>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i)
      reduced[i] = project(t.n(), phi.level(), xs[i]);
    out.value_at(xs) = phi.value_at(reduced);
  });
  return out;
}

/// Reads off the row period as the first 1 in row p of the half-point
/// aggregate cocycle.
inline LaverTable::value_type period_from_cocycle(const LaverTable& t,
                                                  LaverTable::value_type p) {
  if (t.n() == 0 || p < 1 || p >= t.size())
    throw std::domain_error("period_from_cocycle: p out of range");
  const Cochain psi = psi2(t, static_cast<Cochain::value_type>(t.size() / 2));
  for (LaverTable::value_type y = 1; y <= t.size(); ++y)
    if (psi(p, y) == 1) return y;
  throw std::logic_error("period_from_cocycle: no jump found");
}

/// Reads off the agreement threshold with the half-order table as the
/// position before the first 1 in row p of the lower-half aggregate.
inline LaverTable::value_type threshold_from_cocycle(const LaverTable& t,
                                                     LaverTable::value_type p) {
  if (t.n() == 0 || p < 1 || p >= t.size() / 2)
    throw std::domain_error("threshold_from_cocycle: p out of range");
  const Cochain th = theta(t);
  for (LaverTable::value_type y = 1; y <= t.size(); ++y)
    if (th(p, y) == 1) return y - 1;
  throw std::logic_error("threshold_from_cocycle: no jump found");
}

}  // namespace laver

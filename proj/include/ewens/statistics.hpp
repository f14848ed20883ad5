#pragma once

// Permutation statistics (cycle counts by length, weak exceedances and the
// interpolated exceedance profile F, adjacencies, dashed and bivincular
// pattern occurrences, generic local statistics) and their known limits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ewens/error.hpp"
#include "ewens/permutation.hpp"
#include "ewens/rational.hpp"

namespace ewens {

inline int gamma_p(const Permutation& sigma, int p) {
  if (p < 1) throw ValidationError("cycle length must be positive");
  const auto stats = cycle_stats(sigma);
  auto it = stats.by_length.find(p);
  return it == stats.by_length.end() ? 0 : it->second;
}

// #{i : sigma(i) >= i}
inline int exceedance_count(const Permutation& sigma) {
  int c = 0;
  for (int i = 1; i <= sigma.size(); ++i) c += sigma(i) >= i;
  return c;
}

// prefix[k] = number of weak exceedances among 1..k, prefix[0] = 0.
inline std::vector<int> exceedance_prefix(const Permutation& sigma) {
  std::vector<int> prefix(sigma.size() + 1, 0);
  for (int i = 1; i <= sigma.size(); ++i) prefix[i] = prefix[i - 1] + (sigma(i) >= i);
  return prefix;
}

namespace detail {

inline void require_unit_interval(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("F is defined on [0,1] only");
}

// Piecewise-linear interpolation of k/N -> prefix[k]/N.
inline double interpolate_prefix(const std::vector<int>& prefix, double x) {
  require_unit_interval(x);
  const int n = static_cast<int>(prefix.size()) - 1;
  const double t = x * n;
  int k = static_cast<int>(std::floor(t));
  if (k >= n) return static_cast<double>(prefix[n]) / n;
  const double frac = t - k;
  return (prefix[k] + frac * (prefix[k + 1] - prefix[k])) / n;
}

}  // namespace detail

inline double f_function(const Permutation& sigma, double x) {
  return detail::interpolate_prefix(exceedance_prefix(sigma), x);
}

inline std::vector<double> f_function(const Permutation& sigma, const std::vector<double>& xs) {
  const auto prefix = exceedance_prefix(sigma);
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(detail::interpolate_prefix(prefix, x));
  return out;
}

// #{i in [N-1] : |sigma(i+1) - sigma(i)| = 1}
inline int adjacency_count(const Permutation& sigma) {
  int c = 0;
  for (int i = 1; i < sigma.size(); ++i) c += std::abs(sigma(i + 1) - sigma(i)) == 1;
  return c;
}

namespace detail {

inline std::vector<int> checked_subset(std::vector<int> x, int p, const char* what) {
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  for (int v : x) {
    if (v < 1 || v > p - 1) {
      throw ValidationError(std::string(what) + " must be a subset of [p-1], got " + std::to_string(v));
    }
  }
  return x;
}

}  // namespace detail

inline constexpr int kMaxPatternSize = 6;

// Classical pattern tau plus required position adjacencies: x in X forces
// i_{x+1} = i_x + 1.
struct DashedPattern {
  Permutation tau;
  std::vector<int> adjacent;

  DashedPattern(Permutation t, std::vector<int> x)
      : tau(std::move(t)), adjacent(detail::checked_subset(std::move(x), tau.size(), "X")) {
    if (tau.size() < 1) throw ValidationError("pattern must have size at least 1");
    if (tau.size() > kMaxPatternSize) {
      throw CapacityError("patterns of size above " + std::to_string(kMaxPatternSize) + " are not supported");
    }
  }

  int size() const { return tau.size(); }
  int adjacency_count() const { return static_cast<int>(adjacent.size()); }
  bool forces(int x) const { return std::binary_search(adjacent.begin(), adjacent.end(), x); }
};

// Adds value adjacencies: y in Y forces the (y+1)-th smallest selected value to
// follow the y-th smallest one.
struct BivincularPattern {
  Permutation tau;
  std::vector<int> adjacent;
  std::vector<int> value_adjacent;

  BivincularPattern(Permutation t, std::vector<int> x, std::vector<int> y)
      : tau(std::move(t)),
        adjacent(detail::checked_subset(std::move(x), tau.size(), "X")),
        value_adjacent(detail::checked_subset(std::move(y), tau.size(), "Y")) {
    if (tau.size() < 1) throw ValidationError("pattern must have size at least 1");
  }
};

namespace detail {

// Number of positions k in (after, N] with lo < sigma(k) < hi, answered from a
// table of counts of positions <= k holding values <= v.
class DominanceTable {
 public:
  explicit DominanceTable(const Permutation& sigma) : n_(sigma.size()), cells_((n_ + 1) * (n_ + 1), 0) {
    for (int k = 1; k <= n_; ++k) {
      const std::uint32_t* prev = &cells_[(k - 1) * (n_ + 1)];
      std::uint32_t* row = &cells_[k * (n_ + 1)];
      const int v0 = sigma(k);
      for (int v = 0; v < v0; ++v) row[v] = prev[v];
      for (int v = v0; v <= n_; ++v) row[v] = prev[v] + 1;
    }
  }

  long count_after(int after, int lo, int hi) const {
    if (hi - lo < 2) return 0;
    const int v1 = lo, v2 = hi - 1;
    return static_cast<long>(at(n_, v2)) - at(n_, v1) - at(after, v2) + at(after, v1);
  }

 private:
  std::uint32_t at(int k, int v) const { return cells_[k * (n_ + 1) + v]; }

  int n_;
  std::vector<std::uint32_t> cells_;
};

}  // namespace detail

// Occurrences of a dashed pattern. Positions are chosen level by level in
// increasing order; each new value only needs comparing with its nearest
// neighbours in tau among earlier levels. When the last position is free and
// p >= 3, the last level is a rectangle count.
inline long count_dashed(const Permutation& sigma, const DashedPattern& pattern) {
  const int n = sigma.size();
  const int p = pattern.size();
  if (p > n) return 0;
  if (p == 1) return n;

  // For level j (0-based): earlier level holding the largest tau value below
  // tau(j+1), and the one holding the smallest above; -1 if none.
  std::vector<int> lower(p, -1), upper(p, -1);
  std::vector<char> forced(p, 0);
  for (int j = 0; j < p; ++j) {
    const int t = pattern.tau(j + 1);
    for (int k = 0; k < j; ++k) {
      const int u = pattern.tau(k + 1);
      if (u < t && (lower[j] < 0 || u > pattern.tau(lower[j] + 1))) lower[j] = k;
      if (u > t && (upper[j] < 0 || u < pattern.tau(upper[j] + 1))) upper[j] = k;
    }
    forced[j] = j > 0 && pattern.forces(j);
  }

  const bool table_last = p >= 3 && !forced[p - 1];
  std::optional<detail::DominanceTable> table;
  if (table_last) table.emplace(sigma);

  std::vector<int> pos(p), val(p);
  long total = 0;
  auto window = [&](int j) {
    return std::pair{lower[j] < 0 ? 0 : val[lower[j]], upper[j] < 0 ? n + 1 : val[upper[j]]};
  };

  auto descend = [&](auto&& self, int j) -> void {
    const auto [lo, hi] = window(j);
    if (j == p - 1) {
      if (forced[j]) {
        const int k = pos[j - 1] + 1;
        if (k <= n && sigma(k) > lo && sigma(k) < hi) ++total;
      } else if (table_last) {
        total += table->count_after(pos[j - 1], lo, hi);
      } else {
        for (int k = pos[j - 1] + 1; k <= n; ++k) {
          const int v = sigma(k);
          total += v > lo && v < hi;
        }
      }
      return;
    }
    // Later levels need at least (p-1-j) more positions.
    const int last = n - (p - 1 - j);
    int first = j == 0 ? 1 : pos[j - 1] + 1;
    int stop = last;
    if (forced[j]) stop = first;
    for (int k = first; k <= stop && k <= last; ++k) {
      const int v = sigma(k);
      if (v <= lo || v >= hi) continue;
      pos[j] = k;
      val[j] = v;
      self(self, j + 1);
    }
  };
  descend(descend, 0);
  return total;
}

// Exhaustive scan over p-subsets of positions; the reference counter.
inline long count_bivincular(const Permutation& sigma, const BivincularPattern& pattern) {
  const int n = sigma.size();
  const int p = pattern.tau.size();
  if (p > n) return 0;
  std::vector<int> idx(p);
  std::iota(idx.begin(), idx.end(), 1);
  std::vector<int> values(p), order(p);
  long total = 0;
  while (true) {
    bool ok = true;
    for (int x : pattern.adjacent) {
      if (idx[x] != idx[x - 1] + 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (int j = 0; j < p; ++j) values[j] = sigma(idx[j]);
      for (int a = 0; a < p && ok; ++a) {
        for (int b = a + 1; b < p && ok; ++b) {
          ok = (values[a] < values[b]) == (pattern.tau(a + 1) < pattern.tau(b + 1));
        }
      }
    }
    if (ok && !pattern.value_adjacent.empty()) {
      std::vector<int> sorted = values;
      std::sort(sorted.begin(), sorted.end());
      for (int y : pattern.value_adjacent) {
        if (sorted[y] != sorted[y - 1] + 1) {
          ok = false;
          break;
        }
      }
    }
    total += ok;
    int j = p - 1;
    while (j >= 0 && idx[j] == n - (p - 1 - j)) --j;
    if (j < 0) break;
    ++idx[j];
    for (int k = j + 1; k < p; ++k) idx[k] = idx[k - 1] + 1;
  }
  return total;
}

// ---- local statistics --------------------------------------------------

// i_j + d or s_j + d.
struct LocalExpr {
  char var = 'i';
  int j = 1;
  int d = 0;
};

enum class Relation { Eq, Lt, Le, Gt, Ge };

inline Relation parse_relation(std::string_view text) {
  if (text == "=" || text == "==") return Relation::Eq;
  if (text == "<") return Relation::Lt;
  if (text == "<=" || text == "≤") return Relation::Le;
  if (text == ">") return Relation::Gt;
  if (text == ">=" || text == "≥") return Relation::Ge;
  throw ValidationError("unknown relation '" + std::string(text) + "'");
}

inline std::string relation_symbol(Relation r) {
  switch (r) {
    case Relation::Eq: return "=";
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Gt: return ">";
    case Relation::Ge: return ">=";
  }
  return "?";
}

struct LocalConstraint {
  LocalExpr lhs;
  Relation rel = Relation::Eq;
  LocalExpr rhs;
};

// Counts lists (i_1..i_p) in [N]^p with s_j = sigma(i_j) satisfying every constraint.
struct LocalStatistic {
  int p = 1;
  std::vector<LocalConstraint> constraints;

  LocalStatistic(int arity, std::vector<LocalConstraint> cs) : p(arity), constraints(std::move(cs)) {
    if (p < 1) throw ValidationError("local statistic arity must be positive");
    for (const auto& c : constraints) {
      for (const auto& e : {c.lhs, c.rhs}) {
        if (e.var != 'i' && e.var != 's') throw ValidationError("expression variable must be i or s");
        if (e.j < 1 || e.j > p) {
          throw ValidationError("constraint references index " + std::to_string(e.j) + " outside [" +
                                std::to_string(p) + "]");
        }
      }
    }
  }
};

inline long count_local(const Permutation& sigma, const LocalStatistic& stat) {
  const int n = sigma.size();
  const int p = stat.p;
  const Permutation inv = sigma.inverse();

  // Constraints checked once their last referenced level is chosen, and an
  // optional equality that pins level j from earlier levels.
  std::vector<std::vector<const LocalConstraint*>> checks(p + 1);
  struct Pin {
    LocalExpr self;
    LocalExpr other;
  };
  std::vector<std::optional<Pin>> pins(p + 1);
  for (const auto& c : stat.constraints) {
    const int level = std::max(c.lhs.j, c.rhs.j);
    checks[level].push_back(&c);
    if (c.rel == Relation::Eq && c.lhs.j != c.rhs.j && !pins[level]) {
      pins[level] = c.lhs.j == level ? Pin{c.lhs, c.rhs} : Pin{c.rhs, c.lhs};
    }
  }

  std::vector<int> ii(p + 1), ss(p + 1);
  auto value = [&](const LocalExpr& e) { return (e.var == 'i' ? ii[e.j] : ss[e.j]) + e.d; };
  auto holds = [&](const LocalConstraint& c) {
    const int a = value(c.lhs), b = value(c.rhs);
    switch (c.rel) {
      case Relation::Eq: return a == b;
      case Relation::Lt: return a < b;
      case Relation::Le: return a <= b;
      case Relation::Gt: return a > b;
      case Relation::Ge: return a >= b;
    }
    return false;
  };

  long total = 0;
  auto descend = [&](auto&& self, int j) -> void {
    if (j > p) {
      ++total;
      return;
    }
    auto try_position = [&](int k) {
      ii[j] = k;
      ss[j] = sigma(k);
      for (const auto* c : checks[j]) {
        if (!holds(*c)) return;
      }
      self(self, j + 1);
    };
    if (pins[j]) {
      const auto& pin = *pins[j];
      const int target = value(pin.other) - pin.self.d;
      if (target < 1 || target > n) return;
      try_position(pin.self.var == 'i' ? target : inv(target));
      return;
    }
    for (int k = 1; k <= n; ++k) try_position(k);
  };
  descend(descend, 1);
  return total;
}

// ---- limits and closed forms ---------------------------------------------

// Cycles of length p: Poisson(theta / p) in the limit.
inline double poisson_cycles(double theta, int p) { return theta / p; }

// Adjacencies: Poisson(2) in the limit.
inline constexpr double adjacency_lambda = 2.0;

// Almost-sure limit of F(x).
inline double f_limit(double x) {
  detail::require_unit_interval(x);
  return (1.0 - (1.0 - x) * (1.0 - x)) / 2.0;
}

inline Rational f_limit(const Rational& x) {
  if (sgn(x) < 0 || x > 1) throw ValidationError("F is defined on [0,1] only");
  Rational one_minus = 1 - x;
  return (1 - one_minus * one_minus) / 2;
}

// Limiting covariance of sqrt(N)(F(x) - E F(x)) and sqrt(N)(F(y) - E F(y)):
// int_0^min t(1-t) dt - double integral of min(t,u)(1-max(t,u)) over [0,x]x[0,y].
template <class T>
T covariance_kernel(const T& x, const T& y) {
  const T a = x < y ? x : y;
  const T b = x < y ? y : x;
  const T a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  const T single = a2 / 2 - a3 / 3;
  const T square = a3 / 3 - a4 / 4;
  const T strip = a2 / 2 * ((b - a) - (b * b - a2) / 2);
  return single - square - strip;
}

inline double covariance_kernel(double x, double y) {
  detail::require_unit_interval(x);
  detail::require_unit_interval(y);
  return covariance_kernel<double>(x, y);
}

// 1 / (p! (p-q)!)
inline Rational dashed_mean(int p, int q) {
  if (p < 1 || q < 0 || q > p - 1) throw ValidationError("dashed mean needs 0 <= q < p");
  Integer f(1), g(1);
  for (int k = 2; k <= p; ++k) f *= k;
  for (int k = 2; k <= p - q; ++k) g *= k;
  return Rational(Integer(1), f * g);
}

// Exact moments of the weak-exceedance indicators at position i (and j).
struct ExceedanceMoments {
  Rational mean_i;
  Rational var_i;
  Rational cov_ij;  // zero when i == j is not requested
};

inline Rational exceedance_mean(int n, const Rational& theta, int i) {
  return (Rational(n - i) + theta) / (Rational(n - 1) + theta);
}

inline Rational exceedance_variance(int n, const Rational& theta, int i) {
  const Rational d = Rational(n - 1) + theta;
  return Rational(i - 1) * (Rational(n - i) + theta) / (d * d);
}

// i < j
inline Rational exceedance_covariance(int n, const Rational& theta, int i, int j) {
  if (i >= j) throw ValidationError("exceedance covariance needs i < j");
  const Rational d = Rational(n - 1) + theta;
  return -(Rational(n - j) + theta) * Rational(i - 1) / (d * d * (Rational(n - 2) + theta));
}

inline ExceedanceMoments exceedance_moments(int n, const Rational& theta, int i, int j) {
  require_positive_theta(theta);
  if (i < 1 || i > n || j < 1 || j > n) throw ValidationError("exceedance index outside [N]");
  ExceedanceMoments m{exceedance_mean(n, theta, i), exceedance_variance(n, theta, i), Rational(0)};
  if (i < j) m.cov_ij = exceedance_covariance(n, theta, i, j);
  if (j < i) m.cov_ij = exceedance_covariance(n, theta, j, i);
  if (i == j) m.cov_ij = m.var_i;
  return m;
}

// E F(x) at size N: interpolated partial sums of the exact indicator means.
inline double f_expectation(int n, double theta, double x) {
  require_positive_theta(theta);
  std::vector<double> prefix(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) prefix[i] = prefix[i - 1] + (n - i + theta) / (n - 1 + theta);
  detail::require_unit_interval(x);
  const double t = x * n;
  const int k = static_cast<int>(std::floor(t));
  if (k >= n) return prefix[n] / n;
  return (prefix[k] + (t - k) * (prefix[k + 1] - prefix[k])) / n;
}

}  // namespace ewens

#pragma once

// Permutations, partial permutations, the Ewens measure and its sequential
// sampler. Every interface speaks 1-indexed values: sigma(k) for k in [N].

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ewens/error.hpp"
#include "ewens/rational.hpp"
#include "ewens/rng.hpp"

namespace ewens {

class Permutation {
 public:
  Permutation() = default;

  // One-line notation, 1-indexed: images[k-1] = sigma(k).
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size() + 1, 0);
    for (int v : images_) {
      if (v < 1 || v > static_cast<int>(images_.size()) || seen[v]) {
        throw ValidationError("not a permutation of [" + std::to_string(images_.size()) + "]");
      }
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    return Permutation(std::move(img), Unchecked{});
  }

  // Adopts images without validation; callers guarantee a bijection.
  static Permutation from_trusted(std::vector<int> images) {
    return Permutation(std::move(images), Unchecked{});
  }

  int size() const { return static_cast<int>(images_.size()); }

  // sigma(k), k in [1, size()].
  int operator()(int k) const { return images_[k - 1]; }

  std::span<const int> one_line() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int k = 1; k <= size(); ++k) inv[images_[k - 1] - 1] = k;
    return Permutation(std::move(inv), Unchecked{});
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> images, Unchecked) : images_(std::move(images)) {}

  std::vector<int> images_;
};

// The pair of lists (i_1..i_r), (s_1..s_r) read as the partial map i_j -> s_j.
class PartialPermutation {
 public:
  PartialPermutation(std::vector<int> sources, std::vector<int> targets)
      : sources_(std::move(sources)), targets_(std::move(targets)) {
    if (sources_.size() != targets_.size()) {
      throw ValidationError("partial permutation: sources and targets differ in length");
    }
    if (!all_distinct(sources_)) throw ValidationError("partial permutation: repeated source");
    if (!all_distinct(targets_)) throw ValidationError("partial permutation: repeated target");
  }

  int size() const { return static_cast<int>(sources_.size()); }
  const std::vector<int>& sources() const { return sources_; }
  const std::vector<int>& targets() const { return targets_; }

 private:
  static bool all_distinct(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  }

  std::vector<int> sources_;
  std::vector<int> targets_;
};

struct CycleStats {
  int total = 0;
  std::map<int, int> by_length;  // cycle length -> number of cycles

  friend bool operator==(const CycleStats&, const CycleStats&) = default;
};

inline CycleStats cycle_stats(const Permutation& sigma) {
  CycleStats out;
  const int n = sigma.size();
  std::vector<char> seen(n + 1, 0);
  for (int start = 1; start <= n; ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (int k = start; !seen[k]; k = sigma(k)) {
      seen[k] = 1;
      ++len;
    }
    ++out.total;
    ++out.by_length[len];
  }
  return out;
}

inline int cycle_count(const Permutation& sigma) { return cycle_stats(sigma).total; }

// Number of closed orbits i -> s(i) -> s(s(i)) -> ... -> i of the partial map.
inline int partial_cycle_count(const PartialPermutation& p) {
  std::map<int, int> next;
  for (int j = 0; j < p.size(); ++j) next.emplace(p.sources()[j], p.targets()[j]);
  std::map<int, char> done;
  int cycles = 0;
  for (const auto& [start, unused] : next) {
    if (done.count(start)) continue;
    int k = start;
    bool closed = false;
    while (true) {
      done[k] = 1;
      auto it = next.find(k);
      if (it == next.end()) break;
      k = it->second;
      if (k == start) {
        closed = true;
        break;
      }
      if (done.count(k)) break;
    }
    if (closed) ++cycles;
  }
  return cycles;
}

// "(3 5 1)(7 4 2)(6)": each cycle starts at sigma(m) and ends at its minimum
// m, cycles sorted by minimum.
inline std::string cycle_notation(const Permutation& sigma) {
  std::string out;
  const int n = sigma.size();
  std::vector<char> seen(n + 1, 0);
  for (int m = 1; m <= n; ++m) {
    if (seen[m]) continue;
    out += '(';
    int k = sigma(m);
    while (true) {
      seen[k] = 1;
      out += std::to_string(k);
      if (k == m) break;
      out += ' ';
      k = sigma(k);
    }
    out += ')';
  }
  return out;
}

inline void require_positive_theta(const Rational& theta) {
  if (sgn(theta) <= 0) throw ParameterError("theta must be positive, got " + to_string(theta));
}

inline void require_positive_theta(double theta) {
  if (!(theta > 0.0)) throw ParameterError("theta must be positive");
}

// theta (theta+1) ... (theta+N-1)
inline Rational rising_factorial(const Rational& theta, int n) {
  Rational out(1);
  for (int k = 0; k < n; ++k) out *= theta + k;
  return out;
}

inline Rational ewens_weight(const Permutation& sigma, const Rational& theta) {
  require_positive_theta(theta);
  Rational w = rational_pow(theta, static_cast<unsigned>(cycle_count(sigma)));
  w /= rising_factorial(theta, sigma.size());
  return w;
}

// Sequential construction: grow from size k-1 to k by making k a fixed point
// with probability theta/(k-1+theta), otherwise inserting k just before a
// uniformly chosen j in its cycle.
inline Permutation ewens_sample(int n, double theta, CounterRng& rng) {
  if (n < 1) throw ValidationError("ewens_sample: N must be positive");
  require_positive_theta(theta);
  std::vector<int> sigma(n + 1), inv(n + 1);
  for (int k = 1; k <= n; ++k) {
    const double u = rng.uniform01() * (k - 1 + theta);
    if (u < theta) {
      sigma[k] = k;
      inv[k] = k;
      continue;
    }
    int j = 1 + static_cast<int>(u - theta);
    if (j > k - 1) j = k - 1;
    const int pred = inv[j];
    sigma[pred] = k;
    inv[k] = pred;
    sigma[k] = j;
    inv[j] = k;
  }
  sigma.erase(sigma.begin());
  return Permutation::from_trusted(std::move(sigma));
}

inline constexpr int kMaxEnumerationSize = 9;

// Visits every sigma in S_N in lexicographic order.
template <class Visitor>
void for_each_permutation(int n, Visitor&& visit) {
  if (n < 1 || n > kMaxEnumerationSize) {
    throw CapacityError("enumeration needs 1 <= N <= " + std::to_string(kMaxEnumerationSize));
  }
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  do {
    visit(Permutation::from_trusted(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

struct WeightedPermutation {
  Permutation sigma;
  Rational weight;
};

// All of S_N with Ewens weights. Weights depend only on the cycle count, so
// they are computed once per count.
inline std::vector<WeightedPermutation> enumerate_ewens(int n, const Rational& theta) {
  require_positive_theta(theta);
  if (n < 1 || n > kMaxEnumerationSize) {
    throw CapacityError("enumerate_ewens needs 1 <= N <= " + std::to_string(kMaxEnumerationSize));
  }
  const Rational norm = rising_factorial(theta, n);
  std::vector<Rational> by_cycles(n + 1);
  for (int c = 0; c <= n; ++c) by_cycles[c] = rational_pow(theta, c) / norm;
  std::vector<WeightedPermutation> out;
  for_each_permutation(n, [&](const Permutation& sigma) {
    out.push_back({sigma, by_cycles[cycle_count(sigma)]});
  });
  return out;
}

}  // namespace ewens

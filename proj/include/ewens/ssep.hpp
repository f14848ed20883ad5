#pragma once

// The exclusion-process side: the cycle-to-word transform, the exceedance word,
// tableau shapes and their border words, exact steady-state sampling through
// Ewens permutations, and a direct simulation of the particle chain.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ewens/error.hpp"
#include "ewens/permutation.hpp"
#include "ewens/rational.hpp"
#include "ewens/rng.hpp"

namespace ewens {

// Occupation word; entry k-1 is site k.
using BinaryWord = std::vector<std::uint8_t>;

inline std::string word_to_string(const BinaryWord& w) {
  std::string s;
  for (auto b : w) s += b ? '1' : '0';
  return s;
}

inline BinaryWord parse_word(std::string_view text) {
  BinaryWord w;
  for (char c : text) {
    if (c != '0' && c != '1') throw ValidationError("word must consist of 0 and 1");
    w.push_back(c == '1');
  }
  return w;
}

// Site k contributes bit k-1.
inline std::uint32_t word_code(const BinaryWord& w) {
  std::uint32_t code = 0;
  for (std::size_t k = 0; k < w.size(); ++k) code |= std::uint32_t{w[k]} << k;
  return code;
}

inline BinaryWord word_from_code(std::uint32_t code, int n) {
  BinaryWord w(n);
  for (int k = 0; k < n; ++k) w[k] = code >> k & 1u;
  return w;
}

// Cycles written ending with their minima, minima increasing, parentheses dropped.
inline Permutation psi(const Permutation& sigma) {
  const int n = sigma.size();
  std::vector<int> word;
  word.reserve(n);
  std::vector<char> seen(n + 1, 0);
  for (int m = 1; m <= n; ++m) {
    if (seen[m]) continue;
    int k = sigma(m);
    while (true) {
      seen[k] = 1;
      word.push_back(k);
      if (k == m) break;
      k = sigma(k);
    }
  }
  return Permutation::from_trusted(std::move(word));
}

// Cuts the word after each right-to-left minimum; each piece is a cycle.
inline Permutation psi_inverse(const Permutation& w) {
  const int n = w.size();
  std::vector<char> ends(n + 1, 0);
  int running_min = n + 1;
  for (int k = n; k >= 1; --k) {
    if (w(k) < running_min) {
      running_min = w(k);
      ends[k] = 1;
    }
  }
  std::vector<int> sigma(n);
  int start = 1;
  for (int k = 1; k <= n; ++k) {
    if (ends[k]) {
      sigma[w(k) - 1] = w(start);
      start = k + 1;
    } else {
      sigma[w(k) - 1] = w(k + 1);
    }
  }
  return Permutation::from_trusted(std::move(sigma));
}

inline int right_to_left_minima(const Permutation& sigma) {
  int count = 0, running_min = sigma.size() + 1;
  for (int k = sigma.size(); k >= 1; --k) {
    if (sigma(k) < running_min) {
      running_min = sigma(k);
      ++count;
    }
  }
  return count;
}

// sigma in S_{N+1} -> (1{sigma(2) >= 2}, ..., 1{sigma(N+1) >= N+1}).
inline BinaryWord exceedance_word(const Permutation& sigma) {
  if (sigma.size() < 1) throw ValidationError("exceedance word needs a nonempty permutation");
  BinaryWord w(sigma.size() - 1);
  for (int k = 1; k < sigma.size(); ++k) w[k - 1] = sigma(k + 1) >= k + 1;
  return w;
}

// Ascents read by value: for v = 2..N+1, bit v-1 is 1 when v sits at the last
// position or is followed by a larger entry.
inline BinaryWord ascent_word(const Permutation& w) {
  const int n = w.size();
  if (n < 1) throw ValidationError("ascent word needs a nonempty permutation");
  const Permutation where = w.inverse();
  BinaryWord out(n - 1);
  for (int v = 2; v <= n; ++v) {
    const int k = where(v);
    out[v - 2] = k == n || w(k) < w(k + 1);
  }
  return out;
}

// Young diagram, possibly with empty rows; rows weakly decreasing.
struct Shape {
  std::vector<int> rows;

  explicit Shape(std::vector<int> r) : rows(std::move(r)) {
    if (rows.empty()) throw ValidationError("shape needs at least one row");
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k] < 0) throw ValidationError("row lengths must be nonnegative");
      if (k && rows[k] > rows[k - 1]) throw ValidationError("row lengths must weakly decrease");
    }
  }

  int columns() const { return rows.front(); }
  // rows plus columns
  int size() const { return static_cast<int>(rows.size()) + columns(); }

  friend bool operator==(const Shape&, const Shape&) = default;
};

// Border from the north-east corner to the south-west one: the first step is
// South and is dropped; afterwards South = 1, West = 0.
inline BinaryWord shape_to_word(const Shape& shape) {
  std::vector<std::uint8_t> steps;
  int x = shape.columns();
  for (int r : shape.rows) {
    for (; x > r; --x) steps.push_back(0);
    steps.push_back(1);
  }
  for (; x > 0; --x) steps.push_back(0);
  return BinaryWord(steps.begin() + 1, steps.end());
}

inline Shape word_to_shape(const BinaryWord& w) {
  int x = static_cast<int>(std::count(w.begin(), w.end(), 0));
  std::vector<int> rows{x};
  for (auto b : w) {
    if (b) {
      rows.push_back(x);
    } else {
      --x;
    }
  }
  return Shape(std::move(rows));
}

// Exact steady-state sample on N sites: exceedance word of an Ewens permutation
// of size N+1 (right exit rate beta = 1/theta).
inline BinaryWord ssep_steady_sample(int sites, double theta, CounterRng& rng) {
  if (sites < 1) throw ValidationError("SSEP needs at least one site");
  return exceedance_word(ewens_sample(sites + 1, theta, rng));
}

inline void require_exit_rate(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("right exit rate beta must lie in (0,1]");
}

// One transition: one of N+1 equally likely slots. Slots 0..N-2 move a
// particle across the pair (k+1, k+2) if exactly one site is occupied; slot
// N-1 brings a particle in at site 1; slot N removes the particle at site N
// with probability beta.
inline void ssep_step(BinaryWord& state, double beta, CounterRng& rng) {
  const int n = static_cast<int>(state.size());
  const auto slot = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
  if (slot < n - 1) {
    std::swap(state[slot], state[slot + 1]);
  } else if (slot == n - 1) {
    state[0] = 1;
  } else if (state[n - 1] && rng.uniform01() < beta) {
    state[n - 1] = 0;
  }
}

inline BinaryWord ssep_mcmc(int sites, double beta, long steps, CounterRng& rng, BinaryWord initial = {}) {
  if (sites < 1) throw ValidationError("SSEP needs at least one site");
  require_exit_rate(beta);
  if (steps < 0) throw ValidationError("step count must be nonnegative");
  if (initial.empty()) initial.assign(sites, 0);
  if (static_cast<int>(initial.size()) != sites) throw ValidationError("initial state has the wrong length");
  for (long t = 0; t < steps; ++t) ssep_step(initial, beta, rng);
  return initial;
}

// Empirical law of the states visited every `thin` steps after `burn_in`.
inline std::vector<double> ssep_mcmc_law(int sites, double beta, long steps, long thin, long burn_in,
                                         CounterRng& rng, BinaryWord initial = {}) {
  if (sites < 1 || sites > 20) throw CapacityError("chain law is tabulated for 1..20 sites");
  if (thin < 1) throw ValidationError("thinning interval must be positive");
  BinaryWord state = ssep_mcmc(sites, beta, burn_in, rng, std::move(initial));
  std::vector<double> law(std::size_t{1} << sites, 0.0);
  long kept = 0;
  for (long t = 1; t <= steps; ++t) {
    ssep_step(state, beta, rng);
    if (t % thin == 0) {
      law[word_code(state)] += 1;
      ++kept;
    }
  }
  if (kept == 0) throw ValidationError("no states retained; increase steps or decrease thin");
  for (double& p : law) p /= static_cast<double>(kept);
  return law;
}

// Exact law of the exceedance word under Ewens(theta) on S_{N+1}, indexed by word_code.
inline std::vector<Rational> pushforward_law(int sites, const Rational& theta) {
  if (sites < 1 || sites + 1 > kMaxEnumerationSize) {
    throw CapacityError("exact word law needs 1 <= N <= " + std::to_string(kMaxEnumerationSize - 1));
  }
  std::vector<Rational> law(std::size_t{1} << sites, Rational(0));
  for (const auto& [sigma, w] : enumerate_ewens(sites + 1, theta)) law[word_code(exceedance_word(sigma))] += w;
  return law;
}

inline std::vector<double> empirical_law(const std::vector<BinaryWord>& words, int sites) {
  if (words.empty()) throw ValidationError("no samples");
  std::vector<double> law(std::size_t{1} << sites, 0.0);
  for (const auto& w : words) law[word_code(w)] += 1;
  for (double& p : law) p /= static_cast<double>(words.size());
  return law;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw ValidationError("laws on different supports");
  double s = 0;
  for (std::size_t k = 0; k < p.size(); ++k) s += std::abs(p[k] - q[k]);
  return s / 2;
}

inline std::vector<double> to_doubles(const std::vector<Rational>& law) {
  std::vector<double> out;
  for (const auto& q : law) out.push_back(to_double(q));
  return out;
}

}  // namespace ewens

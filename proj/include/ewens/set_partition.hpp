#pragma once

// Set partitions of [n], the partition lattice, and the moment/cumulant
// calculus over it.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewens/error.hpp"
#include "ewens/rational.hpp"

namespace ewens {

// Bit j-1 set <=> j belongs to the subset of [l].
using SubsetMask = std::uint32_t;

inline std::string subset_to_string(SubsetMask mask) {
  std::string out = "{";
  bool first = true;
  for (int j = 1; mask; ++j, mask >>= 1) {
    if (!(mask & 1u)) continue;
    if (!first) out += ',';
    out += std::to_string(j);
    first = false;
  }
  return out + "}";
}

class SetPartition {
 public:
  SetPartition() = default;

  // Any labelling of [n]: labels[k-1] is the block tag of k. Tags are
  // arbitrary integers; only equality matters.
  static SetPartition from_labels(const std::vector<int>& labels) {
    SetPartition p;
    p.rgs_.resize(labels.size());
    std::vector<std::pair<int, int>> seen;  // (tag, block index)
    for (std::size_t k = 0; k < labels.size(); ++k) {
      auto it = std::find_if(seen.begin(), seen.end(),
                             [&](const auto& e) { return e.first == labels[k]; });
      if (it == seen.end()) {
        seen.emplace_back(labels[k], static_cast<int>(seen.size()));
        p.rgs_[k] = static_cast<int>(seen.size()) - 1;
      } else {
        p.rgs_[k] = it->second;
      }
    }
    p.blocks_ = static_cast<int>(seen.size());
    return p;
  }

  // Blocks given as lists of elements of [n], in any order.
  static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    if (n < 0) throw ValidationError("set partition: negative ground set size");
    std::vector<int> labels(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw ValidationError("set partition: empty block");
      for (int x : blocks[b]) {
        if (x < 1 || x > n) {
          throw ValidationError("set partition: element " + std::to_string(x) + " outside [" +
                                std::to_string(n) + "]");
        }
        if (labels[x - 1] != -1) {
          throw ValidationError("set partition: element " + std::to_string(x) + " repeated");
        }
        labels[x - 1] = static_cast<int>(b);
      }
    }
    for (int k = 0; k < n; ++k) {
      if (labels[k] == -1) {
        throw ValidationError("set partition: element " + std::to_string(k + 1) + " not covered");
      }
    }
    return from_labels(labels);
  }

  static SetPartition singletons(int n) {
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    return from_labels(labels);
  }

  static SetPartition top(int n) { return from_labels(std::vector<int>(n, 0)); }

  int ground_size() const { return static_cast<int>(rgs_.size()); }
  int block_count() const { return blocks_; }
  int rank() const { return ground_size() - blocks_; }

  // Restricted growth string: block index (0-based, by minimum) of each element.
  const std::vector<int>& rgs() const { return rgs_; }

  // Block index of element k in [n].
  int block_of(int k) const { return rgs_[k - 1]; }

  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(blocks_);
    for (int k = 0; k < ground_size(); ++k) out[rgs_[k]].push_back(k + 1);
    return out;
  }

  std::vector<SubsetMask> block_masks() const {
    std::vector<SubsetMask> out(blocks_, 0);
    for (int k = 0; k < ground_size(); ++k) out[rgs_[k]] |= SubsetMask{1} << k;
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& b : blocks()) {
      out += '{';
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (j) out += ',';
        out += std::to_string(b[j]);
      }
      out += '}';
    }
    return out;
  }

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend auto operator<=>(const SetPartition& a, const SetPartition& b) { return a.rgs_ <=> b.rgs_; }

 private:
  std::vector<int> rgs_;
  int blocks_ = 0;
};

namespace detail {

inline void require_same_ground(const SetPartition& a, const SetPartition& b) {
  if (a.ground_size() != b.ground_size()) {
    throw ValidationError("set partitions on different ground sets: " +
                          std::to_string(a.ground_size()) + " vs " + std::to_string(b.ground_size()));
  }
}

inline int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace detail

// Finest partition coarser than both.
inline SetPartition join(const SetPartition& a, const SetPartition& b) {
  detail::require_same_ground(a, b);
  const int n = a.ground_size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> first_a(a.block_count(), -1), first_b(b.block_count(), -1);
  for (int k = 0; k < n; ++k) {
    for (auto [first, label] : {std::pair{&first_a, a.rgs()[k]}, std::pair{&first_b, b.rgs()[k]}}) {
      int& f = (*first)[label];
      if (f < 0) {
        f = k;
      } else {
        parent[detail::find_root(parent, k)] = detail::find_root(parent, f);
      }
    }
  }
  std::vector<int> labels(n);
  for (int k = 0; k < n; ++k) labels[k] = detail::find_root(parent, k);
  return SetPartition::from_labels(labels);
}

// Blockwise intersections.
inline SetPartition meet(const SetPartition& a, const SetPartition& b) {
  detail::require_same_ground(a, b);
  const int n = a.ground_size();
  std::vector<int> labels(n);
  for (int k = 0; k < n; ++k) labels[k] = a.rgs()[k] * (n + 1) + b.rgs()[k];
  return SetPartition::from_labels(labels);
}

// Lattice order: true when every block of `finer` sits inside a block of `coarser`.
inline bool refines(const SetPartition& finer, const SetPartition& coarser) {
  detail::require_same_ground(finer, coarser);
  std::vector<int> image(finer.block_count(), -1);
  for (int k = 0; k < finer.ground_size(); ++k) {
    int& img = image[finer.rgs()[k]];
    if (img < 0) {
      img = coarser.rgs()[k];
    } else if (img != coarser.rgs()[k]) {
      return false;
    }
  }
  return true;
}

inline constexpr int kMaxPartitionGround = 12;

// Visits every partition of [n] once, in lexicographic RGS order.
template <class Visitor>
void for_each_partition(int n, Visitor&& visit) {
  if (n < 1 || n > kMaxPartitionGround) {
    throw CapacityError("partition enumeration needs 1 <= n <= " +
                        std::to_string(kMaxPartitionGround));
  }
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);  // max of rgs[0..k]
  while (true) {
    visit(SetPartition::from_labels(rgs));
    int k = n - 1;
    while (k > 0 && rgs[k] > prefix_max[k - 1]) --k;
    if (k == 0) return;
    ++rgs[k];
    prefix_max[k] = std::max(prefix_max[k - 1], rgs[k]);
    for (int j = k + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[k];
    }
  }
}

inline std::vector<SetPartition> all_partitions(int n) {
  std::vector<SetPartition> out;
  for_each_partition(n, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

// (-1)^{b-1} (b-1)!
inline Integer mobius_for_block_count(int b) {
  Integer out(1);
  for (int k = 2; k < b; ++k) out *= k;
  if (b % 2 == 0) out = -out;
  return out;
}

// Moebius value mu(pi, one-block partition).
inline Integer mobius_to_top(const SetPartition& pi) { return mobius_for_block_count(pi.block_count()); }

inline bool is_zero_value(const Rational& q) { return sgn(q) == 0; }

// Values M(Delta) on subsets of [l], with M(empty) = 1. V is Rational or RatFun.
template <class V>
class MomentTable {
 public:
  explicit MomentTable(int ell) : ell_(ell), values_(std::size_t{1} << check(ell)) {
    values_[0] = V(1);
  }

  // Fills every subset from a callable SubsetMask -> V.
  template <class F>
  static MomentTable tabulate(int ell, F&& f) {
    MomentTable t(ell);
    for (SubsetMask m = 1; m < (SubsetMask{1} << ell); ++m) t.set(m, f(m));
    return t;
  }

  int ell() const { return ell_; }

  void set(SubsetMask subset, V value) {
    require_in_range(subset);
    if (subset == 0) throw ValidationError("moment of the empty set is fixed to 1");
    values_[subset] = std::move(value);
  }

  const V& at(SubsetMask subset) const {
    require_in_range(subset);
    const auto& v = values_[subset];
    if (!v) throw ValidationError("moment for subset " + subset_to_string(subset) + " is missing");
    return *v;
  }

 private:
  static int check(int ell) {
    if (ell < 1 || ell > kMaxPartitionGround) {
      throw CapacityError("moment table size must be in 1..12");
    }
    return ell;
  }

  void require_in_range(SubsetMask subset) const {
    if (subset >> ell_) {
      throw ValidationError("subset " + subset_to_string(subset) + " outside [" +
                            std::to_string(ell_) + "]");
    }
  }

  int ell_;
  std::vector<std::optional<V>> values_;
};

inline constexpr int kMaxCumulantOrder = 10;

namespace detail {

// sum over the chosen partitions pi of mu(pi, top) * prod_{C in pi} M_C.
// Terms are bucketed by block count so each Moebius coefficient multiplies once.
template <class V, class Keep>
V moebius_sum(const MomentTable<V>& m, Keep&& keep) {
  const int ell = m.ell();
  if (ell > kMaxCumulantOrder) {
    throw CapacityError("cumulant order must be at most " + std::to_string(kMaxCumulantOrder));
  }
  std::vector<V> bucket(ell + 1, V(0));
  for_each_partition(ell, [&](const SetPartition& pi) {
    if (!keep(pi)) return;
    V term = V(1);
    for (SubsetMask block : pi.block_masks()) term = term * m.at(block);
    bucket[pi.block_count()] = bucket[pi.block_count()] + term;
  });
  V total(0);
  for (int b = 1; b <= ell; ++b) {
    if (is_zero_value(bucket[b])) continue;
    total = total + bucket[b] * V(Rational(mobius_for_block_count(b)));
  }
  return total;
}

}  // namespace detail

template <class V>
V cumulant_from_moments(const MomentTable<V>& m) {
  return detail::moebius_sum(m, [](const SetPartition&) { return true; });
}

// Which partitions a forbidden entry removes: those below it (the definition),
// or those above it (the form the slice condition takes).
enum class Exclusion { below, above };

// Moebius sum restricted to pi >= pi0 with pi not below (or not above) any
// forbidden partition.
template <class V>
V truncated_cumulant(const MomentTable<V>& m, const SetPartition& pi0,
                     const std::vector<SetPartition>& forbidden,
                     Exclusion mode = Exclusion::below) {
  if (pi0.ground_size() != m.ell()) {
    throw ValidationError("truncated cumulant: base partition is on [" +
                          std::to_string(pi0.ground_size()) + "], moments on [" +
                          std::to_string(m.ell()) + "]");
  }
  for (const auto& f : forbidden) detail::require_same_ground(pi0, f);
  return detail::moebius_sum(m, [&](const SetPartition& pi) {
    if (!refines(pi0, pi)) return false;
    for (const auto& f : forbidden) {
      if (mode == Exclusion::below ? refines(pi, f) : refines(f, pi)) return false;
    }
    return true;
  });
}

// U_Delta = prod_{delta subset of Delta} M_delta^{(-1)^{|Delta|-|delta|}}, so that
// the product of U over all subsets of Delta gives back M_Delta.
template <class V>
V quasi_factor_U(const MomentTable<V>& m, SubsetMask delta) {
  V num(1), den(1);
  const int size = std::popcount(delta);
  // Enumerate subsets of delta, including delta and the empty set.
  SubsetMask sub = delta;
  while (true) {
    const V& value = m.at(sub);
    if (is_zero_value(value)) {
      throw DivisionError("quasi-factorization: moment of subset " + subset_to_string(sub) +
                          " is zero");
    }
    if ((size - std::popcount(sub)) % 2 == 0) {
      num = num * value;
    } else {
      den = den * value;
    }
    if (sub == 0) break;
    sub = (sub - 1) & delta;
  }
  return num / den;
}

}  // namespace ewens

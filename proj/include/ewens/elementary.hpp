#pragma once

// Joint moments and cumulants of the events {sigma(i) = s} under the Ewens
// measure, exact at fixed N or as rational functions of a symbolic N, and the
// component-count exponent that bounds their decay.

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ewens/error.hpp"
#include "ewens/graphs.hpp"
#include "ewens/permutation.hpp"
#include "ewens/ratfun.hpp"
#include "ewens/rng.hpp"
#include "ewens/set_partition.hpp"

namespace ewens {

// Events sigma(i_j) = s_j for j in [r], grouped into cumulant arguments by tau.
struct ElementarySpec {
  std::vector<int> i;
  std::vector<int> s;
  SetPartition tau;

  ElementarySpec(std::vector<int> sources, std::vector<int> targets, SetPartition grouping)
      : i(std::move(sources)), s(std::move(targets)), tau(std::move(grouping)) {
    if (i.size() != s.size()) throw ValidationError("spec: i and s differ in length");
    if (i.empty()) throw ValidationError("spec: r must be at least 1");
    if (tau.ground_size() != size()) {
      throw ValidationError("spec: tau is a partition of [" + std::to_string(tau.ground_size()) +
                            "] but r = " + std::to_string(size()));
    }
    for (std::size_t j = 0; j < i.size(); ++j) {
      if (i[j] < 1 || s[j] < 1) throw ValidationError("spec: indices must be positive");
    }
  }

  // tau = singletons.
  ElementarySpec(std::vector<int> sources, std::vector<int> targets)
      : ElementarySpec(sources, targets, SetPartition::singletons(static_cast<int>(sources.size()))) {}

  int size() const { return static_cast<int>(i.size()); }
  int max_entry() const {
    return std::max(*std::max_element(i.begin(), i.end()), *std::max_element(s.begin(), s.end()));
  }
};

namespace detail {

// Distinct pairs of a product of events and the cycle count of the partial map
// they form; contradictory when a source or a target is sent two ways.
struct MergedEvents {
  bool contradictory = false;
  int distinct = 0;
  int cycles = 0;
};

inline MergedEvents merge_events(const std::vector<int>& i, const std::vector<int>& s) {
  if (i.size() != s.size()) throw ValidationError("index lists differ in length");
  std::set<std::pair<int, int>> pairs;
  for (std::size_t j = 0; j < i.size(); ++j) pairs.emplace(i[j], s[j]);
  std::vector<int> src, dst;
  for (auto [a, b] : pairs) {
    src.push_back(a);
    dst.push_back(b);
  }
  MergedEvents out;
  std::vector<int> sorted_dst = dst;
  std::sort(sorted_dst.begin(), sorted_dst.end());
  // src is sorted by construction, so a repeated source is adjacent.
  if (std::adjacent_find(src.begin(), src.end()) != src.end() ||
      std::adjacent_find(sorted_dst.begin(), sorted_dst.end()) != sorted_dst.end()) {
    out.contradictory = true;
    return out;
  }
  out.distinct = static_cast<int>(src.size());
  out.cycles = partial_cycle_count(PartialPermutation(src, dst));
  return out;
}

inline void gather_blocks(const ElementarySpec& spec, SubsetMask blocks, std::vector<int>& i,
                          std::vector<int>& s) {
  i.clear();
  s.clear();
  for (int j = 1; j <= spec.size(); ++j) {
    if (blocks >> spec.tau.block_of(j) & 1u) {
      i.push_back(spec.i[j - 1]);
      s.push_back(spec.s[j - 1]);
    }
  }
}

}  // namespace detail

// E[prod_j 1{sigma(i_j) = s_j}] at size N.
inline Rational joint_moment(const std::vector<int>& i, const std::vector<int>& s,
                             const Rational& theta, int n) {
  require_positive_theta(theta);
  for (std::size_t j = 0; j < i.size(); ++j) {
    if (i[j] < 1 || i[j] > n || (j < s.size() && (s[j] < 1 || s[j] > n))) {
      throw ValidationError("joint moment: index outside [" + std::to_string(n) + "]");
    }
  }
  const auto merged = detail::merge_events(i, s);
  if (merged.contradictory) return Rational(0);
  Rational den(1);
  for (int k = 1; k <= merged.distinct; ++k) den *= Rational(n) + theta - k;
  return rational_pow(theta, merged.cycles) / den;
}

// The same moment with N symbolic: theta^c / prod_{k=1}^{r} (N + theta - k).
inline RatFun joint_moment_symbolic(const std::vector<int>& i, const std::vector<int>& s,
                                    const Rational& theta) {
  require_positive_theta(theta);
  const auto merged = detail::merge_events(i, s);
  if (merged.contradictory) return RatFun();
  Poly den(1);
  for (int k = 1; k <= merged.distinct; ++k) den = den * Poly::linear_root(Rational(k) - theta);
  return RatFun(Poly(rational_pow(theta, merged.cycles)), den);
}

inline constexpr int kMaxElementaryBlocks = 8;

namespace detail {

template <class V, class MomentOf>
V elementary_cumulant(const ElementarySpec& spec, MomentOf&& moment_of) {
  const int ell = spec.tau.block_count();
  if (ell > kMaxElementaryBlocks) {
    throw CapacityError("cumulant of more than " + std::to_string(kMaxElementaryBlocks) +
                        " grouped products");
  }
  std::vector<int> i, s;
  auto table = MomentTable<V>::tabulate(ell, [&](SubsetMask blocks) {
    gather_blocks(spec, blocks, i, s);
    return moment_of(i, s);
  });
  return cumulant_from_moments(table);
}

}  // namespace detail

// Joint cumulant of the tau-grouped products of events.
inline Rational joint_cumulant(const ElementarySpec& spec, const Rational& theta, int n) {
  return detail::elementary_cumulant<Rational>(
      spec, [&](const auto& i, const auto& s) { return joint_moment(i, s, theta, n); });
}

inline RatFun joint_cumulant_symbolic(const ElementarySpec& spec, const Rational& theta) {
  return detail::elementary_cumulant<RatFun>(
      spec, [&](const auto& i, const auto& s) { return joint_moment_symbolic(i, s, theta); });
}

// -#Conn(G1) - #(Conn(G2) v tau) + 1
inline int bound_exponent(const ElementarySpec& spec) {
  auto [g1, g2] = g1_g2(spec.i, spec.s);
  const int c1 = component_count(g1);
  const int c2 = join(connected_components(g2), spec.tau).block_count();
  return -c1 - c2 + 1;
}

struct MainLemmaReport {
  RatFun cumulant;
  Degree degree = Degree::minus_infinity();
  int bound = 0;
  bool holds = false;
};

inline MainLemmaReport verify_main_lemma(const ElementarySpec& spec, const Rational& theta) {
  MainLemmaReport out;
  out.cumulant = joint_cumulant_symbolic(spec, theta);
  out.degree = out.cumulant.degree();
  out.bound = bound_exponent(spec);
  out.holds = out.degree <= Degree(out.bound);
  return out;
}

struct SweepFailure {
  ElementarySpec spec;
  Rational theta;
  MainLemmaReport report;
};

struct SweepSummary {
  long checked = 0;
  long patterns = 0;
  std::vector<SweepFailure> failures;
};

// Every equality pattern of (i_1..i_r, s_1..s_r) over an alphabet of the given
// size, each with every tau and every theta. Moments only see which entries
// coincide, so one representative per pattern covers all index choices.
inline SweepSummary sweep_main_lemma(int max_r, int alphabet, const std::vector<Rational>& thetas) {
  if (max_r < 1 || max_r > 4) throw CapacityError("sweep supports 1 <= r <= 4");
  if (alphabet < 1) throw ValidationError("sweep alphabet must be nonempty");
  SweepSummary out;
  for (int r = 1; r <= max_r; ++r) {
    const auto taus = all_partitions(r);
    for_each_partition(2 * r, [&](const SetPartition& pattern) {
      if (pattern.block_count() > alphabet) return;
      ++out.patterns;
      std::vector<int> i(r), s(r);
      for (int j = 0; j < r; ++j) {
        i[j] = pattern.rgs()[j] + 1;
        s[j] = pattern.rgs()[r + j] + 1;
      }
      for (const auto& tau : taus) {
        ElementarySpec spec(i, s, tau);
        for (const auto& theta : thetas) {
          auto report = verify_main_lemma(spec, theta);
          ++out.checked;
          if (!report.holds) out.failures.push_back({spec, theta, report});
        }
      }
    });
  }
  return out;
}

// Entries uniform in [alphabet]; tau from uniform block labels.
inline ElementarySpec random_spec(int r, int alphabet, CounterRng& rng) {
  std::vector<int> i(r), s(r), labels(r);
  for (int j = 0; j < r; ++j) {
    i[j] = 1 + static_cast<int>(rng.below(alphabet));
    s[j] = 1 + static_cast<int>(rng.below(alphabet));
    labels[j] = static_cast<int>(rng.below(r));
  }
  return ElementarySpec(i, s, SetPartition::from_labels(labels));
}

}  // namespace ewens

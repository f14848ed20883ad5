#pragma once

// Seeded parallel sampling, k-statistics with bootstrap errors, and the
// Poisson / Gaussian / variance-constant diagnostics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "ewens/error.hpp"
#include "ewens/permutation.hpp"
#include "ewens/rational.hpp"
#include "ewens/rng.hpp"
#include "ewens/statistics.hpp"

namespace ewens {

struct RunConfig {
  int n = 100;
  double theta = 1.0;
  long samples = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  double se_multiple = 4.0;    // verdict tolerance in standard errors
  double tv_threshold = 0.01;  // Poisson total-variation tolerance
  int bootstrap = 200;         // resamples per standard error

  void validate() const {
    if (n < 1) throw ValidationError("N must be positive");
    if (!(theta > 0.0)) throw ParameterError("theta must be positive");
    if (samples < 1) throw ValidationError("samples must be positive");
    if (workers < 1) throw ValidationError("workers must be positive");
    if (bootstrap < 2) throw ValidationError("bootstrap needs at least 2 resamples");
  }
};

// Row-major samples x dims.
struct SampleMatrix {
  long rows = 0;
  int dims = 0;
  std::vector<double> data;

  double at(long r, int d) const { return data[r * dims + d]; }
  std::vector<double> column(int d) const {
    std::vector<double> out(rows);
    for (long r = 0; r < rows; ++r) out[r] = at(r, d);
    return out;
  }
};

// body(index, rng, out) fills dims doubles for sample `index` using its own
// stream, so the matrix depends on the seed only, never on the worker count.
template <class Body>
SampleMatrix parallel_samples(long count, int dims, std::uint64_t seed, int workers, Body&& body) {
  if (count < 1) throw ValidationError("sample count must be positive");
  if (workers < 1) throw ValidationError("workers must be positive");
  SampleMatrix m{count, dims, std::vector<double>(static_cast<std::size_t>(count) * dims)};
  const CounterRng root(seed);
  auto run_range = [&](long begin, long end) {
    for (long k = begin; k < end; ++k) {
      CounterRng rng = root.substream(static_cast<std::uint64_t>(k));
      body(k, rng, &m.data[k * dims]);
    }
  };
  const long w = std::min<long>(workers, count);
  if (w == 1) {
    run_range(0, count);
    return m;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(w);
  for (long t = 0; t < w; ++t) {
    const long begin = count * t / w, end = count * (t + 1) / w;
    pool.emplace_back([&, t, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return m;
}

// Samples Ewens permutations per cfg and records fn(sigma, out) for each.
template <class Fn>
SampleMatrix sample_statistics(const RunConfig& cfg, int dims, Fn&& fn) {
  cfg.validate();
  return parallel_samples(cfg.samples, dims, cfg.seed, cfg.workers,
                          [&](long, CounterRng& rng, double* out) { fn(ewens_sample(cfg.n, cfg.theta, rng), out); });
}

// ---- k-statistics ---------------------------------------------------------

// Unbiased cumulant estimates k1..k4 (entries beyond the sample size allow are NaN).
inline std::vector<double> k_statistics(const double* x, long n, int max_order) {
  std::vector<double> k(max_order, std::nan(""));
  if (n < 1) return k;
  double mean = 0;
  for (long t = 0; t < n; ++t) mean += x[t];
  mean /= n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (long t = 0; t < n; ++t) {
    const double d = x[t] - mean, d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const double nn = static_cast<double>(n);
  k[0] = mean;
  if (max_order >= 2 && n >= 2) k[1] = nn / (nn - 1) * m2;
  if (max_order >= 3 && n >= 3) k[2] = nn * nn / ((nn - 1) * (nn - 2)) * m3;
  if (max_order >= 4 && n >= 4) {
    k[3] = nn * nn * ((nn + 1) * m4 - 3 * (nn - 1) * m2 * m2) / ((nn - 1) * (nn - 2) * (nn - 3));
  }
  return k;
}

inline std::vector<double> k_statistics(const std::vector<double>& x, int max_order) {
  return k_statistics(x.data(), static_cast<long>(x.size()), max_order);
}

struct CumulantEstimate {
  int order = 1;
  double value = 0;
  double se = 0;
  long samples = 0;
};

inline double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0;
  for (double x : v) mean += x;
  mean /= v.size();
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1));
}

// Generic bootstrap: stat(resample) -> vector of estimates; returns the
// standard deviation of each entry across resamples.
template <class Stat>
std::vector<double> bootstrap_se(const std::vector<std::vector<double>>& columns, int resamples, CounterRng rng,
                                 Stat&& stat) {
  const long n = columns.empty() ? 0 : static_cast<long>(columns[0].size());
  std::vector<std::vector<double>> buffer(columns.size(), std::vector<double>(n));
  std::vector<std::vector<double>> replicates;
  for (int b = 0; b < resamples; ++b) {
    for (long t = 0; t < n; ++t) {
      const long pick = static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));
      for (std::size_t c = 0; c < columns.size(); ++c) buffer[c][t] = columns[c][pick];
    }
    replicates.push_back(stat(buffer));
  }
  const std::size_t width = replicates.empty() ? 0 : replicates[0].size();
  std::vector<double> se(width, 0.0);
  for (std::size_t e = 0; e < width; ++e) {
    std::vector<double> col;
    for (const auto& r : replicates) {
      if (std::isfinite(r[e])) col.push_back(r[e]);
    }
    se[e] = sample_stddev(col);
  }
  return se;
}

// Bootstrap stream for a given tag, disjoint from the per-sample streams.
inline CounterRng bootstrap_stream(std::uint64_t seed, std::uint64_t tag) {
  return CounterRng(seed, 0xB0075712A9ull).substream(tag);
}

inline std::vector<CumulantEstimate> estimate_cumulants(const std::vector<double>& values, int max_order,
                                                        int resamples, CounterRng rng) {
  if (max_order < 1 || max_order > 4) throw ValidationError("cumulant order must be in 1..4");
  if (values.empty()) throw ValidationError("no samples");
  const auto point = k_statistics(values, max_order);
  const bool constant = std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; });
  std::vector<double> se(max_order, 0.0);
  if (!constant) {
    se = bootstrap_se({values}, resamples, rng,
                      [&](const auto& cols) { return k_statistics(cols[0], max_order); });
  }
  std::vector<CumulantEstimate> out;
  for (int l = 1; l <= max_order; ++l) {
    double v = point[l - 1];
    if (constant && l >= 2) v = 0.0;
    out.push_back({l, v, se[l - 1], static_cast<long>(values.size())});
  }
  return out;
}

// Samples a statistic under cfg and estimates its first cumulants.
template <class Stat>
std::vector<CumulantEstimate> estimate_cumulants(Stat&& stat, const RunConfig& cfg, int max_order) {
  auto m = sample_statistics(cfg, 1, [&](const Permutation& s, double* out) { out[0] = stat(s); });
  return estimate_cumulants(m.column(0), max_order, cfg.bootstrap, bootstrap_stream(cfg.seed, 0));
}

struct PairEstimate {
  double covariance = 0;
  double covariance_se = 0;
  double correlation = 0;
  double correlation_se = 0;
};

inline std::pair<double, double> covariance_and_correlation(const std::vector<double>& x,
                                                            const std::vector<double>& y) {
  const long n = static_cast<long>(x.size());
  double mx = 0, my = 0;
  for (long t = 0; t < n; ++t) {
    mx += x[t];
    my += y[t];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (long t = 0; t < n; ++t) {
    sxy += (x[t] - mx) * (y[t] - my);
    sxx += (x[t] - mx) * (x[t] - mx);
    syy += (y[t] - my) * (y[t] - my);
  }
  const double cov = n > 1 ? sxy / (n - 1) : 0.0;
  const double corr = sxx > 0 && syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
  return {cov, corr};
}

inline PairEstimate estimate_pair(const std::vector<double>& x, const std::vector<double>& y, int resamples,
                                  CounterRng rng) {
  if (x.size() != y.size() || x.empty()) throw ValidationError("paired samples must have equal nonzero length");
  PairEstimate out;
  std::tie(out.covariance, out.correlation) = covariance_and_correlation(x, y);
  auto se = bootstrap_se({x, y}, resamples, rng, [](const auto& cols) {
    auto [c, r] = covariance_and_correlation(cols[0], cols[1]);
    return std::vector<double>{c, r};
  });
  out.covariance_se = se[0];
  out.correlation_se = se[1];
  return out;
}

// ---- Poisson diagnostic -----------------------------------------------------

struct PoissonReport {
  double lambda = 0;
  double tv = 0;
  double threshold = 0;
  int support_max = 0;  // pmf compared on 0..support_max plus one tail bin
  std::vector<double> empirical_pmf;
  std::vector<double> poisson_pmf;
  std::vector<CumulantEstimate> cumulants;
  bool tv_pass = false;
  bool cumulants_pass = false;
  bool verdict = false;
};

inline std::vector<double> poisson_pmf(double lambda, int kmax) {
  std::vector<double> p(kmax + 1);
  double term = std::exp(-lambda);
  for (int k = 0; k <= kmax; ++k) {
    p[k] = term;
    term *= lambda / (k + 1);
  }
  return p;
}

inline PoissonReport poisson_diagnostic(const std::vector<double>& values, double lambda, const RunConfig& cfg,
                                        std::uint64_t tag = 0) {
  if (!(lambda >= 0.0)) throw ParameterError("Poisson parameter must be nonnegative");
  if (values.empty()) throw ValidationError("no samples");
  PoissonReport r;
  r.lambda = lambda;
  r.threshold = cfg.tv_threshold;
  r.cumulants = estimate_cumulants(values, 4, cfg.bootstrap, bootstrap_stream(cfg.seed, tag));
  if (lambda == 0.0) {
    const bool all_zero = std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
    r.empirical_pmf = {all_zero ? 1.0 : 0.0};
    r.poisson_pmf = {1.0};
    r.tv = all_zero ? 0.0 : 1.0;
    r.tv_pass = r.cumulants_pass = r.verdict = all_zero;
    return r;
  }
  r.support_max = static_cast<int>(std::floor(lambda + 10 * std::sqrt(lambda)));
  const int kmax = r.support_max;
  std::vector<double> counts(kmax + 2, 0.0);  // last slot: tail k > kmax
  double other = 0;                            // negative or non-integer values
  for (double v : values) {
    if (v < 0 || v != std::floor(v)) {
      other += 1;
    } else if (v > kmax) {
      counts[kmax + 1] += 1;
    } else {
      counts[static_cast<int>(v)] += 1;
    }
  }
  const double n = static_cast<double>(values.size());
  r.poisson_pmf = poisson_pmf(lambda, kmax);
  double head = 0;
  for (double p : r.poisson_pmf) head += p;
  r.poisson_pmf.push_back(std::max(0.0, 1.0 - head));
  double tv = other / n;
  for (int k = 0; k <= kmax + 1; ++k) {
    r.empirical_pmf.push_back(counts[k] / n);
    tv += std::abs(counts[k] / n - r.poisson_pmf[k]);
  }
  r.tv = tv / 2;
  r.tv_pass = r.tv < cfg.tv_threshold;
  r.cumulants_pass = true;
  for (int l = 1; l <= 2; ++l) {
    const auto& c = r.cumulants[l - 1];
    if (std::abs(c.value - lambda) > cfg.se_multiple * c.se) r.cumulants_pass = false;
  }
  r.verdict = r.tv_pass && r.cumulants_pass;
  return r;
}

// ---- Gaussian diagnostic ----------------------------------------------------

struct GridSamples {
  int n = 0;
  std::vector<double> values;
};

struct GaussianLevel {
  int n = 0;
  std::vector<CumulantEstimate> cumulants;  // k1..k4
  double skewness = 0;
  double excess_kurtosis = 0;
};

struct GaussianReport {
  std::vector<GaussianLevel> levels;
  bool degenerate = false;
  bool higher_cumulants_vanish = false;  // at the largest N
  bool variance_stabilizes = false;
  std::optional<bool> verdict;  // empty when degenerate
};

// values at each N are the normalized statistic; the largest N decides the
// third/fourth cumulant test, successive variances decide stabilization.
inline GaussianReport gaussian_diagnostic(const std::vector<GridSamples>& grid, const RunConfig& cfg,
                                          std::uint64_t tag = 0) {
  if (grid.empty()) throw ValidationError("gaussian diagnostic needs at least one N");
  GaussianReport r;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    GaussianLevel level;
    level.n = grid[g].n;
    level.cumulants = estimate_cumulants(grid[g].values, 4, cfg.bootstrap, bootstrap_stream(cfg.seed, tag + g));
    const double k2 = level.cumulants[1].value;
    if (!(k2 > 0)) {
      r.degenerate = true;
    } else {
      level.skewness = level.cumulants[2].value / std::pow(k2, 1.5);
      level.excess_kurtosis = level.cumulants[3].value / (k2 * k2);
    }
    r.levels.push_back(std::move(level));
  }
  if (r.degenerate) return r;
  const auto& last = r.levels.back().cumulants;
  r.higher_cumulants_vanish = std::abs(last[2].value) <= cfg.se_multiple * last[2].se &&
                              std::abs(last[3].value) <= cfg.se_multiple * last[3].se;
  r.variance_stabilizes = true;
  double previous_step = -1;
  for (std::size_t g = 1; g < r.levels.size(); ++g) {
    const auto& a = r.levels[g - 1].cumulants[1];
    const auto& b = r.levels[g].cumulants[1];
    const double step = std::abs(b.value - a.value);
    const double noise = cfg.se_multiple * std::hypot(a.se, b.se);
    const bool settled = step <= noise || (previous_step >= 0 && step <= previous_step);
    if (g + 1 == r.levels.size() && !settled) r.variance_stabilizes = false;
    previous_step = step;
  }
  r.verdict = r.higher_cumulants_vanish && r.variance_stabilizes;
  return r;
}

// ---- variance constant of dashed patterns -----------------------------------

// Weighted least squares for y = a + b / N; returns (a, se(a), b).
struct InverseNFit {
  double intercept = 0;
  double intercept_se = 0;
  double slope = 0;
};

inline InverseNFit fit_inverse_n(const std::vector<int>& ns, const std::vector<double>& y,
                                 const std::vector<double>& se) {
  double s = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const double w = 1.0 / std::max(se[k] * se[k], 1e-300);
    const double x = 1.0 / ns[k];
    s += w;
    sx += w * x;
    sxx += w * x * x;
    sy += w * y[k];
    sxy += w * x * y[k];
  }
  const double det = s * sxx - sx * sx;
  if (!(det > 0)) throw ValidationError("inverse-N fit needs at least two distinct N");
  InverseNFit f;
  f.intercept = (sxx * sy - sx * sxy) / det;
  f.slope = (s * sxy - sx * sy) / det;
  f.intercept_se = std::sqrt(sxx / det);
  return f;
}

struct ExactPatternMoments {
  int n = 0;
  Rational mean;
  Rational variance;
};

// Mean and variance of the occurrence count over S_N with exact Ewens weights.
inline ExactPatternMoments exact_pattern_moments(const DashedPattern& pattern, int n, const Rational& theta) {
  ExactPatternMoments out{n, Rational(0), Rational(0)};
  Rational second(0);
  for (const auto& [sigma, w] : enumerate_ewens(n, theta)) {
    const Rational c(count_dashed(sigma, pattern));
    out.mean += w * c;
    second += w * c * c;
  }
  out.variance = second - out.mean * out.mean;
  return out;
}

struct VLevel {
  int n = 0;
  double normalized_mean = 0;  // O / N^{p-q}
  double normalized_mean_se = 0;
  double v = 0;  // N^{1-2(p-q)} Var(O)
  double v_se = 0;
};

struct VReport {
  std::vector<VLevel> levels;
  InverseNFit v_fit;
  InverseNFit mean_fit;
  double limit_mean = 0;  // 1/(p!(p-q)!)
  std::vector<ExactPatternMoments> exact;
  bool v_positive = false;  // V > 5 SE
  bool mean_consistent = false;
};

inline constexpr int kMaxExactPatternN = 7;

inline std::vector<GridSamples> sample_pattern_counts(const DashedPattern& pattern, const std::vector<int>& grid,
                                                      const RunConfig& cfg) {
  std::vector<GridSamples> out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    RunConfig c = cfg;
    c.n = grid[g];
    c.seed = mix64(cfg.seed + 0x51ED27ull * (g + 1));
    auto m = sample_statistics(c, 1, [&](const Permutation& s, double* o) {
      o[0] = static_cast<double>(count_dashed(s, pattern));
    });
    out.push_back({grid[g], m.column(0)});
  }
  return out;
}

// Z = sqrt(N) (O / N^{p-q} - 1/(p!(p-q)!)) at each N.
inline std::vector<GridSamples> normalize_pattern_counts(const DashedPattern& pattern,
                                                         const std::vector<GridSamples>& counts) {
  const int e = pattern.size() - pattern.adjacency_count();
  const double limit = to_double(dashed_mean(pattern.size(), pattern.adjacency_count()));
  std::vector<GridSamples> out;
  for (const auto& g : counts) {
    const double scale = std::pow(static_cast<double>(g.n), e);
    GridSamples z{g.n, {}};
    z.values.reserve(g.values.size());
    for (double o : g.values) z.values.push_back(std::sqrt(static_cast<double>(g.n)) * (o / scale - limit));
    out.push_back(std::move(z));
  }
  return out;
}

inline VReport estimate_V(const DashedPattern& pattern, const std::vector<GridSamples>& counts, const RunConfig& cfg,
                          bool with_exact = true) {
  if (counts.size() < 3) throw ValidationError("estimate_V needs an N grid of at least 3 points");
  const int e = pattern.size() - pattern.adjacency_count();
  VReport r;
  r.limit_mean = to_double(dashed_mean(pattern.size(), pattern.adjacency_count()));
  std::vector<int> ns;
  std::vector<double> v, vse, m, mse;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    const double n = counts[g].n;
    const auto est = estimate_cumulants(counts[g].values, 2, cfg.bootstrap, bootstrap_stream(cfg.seed, 100 + g));
    const double mean_scale = std::pow(n, -e);
    const double v_scale = std::pow(n, 1 - 2 * e);
    VLevel level{counts[g].n, est[0].value * mean_scale, est[0].se * mean_scale, est[1].value * v_scale,
                 est[1].se * v_scale};
    ns.push_back(level.n);
    m.push_back(level.normalized_mean);
    mse.push_back(level.normalized_mean_se);
    v.push_back(level.v);
    vse.push_back(level.v_se);
    r.levels.push_back(level);
  }
  r.v_fit = fit_inverse_n(ns, v, vse);
  r.mean_fit = fit_inverse_n(ns, m, mse);
  r.v_positive = r.v_fit.intercept > 5 * r.v_fit.intercept_se;
  r.mean_consistent = std::abs(r.mean_fit.intercept - r.limit_mean) <= cfg.se_multiple * r.mean_fit.intercept_se;
  if (with_exact) {
    const Rational theta(cfg.theta);  // exact binary value of the double
    for (int n = pattern.size(); n <= kMaxExactPatternN; ++n) {
      r.exact.push_back(exact_pattern_moments(pattern, n, theta));
    }
  }
  return r;
}

inline VReport estimate_V(const DashedPattern& pattern, const std::vector<int>& grid, const RunConfig& cfg) {
  if (grid.size() < 3) throw ValidationError("estimate_V needs an N grid of at least 3 points");
  return estimate_V(pattern, sample_pattern_counts(pattern, grid, cfg), cfg);
}

// ---- exceedance profile -----------------------------------------------------

struct ProfilePoint {
  double x = 0;
  double mean = 0;  // sample mean of F(x)
  double mean_se = 0;
  double limit = 0;        // (1 - (1-x)^2) / 2
  double finite_mean = 0;  // exact E F(x) at this N
  std::vector<CumulantEstimate> z_cumulants;
  bool mean_pass = false;         // against the limit
  bool finite_mean_pass = false;  // against the exact finite-N mean
  bool higher_pass = false;       // k3, k4 of Z vanish
};

struct ProfilePair {
  int a = 0, b = 0;  // indices into the x grid, a <= b
  PairEstimate z;
  double kernel = 0;
  bool pass = false;
};

struct ProfileReport {
  int n = 0;
  long samples = 0;
  std::vector<ProfilePoint> points;
  std::vector<ProfilePair> pairs;
  bool verdict = false;
};

// Samples F on a grid of x and checks the mean against its limit and
// Z(x) = sqrt(N) (F(x) - E F(x)) against the limiting covariance K.
inline ProfileReport exceedance_profile(const RunConfig& cfg, const std::vector<double>& xs) {
  if (xs.empty()) throw ValidationError("need at least one x");
  for (double x : xs) detail::require_unit_interval(x);
  const int d = static_cast<int>(xs.size());
  const auto m = sample_statistics(cfg, d, [&](const Permutation& s, double* out) {
    const auto f = f_function(s, xs);
    std::copy(f.begin(), f.end(), out);
  });
  ProfileReport r;
  r.n = cfg.n;
  r.samples = cfg.samples;
  const double root = std::sqrt(static_cast<double>(cfg.n));
  std::vector<std::vector<double>> z(d);
  for (int k = 0; k < d; ++k) {
    ProfilePoint pt;
    pt.x = xs[k];
    pt.limit = f_limit(xs[k]);
    pt.finite_mean = f_expectation(cfg.n, cfg.theta, xs[k]);
    const auto col = m.column(k);
    const auto est = estimate_cumulants(col, 1, cfg.bootstrap, bootstrap_stream(cfg.seed, 200 + k));
    pt.mean = est[0].value;
    pt.mean_se = est[0].se;
    pt.mean_pass = std::abs(pt.mean - pt.limit) <= cfg.se_multiple * pt.mean_se;
    pt.finite_mean_pass = std::abs(pt.mean - pt.finite_mean) <= cfg.se_multiple * pt.mean_se;
    z[k].reserve(col.size());
    for (double v : col) z[k].push_back(root * (v - pt.finite_mean));
    pt.z_cumulants = estimate_cumulants(z[k], 4, cfg.bootstrap, bootstrap_stream(cfg.seed, 300 + k));
    pt.higher_pass = true;
    for (int l = 3; l <= 4; ++l) {
      const auto& c = pt.z_cumulants[l - 1];
      if (std::abs(c.value) > cfg.se_multiple * c.se) pt.higher_pass = false;
    }
    r.points.push_back(std::move(pt));
  }
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      ProfilePair pr;
      pr.a = a;
      pr.b = b;
      pr.z = estimate_pair(z[a], z[b], cfg.bootstrap, bootstrap_stream(cfg.seed, 400 + a * d + b));
      pr.kernel = covariance_kernel(xs[a], xs[b]);
      pr.pass = std::abs(pr.z.covariance - pr.kernel) <= cfg.se_multiple * pr.z.covariance_se;
      r.pairs.push_back(pr);
    }
  }
  r.verdict = true;
  for (const auto& pt : r.points) r.verdict = r.verdict && pt.mean_pass && pt.higher_pass;
  for (const auto& pr : r.pairs) r.verdict = r.verdict && pr.pass;
  return r;
}

// ---- raw output ---------------------------------------------------------------

inline void write_csv(std::ostream& out, const std::vector<std::string>& header, const SampleMatrix& m) {
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  char buf[64];
  for (long r = 0; r < m.rows; ++r) {
    for (int d = 0; d < m.dims; ++d) {
      std::snprintf(buf, sizeof buf, "%.15g", m.at(r, d));
      out << (d ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace ewens

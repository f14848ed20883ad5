#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ewens/ewens.hpp"
#include "ewens/serialize.hpp"

namespace ewens::cli {

inline constexpr const char* kSchema = "ewens-cli/1";

// What a subcommand hands back: the JSON result plus optional csv/pretty forms.
struct Outcome {
  json result;
  int status = 0;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::string pretty;
};

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

inline int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(what + ": not an integer: '" + s + "'");
}

inline double to_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  if (s.find('/') == std::string::npos) throw ValidationError(what + ": not a number: '" + s + "'");
  return to_double(parse_rational(s));
}

inline std::vector<int> int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& piece : split(text, ',')) out.push_back(to_int(piece, what));
  return out;
}

inline std::vector<double> real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& piece : split(text, ',')) out.push_back(to_real(piece, what));
  return out;
}

inline std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& piece : split(text, ',')) out.push_back(parse_rational(piece));
  if (out.empty()) throw ValidationError("empty list of theta values");
  for (const auto& q : out) require_positive_theta(q);
  return out;
}

inline Rational theta_value(const std::string& text) {
  const Rational q = parse_rational(text);
  require_positive_theta(q);
  return q;
}

inline json json_arg(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    throw ValidationError(what + ": not valid JSON");
  }
}

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string join_ints(std::span<const int> v, const char* sep = ",") {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + std::to_string(v[k]);
  return out;
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt(v.get<double>());
  return v.dump();
}

inline void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t k = 0; k < v.size(); ++k) flatten(v[k], path + "[" + std::to_string(k) + "]", out);
  } else if (v.is_array()) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + scalar_text(v[k]);
    out.emplace_back(path, s);
  } else {
    out.emplace_back(path, scalar_text(v));
  }
}

// Option values read back as JSON where they parse, as strings otherwise.
inline json sniff(const std::string& s) {
  try {
    json v = json::parse(s);
    if (!v.is_string() && !v.is_null()) return v;
  } catch (const json::parse_error&) {
  }
  return s;
}

inline void echo_options(const CLI::App& app, json& into) {
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->get_expected_max() == 0) {
      into[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      into[name] = sniff(opt->results().back());
    } else if (!opt->get_default_str().empty()) {
      into[name] = sniff(opt->get_default_str());
    } else {
      into[name] = nullptr;
    }
  }
}

using StatFn = std::function<double(const Permutation&)>;

struct NamedStat {
  std::string name;
  StatFn fn;
};

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Ewens permutations: exact cumulants, limit laws and the exclusion-process bridge", "ewens_cli"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  std::string format = "json", out_path;
  std::uint64_t seed = 1;
  int workers = 1;
  app.add_option("--format", format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--out", out_path, "write the document here instead of stdout");
  app.add_option("--seed", seed, "root seed for every random draw");
  app.add_option("--workers", workers, "sampling threads; output does not depend on this")
      ->check(CLI::PositiveNumber);

  std::map<CLI::App*, std::function<Outcome()>> actions;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  // Common Monte Carlo knobs, filled per subcommand.
  int n = 100;
  std::string theta_text = "1";
  long samples = 10000;
  bool strict = false;
  int n_large = 1000;
  auto run_config = [&](int size) {
    RunConfig cfg;
    cfg.n = size;
    cfg.theta = to_double(theta_value(theta_text));
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.validate();
    return cfg;
  };

  // ---- sample
  long count = 1;
  {
    auto* s = sub("sample", "draw Ewens permutations");
    s->add_option("--N", n, "size")->required();
    s->add_option("--theta", theta_text);
    s->add_option("--count", count);
    actions[s] = [&] {
      if (n < 1) throw ValidationError("N must be positive");
      if (count < 1) throw ValidationError("count must be positive");
      const double theta = to_double(theta_value(theta_text));
      const auto m = parallel_samples(count, n, seed, workers, [&](long, CounterRng& rng, double* o) {
        const auto p = ewens_sample(n, theta, rng);
        for (int k = 1; k <= n; ++k) o[k - 1] = p(k);
      });
      Outcome r;
      r.result["samples"] = json::array();
      r.csv_header = {"sample", "sigma", "cycles"};
      for (long t = 0; t < count; ++t) {
        std::vector<int> img(n);
        for (int k = 0; k < n; ++k) img[k] = static_cast<int>(m.at(t, k));
        const auto p = Permutation::from_trusted(img);
        r.result["samples"].push_back(
            {{"sigma", img}, {"cycle_notation", cycle_notation(p)}, {"cycles", cycle_count(p)}});
        r.csv_rows.push_back({std::to_string(t), join_ints(img, " "), std::to_string(cycle_count(p))});
        r.pretty += join_ints(img, " ") + "    " + cycle_notation(p) + "\n";
      }
      return r;
    };
  }

  // ---- enumerate
  {
    auto* s = sub("enumerate", "all of S_N with exact Ewens weights");
    s->add_option("--N", n, "size, at most 9")->required();
    s->add_option("--theta", theta_text);
    actions[s] = [&] {
      const Rational theta = theta_value(theta_text);
      Outcome r;
      r.result["permutations"] = json::array();
      r.csv_header = {"sigma", "cycles", "weight"};
      Rational total(0);
      for (const auto& [p, w] : enumerate_ewens(n, theta)) {
        total += w;
        r.result["permutations"].push_back(
            {{"sigma", to_json_value(p)}, {"cycles", cycle_count(p)}, {"weight", exact(w)}});
        r.csv_rows.push_back({join_ints(p.one_line(), " "), std::to_string(cycle_count(p)), to_string(w)});
        r.pretty += join_ints(p.one_line(), " ") + "  " + to_string(w) + "\n";
      }
      r.result["count"] = r.result["permutations"].size();
      r.result["total_weight"] = exact(total);
      return r;
    };
  }

  // ---- stats
  std::string sigma_text, stat_text = "cycles,exceedances,adjacencies", tau_text, x_adj_text, y_adj_text,
                          local_text;
  int p_order = 1, max_order = 2;
  double x_point = 0.5;
  auto make_stats = [&](const std::string& names) {
    std::vector<NamedStat> out;
    for (const auto& name : split(names, ',')) {
      if (name == "cycles") {
        out.push_back({name, [](const Permutation& s) { return double(cycle_count(s)); }});
      } else if (name == "exceedances") {
        out.push_back({name, [](const Permutation& s) { return double(exceedance_count(s)); }});
      } else if (name == "adjacencies") {
        out.push_back({name, [](const Permutation& s) { return double(adjacency_count(s)); }});
      } else if (name == "inversions") {
        const DashedPattern inv(Permutation({2, 1}), {});
        out.push_back({name, [inv](const Permutation& s) { return double(count_dashed(s, inv)); }});
      } else if (name == "descents") {
        const DashedPattern des(Permutation({2, 1}), {1});
        out.push_back({name, [des](const Permutation& s) { return double(count_dashed(s, des)); }});
      } else if (name == "rlmin") {
        out.push_back({name, [](const Permutation& s) { return double(right_to_left_minima(s)); }});
      } else if (name == "gamma") {
        const int p = p_order;
        if (p < 1) throw ValidationError("p must be positive");
        out.push_back({"gamma_" + std::to_string(p), [p](const Permutation& s) { return double(gamma_p(s, p)); }});
      } else if (name == "F") {
        const double x = x_point;
        ewens::detail::require_unit_interval(x);
        out.push_back({name, [x](const Permutation& s) { return f_function(s, x); }});
      } else if (name == "pattern") {
        if (tau_text.empty()) throw ValidationError("pattern statistic needs --tau");
        const BivincularPattern pat(Permutation(int_list(tau_text, "tau")), int_list(x_adj_text, "X"),
                                    int_list(y_adj_text, "Y"));
        out.push_back({name, [pat](const Permutation& s) { return double(count_bivincular(s, pat)); }});
      } else if (name == "local") {
        if (local_text.empty()) throw ValidationError("local statistic needs --local");
        const auto loc = local_from_json(json_arg(local_text, "local"));
        out.push_back({name, [loc](const Permutation& s) { return double(count_local(s, loc)); }});
      } else {
        throw ValidationError("unknown statistic '" + name + "'");
      }
    }
    if (out.empty()) throw ValidationError("no statistics requested");
    return out;
  };
  {
    auto* s = sub("stats", "statistics of one permutation, or sampled cumulant estimates");
    s->add_option("--sigma", sigma_text, "one-line notation; omit to sample");
    s->add_option("--stat", stat_text,
                  "comma list of cycles, exceedances, adjacencies, inversions, descents, rlmin, gamma, F, pattern, "
                  "local");
    s->add_option("--p", p_order, "cycle length for gamma");
    s->add_option("--x", x_point, "point for F");
    s->add_option("--tau", tau_text, "pattern for the pattern statistic");
    s->add_option("--X", x_adj_text, "position adjacencies");
    s->add_option("--Y", y_adj_text, "value adjacencies");
    s->add_option("--local", local_text, "local statistic as JSON");
    s->add_option("--N", n);
    s->add_option("--theta", theta_text);
    s->add_option("--samples", samples);
    s->add_option("--order", max_order, "highest cumulant estimated")->check(CLI::Range(1, 4));
    actions[s] = [&] {
      const auto stats = make_stats(stat_text);
      Outcome r;
      if (!sigma_text.empty()) {
        const Permutation sigma(int_list(sigma_text, "sigma"));
        r.result["sigma"] = to_json_value(sigma);
        r.csv_header = {"statistic", "value"};
        for (const auto& st : stats) {
          const double v = st.fn(sigma);
          r.result["values"][st.name] = real(v);
          r.csv_rows.push_back({st.name, fmt(v)});
        }
        return r;
      }
      const auto cfg = run_config(n);
      const int d = static_cast<int>(stats.size());
      const auto m = sample_statistics(cfg, d, [&](const Permutation& s, double* o) {
        for (int k = 0; k < d; ++k) o[k] = stats[k].fn(s);
      });
      r.result["run"] = to_json_value(cfg);
      r.result["statistics"] = json::array();
      for (int k = 0; k < d; ++k) {
        const auto est = estimate_cumulants(m.column(k), max_order, cfg.bootstrap, bootstrap_stream(cfg.seed, k));
        r.result["statistics"].push_back({{"name", stats[k].name}, {"cumulants", to_json_value(est)}});
      }
      r.csv_header = {"sample"};
      for (const auto& st : stats) r.csv_header.push_back(st.name);
      for (long t = 0; t < m.rows; ++t) {
        std::vector<std::string> row{std::to_string(t)};
        for (int k = 0; k < d; ++k) row.push_back(fmt(m.at(t, k)));
        r.csv_rows.push_back(std::move(row));
      }
      return r;
    };
  }

  // ---- moment / cumulant
  std::string i_text, s_text, partition_text;
  std::optional<int> n_opt;
  bool symbolic = false;
  {
    auto* s = sub("moment", "E[prod 1{sigma(i_j) = s_j}], exact");
    s->add_option("--i", i_text)->required();
    s->add_option("--s", s_text)->required();
    s->add_option("--theta", theta_text);
    s->add_option("--N", n_opt, "evaluate at this N");
    s->add_flag("--symbolic", symbolic, "rational function of N");
    actions[s] = [&] {
      if (!symbolic && !n_opt) throw ValidationError("moment needs --N or --symbolic");
      const auto i = int_list(i_text, "i"), sv = int_list(s_text, "s");
      const Rational theta = theta_value(theta_text);
      Outcome r;
      r.result["i"] = i;
      r.result["s"] = sv;
      if (symbolic) {
        const auto f = joint_moment_symbolic(i, sv, theta);
        r.result["ratfun"] = f.pretty();
        r.result["text"] = f.to_text();
        r.result["degree"] = degree_json(f.degree());
      }
      if (n_opt) r.result["value"] = exact(joint_moment(i, sv, theta, *n_opt));
      return r;
    };
  }
  {
    auto* s = sub("cumulant", "joint cumulant of grouped elementary events, exact");
    s->add_option("--i", i_text)->required();
    s->add_option("--s", s_text)->required();
    s->add_option("--tau", partition_text, "grouping of [r] as JSON blocks; default singletons");
    s->add_option("--theta", theta_text);
    s->add_option("--N", n_opt, "evaluate at this N");
    s->add_flag("--symbolic", symbolic, "rational function of N with degree and bound");
    actions[s] = [&] {
      if (!symbolic && !n_opt) throw ValidationError("cumulant needs --N or --symbolic");
      json spec_json = {{"i", int_list(i_text, "i")}, {"s", int_list(s_text, "s")}};
      if (!partition_text.empty()) spec_json["tau"] = json_arg(partition_text, "tau");
      const auto spec = spec_from_json(spec_json);
      const Rational theta = theta_value(theta_text);
      Outcome r;
      r.result["spec"] = to_json_value(spec);
      if (symbolic) r.result.update(to_json_value(verify_main_lemma(spec, theta)));
      if (n_opt) r.result["value"] = exact(joint_cumulant(spec, theta, *n_opt));
      return r;
    };
  }

  // ---- verify-bound / sweep-bound
  std::string thetas_text = "1/2,1,2";
  int random_count = 0, r_size = 4, alphabet = 8, sweep_alphabet = 6, max_r = 3;
  {
    auto* s = sub("verify-bound", "check the cumulant degree bound on given or random specs");
    s->add_option("--i", i_text);
    s->add_option("--s", s_text);
    s->add_option("--tau", partition_text);
    s->add_option("--theta", thetas_text, "comma list");
    s->add_option("--random", random_count, "number of random specs");
    s->add_option("--r", r_size, "size of random specs");
    s->add_option("--alphabet", alphabet, "entries of random specs lie in 1..alphabet");
    actions[s] = [&] {
      const auto thetas = rational_list(thetas_text);
      std::vector<ElementarySpec> specs;
      if (!i_text.empty() || !s_text.empty()) {
        json spec_json = {{"i", int_list(i_text, "i")}, {"s", int_list(s_text, "s")}};
        if (!partition_text.empty()) spec_json["tau"] = json_arg(partition_text, "tau");
        specs.push_back(spec_from_json(spec_json));
      }
      if (random_count < 0 || r_size < 1 || r_size > kMaxElementaryBlocks || alphabet < 1) {
        throw ValidationError("bad random spec parameters");
      }
      CounterRng rng(seed);
      for (int t = 0; t < random_count; ++t) specs.push_back(random_spec(r_size, alphabet, rng));
      if (specs.empty()) throw ValidationError("verify-bound needs --i/--s or --random");
      Outcome r;
      r.result["reports"] = json::array();
      r.result["failures"] = json::array();
      r.csv_header = {"i", "s", "tau", "theta", "ratfun", "degree", "bound", "holds"};
      long checked = 0;
      for (const auto& spec : specs) {
        for (const auto& theta : thetas) {
          const auto rep = verify_main_lemma(spec, theta);
          ++checked;
          json row = {{"spec", to_json_value(spec)}, {"theta", exact(theta)}};
          row.update(to_json_value(rep));
          r.csv_rows.push_back({join_ints(spec.i, " "), join_ints(spec.s, " "), to_json_value(spec.tau).dump(),
                                to_string(theta), rep.cumulant.pretty(), degree_json(rep.degree).dump(),
                                std::to_string(rep.bound), rep.holds ? "true" : "false"});
          if (!rep.holds) r.result["failures"].push_back(row);
          r.result["reports"].push_back(std::move(row));
        }
      }
      r.result["checked"] = checked;
      r.result["holds"] = r.result["failures"].empty();
      r.status = r.result["failures"].empty() ? 0 : 1;
      return r;
    };
  }
  {
    auto* s = sub("sweep-bound", "check the degree bound over every collision pattern");
    s->add_option("--max-r", max_r)->check(CLI::Range(1, 4));
    s->add_option("--alphabet", sweep_alphabet);
    s->add_option("--theta", thetas_text, "comma list");
    actions[s] = [&] {
      const auto summary = sweep_main_lemma(max_r, sweep_alphabet, rational_list(thetas_text));
      Outcome r;
      r.result["patterns"] = summary.patterns;
      r.result["checked"] = summary.checked;
      r.result["failures"] = json::array();
      for (const auto& f : summary.failures) {
        json row = {{"spec", to_json_value(f.spec)}, {"theta", exact(f.theta)}};
        row.update(to_json_value(f.report));
        r.result["failures"].push_back(row);
      }
      r.result["holds"] = summary.failures.empty();
      r.status = summary.failures.empty() ? 0 : 1;
      return r;
    };
  }

  // ---- clt / poisson / pattern-variance
  std::string clt_stat = "F", xs_text = "0.25,0.5,0.75", grid_text = "200,400,800";
  bool no_exact = false;
  auto read_pattern = [&] {
    if (tau_text.empty()) throw ValidationError("pattern needs --tau");
    return DashedPattern(Permutation(int_list(tau_text, "tau")), int_list(x_adj_text, "X"));
  };
  {
    auto* s = sub("clt", "Gaussian limit checks for F or a dashed pattern");
    s->add_option("--stat", clt_stat)->check(CLI::IsMember({"F", "pattern"}));
    s->add_option("--N", n_large);
    s->add_option("--theta", theta_text);
    s->add_option("--samples", samples);
    s->add_option("--x", xs_text, "points for F");
    s->add_option("--tau", tau_text, "pattern");
    s->add_option("--X", x_adj_text, "position adjacencies");
    s->add_option("--grid", grid_text, "N values for the pattern");
    s->add_flag("--strict", strict, "exit 1 when the verdict fails");
    actions[s] = [&] {
      Outcome r;
      bool verdict = false;
      if (clt_stat == "F") {
        const auto cfg = run_config(n_large);
        const auto rep = exceedance_profile(cfg, real_list(xs_text, "x"));
        r.result = to_json_value(rep);
        verdict = rep.verdict;
        r.csv_header = {"x", "mean", "mean_se", "limit", "finite_N_mean", "k3", "k3_se", "k4", "k4_se"};
        for (const auto& pt : rep.points) {
          r.csv_rows.push_back({fmt(pt.x), fmt(pt.mean), fmt(pt.mean_se), fmt(pt.limit), fmt(pt.finite_mean),
                                fmt(pt.z_cumulants[2].value), fmt(pt.z_cumulants[2].se), fmt(pt.z_cumulants[3].value),
                                fmt(pt.z_cumulants[3].se)});
        }
      } else {
        const auto pattern = read_pattern();
        auto cfg = run_config(n_large);
        const auto grid = int_list(grid_text, "grid");
        const auto counts = sample_pattern_counts(pattern, grid, cfg);
        const auto gauss = gaussian_diagnostic(normalize_pattern_counts(pattern, counts), cfg, 500);
        r.result["pattern"] = to_json_value(pattern);
        r.result["gaussian"] = to_json_value(gauss);
        json mean = {{"limit", real(to_double(dashed_mean(pattern.size(), pattern.adjacency_count())))}};
        bool mean_ok = true;
        if (grid.size() >= 3) {
          const auto v = estimate_V(pattern, counts, cfg, false);
          mean["fit"] = real(v.mean_fit.intercept);
          mean["fit_se"] = real(v.mean_fit.intercept_se);
          mean["consistent"] = v.mean_consistent;
          mean_ok = v.mean_consistent;
        }
        r.result["normalized_mean"] = mean;
        verdict = gauss.verdict.value_or(false) && mean_ok;
        r.result["verdict"] = verdict;
        r.csv_header = {"N", "k1", "k1_se", "k2", "k2_se", "k3", "k3_se", "k4", "k4_se"};
        for (const auto& l : gauss.levels) {
          std::vector<std::string> row{std::to_string(l.n)};
          for (const auto& c : l.cumulants) {
            row.push_back(fmt(c.value));
            row.push_back(fmt(c.se));
          }
          r.csv_rows.push_back(std::move(row));
        }
      }
      if (strict && !verdict) r.status = 1;
      return r;
    };
  }
  std::string poisson_stat = "gamma";
  {
    auto* s = sub("poisson", "Poisson limit checks for cycle counts or adjacencies");
    s->add_option("--stat", poisson_stat)->check(CLI::IsMember({"gamma", "adjacency"}));
    s->add_option("--p", p_order, "cycle length");
    s->add_option("--N", n_large);
    s->add_option("--theta", theta_text);
    s->add_option("--samples", samples);
    s->add_flag("--strict", strict, "exit 1 when the verdict fails");
    actions[s] = [&] {
      const auto cfg = run_config(n_large);
      if (p_order < 1) throw ValidationError("p must be positive");
      const bool gamma = poisson_stat == "gamma";
      const int p = p_order;
      const auto m = sample_statistics(cfg, gamma ? 3 : 1, [&](const Permutation& s, double* o) {
        if (gamma) {
          o[0] = gamma_p(s, p);
          o[1] = gamma_p(s, 1);
          o[2] = gamma_p(s, 2);
        } else {
          o[0] = adjacency_count(s);
        }
      });
      const double lambda = gamma ? poisson_cycles(cfg.theta, p) : adjacency_lambda;
      const auto rep = poisson_diagnostic(m.column(0), lambda, cfg);
      Outcome r;
      r.result["run"] = to_json_value(cfg);
      r.result["statistic"] = gamma ? "gamma_" + std::to_string(p) : std::string("adjacencies");
      r.result.update(to_json_value(rep));
      bool verdict = rep.verdict;
      if (gamma) {
        const auto pair = estimate_pair(m.column(1), m.column(2), cfg.bootstrap, bootstrap_stream(cfg.seed, 1));
        const double tol = 4.0 / std::sqrt(static_cast<double>(cfg.samples));
        const bool ok = std::abs(pair.correlation) <= tol;
        r.result["gamma1_gamma2"] = to_json_value(pair);
        r.result["gamma1_gamma2"]["tolerance"] = real(tol);
        r.result["gamma1_gamma2"]["pass"] = ok;
        verdict = verdict && ok;
        r.result["verdict"] = verdict;
      }
      r.csv_header = {"k", "empirical", "poisson"};
      for (std::size_t k = 0; k < rep.empirical_pmf.size(); ++k) {
        const bool tail = k + 1 == rep.empirical_pmf.size() && k > 0;
        r.csv_rows.push_back({tail ? ">=" + std::to_string(k) : std::to_string(k), fmt(rep.empirical_pmf[k]),
                              fmt(rep.poisson_pmf[k])});
      }
      if (strict && !verdict) r.status = 1;
      return r;
    };
  }
  {
    auto* s = sub("pattern-variance", "variance constant of a dashed pattern over an N grid");
    s->add_option("--tau", tau_text)->required();
    s->add_option("--X", x_adj_text, "position adjacencies");
    s->add_option("--grid", grid_text);
    s->add_option("--theta", theta_text);
    s->add_option("--samples", samples);
    s->add_flag("--no-exact", no_exact, "skip the exact small-N table");
    s->add_flag("--strict", strict, "exit 1 when V is not positive or the mean is off");
    actions[s] = [&] {
      const auto pattern = read_pattern();
      auto cfg = run_config(n_large);
      const auto rep = estimate_V(pattern, sample_pattern_counts(pattern, int_list(grid_text, "grid"), cfg), cfg,
                                  !no_exact);
      Outcome r;
      r.result["pattern"] = to_json_value(pattern);
      r.result.update(to_json_value(rep));
      r.csv_header = {"N", "normalized_mean", "normalized_mean_se", "V", "V_se"};
      for (const auto& l : rep.levels) {
        r.csv_rows.push_back({std::to_string(l.n), fmt(l.normalized_mean), fmt(l.normalized_mean_se), fmt(l.v),
                              fmt(l.v_se)});
      }
      if (strict && !(rep.v_positive && rep.mean_consistent)) r.status = 1;
      return r;
    };
  }

  // ---- exclusion process
  bool with_law = false;
  std::string beta_text, initial_text;
  long steps = 1000000, thin = 50, burn_in = 1000;
  auto law_table = [](Outcome& r, int sites, const std::vector<double>& emp, const std::vector<Rational>* ex) {
    r.result["law"] = json::array();
    r.csv_header = {"word", "empirical", "exact"};
    for (std::size_t c = 0; c < emp.size(); ++c) {
      const auto w = word_to_string(word_from_code(static_cast<std::uint32_t>(c), sites));
      json row = {{"word", w}, {"empirical", real(emp[c])}};
      if (ex) row["exact"] = exact((*ex)[c]);
      r.result["law"].push_back(row);
      r.csv_rows.push_back({w, fmt(emp[c]), ex ? to_string((*ex)[c]) : ""});
    }
    if (ex) r.result["tv"] = real(total_variation(emp, to_doubles(*ex)));
  };
  {
    auto* s = sub("ssep-sample", "steady-state words through Ewens permutations of size N+1");
    s->add_option("--N", n, "sites")->required();
    s->add_option("--theta", theta_text);
    s->add_option("--count", count);
    s->add_flag("--law", with_law, "empirical law against the exact one (N <= 8)");
    actions[s] = [&] {
      if (n < 1) throw ValidationError("N must be positive");
      if (count < 1) throw ValidationError("count must be positive");
      const Rational theta = theta_value(theta_text);
      const auto m = parallel_samples(count, n, seed, workers, [&](long, CounterRng& rng, double* o) {
        const auto w = ssep_steady_sample(n, to_double(theta), rng);
        for (int k = 0; k < n; ++k) o[k] = w[k];
      });
      std::vector<BinaryWord> words;
      for (long t = 0; t < count; ++t) {
        BinaryWord w(n);
        for (int k = 0; k < n; ++k) w[k] = static_cast<std::uint8_t>(m.at(t, k));
        words.push_back(std::move(w));
      }
      Outcome r;
      if (with_law) {
        const auto exact_law = pushforward_law(n, theta);
        law_table(r, n, empirical_law(words, n), &exact_law);
        return r;
      }
      r.result["words"] = json::array();
      r.csv_header = {"sample", "word"};
      for (long t = 0; t < count; ++t) {
        const auto w = word_to_string(words[t]);
        r.result["words"].push_back(w);
        r.csv_rows.push_back({std::to_string(t), w});
        r.pretty += w + "\n";
      }
      return r;
    };
  }
  {
    auto* s = sub("ssep-mcmc", "run the particle chain and tabulate visited words");
    s->add_option("--N", n, "sites")->required();
    auto* beta_opt = s->add_option("--beta", beta_text, "exit rate in (0,1]");
    s->add_option("--theta", theta_text, "sets beta = 1/theta")->excludes(beta_opt);
    s->add_option("--steps", steps);
    s->add_option("--thin", thin);
    s->add_option("--burn-in", burn_in);
    s->add_option("--initial", initial_text, "starting word; default empty");
    actions[s] = [&] {
      const Rational beta = beta_text.empty() ? 1 / theta_value(theta_text) : parse_rational(beta_text);
      if (sgn(beta) <= 0 || beta > 1) throw ParameterError("beta must lie in (0,1]");
      if (steps < 0 || burn_in < 0) throw ValidationError("steps must be nonnegative");
      CounterRng rng(seed);
      const BinaryWord init = initial_text.empty() ? BinaryWord{} : parse_word(initial_text);
      const auto emp = ssep_mcmc_law(n, to_double(beta), steps, thin, burn_in, rng, init);
      Outcome r;
      r.result["beta"] = exact(beta);
      r.result["theta"] = exact(1 / beta);
      if (n + 1 <= kMaxEnumerationSize) {
        const auto exact_law = pushforward_law(n, 1 / beta);
        law_table(r, n, emp, &exact_law);
      } else {
        law_table(r, n, emp, nullptr);
      }
      return r;
    };
  }
  std::string shape_text, word_text;
  {
    auto* s = sub("shape-word", "convert between Young shapes and binary words");
    auto* sh = s->add_option("--shape", shape_text, "row lengths, weakly decreasing");
    s->add_option("--word", word_text, "string of 0 and 1")->excludes(sh);
    actions[s] = [&] {
      if (shape_text.empty() == word_text.empty()) throw ValidationError("give exactly one of --shape, --word");
      const Shape shape = shape_text.empty() ? word_to_shape(parse_word(word_text)) : Shape(int_list(shape_text, "shape"));
      const auto word = word_to_string(shape_to_word(shape));
      Outcome r;
      r.result = {{"shape", to_json_value(shape)}, {"word", word}, {"size", shape.size()}};
      r.pretty = join_ints(shape.rows) + " <-> " + word + "\n";
      return r;
    };
  }
  bool inverse = false;
  {
    auto* s = sub("psi", "cycle-to-word bijection");
    s->add_option("--sigma", sigma_text, "one-line notation")->required();
    s->add_flag("--inverse", inverse, "apply the inverse map");
    actions[s] = [&] {
      const Permutation input(int_list(sigma_text, "sigma"));
      const Permutation image = inverse ? psi_inverse(input) : psi(input);
      const Permutation& cyclic = inverse ? image : input;
      const Permutation& word = inverse ? input : image;
      Outcome r;
      r.result = {{"sigma", to_json_value(input)},
                  {"image", to_json_value(image)},
                  {"cycle_notation", cycle_notation(cyclic)},
                  {"cycles", cycle_count(cyclic)},
                  {"right_to_left_minima", right_to_left_minima(word)},
                  {"exceedance_word", word_to_string(exceedance_word(cyclic))}};
      r.csv_header = {"k", "sigma", "image"};
      for (int k = 1; k <= input.size(); ++k) {
        r.csv_rows.push_back({std::to_string(k), std::to_string(input(k)), std::to_string(image(k))});
      }
      r.pretty = join_ints(image.one_line()) + "\n";
      return r;
    };
  }

  Outcome outcome;
  json config;
  std::string command;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    CLI::App* chosen = app.get_subcommands().front();
    command = chosen->get_name();
    config["format"] = format;
    config["out"] = out_path.empty() ? json(nullptr) : json(out_path);
    config["seed"] = seed;
    config["workers"] = workers;
    echo_options(*chosen, config);
    outcome = actions.at(chosen)();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string doc;
  if (format == "json") {
    nlohmann::ordered_json top;
    top["schema"] = kSchema;
    top["command"] = command;
    top["config"] = nlohmann::ordered_json::parse(config.dump());
    top["result"] = nlohmann::ordered_json::parse(outcome.result.dump());
    doc = top.dump(2) + "\n";
  } else if (format == "csv") {
    std::vector<std::string> header = outcome.csv_header;
    auto rows = outcome.csv_rows;
    if (header.empty()) {
      header = {"field", "value"};
      std::vector<std::pair<std::string, std::string>> flat;
      flatten(outcome.result, "", flat);
      for (auto& [k, v] : flat) rows.push_back({k, v});
    }
    for (std::size_t c = 0; c < header.size(); ++c) doc += (c ? "," : "") + csv_cell(header[c]);
    doc += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) doc += (c ? "," : "") + csv_cell(row[c]);
      doc += "\n";
    }
  } else {
    doc = outcome.pretty;
    if (doc.empty()) {
      std::vector<std::pair<std::string, std::string>> flat;
      flatten(outcome.result, "", flat);
      for (auto& [k, v] : flat) doc += k + ": " + v + "\n";
    }
  }

  if (out_path.empty()) {
    out << doc;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << out_path << "\n";
      return 2;
    }
    file << doc;
  }
  return outcome.status;
}

}  // namespace ewens::cli

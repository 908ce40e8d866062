#include "ergoifc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "ergoifc/channel_io.hpp"
#include "ergoifc/classify.hpp"
#include "ergoifc/cmac.hpp"
#include "ergoifc/error.hpp"
#include "ergoifc/ifc.hpp"

namespace ergoifc::cli {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvalidInput*>(&e) != nullptr) return kMalformedInput;
  if (dynamic_cast<const PreconditionFailed*>(&e) != nullptr) return kPrecondition;
  return kInternal;
}

namespace {

double parse_number(std::string_view s, std::string_view what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InvalidInput(std::string(what) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  if (text.empty()) throw InvalidInput("grid: empty");
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidInput("grid: expected a:b:step, got '" + std::string(text) + "'");
    const double a = parse_number(parts[0], "grid start");
    const double b = parse_number(parts[1], "grid end");
    const double step = parse_number(parts[2], "grid step");
    if (!(step > 0.0)) throw InvalidInput("grid: step must be positive");
    if (b < a) throw InvalidInput("grid: end below start");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  } else {
    for (auto part : split(text, ',')) out.push_back(parse_number(part, "grid value"));
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) throw InvalidInput("grid: values must be strictly ascending");
  }
  return out;
}

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidInput("tol: must be positive");
  if (samples < 1) throw InvalidInput("samples: must be at least 1");
  for (const auto* g : {&sigma2_grid, &p1_grid, &mu_grid}) {
    for (std::size_t i = 1; i < g->size(); ++i) {
      if (!((*g)[i] > (*g)[i - 1])) throw InvalidInput("grid: values must be strictly ascending");
    }
  }
  if (!(power >= 0.0) || !std::isfinite(power)) throw InvalidInput("power: must be nonnegative");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid "-0.000000" so identical values print identically.
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::string encode_policy(const PowerPolicy& policy) {
  std::string s;
  for (std::size_t i = 0; i < policy.size(); ++i) {
    if (i > 0) s += ';';
    s += fmt(policy[i].p1) + ":" + fmt(policy[i].p2);
  }
  return s;
}

namespace {

std::string encode_alpha(const std::vector<double>& alpha) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i > 0) s += ';';
    s += fmt(alpha[i]);
  }
  return s;
}

/// Destination stream: the --out file when given, else `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidInput("out: cannot open '" + path + "' for writing");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

std::string cmac_label_at(const FadingProcess& process, const PowerPolicy& policy) {
  const auto label = cmac::match_case(cmac::case_sum_rates(process, policy), 1e-6);
  return label ? std::string(cmac::to_string(*label)) : std::string();
}

struct SumcapRow {
  std::string scheme;
  double value = 0.0;
  std::string label;
  std::string policy;
  std::string alpha;
};

std::string resolve_auto(const FadingProcess& process, const PowerBudget& budget) {
  switch (classify_channel(process, budget).subclass) {
    case Subclass::EVS:
    case Subclass::OneSidedEVS: return "evs";
    case Subclass::US:
    case Subclass::OneSidedUS: return "us";
    case Subclass::OneSidedUW: return "uw1";
    case Subclass::UM: return "um";
    case Subclass::UW: return "uw2_bound";
    case Subclass::OneSidedHybrid:
      return process.link_identically_zero(2, 1) ? "hk" : "cmac";
    case Subclass::Hybrid: return "cmac";
  }
  return "cmac";
}

SumcapRow run_scheme(const std::string& requested, const FadingProcess& process, const PowerBudget& budget,
                     double tol) {
  const std::string scheme = requested == "auto" ? resolve_auto(process, budget) : requested;
  SumcapRow row;
  row.scheme = scheme;
  if (scheme == "cmac") {
    const auto r = cmac::sum_capacity(process, budget);
    row.value = r.value;
    row.label = std::string(cmac::to_string(r.label));
    row.policy = encode_policy(r.policy);
  } else if (scheme == "evs") {
    const auto r = evs_sum_capacity(process, budget);
    row.value = r.value;
    row.label = cmac_label_at(process, r.policy);
    row.policy = encode_policy(r.policy);
  } else if (scheme == "us") {
    const auto r = us_sum_capacity(process, budget);
    row.value = r.value;
    row.label = cmac_label_at(process, r.policy);
    row.policy = encode_policy(r.policy);
  } else if (scheme == "separable") {
    if (sidedness(process) == Sidedness::OneSidedAtRx1 &&
        classify_channel(process, budget).subclass != Subclass::OneSidedUS) {
      const auto r = separable_one_sided_baseline(process, budget);
      row.value = r.value;
      row.policy = encode_policy(r.allocation.policy);
      row.alpha = encode_alpha(r.allocation.alpha);
    } else {
      const auto r = us_separable_sum_rate(process, budget);
      row.value = r.value;
      row.policy = encode_policy(r.policy);
    }
  } else if (scheme == "uw1") {
    const auto r = uw1_sum_capacity(process, budget);
    if (r.kkt_residual > tol) {
      throw ConvergenceFailure("uw1: KKT residual " + fmt(r.kkt_residual) + " above tolerance");
    }
    row.value = r.value;
    row.policy = encode_policy(r.policy);
  } else if (scheme == "um") {
    const auto r = um_sum_capacity(process, budget);
    row.value = r.value;
    row.policy = encode_policy(r.policy);
  } else if (scheme == "uw2_bound") {
    const auto r = uw2_upper_bound(process, budget);
    row.value = r.value;
    row.policy = encode_policy(r.policy);
  } else if (scheme == "hk") {
    const auto r = hk_optimize(process, budget);
    row.value = r.value;
    row.label = std::string(to_string(r.minimax_case));
    row.policy = encode_policy(r.allocation.policy);
    row.alpha = encode_alpha(r.allocation.alpha);
  } else if (scheme == "tdm") {
    row.value = tdm_baseline(process, budget);
  } else if (scheme == "outer") {
    row.value = interference_free_outer_bound(process, budget);
  } else {
    throw InvalidInput("scheme: unknown scheme '" + scheme + "'");
  }
  return row;
}

}  // namespace

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const auto ch = load_channel_file(config.channel_path);
    const auto report = classify_channel(ch.process, ch.budget);
    nlohmann::ordered_json j;
    j["subclass"] = to_string(report.subclass);
    j["sidedness"] = to_string(report.sidedness);
    j["labels"] = nlohmann::ordered_json::array();
    for (auto l : report.labels) j["labels"].push_back(to_string(l));
    j["evs"] = {{"lhs", report.evs.lhs},
                {"rhs", std::isinf(report.evs.rhs) ? nlohmann::ordered_json(nullptr)
                                                   : nlohmann::ordered_json(report.evs.rhs)},
                {"holds", report.evs.holds}};
    Sink sink(config.output_path, out);
    *sink << j.dump(2) << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_sumcap(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const auto ch = load_channel_file(config.channel_path);
    if (!config.mu_grid.empty()) {
      if (config.scheme != "cmac") throw InvalidInput("mu-grid: only valid with --scheme cmac");
      std::vector<cmac::WeightPair> grid;
      for (double mu1 : config.mu_grid) {
        if (!(mu1 > 0.0 && mu1 < 1.0)) throw InvalidInput("mu-grid: values must lie strictly inside (0, 1)");
        grid.push_back({mu1, 1.0 - mu1});
      }
      const auto pts = cmac::region_boundary(ch.process, ch.budget, grid);
      Sink sink(config.output_path, out);
      *sink << "mu1,mu2,r1_bits,r2_bits,policy\n";
      for (const auto& p : pts) {
        *sink << fmt(p.mu.mu1) << ',' << fmt(p.mu.mu2) << ',' << fmt(p.r1) << ',' << fmt(p.r2) << ','
              << encode_policy(p.policy) << '\n';
      }
      return static_cast<int>(kOk);
    }
    std::vector<SumcapRow> rows;
    for (auto name : split(config.scheme, ',')) rows.push_back(run_scheme(std::string(name), ch.process, ch.budget, config.tol));
    Sink sink(config.output_path, out);
    *sink << "scheme,value_bits,case_label,policy,alpha\n";
    for (const auto& r : rows) {
      *sink << r.scheme << ',' << fmt(r.value) << ',' << r.label << ',' << r.policy << ',' << r.alpha << '\n';
    }
    return static_cast<int>(kOk);
  });
}

EvsThreshold evs_max_power(const FadingProcess& process) {
  auto holds = [&process](double p) { return evs_condition(process, {p, p}).holds; };
  EvsThreshold t;
  if (!holds(kThresholdResolution)) return t;
  t.feasible = true;
  if (holds(kThresholdCap)) {
    t.p_max = kThresholdCap;
    t.capped = true;
    return t;
  }
  double lo = kThresholdResolution;
  double hi = kThresholdCap;
  while (hi - lo > kThresholdResolution) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? lo : hi) = mid;
  }
  t.p_max = lo;
  return t;
}

FadingProcess binary_one_sided_channel(double h1, double h2, double p1) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw InvalidInput("p1: must lie in [0, 1]");
  std::vector<FadingState> states;
  std::vector<double> probs;
  if (p1 > 0.0) {
    states.push_back({1.0, h1, 0.0, 1.0});
    probs.push_back(p1);
  }
  if (p1 < 1.0) {
    states.push_back({1.0, h2, 0.0, 1.0});
    probs.push_back(1.0 - p1);
  }
  return FadingProcess(std::move(states), std::move(probs));
}

namespace {

std::vector<double> or_default(const std::vector<double>& grid, std::string_view fallback) {
  return grid.empty() ? parse_grid(fallback) : grid;
}

void figure_ray_evs(const RunConfig& c, std::ostream& out) {
  out << "sigma2,pbar_max,feasible,capped,evs_sum_capacity,tdm\n";
  for (double s2 : or_default(c.sigma2_grid, "1:6:0.5")) {
    const auto process = sample_rayleigh_channel(s2, {1.0, 1.0}, c.samples, c.seed);
    const auto t = evs_max_power(process);
    double evs = 0.0;
    double tdm = 0.0;
    if (t.feasible) {
      const PowerBudget b{t.p_max, t.p_max};
      evs = evs_sum_capacity(process, b).value;
      tdm = tdm_baseline(process, b);
    }
    out << fmt(s2) << ',' << fmt(t.p_max) << ',' << (t.feasible ? 1 : 0) << ',' << (t.capped ? 1 : 0) << ','
        << fmt(evs) << ',' << fmt(tdm) << '\n';
    out.flush();
  }
}

void figure_sep_gap(const RunConfig& c, std::ostream& out) {
  struct Family {
    const char* name;
    double h1;
    double h2;
  };
  const Family families[] = {{"evs", 0.5, 3.5}, {"evs", 0.5, 2.0}, {"us", 1.25, 1.75}, {"us", 1.25, 3.75}};
  out << "family,h1,h2,p1,budget,joint,separable,gap\n";
  for (const auto& f : families) {
    for (double p1 : or_default(c.p1_grid, "0:1:0.1")) {
      const auto process = binary_one_sided_channel(f.h1, f.h2, p1);
      double budget = c.power;
      double joint = 0.0;
      double sep = 0.0;
      if (std::string_view(f.name) == "evs") {
        const auto t = evs_max_power(process);
        budget = t.p_max;
        if (t.feasible) {
          const PowerBudget b{budget, budget};
          joint = evs_sum_capacity(process, b).value;
          sep = separable_one_sided_baseline(process, b).value;
        }
      } else {
        const PowerBudget b{budget, budget};
        joint = us_sum_capacity(process, b).value;
        sep = us_separable_sum_rate(process, b).value;
      }
      out << f.name << ',' << fmt(f.h1) << ',' << fmt(f.h2) << ',' << fmt(p1) << ',' << fmt(budget) << ','
          << fmt(joint) << ',' << fmt(sep) << ',' << fmt(joint - sep) << '\n';
      out.flush();
    }
  }
}

void figure_hk_hybrid(const RunConfig& c, std::ostream& out) {
  constexpr double h_weak = 0.5;
  constexpr double h_strong = 2.0;
  out << "p1,pbar,r_hk,r_ind,r_outer,alpha_weak,alpha_strong,minimax_case\n";
  for (double p1 : or_default(c.p1_grid, "0:1:0.1")) {
    const auto process = binary_one_sided_channel(h_weak, h_strong, p1);
    const double pbar = evs_max_power(process).p_max + 1.5;
    const PowerBudget b{pbar, pbar};
    const auto hk = hk_optimize(process, b);
    const auto ind = separable_one_sided_baseline(process, b);
    const double outer = interference_free_outer_bound(process, b);
    double a_weak = std::numeric_limits<double>::quiet_NaN();
    double a_strong = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t s = 0; s < process.size(); ++s) {
      (process.state(s).g12 >= process.state(s).g22 ? a_strong : a_weak) = hk.allocation.alpha[s];
    }
    out << fmt(p1) << ',' << fmt(pbar) << ',' << fmt(hk.value) << ',' << fmt(ind.value) << ',' << fmt(outer) << ','
        << fmt(a_weak) << ',' << fmt(a_strong) << ',' << to_string(hk.minimax_case) << '\n';
    out.flush();
  }
}

}  // namespace

int cmd_figure(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    Sink sink(config.output_path, out);
    try {
      if (config.figure == "ray-evs") {
        figure_ray_evs(config, *sink);
      } else if (config.figure == "sep-gap") {
        figure_sep_gap(config, *sink);
      } else if (config.figure == "hk-hybrid") {
        figure_hk_hybrid(config, *sink);
      } else {
        throw InvalidInput("figure: unknown figure '" + config.figure + "'");
      }
    } catch (const InvalidInput&) {
      throw;
    } catch (const std::exception& e) {
      *sink << "# FAILED: " << e.what() << '\n';
      (*sink).flush();
      err << "error: " << e.what() << '\n';
      return static_cast<int>(kInternal);
    }
    return static_cast<int>(kOk);
  });
}

}  // namespace ergoifc::cli

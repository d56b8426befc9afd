#include "spectral_gibbs/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spectral_gibbs/errors.hpp"
#include "spectral_gibbs/parallel.hpp"
#include "spectral_gibbs/report.hpp"

namespace spectral_gibbs {

bool VerifyReport::all_pass() const noexcept {
  return std::none_of(checks.begin(), checks.end(),
                      [](const Check& c) { return c.verdict == Verdict::fail; });
}

namespace {

Verdict verdict(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

Check at_most(std::string name, double value, double limit) {
  return {std::move(name), verdict(value <= limit), value, "<=", limit};
}

}  // namespace

VerifyReport run_verify(const ModelSpec& spec, const Budget& budget) {
  require_state_budget(spec, budget.kappa_states, "kappa brute-force");
  const SparseKernel kernel = build_kernel(spec, budget);
  const Spectrum spec_values = spectrum(kernel, budget);
  VerifyReport report{spec, {}, kappa_exact(kernel, budget)};
  auto& checks = report.checks;
  const std::size_t n = spec.sites();
  const Color colors = spec.colors();
  const double t = spec.temperature();

  checks.push_back(at_most("row_sums", max_row_sum_error(kernel), 1e-12));
  checks.push_back(at_most("detailed_balance", check_detailed_balance(kernel), 1e-12));
  checks.push_back(at_most("stationarity", check_stationarity(kernel), 1e-12));
  checks.push_back({"irreducible", verdict(is_irreducible(kernel)),
                    is_irreducible(kernel) ? 1.0 : 0.0, "==", 1.0});

  double min_hold = 1.0, trace = 0.0;
  for (Rank r = 0; r < kernel.dimension(); ++r) {
    min_hold = std::min(min_hold, kernel.holding_probability(r));
    trace += kernel.holding_probability(r);
  }
  checks.push_back({"holding_positive", verdict(min_hold > 0.0), min_hold, ">", 0.0});

  const auto& ev = spec_values.eigenvalues;
  checks.push_back(at_most("top_eigenvalue", std::abs(ev.front() - 1.0), 1e-10));
  checks.push_back({"simple_top_eigenvalue", verdict(spec_values.beta1 < 1.0 - 1e-10),
                    spec_values.beta1, "<", 1.0 - 1e-10});
  double eig_sum = 0.0;
  for (double v : ev) eig_sum += v;
  checks.push_back(at_most("trace", std::abs(eig_sum - trace), 1e-9));

  double slice_worst = 0.0;
  for (Site i = 0; i < n; ++i)
    for (Color a = 0; a < colors; ++a)
      for (Color b = 0; b < colors; ++b)
        if (a != b)
          slice_worst =
              std::max(slice_worst, verify_slice_identities(kernel, i, a, b).max_residual());
  checks.push_back(at_most("slice_identities", slice_worst, 1e-12));

  bool edges_pass = true;
  double min_slack = std::numeric_limits<double>::infinity();
  for (const auto& load : report.kappa.loads) {
    const auto cert = per_edge_certificate(spec, load);
    edges_pass = edges_pass && cert.pass;
    min_slack = std::min(min_slack, cert.slack);
  }
  checks.push_back({"per_edge_certificates", verdict(edges_pass), min_slack, ">=", 0.0});

  const double worst_closed = colors - 1.0 + std::exp(4.0 / t);
  if (n >= 3 && colors >= 3) {
    const auto worst = worst_local_factors(spec);
    bool third_color = !worst.maximizers.empty();
    for (const auto& g : worst.maximizers)
      third_color = third_color && *g.left == *g.right && *g.left != g.color_from &&
                    *g.left != g.color_to;
    const bool attained = std::abs(worst.max_sum - worst_closed) <= 1e-12 * worst_closed;
    checks.push_back({"local_factor_worst_case", verdict(attained && third_color),
                      worst.max_sum, "==", worst_closed});
  } else {
    checks.push_back({"local_factor_worst_case", Verdict::not_applicable, 0.0, "==", worst_closed});
  }

  const BoundReport bounds = assemble_report(spec, kernel, spec_values, report.kappa);
  const auto& v = bounds.verdicts;
  checks.push_back({"kappa_closed_form", v.kappa_closed_form, report.kappa.kappa, "<=",
                    bounds.kappa_closed_form});
  checks.push_back({"kappa_geometric", v.kappa_geometric, spec_values.beta1, "<=",
                    1.0 - 1.0 / report.kappa.kappa + kKappaGeometricTolerance});
  checks.push_back({"potts", v.potts, spec_values.beta1, "<", bounds.potts});
  checks.push_back({"three_color", v.three_color, spec_values.beta1, "<", bounds.three_color.value_or(0.0)});
  checks.push_back({"lambda_min", v.lambda_min, spec_values.beta_min, ">=",
                    bounds.ingrassia_lambda_min});
  checks.push_back({"absolute_value", v.absolute_value, spec_values.beta_star, "<", bounds.potts});
  return report;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  auto ns = config.ns;
  auto cs = config.colors;
  auto ts = config.temperatures;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<SweepRow> rows;
  for (auto n : ns)
    for (auto c : cs)
      for (auto t : ts) {
        const ModelSpec spec(n, c, t);  // validates
        SweepRow row;
        row.n = n;
        row.colors = c;
        row.temperature = t;
        rows.push_back(row);
      }

  parallel_for(rows.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    const ModelSpec spec(row.n, row.colors, row.temperature);
    row.potts = potts_bound(row.n, row.colors, row.temperature);
    row.ingrassia_beta1 = ingrassia_beta1_bound(row.n, row.colors, row.temperature);
    row.theta = theta(row.n, row.colors, row.temperature);
    row.crossover_n = crossover_n(row.colors, row.temperature);
    row.improves = improves_on_ingrassia(row.n, row.colors, row.temperature);
    const auto count = spec.state_count();
    const std::uint64_t limit = std::min(config.budget.dense_states, config.budget.exact_states);
    if (!count || *count > limit) {
      row.skipped_exact = true;
      return;
    }
    const auto s = spectrum(build_kernel(spec, config.budget), config.budget);
    row.beta1 = s.beta1;
    row.beta_star = s.beta_star;
  });
  return rows;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) parts.push_back(part);
  return parts;
}

std::size_t parse_size(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw std::invalid_argument("not a non-negative integer: '" + s + "'");
  return std::stoull(s);
}

}  // namespace

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_size(part));
      continue;
    }
    const auto lo = parse_size(part.substr(0, dots));
    const auto hi = parse_size(part.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty range '" + part + "'");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != part.size()) throw std::invalid_argument("not a number: '" + part + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t n = 0;
  Color colors = 3;
  double temperature = 1.0;
  std::string n_list, colors_list = "3", temp_list = "1";
  std::size_t k_max = 200;
  std::string start;
  std::uint64_t seed = 0;
  std::size_t replicas = 0;
  Budget budget;
  std::string format = "json";
  std::string out_path;
};

void emit(const Options& opts, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (opts.out_path.empty()) {
    body(out);
    out.flush();
    return;
  }
  std::ofstream file(opts.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + opts.out_path + "'");
  body(file);
  file.flush();
  if (!file) throw IoError("failed writing output file '" + opts.out_path + "'");
}

ModelSpec model_of(const Options& o) { return ModelSpec(o.n, o.colors, o.temperature); }

int cmd_bounds(const Options& o, std::ostream& out) {
  const ModelSpec spec = model_of(o);
  const SparseKernel kernel = build_kernel(spec, o.budget);
  const Spectrum s = spectrum(kernel, o.budget);
  std::optional<KappaResult> kappa;
  if (spec.state_count() && *spec.state_count() <= o.budget.kappa_states)
    kappa = kappa_exact(kernel, o.budget);
  const BoundReport report = assemble_report(spec, kernel, s, kappa);
  emit(o, out, [&](std::ostream& os) {
    if (o.format == "csv") {
      os << bound_report_csv_header() << '\n' << bound_report_csv_row(report) << '\n';
    } else {
      JsonWriter json(os);
      write_json(json, report);
      json.finish();
    }
  });
  return report.all_pass() ? kExitPass : kExitFailure;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const ModelSpec spec = model_of(o);
  const VerifyReport report = run_verify(spec, o.budget);
  emit(o, out, [&](std::ostream& os) {
    if (o.format == "csv") {
      os << "check,verdict,value,relation,limit\n";
      for (const auto& c : report.checks)
        os << c.name << ',' << to_string(c.verdict) << ',' << format_double(c.value) << ','
           << c.relation << ',' << format_double(c.limit) << '\n';
      return;
    }
    JsonWriter json(os);
    json.begin_object();
    json.key("model").begin_object();
    json.field("n", static_cast<std::uint64_t>(spec.sites()));
    json.field("colors", spec.colors());
    json.field("temperature", spec.temperature());
    json.end_object();
    json.key("checks").begin_array();
    for (const auto& c : report.checks) {
      json.begin_object();
      json.field("name", c.name);
      json.field("verdict", to_string(c.verdict));
      json.field("value", c.value);
      json.field("relation", c.relation);
      json.field("limit", c.limit);
      json.end_object();
    }
    json.end_array();
    json.key("kappa");
    write_json(json, report.kappa, spec);
    json.field("all_pass", report.all_pass());
    json.end_object();
    json.finish();
  });
  return report.all_pass() ? kExitPass : kExitFailure;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  SweepConfig config;
  try {
    config.ns = parse_index_list(o.n_list);
    for (auto c : parse_index_list(o.colors_list)) config.colors.push_back(static_cast<Color>(c));
    config.temperatures = parse_real_list(o.temp_list);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.budget = o.budget;
  config.seed = o.seed;
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  emit(o, out, [&](std::ostream& os) {
    if (o.format == "csv") {
      os << "n,colors,temperature,potts,ingrassia_beta1,theta,crossover_n,improves,beta1,"
            "beta_star,status\n";
      for (const auto& r : rows)
        os << r.n << ',' << r.colors << ',' << format_double(r.temperature) << ','
           << format_double(r.potts) << ',' << format_double(r.ingrassia_beta1) << ','
           << format_double(r.theta) << ',' << format_double(r.crossover_n) << ','
           << (r.improves ? "true" : "false") << ',' << opt(r.beta1) << ',' << opt(r.beta_star)
           << ',' << (r.skipped_exact ? "skipped-exact" : "exact") << '\n';
      return;
    }
    JsonWriter json(os);
    json.begin_object();
    json.field("seed", config.seed);
    json.key("rows").begin_array();
    for (const auto& r : rows) {
      json.begin_object();
      json.field("n", static_cast<std::uint64_t>(r.n));
      json.field("colors", r.colors);
      json.field("temperature", r.temperature);
      json.field("potts", r.potts);
      json.field("ingrassia_beta1", r.ingrassia_beta1);
      json.field("theta", r.theta);
      json.field("crossover_n", r.crossover_n);
      json.field("improves", r.improves);
      json.field("beta1", r.beta1);
      json.field("beta_star", r.beta_star);
      json.field("status", r.skipped_exact ? "skipped-exact" : "exact");
      json.end_object();
    }
    json.end_array();
    json.end_object();
    json.finish();
  });
  return kExitPass;
}

Rank parse_start(const ModelSpec& spec, const GibbsMeasure& pi, const std::string& text) {
  if (text.empty()) {
    const auto lowest = std::min_element(pi.weights.begin(), pi.weights.end());
    return static_cast<Rank>(lowest - pi.weights.begin());
  }
  try {
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
      const Rank r = std::stoull(text);
      if (r >= pi.size()) throw std::invalid_argument("start rank out of range");
      return r;
    }
    return Configuration::from_letters(spec, text).rank();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--start: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(std::string("--start: ") + e.what());
  }
}

int cmd_tv(const Options& o, std::ostream& out) {
  const ModelSpec spec = model_of(o);
  const SparseKernel kernel = build_kernel(spec, o.budget);
  const Spectrum s = spectrum(kernel, o.budget);
  const Rank start = parse_start(spec, kernel.pi(), o.start);
  const TvCurve curve = tv_curve(kernel, s.beta_star, start, o.k_max, {o.replicas, o.seed});
  emit(o, out, [&](std::ostream& os) {
    if (o.format == "csv") {
      write_csv(os, curve);
    } else {
      JsonWriter json(os);
      write_json(json, curve, spec);
      json.finish();
    }
  });
  return curve.within_envelope() ? kExitPass : kExitFailure;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const ModelSpec spec = model_of(o);
  const Spectrum s = spectrum(build_kernel(spec, o.budget), o.budget);
  emit(o, out, [&](std::ostream& os) {
    JsonWriter json(os);
    write_json(json, s);
    json.finish();
  });
  return kExitPass;
}

int cmd_kappa(const Options& o, std::ostream& out) {
  const ModelSpec spec = model_of(o);
  const KappaResult k = kappa_exact(build_kernel(spec, o.budget), o.budget);
  emit(o, out, [&](std::ostream& os) {
    JsonWriter json(os);
    write_json(json, k, spec);
    json.finish();
  });
  return k.kappa <= kappa_closed_form(spec) ? kExitPass : kExitFailure;
}

int cmd_kernel(const Options& o, std::ostream& out) {
  const SparseKernel kernel = build_kernel(model_of(o), o.budget);
  emit(o, out, [&](std::ostream& os) { write_coordinate_format(kernel, os); });
  return kExitPass;
}

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "lattice length n")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--colors", o.colors, "number of colors N")
      ->check(CLI::Range(Color{2}, Color{65535}))
      ->capture_default_str();
  cmd->add_option("--temp", o.temperature, "temperature T")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_output_options(CLI::App* cmd, Options& o, bool with_csv) {
  auto* fmt = cmd->add_option("--format", o.format, "output format")->capture_default_str();
  fmt->check(with_csv ? CLI::IsMember({"json", "csv"}) : CLI::IsMember({"json"}));
  cmd->add_option("--out", o.out_path, "write output to this file instead of stdout");
}

void add_budget_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--budget-states", o.budget.exact_states,
                  "max states for exact kernel/measure/propagation")
      ->capture_default_str();
  cmd->add_option("--budget-kappa", o.budget.kappa_states, "max states for brute-force kappa")
      ->capture_default_str();
  cmd->add_option("--budget-dense", o.budget.dense_states, "max states for the dense eigensolve")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact spectra, canonical-path bounds and convergence envelopes for the "
               "random-scan Gibbs sampler of the 1-D N-color Ising model"};
  app.name("spectral-gibbs");
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds against the exact spectrum");
  auto* verify = app.add_subcommand("verify", "full numeric verification suite for one model");
  auto* sweep = app.add_subcommand("sweep", "bound table over lists of n, N and T");
  auto* tv = app.add_subcommand("tv", "exact total-variation curve against its envelope");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "full spectrum as JSON");
  auto* kappa_cmd = app.add_subcommand("kappa", "brute-force Poincare constant as JSON");
  auto* kernel_cmd = app.add_subcommand("kernel", "transition matrix in coordinate format");

  for (auto* cmd : {bounds, verify, tv, spectrum_cmd, kappa_cmd, kernel_cmd}) {
    add_model_options(cmd, o);
    add_budget_options(cmd, o);
  }
  add_output_options(bounds, o, true);
  add_output_options(verify, o, true);
  add_output_options(tv, o, true);
  add_output_options(spectrum_cmd, o, false);
  add_output_options(kappa_cmd, o, false);
  kernel_cmd->add_option("--out", o.out_path, "write output to this file instead of stdout");

  sweep->add_option("--n", o.n_list, "lattice lengths, e.g. 1..10 or 2,4,6")->required();
  sweep->add_option("--colors", o.colors_list, "color counts, e.g. 2..4")->capture_default_str();
  sweep->add_option("--temp", o.temp_list, "temperatures, e.g. 0.2,0.5,1")->capture_default_str();
  sweep->add_option("--seed", o.seed, "recorded in the output")->capture_default_str();
  add_budget_options(sweep, o);
  add_output_options(sweep, o, true);

  tv->add_option("--kmax", o.k_max, "largest step count")->capture_default_str();
  tv->add_option("--start", o.start, "start state as a rank or letters (e.g. aab); "
                                      "defaults to the least likely state");
  tv->add_option("--seed", o.seed, "seed of the Monte Carlo arm")->capture_default_str();
  tv->add_option("--replicas", o.replicas, "Monte Carlo replicas (0 disables the arm)")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*bounds) return cmd_bounds(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*tv) return cmd_tv(o, out);
    if (*spectrum_cmd) return cmd_spectrum(o, out);
    if (*kappa_cmd) return cmd_kappa(o, out);
    if (*kernel_cmd) return cmd_kernel(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace spectral_gibbs

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Usage: acceptance <path-to-cli-binary>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_gibbs/bounds.hpp"
#include "spectral_gibbs/chain.hpp"
#include "spectral_gibbs/paths.hpp"
#include "spectral_gibbs/spectral.hpp"

using namespace spectral_gibbs;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Criterion> results;

void report(int id, bool pass, const std::string& detail) {
  results.push_back({id, pass, detail});
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail
            << std::endl;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct GridCase {
  ModelSpec spec;
  std::unique_ptr<SparseKernel> kernel;
  Spectrum spectrum;
  std::optional<KappaResult> kappa;
  std::string label() const {
    std::ostringstream os;
    os << "n=" << spec.sites() << " N=" << spec.colors() << " T=" << spec.temperature();
    return os.str();
  }
};

// G = {n=1..6} x {N=2,3,4} x {T=0.5,1,2,5}, restricted to N^n <= 4096.
std::vector<ModelSpec> grid() {
  std::vector<ModelSpec> specs;
  for (std::size_t n = 1; n <= 6; ++n)
    for (Color colors : {2u, 3u, 4u})
      for (double t : {0.5, 1.0, 2.0, 5.0}) {
        ModelSpec spec(n, colors, t);
        if (*spec.state_count() <= 4096) specs.push_back(spec);
      }
  return specs;
}

void criterion1(std::vector<GridCase>& cases) {
  const auto start = Clock::now();
  std::size_t failures = 0;
  double worst_row = 0, worst_db = 0, worst_stat = 0;
  for (auto& c : cases) {
    c.kernel = std::make_unique<SparseKernel>(build_kernel(c.spec));
    const double row = max_row_sum_error(*c.kernel);
    const double db = check_detailed_balance(*c.kernel);
    const double stat = check_stationarity(*c.kernel);
    worst_row = std::max(worst_row, row);
    worst_db = std::max(worst_db, db);
    worst_stat = std::max(worst_stat, stat);
    if (!(row <= 1e-12 && db <= 1e-12 && stat <= 1e-12 && is_irreducible(*c.kernel))) {
      ++failures;
      std::cout << "  kernel validity failed for " << c.label() << '\n';
    }
  }
  const double elapsed = seconds_since(start);
  report(1, failures == 0 && elapsed < 60.0,
         std::to_string(cases.size()) + " specs, max row-sum error " + fmt(worst_row) +
             ", max asymmetry " + fmt(worst_db) + ", max stationarity residual " +
             fmt(worst_stat) + ", " + fmt(elapsed) + " s");
}

void criterion2(const std::vector<GridCase>& cases) {
  std::size_t checked = 0, failures = 0, thm2 = 0;
  double min_margin = INFINITY;
  for (const auto& c : cases) {
    const std::size_t n = c.spec.sites();
    if (n < 2) continue;
    const double bound = potts_bound(n, c.spec.colors(), c.spec.temperature());
    ++checked;
    min_margin = std::min(min_margin, bound - c.spectrum.beta1);
    if (!(c.spectrum.beta1 < bound)) {
      ++failures;
      std::cout << "  Potts bound violated for " << c.label() << '\n';
    }
    if (c.spec.colors() == 3) {
      ++thm2;
      if (!(c.spectrum.beta1 < three_color_bound(n, c.spec.temperature()))) {
        ++failures;
        std::cout << "  three-color bound violated for " << c.label() << '\n';
      }
    }
  }
  report(2, failures == 0,
         std::to_string(checked) + " specs (" + std::to_string(thm2) +
             " three-color), min margin " + fmt(min_margin));
}

void criterion3(const std::vector<GridCase>& cases) {
  std::size_t failures = 0;
  double min_margin = INFINITY;
  for (const auto& c : cases) {
    const double bound = ingrassia_lambda_min_bound(c.spec.colors(), c.spec.temperature());
    min_margin = std::min(min_margin, c.spectrum.beta_min - bound);
    if (!(c.spectrum.beta_min >= bound)) {
      ++failures;
      std::cout << "  smallest-eigenvalue bound violated for " << c.label() << '\n';
    }
  }
  report(3, failures == 0,
         std::to_string(cases.size()) + " specs, min margin " + fmt(min_margin));
}

void criterion4(const std::vector<GridCase>& cases) {
  std::size_t checked = 0, failures = 0;
  for (const auto& c : cases) {
    if (!absolute_value_gate(c.spec.sites(), c.spec.colors())) continue;
    ++checked;
    const double bound = potts_bound(c.spec.sites(), c.spec.colors(), c.spec.temperature());
    if (!(c.spectrum.beta_star < bound)) {
      ++failures;
      std::cout << "  absolute-value bound violated for " << c.label() << '\n';
    }
  }
  report(4, failures == 0 && checked > 0, std::to_string(checked) + " gated specs");
}

void criterion5(std::vector<GridCase>& cases) {
  std::size_t failures = 0;
  double slowest = 0, min_closed_slack = INFINITY;
  for (auto& c : cases) {
    const auto start = Clock::now();
    c.kappa = kappa_exact(*c.kernel);
    slowest = std::max(slowest, seconds_since(start));
    const double k = c.kappa->kappa;
    const double closed = kappa_closed_form(c.spec);
    min_closed_slack = std::min(min_closed_slack, closed - k);
    const bool geometric = 1.0 - 1.0 / k >= c.spectrum.beta1 - kKappaGeometricTolerance;
    if (!(geometric && k <= closed)) {
      ++failures;
      std::cout << "  kappa soundness failed for " << c.label() << " kappa=" << fmt(k)
                << " closed=" << fmt(closed) << " beta1=" << fmt(c.spectrum.beta1) << '\n';
    }
  }
  report(5, failures == 0 && slowest <= 600.0,
         std::to_string(cases.size()) + " specs, min closed-form slack " +
             fmt(min_closed_slack) + ", slowest kappa " + fmt(slowest) + " s");
}

void criterion6(const std::vector<GridCase>& cases) {
  std::size_t failures = 0, slices = 0, edges = 0, worst_checks = 0;
  double worst_residual = 0;
  for (const auto& c : cases) {
    const Color colors = c.spec.colors();
    for (Site i = 0; i < c.spec.sites(); ++i)
      for (Color a = 0; a < colors; ++a)
        for (Color b = 0; b < colors; ++b) {
          if (a == b) continue;
          const auto r = verify_slice_identities(*c.kernel, i, a, b);
          if (!r.a_applicable && !r.b_applicable) continue;
          ++slices;
          worst_residual = std::max(worst_residual, r.max_residual());
          if (r.max_residual() > 1e-12) {
            ++failures;
            std::cout << "  slice identity residual " << fmt(r.max_residual()) << " at "
                      << c.label() << " site " << i + 1 << '\n';
          }
        }
    for (const auto& load : c.kappa->loads) {
      ++edges;
      if (!per_edge_certificate(c.spec, load).pass) {
        ++failures;
        std::cout << "  per-edge certificate failed at " << c.label() << '\n';
      }
    }
    if (c.spec.sites() >= 3 && colors >= 3) {
      ++worst_checks;
      const auto worst = worst_local_factors(c.spec);
      const double expected = colors - 1.0 + std::exp(4.0 / c.spec.temperature());
      bool ok = std::abs(worst.max_sum - expected) <= 1e-12 * expected &&
                !worst.maximizers.empty();
      for (const auto& g : worst.maximizers)
        ok = ok && g.left == g.right && *g.left != g.color_from && *g.left != g.color_to;
      if (!ok) {
        ++failures;
        std::cout << "  worst local factor pattern mismatch at " << c.label() << '\n';
      }
    }
  }
  report(6, failures == 0,
         std::to_string(slices) + " slice checks (max residual " + fmt(worst_residual) + "), " +
             std::to_string(edges) + " edge certificates, " + std::to_string(worst_checks) +
             " worst-pattern checks");
}

void criterion7(const std::vector<GridCase>& cases) {
  const std::size_t k_max = 200;
  std::size_t failures = 0, curves = 0;
  double min_margin = INFINITY;
  for (const auto& c : cases) {
    if (c.kernel->dimension() > 1024) continue;
    const auto& pi = c.kernel->pi().weights;
    const std::size_t dim = pi.size();
    std::vector<double> mu(dim), next(dim);
    for (Rank x = 0; x < dim; ++x) {
      ++curves;
      std::fill(mu.begin(), mu.end(), 0.0);
      mu[x] = 1.0;
      for (std::size_t k = 0; k <= k_max; ++k) {
        if (k > 0) {
          step_distribution(*c.kernel, mu, next);
          mu.swap(next);
        }
        const double tv = tv_distance(mu, pi);
        const double env = ds_tv_envelope(pi[x], c.spectrum.beta_star, k);
        min_margin = std::min(min_margin, env - tv);
        if (tv > env + 1e-12) {
          ++failures;
          std::cout << "  envelope exceeded at " << c.label() << " start " << x << " k " << k
                    << '\n';
          break;
        }
      }
    }
  }
  report(7, failures == 0,
         std::to_string(curves) + " start states, k <= 200, min margin " + fmt(min_margin));
}

void criterion8() {
  std::size_t checked = 0, failures = 0, improvements = 0, indistinct = 0;
  for (Color colors : {2u, 3u, 4u})
    for (double t : {0.1, 0.2, 0.5, 1.0}) {
      const double cross = crossover_n(colors, t);
      const auto n_max = static_cast<std::size_t>(std::max(60.0, 2.0 * cross + 10.0));
      for (std::size_t n = 1; n <= n_max; ++n) {
        ++checked;
        const double th = theta(n, colors, t);
        const bool above = static_cast<double>(n) > cross;
        if (above ? !(th < 1.0) : !(th >= 1.0)) {
          ++failures;
          std::cout << "  theta " << fmt(th) << " on the wrong side at N=" << colors
                    << " T=" << t << " n=" << n << " crossover " << fmt(cross) << '\n';
        }
        if (th < 1.0) {
          ++improvements;
          // bound = 1 - gap for both; comparing gaps avoids rounding both to 1.
          const double b3 = potts_bound(n, colors, t);
          const double bi = ingrassia_beta1_bound(n, colors, t);
          if (b3 == bi) ++indistinct;
          if (!(potts_gap(n, colors, t) > ingrassia_beta1_gap(n, colors, t)) || b3 > bi) {
            ++failures;
            std::cout << "  no improvement at N=" << colors << " T=" << t << " n=" << n << '\n';
          }
        }
      }
    }
  report(8, failures == 0 && improvements > 0,
         std::to_string(checked) + " (N, T, n) points, " + std::to_string(improvements) +
             " improvement points (" + std::to_string(indistinct) +
             " where both bounds round to the same double; compared by gap)");
}

void criterion9() {
  bool ok = true;
  std::ostringstream detail;

  {
    const ModelSpec spec(1, 3, 1.0);
    const auto kernel = build_kernel(spec);
    const auto s = spectrum(kernel);
    const double kappa = kappa_exact(kernel).kappa;
    const bool part = std::abs(kappa - 1.0) <= 1e-12 && std::abs(s.beta1) <= 1e-12 &&
                      std::abs(s.beta1 - (1.0 - 1.0 / kappa)) <= 1e-12;
    ok = ok && part;
    detail << "n=1 N=3: kappa=" << fmt(kappa) << " beta1=" << fmt(s.beta1)
           << (part ? " (ok)" : " (mismatch)");
  }

  {
    const ModelSpec spec(2, 2, 1.0);
    const auto s = spectrum(build_kernel(spec));
    const double e = std::exp(1.0);
    const double p = e / (e + 1.0 / e);
    const double q = 1.0 - p;
    const std::array<double, 4> literal{1.0, p, p - q, q};
    const std::array<double, 4> closed{1.0, p, q, 0.0};
    double dev_literal = 0, dev_closed = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      dev_literal = std::max(dev_literal, std::abs(s.eigenvalues[i] - literal[i]));
      dev_closed = std::max(dev_closed, std::abs(s.eigenvalues[i] - closed[i]));
    }
    const bool part = dev_literal <= 1e-12;
    ok = ok && part;
    detail << "; n=2 N=2 T=1 spectrum {" << fmt(s.eigenvalues[0]) << ", "
           << fmt(s.eigenvalues[1]) << ", " << fmt(s.eigenvalues[2]) << ", "
           << fmt(s.eigenvalues[3]) << "} vs {1, p, p-q, q}: max dev " << fmt(dev_literal)
           << (part ? " (ok)" : " (mismatch)") << "; vs {1, p, q, 0}: max dev "
           << fmt(dev_closed);
  }
  report(9, ok, detail.str());
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf;
  for (std::size_t got; (got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;)
    out.append(buf.data(), got);
  const int status = pclose(pipe);
  out += "\n<exit " + std::to_string(status) + ">";
  return out;
}

void criterion10(const std::string& cli) {
  const std::vector<std::string> commands{
      "bounds --n 3 --colors 3 --temp 1.0",
      "bounds --n 4 --colors 2 --temp 0.5 --format csv",
      "verify --n 3 --colors 3 --temp 1",
      "verify --n 2 --colors 4 --temp 2 --format csv",
      "sweep --n 1..8 --colors 2..4 --temp 0.2,0.5,1 --seed 11",
      "sweep --n 1..8 --colors 2,3 --temp 0.5 --format csv --budget-dense 300",
      "tv --n 3 --colors 2 --temp 1 --kmax 50 --seed 7 --replicas 2000",
      "tv --n 2 --colors 3 --temp 0.5 --kmax 30 --start ab --seed 3 --replicas 500 --format csv",
      "spectrum --n 3 --colors 3 --temp 0.7",
      "kappa --n 4 --colors 3 --temp 1",
      "kernel --n 2 --colors 3 --temp 1",
  };
  std::size_t mismatches = 0;
  for (const auto& cmd : commands) {
    const std::string a = capture("SPECTRAL_GIBBS_THREADS=1 " + cli + " " + cmd + " 2>&1");
    const std::string b = capture("SPECTRAL_GIBBS_THREADS=4 " + cli + " " + cmd + " 2>&1");
    const std::string c = capture("SPECTRAL_GIBBS_THREADS=1 " + cli + " " + cmd + " 2>&1");
    if (a != b || a != c || a.size() < 20) {
      ++mismatches;
      std::cout << "  output differs between runs: " << cmd << '\n';
    }
  }
  report(10, mismatches == 0,
         std::to_string(commands.size()) + " commands, 3 runs each across worker counts");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <cli-binary>\n";
    return 2;
  }
  const auto start = Clock::now();

  std::vector<GridCase> cases;
  for (const auto& spec : grid()) cases.push_back(GridCase{spec, nullptr, {}, std::nullopt});

  criterion1(cases);
  for (auto& c : cases) c.spectrum = spectrum(*c.kernel);
  criterion2(cases);
  criterion3(cases);
  criterion4(cases);
  criterion5(cases);
  criterion6(cases);
  criterion7(cases);
  criterion8();
  criterion9();
  criterion10(argv[1]);

  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass;
  std::cout << passed << "/" << results.size() << " criteria pass (" << fmt(seconds_since(start))
            << " s)" << std::endl;
  return passed == results.size() ? 0 : 1;
}

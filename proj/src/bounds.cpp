#include "spectral_gibbs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spectral_gibbs {

double three_color_bound(std::size_t n, double temperature) {
  const double e4 = std::exp(-4.0 / temperature);
  const double nn = static_cast<double>(n);
  return 1.0 - 3.0 / (nn * nn) * e4 / (1.0 + 2.0 * e4);
}

double potts_gap(std::size_t n, Color colors, double temperature) {
  const double e4 = std::exp(-4.0 / temperature);
  const double nn = static_cast<double>(n);
  return colors / (nn * nn) * e4 / (1.0 + (colors - 1.0) * e4);
}

double potts_bound(std::size_t n, Color colors, double temperature) {
  return 1.0 - potts_gap(n, colors, temperature);
}

double ingrassia_lambda_min_bound(Color colors, double temperature) {
  return -1.0 + 2.0 / (1.0 + (colors - 1.0) * std::exp(2.0 / temperature));
}

bool absolute_value_gate(std::size_t n, Color colors) {
  // n > N / sqrt(2)  <=>  2 n^2 > N^2 for positive integers.
  const auto nn = static_cast<unsigned long long>(n);
  return 2ULL * nn * nn > static_cast<unsigned long long>(colors) * colors;
}

IngrassiaParams IngrassiaParams::for_model(std::size_t n, Color colors, double temperature) {
  IngrassiaParams p;
  const double nn = static_cast<double>(n);
  p.c = colors;
  p.delta = 2.0;
  p.m = 2.0;
  p.b_gamma = std::pow(static_cast<double>(colors), nn - 1.0);
  p.gamma_gamma = nn;
  p.lattice_size = nn;
  p.z_upper = colors * std::pow(1.0 + (colors - 1.0) * std::exp(-0.5 / temperature), nn - 1.0);
  return p;
}

double ingrassia_beta1_assembled(const IngrassiaParams& p, double temperature) {
  return 1.0 - p.z_upper / (p.b_gamma * p.gamma_gamma * p.c * p.lattice_size) *
                   std::exp(-p.m / temperature);
}

double ingrassia_beta1_gap(std::size_t n, Color colors, double temperature) {
  const double nn = static_cast<double>(n);
  const double ratio = (1.0 + (colors - 1.0) * std::exp(-0.5 / temperature)) / colors;
  return std::pow(ratio, nn - 1.0) * std::exp(-2.0 / temperature) / (nn * nn);
}

double ingrassia_beta1_bound(std::size_t n, Color colors, double temperature) {
  return 1.0 - ingrassia_beta1_gap(n, colors, temperature);
}

double theta(std::size_t n, Color colors, double temperature) {
  const double lead =
      (std::exp(2.0 / temperature) + (colors - 1.0) * std::exp(-2.0 / temperature)) / colors;
  const double ratio = (1.0 + (colors - 1.0) * std::exp(-0.5 / temperature)) / colors;
  return lead * std::pow(ratio, static_cast<double>(n) - 1.0);
}

double crossover_n(Color colors, double temperature) {
  const double lead =
      (std::exp(2.0 / temperature) + (colors - 1.0) * std::exp(-2.0 / temperature)) / colors;
  const double denom = std::log(colors / (1.0 + (colors - 1.0) * std::exp(-0.5 / temperature)));
  return std::log(lead) / denom + 1.0;
}

bool improves_on_ingrassia(std::size_t n, Color colors, double temperature) {
  return potts_gap(n, colors, temperature) > ingrassia_beta1_gap(n, colors, temperature);
}

double ds_tv_envelope(double pi_x, double beta_star, std::size_t k) {
  if (!(pi_x > 0.0 && pi_x < 1.0)) throw std::invalid_argument("pi(x) must lie in (0, 1)");
  if (!(beta_star >= 0.0 && beta_star < 1.0))
    throw std::invalid_argument("beta* must lie in [0, 1)");
  const double rate = k == 0 ? 1.0 : std::pow(beta_star, static_cast<double>(k));
  return 0.5 * std::sqrt((1.0 - pi_x) / pi_x) * rate;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

double EnvelopeSpec::operator()(std::size_t k) const { return ds_tv_envelope(pi_start, rate, k); }

bool BoundReport::all_pass() const noexcept {
  for (Verdict v : {verdicts.three_color, verdicts.potts, verdicts.lambda_min, verdicts.absolute_value,
                    verdicts.ingrassia_beta1, verdicts.kappa_geometric, verdicts.kappa_closed_form})
    if (v == Verdict::fail) return false;
  return true;
}

namespace {

Verdict verdict(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

}  // namespace

BoundReport assemble_report(const ModelSpec& spec, const SparseKernel& kernel,
                            const Spectrum& spectrum, const std::optional<KappaResult>& kappa) {
  if (!(kernel.spec() == spec)) throw std::invalid_argument("kernel was built for another model");
  if (spectrum.eigenvalues.size() != kernel.dimension())
    throw std::invalid_argument("spectrum size does not match the kernel dimension");
  if (kappa && kappa->loads.size() != kernel.edge_count())
    throw std::invalid_argument("kappa result does not match the kernel");

  const std::size_t n = spec.sites();
  const Color colors = spec.colors();
  const double t = spec.temperature();

  BoundReport r;
  r.n = n;
  r.colors = colors;
  r.temperature = t;
  if (colors == 3) r.three_color = three_color_bound(n, t);
  r.potts = potts_bound(n, colors, t);
  r.ingrassia_beta1 = ingrassia_beta1_bound(n, colors, t);
  r.ingrassia_lambda_min = ingrassia_lambda_min_bound(colors, t);
  r.theta = spectral_gibbs::theta(n, colors, t);
  r.crossover_n = spectral_gibbs::crossover_n(colors, t);
  r.absolute_value_gate = spectral_gibbs::absolute_value_gate(n, colors);
  r.ingrassia = IngrassiaParams::for_model(n, colors, t);
  r.log_z_exact = kernel.pi().log_z;
  r.log_z_upper = std::log(r.ingrassia.z_upper);
  r.kappa_closed_form = spectral_gibbs::kappa_closed_form(spec);

  r.exact = {spectrum.beta1, spectrum.beta_min, spectrum.beta_star};

  const auto& w = kernel.pi().weights;
  const auto lowest = std::min_element(w.begin(), w.end());
  r.envelope.start = static_cast<Rank>(lowest - w.begin());
  r.envelope.pi_start = *lowest;
  r.envelope.rate = spectrum.beta_star;
  r.envelope.prefactor = 0.5 * std::sqrt((1.0 - *lowest) / *lowest);

  auto& v = r.verdicts;
  if (r.three_color) v.three_color = verdict(spectrum.beta1 < *r.three_color);
  v.potts = verdict(spectrum.beta1 < r.potts);
  v.lambda_min = verdict(spectrum.beta_min >= r.ingrassia_lambda_min);
  if (r.absolute_value_gate) v.absolute_value = verdict(spectrum.beta_star < r.potts);
  v.ingrassia_beta1 = verdict(spectrum.beta1 <= r.ingrassia_beta1);
  if (kappa) {
    r.kappa_exact = kappa->kappa;
    v.kappa_geometric =
        verdict(spectrum.beta1 <= 1.0 - 1.0 / kappa->kappa + kKappaGeometricTolerance);
    v.kappa_closed_form = verdict(kappa->kappa <= r.kappa_closed_form);
  }
  return r;
}

}  // namespace spectral_gibbs

#pragma once

// Closed-form eigenvalue bounds for the Gibbs sampler and their comparison
// against exact spectral data.

#include <optional>
#include <string_view>

#include "spectral_gibbs/paths.hpp"
#include "spectral_gibbs/spectral.hpp"

namespace spectral_gibbs {

/// beta_1 < 1 - 3 n^-2 e^{-4/T} / (1 + 2 e^{-4/T}); the three-color case.
double three_color_bound(std::size_t n, double temperature);

/// beta_1 < 1 - N n^-2 e^{-4/T} / (1 + (N-1) e^{-4/T}) = 1 - 1/kappa_closed_form.
double potts_bound(std::size_t n, Color colors, double temperature);
/// The gap term N n^-2 e^{-4/T} / (1 + (N-1) e^{-4/T}), i.e. 1 - potts_bound.
double potts_gap(std::size_t n, Color colors, double temperature);

/// beta_min >= -1 + 2 / (1 + (C-1) e^{Delta/T}) with C = N, Delta = 2.
double ingrassia_lambda_min_bound(Color colors, double temperature);

/// n > N / sqrt(2): the Potts bound then also dominates |beta_min|.
bool absolute_value_gate(std::size_t n, Color colors);

/// Path-ensemble and landscape constants of the comparison bound
/// beta_1 <= 1 - Z_T / (b_Gamma gamma_Gamma C |S|) e^{-m/T}.
struct IngrassiaParams {
  double c = 0.0;             // configurations differing in one site (= N)
  double delta = 0.0;         // = 2
  double m = 0.0;             // least total elevation gain (= 2)
  double b_gamma = 0.0;       // max paths per edge (= N^{n-1})
  double gamma_gamma = 0.0;   // max path length (= n)
  double lattice_size = 0.0;  // |S| = n
  double z_upper = 0.0;       // N (1 + (N-1) e^{-1/(2T)})^{n-1}

  static IngrassiaParams for_model(std::size_t n, Color colors, double temperature);
};

/// 1 - z_upper / (b_gamma gamma_gamma c lattice_size) e^{-m/T}, from raw parameters.
double ingrassia_beta1_assembled(const IngrassiaParams& params, double temperature);
/// 1 - n^-2 ((1 + (N-1) e^{-1/(2T)}) / N)^{n-1} e^{-2/T}.
double ingrassia_beta1_bound(std::size_t n, Color colors, double temperature);
double ingrassia_beta1_gap(std::size_t n, Color colors, double temperature);

/// Ratio of the comparison gap to the Potts gap:
/// ((e^{2/T} + (N-1) e^{-2/T}) / N) ((1 + (N-1) e^{-1/(2T)}) / N)^{n-1}.
double theta(std::size_t n, Color colors, double temperature);

/// Real threshold n* above which theta < 1.
double crossover_n(Color colors, double temperature);

/// True when the Potts gap strictly exceeds the comparison gap. Compares
/// the gap terms directly: both bounds round to 1.0 in double precision
/// long before the gaps underflow.
bool improves_on_ingrassia(std::size_t n, Color colors, double temperature);

/// Total-variation envelope (1/2) sqrt((1 - pi_x) / pi_x) beta_star^k.
///
/// The convergence theorem is stated as
///   (sum_y |P^k(x,y) - pi(y)|)^2 <= ((1 - pi_x) / pi_x) beta_star^{2k},
/// i.e. for four times the squared variation distance with the variation
/// distance taken as half the L1 norm. Taking square roots and halving gives
/// the form returned here, directly comparable with tv_distance().
/// Throws std::invalid_argument unless 0 < pi_x < 1 and 0 <= beta_star < 1.
double ds_tv_envelope(double pi_x, double beta_star, std::size_t k);

enum class Verdict { pass, fail, not_applicable };
std::string_view to_string(Verdict v);

struct ExactSpectral {
  double beta1 = 0.0;
  double beta_min = 0.0;
  double beta_star = 0.0;
};

/// Envelope for the least likely start state (lowest rank among ties).
struct EnvelopeSpec {
  Rank start = 0;
  double pi_start = 0.0;
  double prefactor = 0.0;  // (1/2) sqrt((1 - pi) / pi)
  double rate = 0.0;       // beta_star
  double operator()(std::size_t k) const;
};

struct BoundVerdicts {
  Verdict three_color = Verdict::not_applicable;         // beta1 < thm2 (N = 3)
  Verdict potts = Verdict::not_applicable;         // beta1 < thm3
  Verdict lambda_min = Verdict::not_applicable;       // beta_min >= ingrassia
  Verdict absolute_value = Verdict::not_applicable;        // beta_star < thm3 when gated
  Verdict ingrassia_beta1 = Verdict::not_applicable;  // beta1 <= ingrassia
  Verdict kappa_geometric = Verdict::not_applicable;  // beta1 <= 1 - 1/kappa
  Verdict kappa_closed_form = Verdict::not_applicable;// kappa <= closed form
};

struct BoundReport {
  std::size_t n = 0;
  Color colors = 0;
  double temperature = 0.0;

  std::optional<double> three_color;
  double potts = 0.0;
  double ingrassia_beta1 = 0.0;
  double ingrassia_lambda_min = 0.0;
  double theta = 0.0;
  double crossover_n = 0.0;
  bool absolute_value_gate = false;
  IngrassiaParams ingrassia;
  double log_z_exact = 0.0;
  double log_z_upper = 0.0;

  double kappa_closed_form = 0.0;
  std::optional<double> kappa_exact;

  EnvelopeSpec envelope;
  ExactSpectral exact;
  BoundVerdicts verdicts;

  bool all_pass() const noexcept;
};

/// Tolerance on beta1 <= 1 - 1/kappa: the solver carries ~1e-10 error and the
/// inequality is attained with equality at n = 1.
inline constexpr double kKappaGeometricTolerance = 1e-10;

/// Bound verdicts use strict comparison without tolerance. Throws
/// std::invalid_argument when the inputs come from different models.
BoundReport assemble_report(const ModelSpec& spec, const SparseKernel& kernel,
                            const Spectrum& spectrum,
                            const std::optional<KappaResult>& kappa = std::nullopt);

}  // namespace spectral_gibbs

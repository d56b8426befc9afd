#pragma once

// Exact distribution propagation and seeded simulation of the Gibbs chain.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "spectral_gibbs/kernel.hpp"

namespace spectral_gibbs {

/// delta_start P^steps by repeated sparse vector-matrix products.
std::vector<double> propagate(const SparseKernel& kernel, Rank start, std::size_t steps);

/// out = in P.
void step_distribution(const SparseKernel& kernel, std::span<const double> in,
                       std::span<double> out);

/// Half the L1 distance. Throws std::invalid_argument on a length mismatch.
double tv_distance(std::span<const double> p, std::span<const double> q);

/// Random source for simulation: std::mt19937_64, whose output sequence is
/// fixed by the C++ standard. Uniforms are built from the top 53 bits, so
/// trajectories are identical on every conforming platform.
using Rng = std::mt19937_64;

/// Uniform on [0, 1) with 53 bits of resolution.
double uniform01(Rng& rng);

/// splitmix64 of (seed, stream): independent seeds for parallel replicas.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// One update: site = floor(u n), new color by inverse CDF over colors in
/// index order. Does not materialize the state space.
class GibbsSampler {
 public:
  explicit GibbsSampler(const ModelSpec& spec);

  const ModelSpec& spec() const noexcept { return spec_; }

  /// Updates `colors` in place and returns the site that was resampled.
  Site step(std::vector<Color>& colors, Rng& rng) const;

 private:
  ModelSpec spec_;
  ConditionalTable table_;
};

/// Called after each step with (step index starting at 1, site, state).
using StepObserver = std::function<void(std::size_t, Site, const std::vector<Color>&)>;

/// Runs `steps` updates from `start` and returns the final state.
Configuration simulate(const ModelSpec& spec, const Configuration& start, std::size_t steps,
                       std::uint64_t seed, const StepObserver& observer = {});

struct MonteCarloArm {
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
};

struct TvCurve {
  Rank start = 0;
  std::vector<std::size_t> ks;
  std::vector<double> exact_tv;
  std::vector<double> envelope;
  std::optional<std::vector<double>> mc_tv;  // estimate, biased upward
  std::uint64_t seed = 0;
  double beta_star = 0.0;
  double pi_start = 0.0;

  /// exact_tv[k] <= envelope[k] + tolerance for every k.
  bool within_envelope(double tolerance = 1e-12) const;
};

/// Exact arm for k = 0..k_max against the envelope built from `beta_star`;
/// the Monte Carlo arm runs when mc.replicas > 0.
TvCurve tv_curve(const SparseKernel& kernel, double beta_star, Rank start, std::size_t k_max,
                 const MonteCarloArm& mc = {});

}  // namespace spectral_gibbs

#include "spectral_gibbs/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spectral_gibbs/bounds.hpp"
#include "spectral_gibbs/compensated_sum.hpp"
#include "spectral_gibbs/parallel.hpp"

namespace spectral_gibbs {

void step_distribution(const SparseKernel& kernel, std::span<const double> in,
                       std::span<double> out) {
  if (in.size() != kernel.dimension() || out.size() != kernel.dimension())
    throw std::invalid_argument("distribution length does not match the kernel");
  std::fill(out.begin(), out.end(), 0.0);
  for (Rank u = 0; u < in.size(); ++u) {
    const double mass = in[u];
    if (mass == 0.0) continue;
    for (const auto& e : kernel.row(u)) out[e.target] += mass * e.probability;
  }
}

std::vector<double> propagate(const SparseKernel& kernel, Rank start, std::size_t steps) {
  if (start >= kernel.dimension()) throw std::invalid_argument("start rank out of range");
  std::vector<double> current(kernel.dimension(), 0.0), next(kernel.dimension());
  current[start] = 1.0;
  for (std::size_t k = 0; k < steps; ++k) {
    step_distribution(kernel, current, next);
    current.swap(next);
  }
  return current;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions differ in length");
  CompensatedSum total;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return 0.5 * total.value();
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GibbsSampler::GibbsSampler(const ModelSpec& spec) : spec_(spec), table_(spec) {}

Site GibbsSampler::step(std::vector<Color>& colors, Rng& rng) const {
  const std::size_t n = spec_.sites();
  const Site site = std::min(static_cast<Site>(uniform01(rng) * static_cast<double>(n)), n - 1);
  const auto cond = table_.at(colors, site);
  const double u = uniform01(rng);
  double cumulative = 0.0;
  Color chosen = spec_.colors() - 1;
  for (Color c = 0; c < spec_.colors(); ++c) {
    cumulative += cond[c];
    if (u < cumulative) {
      chosen = c;
      break;
    }
  }
  colors[site] = chosen;
  return site;
}

Configuration simulate(const ModelSpec& spec, const Configuration& start, std::size_t steps,
                       std::uint64_t seed, const StepObserver& observer) {
  if (start.size() != spec.sites())
    throw std::invalid_argument("configuration length does not match lattice length n");
  GibbsSampler sampler(spec);
  Rng rng(seed);
  std::vector<Color> colors = start.colors();
  for (std::size_t k = 1; k <= steps; ++k) {
    const Site site = sampler.step(colors, rng);
    if (observer) observer(k, site, colors);
  }
  return Configuration::from_colors(spec, std::move(colors));
}

bool TvCurve::within_envelope(double tolerance) const {
  for (std::size_t k = 0; k < exact_tv.size(); ++k)
    if (!(exact_tv[k] <= envelope[k] + tolerance)) return false;
  return true;
}

namespace {

// Empirical TV at every k in 0..k_max from `replicas` independent chains.
std::vector<double> monte_carlo_tv(const SparseKernel& kernel, Rank start, std::size_t k_max,
                                   const MonteCarloArm& mc) {
  const ModelSpec& spec = kernel.spec();
  const GibbsSampler sampler(spec);
  const std::size_t dim = kernel.dimension();
  constexpr std::size_t kBlocks = 16;
  const std::size_t blocks = std::min(kBlocks, mc.replicas);
  // counts[block][k * dim + rank]
  std::vector<std::vector<std::uint32_t>> counts(blocks);
  const auto start_colors = decode(spec, start);
  parallel_for(blocks, [&](std::size_t b) {
    auto& local = counts[b];
    local.assign((k_max + 1) * dim, 0);
    const std::size_t begin = mc.replicas * b / blocks;
    const std::size_t end = mc.replicas * (b + 1) / blocks;
    for (std::size_t rep = begin; rep < end; ++rep) {
      Rng rng(derive_seed(mc.seed, rep));
      auto colors = start_colors;
      Rank rank = start;
      ++local[rank];
      for (std::size_t k = 1; k <= k_max; ++k) {
        sampler.step(colors, rng);
        rank = encode(spec, colors);
        ++local[k * dim + rank];
      }
    }
  });
  std::vector<double> tv(k_max + 1);
  std::vector<double> empirical(dim);
  const auto& pi = kernel.pi().weights;
  for (std::size_t k = 0; k <= k_max; ++k) {
    for (std::size_t r = 0; r < dim; ++r) {
      std::uint64_t total = 0;
      for (const auto& block : counts) total += block[k * dim + r];
      empirical[r] = static_cast<double>(total) / static_cast<double>(mc.replicas);
    }
    tv[k] = tv_distance(empirical, pi);
  }
  return tv;
}

}  // namespace

TvCurve tv_curve(const SparseKernel& kernel, double beta_star, Rank start, std::size_t k_max,
                 const MonteCarloArm& mc) {
  if (start >= kernel.dimension()) throw std::invalid_argument("start rank out of range");
  const auto& pi = kernel.pi().weights;
  TvCurve curve;
  curve.start = start;
  curve.seed = mc.seed;
  curve.beta_star = beta_star;
  curve.pi_start = pi[start];
  curve.ks.resize(k_max + 1);
  curve.exact_tv.resize(k_max + 1);
  curve.envelope.resize(k_max + 1);

  std::vector<double> current(kernel.dimension(), 0.0), next(kernel.dimension());
  current[start] = 1.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (k > 0) {
      step_distribution(kernel, current, next);
      current.swap(next);
    }
    curve.ks[k] = k;
    curve.exact_tv[k] = tv_distance(current, pi);
    curve.envelope[k] = ds_tv_envelope(pi[start], beta_star, k);
  }
  if (mc.replicas > 0) curve.mc_tv = monte_carlo_tv(kernel, start, k_max, mc);
  return curve;
}

}  // namespace spectral_gibbs

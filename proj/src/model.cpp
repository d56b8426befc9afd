#include "spectral_gibbs/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spectral_gibbs/compensated_sum.hpp"
#include "spectral_gibbs/errors.hpp"

namespace spectral_gibbs {

ModelSpec::ModelSpec(std::size_t sites, Color colors, double temperature)
    : sites_(sites), colors_(colors), temperature_(temperature) {
  if (sites < 1) throw std::invalid_argument("lattice length n must be at least 1");
  if (colors < 2) throw std::invalid_argument("color count N must be at least 2");
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("temperature T must be finite and positive");
}

std::optional<std::uint64_t> ModelSpec::state_count() const noexcept {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < sites_; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / colors_) return std::nullopt;
    count *= colors_;
  }
  return count;
}

Rank ModelSpec::place_value(Site site) const {
  if (site >= sites_) throw std::invalid_argument("site index out of range");
  Rank value = 1;
  for (std::size_t i = site + 1; i < sites_; ++i) value *= colors_;
  return value;
}

std::uint64_t require_state_budget(const ModelSpec& spec, std::uint64_t limit,
                                   std::string_view what) {
  const auto count = spec.state_count();
  if (!count || *count > limit) {
    std::ostringstream msg;
    msg << "state space N^n = " << spec.colors() << "^" << spec.sites();
    if (count) msg << " = " << *count;
    msg << " exceeds the " << what << " budget of " << limit << " states";
    throw ResourceLimitError(msg.str());
  }
  return *count;
}

namespace {

void validate_colors(const ModelSpec& spec, std::span<const Color> colors) {
  if (colors.size() != spec.sites())
    throw std::invalid_argument("configuration length does not match lattice length n");
  for (Color c : colors)
    if (c >= spec.colors()) throw std::invalid_argument("color index must be below N");
}

}  // namespace

Rank encode(const ModelSpec& spec, std::span<const Color> colors) {
  validate_colors(spec, colors);
  if (!spec.state_count()) throw std::out_of_range("state space too large to rank");
  Rank rank = 0;
  for (Color c : colors) rank = rank * spec.colors() + c;
  return rank;
}

std::vector<Color> decode(const ModelSpec& spec, Rank rank) {
  const auto count = spec.state_count();
  if (count && rank >= *count) throw std::invalid_argument("rank out of range");
  std::vector<Color> colors(spec.sites());
  for (std::size_t i = spec.sites(); i-- > 0;) {
    colors[i] = static_cast<Color>(rank % spec.colors());
    rank /= spec.colors();
  }
  return colors;
}

Configuration Configuration::from_colors(const ModelSpec& spec, std::vector<Color> colors) {
  validate_colors(spec, colors);
  std::optional<Rank> rank;
  if (spec.state_count()) rank = encode(spec, colors);
  return Configuration(std::move(colors), rank);
}

Configuration Configuration::from_rank(const ModelSpec& spec, Rank rank) {
  if (!spec.state_count()) throw std::out_of_range("state space too large to rank");
  return Configuration(decode(spec, rank), rank);
}

Configuration Configuration::from_letters(const ModelSpec& spec, std::string_view letters) {
  std::vector<Color> colors;
  colors.reserve(letters.size());
  for (char ch : letters) {
    if (ch < 'a' || ch > 'z') throw std::invalid_argument("color letters must be in a..z");
    colors.push_back(static_cast<Color>(ch - 'a'));
  }
  return from_colors(spec, std::move(colors));
}

Rank Configuration::rank() const {
  if (!rank_) throw std::out_of_range("configuration has no rank: state space too large");
  return *rank_;
}

std::string Configuration::letters() const {
  std::string out;
  out.reserve(colors_.size());
  for (Color c : colors_)
    out.push_back(c < 26 ? static_cast<char>('a' + c) : '?');
  return out;
}

Configuration rank_roundtrip(const Configuration& x, const ModelSpec& spec) {
  return Configuration::from_rank(spec, encode(spec, x.colors()));
}

int energy(const ModelSpec& spec, std::span<const Color> colors) {
  if (colors.size() != spec.sites())
    throw std::invalid_argument("configuration length does not match lattice length n");
  int h = 0;
  for (std::size_t k = 0; k + 1 < colors.size(); ++k) h += bond_sign(colors[k], colors[k + 1]);
  return h;
}

GibbsMeasure stationary_measure(const ModelSpec& spec, const Budget& budget) {
  const auto count = require_state_budget(spec, budget.exact_states, "exact-mode");
  const double beta = 1.0 / spec.temperature();

  // H only takes values in {-(n-1), ..., n-1}; tabulate exp((H - Hmax)/T).
  const int h_max = static_cast<int>(spec.sites()) - 1;
  std::vector<int> energies(count);
  std::vector<Color> colors(spec.sites(), 0);
  for (Rank r = 0; r < count; ++r) {
    energies[r] = energy(spec, colors);
    for (std::size_t i = spec.sites(); i-- > 0;) {
      if (++colors[i] < spec.colors()) break;
      colors[i] = 0;
    }
  }
  std::vector<double> shifted(static_cast<std::size_t>(2 * h_max + 1));
  for (int h = -h_max; h <= h_max; ++h) shifted[h + h_max] = std::exp((h - h_max) * beta);

  CompensatedSum z;
  GibbsMeasure measure;
  measure.weights.resize(count);
  for (Rank r = 0; r < count; ++r) {
    measure.weights[r] = shifted[energies[r] + h_max];
    z += measure.weights[r];
  }
  const double z_shifted = z.value();
  for (double& w : measure.weights) w /= z_shifted;
  measure.log_z = h_max * beta + std::log(z_shifted);
  return measure;
}

std::vector<Color> permute_colors(std::span<const Color> colors, std::span<const Color> sigma) {
  std::vector<Color> out(colors.size());
  std::transform(colors.begin(), colors.end(), out.begin(), [&](Color c) { return sigma[c]; });
  return out;
}

}  // namespace spectral_gibbs

#pragma once

// State space, Hamiltonian and Gibbs distribution of the free-boundary
// nearest-neighbour N-color chain on n sites.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spectral_gibbs {

using Rank = std::uint64_t;
using Color = std::uint32_t;
using Site = std::size_t;

/// Limits on the number of states N^n an exact operation may enumerate.
struct Budget {
  std::uint64_t exact_states = 65536;  // kernel, measure, propagation
  std::uint64_t kappa_states = 4096;   // O(N^{2n} n) pair enumeration
  std::uint64_t dense_states = 4096;   // dense symmetric eigensolve
};

class ModelSpec {
 public:
  /// Throws std::invalid_argument unless sites >= 1, colors >= 2 and
  /// temperature is finite and positive.
  ModelSpec(std::size_t sites, Color colors, double temperature);

  std::size_t sites() const noexcept { return sites_; }
  Color colors() const noexcept { return colors_; }
  double temperature() const noexcept { return temperature_; }

  /// N^n, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> state_count() const noexcept;

  /// N^(n-1-site): the rank increment for raising the color at `site` by one.
  Rank place_value(Site site) const;

  bool operator==(const ModelSpec&) const = default;

 private:
  std::size_t sites_;
  Color colors_;
  double temperature_;
};

/// Throws ResourceLimitError if N^n exceeds `limit`; `what` names the budget.
std::uint64_t require_state_budget(const ModelSpec& spec, std::uint64_t limit,
                                   std::string_view what);

/// A point of the state space. Colors are 0-based (index j stands for
/// c^(j+1)); the rank is the big-endian base-N value with site 0 most
/// significant. The rank is absent when N^n overflows 64 bits.
class Configuration {
 public:
  static Configuration from_colors(const ModelSpec& spec, std::vector<Color> colors);
  static Configuration from_rank(const ModelSpec& spec, Rank rank);
  /// Letters a, b, c, ... for colors 0, 1, 2, ...
  static Configuration from_letters(const ModelSpec& spec, std::string_view letters);

  const std::vector<Color>& colors() const noexcept { return colors_; }
  Color operator[](Site site) const { return colors_[site]; }
  std::size_t size() const noexcept { return colors_.size(); }

  bool has_rank() const noexcept { return rank_.has_value(); }
  /// Throws std::out_of_range when the state space is too large to rank.
  Rank rank() const;

  std::string letters() const;

  bool operator==(const Configuration& other) const { return colors_ == other.colors_; }

 private:
  Configuration(std::vector<Color> colors, std::optional<Rank> rank)
      : colors_(std::move(colors)), rank_(rank) {}

  std::vector<Color> colors_;
  std::optional<Rank> rank_;
};

Rank encode(const ModelSpec& spec, std::span<const Color> colors);
std::vector<Color> decode(const ModelSpec& spec, Rank rank);

/// decode(encode(x)); validates colors against the model.
Configuration rank_roundtrip(const Configuration& x, const ModelSpec& spec);

/// H(x) = #agreeing bonds - #disagreeing bonds, in [-(n-1), n-1].
int energy(const ModelSpec& spec, std::span<const Color> colors);
inline int energy(const ModelSpec& spec, const Configuration& x) {
  return energy(spec, std::span<const Color>(x.colors()));
}

/// +1 for an agreeing bond, -1 otherwise.
constexpr int bond_sign(Color a, Color b) noexcept { return a == b ? 1 : -1; }

/// pi(x) = exp(H(x)/T) / Z_T indexed by rank.
struct GibbsMeasure {
  std::vector<double> weights;
  double log_z = 0.0;

  std::size_t size() const noexcept { return weights.size(); }
  double operator[](Rank r) const { return weights[r]; }
};

/// Log-domain evaluation with a max shift. Refuses above budget.exact_states.
GibbsMeasure stationary_measure(const ModelSpec& spec, const Budget& budget = {});

/// Applies the color permutation `sigma` site by site.
std::vector<Color> permute_colors(std::span<const Color> colors, std::span<const Color> sigma);

}  // namespace spectral_gibbs

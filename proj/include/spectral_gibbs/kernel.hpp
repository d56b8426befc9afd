#pragma once

// Random-scan Gibbs (heat-bath) transition kernel: pick a site uniformly,
// resample its color from the conditional law given its neighbours.

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "spectral_gibbs/model.hpp"

namespace spectral_gibbs {

/// pi(color | neighbours) for every color at a site whose left/right
/// neighbours are `left` / `right` (nullopt at the lattice boundary).
std::vector<double> site_conditionals(const ModelSpec& spec, std::optional<Color> left,
                                      std::optional<Color> right);

/// Precomputed site_conditionals for every neighbour pattern: (N+1)^2 rows.
class ConditionalTable {
 public:
  explicit ConditionalTable(const ModelSpec& spec);

  std::span<const double> at(std::span<const Color> colors, Site site) const;
  std::span<const double> at(std::optional<Color> left, std::optional<Color> right) const;

 private:
  Color colors_;
  std::vector<double> table_;
};

/// pi(y_site = color | x_{-site}); `site` is 0-based.
double conditional_probability(const ModelSpec& spec, const Configuration& x, Site site,
                               Color color);

/// P(x, y) of the random-scan Gibbs sampler.
double transition_probability(const ModelSpec& spec, const Configuration& x,
                              const Configuration& y);

struct KernelEntry {
  Rank target;
  double probability;
};

struct DirectedEdge {
  Rank from;
  Rank to;
  bool operator==(const DirectedEdge&) const = default;
};

/// Sparse row storage: every row holds the n(N-1) single-site recolorings
/// plus the diagonal, sorted by target rank.
class SparseKernel {
 public:
  SparseKernel(ModelSpec spec, std::shared_ptr<const GibbsMeasure> pi,
               std::vector<KernelEntry> entries);

  const ModelSpec& spec() const noexcept { return spec_; }
  const GibbsMeasure& pi() const noexcept { return *pi_; }
  std::shared_ptr<const GibbsMeasure> pi_ptr() const noexcept { return pi_; }

  std::size_t dimension() const noexcept { return pi_->size(); }
  std::size_t row_width() const noexcept { return row_width_; }
  std::span<const KernelEntry> row(Rank r) const;

  /// Zero when x and y differ in more than one site.
  double probability(Rank from, Rank to) const;
  double holding_probability(Rank r) const { return probability(r, r); }

  /// Q(x, y) = pi(x) P(x, y).
  double edge_measure(Rank from, Rank to) const { return pi()[from] * probability(from, to); }

  std::size_t edge_count() const noexcept { return dimension() * (row_width_ - 1); }
  /// Ordered pairs u != v with P(u, v) > 0, by (u, v).
  std::vector<DirectedEdge> edges() const;

 private:
  ModelSpec spec_;
  std::shared_ptr<const GibbsMeasure> pi_;
  std::vector<KernelEntry> entries_;
  std::size_t row_width_;
};

/// Refuses above budget.exact_states.
SparseKernel build_kernel(const ModelSpec& spec, const Budget& budget = {});

/// max over edges of |Q(x,y) - Q(y,x)|.
double check_detailed_balance(const SparseKernel& kernel);
/// ||pi P - pi||_inf.
double check_stationarity(const SparseKernel& kernel);
/// max over rows of |sum_y P(x,y) - 1|.
double max_row_sum_error(const SparseKernel& kernel);
/// Connectivity of the edge graph (union-find).
bool is_irreducible(const SparseKernel& kernel);

/// "row col value" lines, 0-based ranks, 17 significant digits.
void write_coordinate_format(const SparseKernel& kernel, std::ostream& out);

}  // namespace spectral_gibbs

#include "spectral_gibbs/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "spectral_gibbs/compensated_sum.hpp"

namespace spectral_gibbs {

std::vector<double> site_conditionals(const ModelSpec& spec, std::optional<Color> left,
                                      std::optional<Color> right) {
  const double beta = 1.0 / spec.temperature();
  std::vector<double> field(spec.colors(), 0.0);
  for (Color c = 0; c < spec.colors(); ++c) {
    int h = 0;
    if (left) h += bond_sign(*left, c);
    if (right) h += bond_sign(c, *right);
    field[c] = h * beta;
  }
  const double top = *std::max_element(field.begin(), field.end());
  double total = 0.0;
  for (double& f : field) {
    f = std::exp(f - top);
    total += f;
  }
  for (double& f : field) f /= total;
  return field;
}

ConditionalTable::ConditionalTable(const ModelSpec& spec) : colors_(spec.colors()) {
  const std::size_t patterns = static_cast<std::size_t>(colors_ + 1) * (colors_ + 1);
  table_.reserve(patterns * colors_);
  // Pattern index 0 encodes "no neighbour", c + 1 encodes color c.
  for (Color l = 0; l <= colors_; ++l) {
    for (Color r = 0; r <= colors_; ++r) {
      std::optional<Color> left = l ? std::optional<Color>(l - 1) : std::nullopt;
      std::optional<Color> right = r ? std::optional<Color>(r - 1) : std::nullopt;
      auto probs = site_conditionals(spec, left, right);
      table_.insert(table_.end(), probs.begin(), probs.end());
    }
  }
}

std::span<const double> ConditionalTable::at(std::optional<Color> left,
                                             std::optional<Color> right) const {
  const std::size_t l = left ? *left + 1 : 0;
  const std::size_t r = right ? *right + 1 : 0;
  return {table_.data() + (l * (colors_ + 1) + r) * colors_, colors_};
}

std::span<const double> ConditionalTable::at(std::span<const Color> colors, Site site) const {
  std::optional<Color> left, right;
  if (site > 0) left = colors[site - 1];
  if (site + 1 < colors.size()) right = colors[site + 1];
  return at(left, right);
}

double conditional_probability(const ModelSpec& spec, const Configuration& x, Site site,
                               Color color) {
  if (x.size() != spec.sites())
    throw std::invalid_argument("configuration length does not match lattice length n");
  if (site >= spec.sites()) throw std::invalid_argument("site index out of range");
  if (color >= spec.colors()) throw std::invalid_argument("color index must be below N");
  std::optional<Color> left, right;
  if (site > 0) left = x[site - 1];
  if (site + 1 < spec.sites()) right = x[site + 1];
  return site_conditionals(spec, left, right)[color];
}

double transition_probability(const ModelSpec& spec, const Configuration& x,
                              const Configuration& y) {
  if (x.size() != spec.sites() || y.size() != spec.sites())
    throw std::invalid_argument("configuration length does not match lattice length n");
  const double n = static_cast<double>(spec.sites());
  std::optional<Site> changed;
  for (Site i = 0; i < spec.sites(); ++i) {
    if (x[i] == y[i]) continue;
    if (changed) return 0.0;
    changed = i;
  }
  if (changed) return conditional_probability(spec, x, *changed, y[*changed]) / n;
  double stay = 0.0;
  for (Site i = 0; i < spec.sites(); ++i) stay += conditional_probability(spec, x, i, x[i]);
  return stay / n;
}

SparseKernel::SparseKernel(ModelSpec spec, std::shared_ptr<const GibbsMeasure> pi,
                           std::vector<KernelEntry> entries)
    : spec_(std::move(spec)),
      pi_(std::move(pi)),
      entries_(std::move(entries)),
      row_width_(spec_.sites() * (spec_.colors() - 1) + 1) {
  if (!pi_ || entries_.size() != pi_->size() * row_width_)
    throw std::invalid_argument("kernel storage does not match the state space");
}

std::span<const KernelEntry> SparseKernel::row(Rank r) const {
  return {entries_.data() + r * row_width_, row_width_};
}

double SparseKernel::probability(Rank from, Rank to) const {
  auto entries = row(from);
  auto it = std::lower_bound(entries.begin(), entries.end(), to,
                             [](const KernelEntry& e, Rank t) { return e.target < t; });
  return (it != entries.end() && it->target == to) ? it->probability : 0.0;
}

std::vector<DirectedEdge> SparseKernel::edges() const {
  std::vector<DirectedEdge> out;
  out.reserve(edge_count());
  for (Rank u = 0; u < dimension(); ++u)
    for (const auto& e : row(u))
      if (e.target != u) out.push_back({u, e.target});
  return out;
}

SparseKernel build_kernel(const ModelSpec& spec, const Budget& budget) {
  auto pi = std::make_shared<const GibbsMeasure>(stationary_measure(spec, budget));
  const std::size_t count = pi->size();
  const std::size_t n = spec.sites();
  const std::size_t width = n * (spec.colors() - 1) + 1;
  const double inv_n = 1.0 / static_cast<double>(n);
  const ConditionalTable table(spec);

  std::vector<KernelEntry> entries;
  entries.reserve(count * width);
  std::vector<Color> colors(n, 0);
  for (Rank r = 0; r < count; ++r) {
    const auto begin = entries.size();
    CompensatedSum stay;
    for (Site i = 0; i < n; ++i) {
      auto cond = table.at(colors, i);
      const Rank place = spec.place_value(i);
      const Rank base = r - colors[i] * place;
      stay += cond[colors[i]];
      for (Color c = 0; c < spec.colors(); ++c)
        if (c != colors[i]) entries.push_back({base + c * place, cond[c] * inv_n});
    }
    entries.push_back({r, stay.value() * inv_n});
    std::sort(entries.begin() + static_cast<std::ptrdiff_t>(begin), entries.end(),
              [](const KernelEntry& a, const KernelEntry& b) { return a.target < b.target; });

    for (std::size_t i = n; i-- > 0;) {
      if (++colors[i] < spec.colors()) break;
      colors[i] = 0;
    }
  }
  return SparseKernel(spec, std::move(pi), std::move(entries));
}

double check_detailed_balance(const SparseKernel& kernel) {
  double worst = 0.0;
  const auto& pi = kernel.pi();
  for (Rank u = 0; u < kernel.dimension(); ++u) {
    for (const auto& e : kernel.row(u)) {
      if (e.target == u) continue;
      const double forward = pi[u] * e.probability;
      const double backward = pi[e.target] * kernel.probability(e.target, u);
      worst = std::max(worst, std::abs(forward - backward));
    }
  }
  return worst;
}

double check_stationarity(const SparseKernel& kernel) {
  const auto& pi = kernel.pi();
  std::vector<CompensatedSum> image(kernel.dimension());
  for (Rank u = 0; u < kernel.dimension(); ++u)
    for (const auto& e : kernel.row(u)) image[e.target] += pi[u] * e.probability;
  double worst = 0.0;
  for (Rank v = 0; v < kernel.dimension(); ++v)
    worst = std::max(worst, std::abs(image[v].value() - pi[v]));
  return worst;
}

double max_row_sum_error(const SparseKernel& kernel) {
  double worst = 0.0;
  for (Rank u = 0; u < kernel.dimension(); ++u) {
    CompensatedSum total;
    for (const auto& e : kernel.row(u)) total += e.probability;
    worst = std::max(worst, std::abs(total.value() - 1.0));
  }
  return worst;
}

bool is_irreducible(const SparseKernel& kernel) {
  std::vector<std::size_t> parent(kernel.dimension());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::size_t components = kernel.dimension();
  for (Rank u = 0; u < kernel.dimension(); ++u) {
    for (const auto& e : kernel.row(u)) {
      if (e.probability <= 0.0) continue;
      auto a = find(u), b = find(e.target);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components == 1;
}

void write_coordinate_format(const SparseKernel& kernel, std::ostream& out) {
  char buffer[96];
  for (Rank u = 0; u < kernel.dimension(); ++u) {
    for (const auto& e : kernel.row(u)) {
      std::snprintf(buffer, sizeof buffer, "%llu %llu %.17g\n",
                    static_cast<unsigned long long>(u),
                    static_cast<unsigned long long>(e.target), e.probability);
      out << buffer;
    }
  }
}

}  // namespace spectral_gibbs

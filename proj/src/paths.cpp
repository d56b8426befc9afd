#include "spectral_gibbs/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spectral_gibbs/compensated_sum.hpp"
#include "spectral_gibbs/parallel.hpp"

namespace spectral_gibbs {

PathRecord canonical_path(const ModelSpec& spec, const Configuration& x,
                          const Configuration& y) {
  if (x.size() != spec.sites() || y.size() != spec.sites())
    throw std::invalid_argument("configuration length does not match lattice length n");
  if (x == y) throw std::invalid_argument("canonical paths join distinct configurations");

  PathRecord path{x, y, {}, {}};
  std::vector<Color> current = x.colors();
  Rank rank = encode(spec, current);
  for (Site i = 0; i < spec.sites(); ++i) {
    if (x[i] == y[i]) continue;
    const Rank place = spec.place_value(i);
    const Rank next = rank - current[i] * place + y[i] * place;
    path.diffs.push_back(i);
    path.edges.push_back({rank, next});
    current[i] = y[i];
    rank = next;
  }
  return path;
}

EdgeGeometry describe_edge(const ModelSpec& spec, const DirectedEdge& edge) {
  const auto from = decode(spec, edge.from);
  const auto to = decode(spec, edge.to);
  std::optional<Site> site;
  for (Site i = 0; i < spec.sites(); ++i) {
    if (from[i] == to[i]) continue;
    if (site) throw std::invalid_argument("edge endpoints differ in more than one site");
    site = i;
  }
  if (!site) throw std::invalid_argument("edge endpoints coincide");
  EdgeGeometry g;
  g.site = *site;
  g.color_from = from[*site];
  g.color_to = to[*site];
  if (*site > 0) g.left = from[*site - 1];
  if (*site + 1 < spec.sites()) g.right = from[*site + 1];
  return g;
}

namespace {

// Index of the directed edge that recolors `site` of state `from` to `to_color`.
inline std::size_t edge_index(std::size_t sites, Color colors, Rank from, Site site,
                              Color from_color, Color to_color) {
  const std::size_t slot = to_color < from_color ? to_color : to_color - 1;
  return (from * sites + site) * (colors - 1) + slot;
}

constexpr std::size_t kKappaChunks = 32;

}  // namespace

KappaResult kappa_exact(const SparseKernel& kernel, const Budget& budget) {
  const ModelSpec& spec = kernel.spec();
  const auto dim = require_state_budget(spec, budget.kappa_states, "kappa brute-force");
  const std::size_t n = spec.sites();
  const Color colors = spec.colors();
  const auto& pi = kernel.pi();
  const std::size_t edge_total = dim * n * (colors - 1);

  std::vector<Color> table(dim * n);
  for (Rank r = 0; r < dim; ++r) {
    auto c = decode(spec, r);
    std::copy(c.begin(), c.end(), table.begin() + static_cast<std::ptrdiff_t>(r * n));
  }
  std::vector<Rank> place(n);
  for (Site i = 0; i < n; ++i) place[i] = spec.place_value(i);

  // Fixed source partition; each chunk owns its accumulators and chunks
  // are merged in index order, so the result ignores the thread schedule.
  const std::size_t chunks = std::min<std::size_t>(kKappaChunks, dim);
  std::vector<std::vector<CompensatedSum>> partial(chunks);
  parallel_for(chunks, [&](std::size_t chunk) {
    auto& acc = partial[chunk];
    acc.assign(edge_total, CompensatedSum{});
    const Rank begin = dim * chunk / chunks;
    const Rank end = dim * (chunk + 1) / chunks;
    for (Rank x = begin; x < end; ++x) {
      const Color* xc = &table[x * n];
      const double px = pi[x];
      for (Rank y = 0; y < dim; ++y) {
        if (y == x) continue;
        const Color* yc = &table[y * n];
        std::size_t length = 0;
        for (Site i = 0; i < n; ++i) length += xc[i] != yc[i];
        const double weight = static_cast<double>(length) * px * pi[y];
        Rank current = x;
        for (Site i = 0; i < n; ++i) {
          if (xc[i] == yc[i]) continue;
          acc[edge_index(n, colors, current, i, xc[i], yc[i])] += weight;
          current = current - xc[i] * place[i] + yc[i] * place[i];
        }
      }
    }
  });

  KappaResult result;
  result.loads.reserve(edge_total);
  for (Rank u = 0; u < dim; ++u) {
    const Color* uc = &table[u * n];
    for (Site i = 0; i < n; ++i) {
      for (Color c = 0; c < colors; ++c) {
        if (c == uc[i]) continue;
        const std::size_t idx = edge_index(n, colors, u, i, uc[i], c);
        CompensatedSum total;
        for (const auto& acc : partial) total += acc[idx].value();

        EdgeLoad e;
        e.edge = {u, u - uc[i] * place[i] + c * place[i]};
        e.geometry.site = i;
        e.geometry.color_from = uc[i];
        e.geometry.color_to = c;
        if (i > 0) e.geometry.left = uc[i - 1];
        if (i + 1 < n) e.geometry.right = uc[i + 1];
        e.load = total.value();
        e.q = kernel.edge_measure(e.edge.from, e.edge.to);
        e.ratio = e.load / e.q;
        result.loads.push_back(e);
      }
    }
  }
  auto best = std::max_element(result.loads.begin(), result.loads.end(),
                               [](const EdgeLoad& a, const EdgeLoad& b) { return a.ratio < b.ratio; });
  result.argmax = *best;
  result.kappa = best->ratio;
  return result;
}

double kappa_closed_form(const ModelSpec& spec) {
  const double n = static_cast<double>(spec.sites());
  const double colors = spec.colors();
  return n * n / colors * (colors - 1.0 + std::exp(4.0 / spec.temperature()));
}

LocalFactors edge_local_factors(const ModelSpec& spec, const EdgeGeometry& g) {
  if (g.boundary())
    throw std::invalid_argument("local factors are defined for interior edges only");
  if (g.color_from == g.color_to || g.color_from >= spec.colors() || g.color_to >= spec.colors())
    throw std::invalid_argument("edge must change the site to a different valid color");
  const double beta_t = 1.0 / spec.temperature();
  const Color left = *g.left;
  const Color right = *g.right;
  const Color from = g.color_from;
  const Color to = g.color_to;

  LocalFactors f;
  f.alpha = std::exp((bond_sign(left, to) - bond_sign(left, from)) * beta_t);
  double others = 0.0;
  for (Color j = 0; j < spec.colors(); ++j)
    if (j != to) others += std::exp((bond_sign(left, j) + bond_sign(j, right)) * beta_t);
  f.beta = std::exp((-bond_sign(left, from) - bond_sign(to, right)) * beta_t) * others;
  return f;
}

LocalFactorExtremum worst_local_factors(const ModelSpec& spec) {
  LocalFactorExtremum out;
  std::vector<std::pair<double, EdgeGeometry>> all;
  for (Color from = 0; from < spec.colors(); ++from)
    for (Color to = 0; to < spec.colors(); ++to) {
      if (from == to) continue;
      for (Color l = 0; l < spec.colors(); ++l)
        for (Color r = 0; r < spec.colors(); ++r) {
          EdgeGeometry g;
          g.site = 1;
          g.color_from = from;
          g.color_to = to;
          g.left = l;
          g.right = r;
          const double s = edge_local_factors(spec, g).sum();
          out.max_sum = std::max(out.max_sum, s);
          all.emplace_back(s, g);
        }
    }
  for (const auto& [s, g] : all)
    if (s >= out.max_sum * (1.0 - 1e-12)) out.maximizers.push_back(g);
  return out;
}

EdgeCertificate per_edge_certificate(const ModelSpec& spec, const EdgeLoad& edge) {
  const double n = static_cast<double>(spec.sites());
  const double colors = spec.colors();
  EdgeCertificate c;
  c.boundary = edge.geometry.boundary();
  const double local = c.boundary
                           ? colors - 1.0 + std::exp(2.0 / spec.temperature())
                           : edge_local_factors(spec, edge.geometry).sum();
  c.bound = n * n / colors * local;
  c.ratio = edge.ratio;
  c.slack = c.bound - c.ratio;
  c.pass = c.ratio <= c.bound;
  return c;
}

double SliceIdentityReport::max_residual() const noexcept {
  double worst = 0.0;
  if (a_applicable) worst = std::max({ratio_residual, total_residual, a_residual});
  if (b_applicable) worst = std::max(worst, b_residual);
  return worst;
}

SliceIdentityReport verify_slice_identities(const SparseKernel& kernel, Site site,
                                            Color color_from, Color color_to) {
  const ModelSpec& spec = kernel.spec();
  const std::size_t n = spec.sites();
  const Color colors = spec.colors();
  if (site >= n) throw std::invalid_argument("site index out of range");
  if (color_from >= colors || color_to >= colors || color_from == color_to)
    throw std::invalid_argument("slice identities need two distinct valid colors");

  const double beta_t = 1.0 / spec.temperature();
  const double inv_colors = 1.0 / colors;
  SliceIdentityReport report;
  report.site = site;
  report.color_from = color_from;
  report.color_to = color_to;
  report.a_applicable = site + 1 < n;
  report.b_applicable = site > 0;

  std::vector<CompensatedSum> mass(colors);
  CompensatedSum a_prime, b_prime;
  const auto& pi = kernel.pi();
  std::vector<Color> w(n, 0);
  for (Rank r = 0; r < pi.size(); ++r) {
    if (report.a_applicable && w[site] == color_from) {
      const Color next = w[site + 1];
      mass[next] += pi[r];
      a_prime += pi[r] * std::exp((bond_sign(color_to, next) - bond_sign(color_from, next)) * beta_t);
    }
    if (report.b_applicable && w[site] == color_to) {
      const Color prev = w[site - 1];
      b_prime += pi[r] * std::exp((bond_sign(prev, color_from) - bond_sign(prev, color_to)) * beta_t);
    }
    for (std::size_t i = n; i-- > 0;) {
      if (++w[i] < colors) break;
      w[i] = 0;
    }
  }

  if (report.a_applicable) {
    report.slice_mass.resize(colors);
    CompensatedSum total;
    for (Color k = 0; k < colors; ++k) {
      report.slice_mass[k] = mass[k].value();
      total += report.slice_mass[k];
    }
    const double same = report.slice_mass[color_from];
    const double tilt = std::exp(2.0 * beta_t);
    for (Color k = 0; k < colors; ++k)
      if (k != color_from)
        report.ratio_residual =
            std::max(report.ratio_residual, std::abs(same - tilt * report.slice_mass[k]));
    report.total_residual = std::abs(total.value() - inv_colors);
    report.a_prime = a_prime.value();
    report.a_residual = std::abs(report.a_prime - inv_colors);
  }
  if (report.b_applicable) {
    report.b_prime = b_prime.value();
    report.b_residual = std::abs(report.b_prime - inv_colors);
  }
  return report;
}

}  // namespace spectral_gibbs

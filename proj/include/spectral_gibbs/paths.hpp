#pragma once

// Canonical paths (fix disagreeing sites left to right), the exact
// Poincare constant kappa, and numeric certificates for the per-edge
// estimates behind its closed-form bound.

#include <optional>
#include <vector>

#include "spectral_gibbs/kernel.hpp"

namespace spectral_gibbs {

struct PathRecord {
  Configuration source;
  Configuration target;
  std::vector<Site> diffs;           // increasing
  std::vector<DirectedEdge> edges;   // as traversed, one per diff site
  std::size_t length() const noexcept { return edges.size(); }
};

/// Throws std::invalid_argument when x == y or the lengths differ.
PathRecord canonical_path(const ModelSpec& spec, const Configuration& x, const Configuration& y);

/// Where a single-site edge sits on the lattice.
struct EdgeGeometry {
  Site site = 0;
  Color color_from = 0;  // color of e^- at `site`
  Color color_to = 0;    // color of e^+ at `site`
  std::optional<Color> left;   // z_{i-1}
  std::optional<Color> right;  // z_{i+1}
  bool boundary() const noexcept { return !left || !right; }
};

/// Throws std::invalid_argument unless the endpoints differ in exactly one site.
EdgeGeometry describe_edge(const ModelSpec& spec, const DirectedEdge& edge);

struct EdgeLoad {
  DirectedEdge edge;
  EdgeGeometry geometry;
  double load = 0.0;   // sum over paths through the edge of |path| pi(x) pi(y)
  double q = 0.0;      // Q(e) = pi(e^-) P(e^-, e^+)
  double ratio = 0.0;  // load / q
};

struct KappaResult {
  double kappa = 0.0;
  EdgeLoad argmax;
  /// One entry per directed edge, ordered by (source rank, site, target color).
  std::vector<EdgeLoad> loads;
};

/// Brute force over all ordered pairs x != y. Loads are accumulated on the
/// oriented edge traversed by each path. Deterministic for any thread count.
KappaResult kappa_exact(const SparseKernel& kernel, const Budget& budget = {});

/// (n^2 / N) (N - 1 + e^{4/T}).
double kappa_closed_form(const ModelSpec& spec);

struct LocalFactors {
  double alpha = 0.0;
  double beta = 0.0;
  double sum() const noexcept { return alpha + beta; }
};

/// Interior edges only (both neighbours present); throws std::invalid_argument
/// for a boundary edge.
LocalFactors edge_local_factors(const ModelSpec& spec, const EdgeGeometry& geometry);

/// Largest alpha + beta over every interior neighbour pattern and color
/// change, together with the patterns that attain it (relative tolerance
/// 1e-12).
struct LocalFactorExtremum {
  double max_sum = 0.0;
  std::vector<EdgeGeometry> maximizers;
};
LocalFactorExtremum worst_local_factors(const ModelSpec& spec);

struct EdgeCertificate {
  bool pass = false;
  bool boundary = false;
  double bound = 0.0;
  double ratio = 0.0;
  double slack = 0.0;  // bound - ratio
};

/// Interior: ratio <= (n^2/N)(alpha + beta). Boundary: ratio <= (n^2/N)(N - 1 + e^{2/T}).
EdgeCertificate per_edge_certificate(const ModelSpec& spec, const EdgeLoad& edge);

/// Exact slice sums around `site` for the color change from -> to.
/// W^(k) = {w : w_site = from, w_{site+1} = k}.
struct SliceIdentityReport {
  Site site = 0;
  Color color_from = 0;
  Color color_to = 0;
  bool a_applicable = false;  // site has a right neighbour
  bool b_applicable = false;  // site has a left neighbour
  std::vector<double> slice_mass;   // pi(W^(k)), k = 0..N-1
  double ratio_residual = 0.0;      // max_k!=from |pi(W^(from)) - e^{2/T} pi(W^(k))|
  double total_residual = 0.0;      // |sum_k pi(W^(k)) - 1/N|
  double a_prime = 0.0;
  double b_prime = 0.0;
  double a_residual = 0.0;          // |A' - 1/N|
  double b_residual = 0.0;          // |B' - 1/N|
  double max_residual() const noexcept;
};

/// Throws std::invalid_argument for an out-of-range site or color, or from == to.
SliceIdentityReport verify_slice_identities(const SparseKernel& kernel, Site site,
                                            Color color_from, Color color_to);

}  // namespace spectral_gibbs

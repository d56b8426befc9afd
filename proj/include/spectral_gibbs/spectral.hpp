#pragma once

#include <vector>

#include <Eigen/Core>

#include "spectral_gibbs/kernel.hpp"

namespace spectral_gibbs {

/// Real spectrum of a reversible kernel, sorted in descending order.
struct Spectrum {
  std::vector<double> eigenvalues;
  double beta1 = 0.0;     // second largest
  double beta_min = 0.0;  // smallest
  double beta_star = 0.0; // max(beta1, |beta_min|)

  /// Sorts `values` descending and fills the summary scalars. Needs >= 2 values
  /// unless the state space is a single point.
  static Spectrum from_eigenvalues(std::vector<double> values);
};

/// S = D^{1/2} P D^{-1/2}, D = diag(pi), as a dense matrix. Throws
/// PreconditionError if the result is asymmetric by more than 1e-9 and
/// ResourceLimitError above budget.dense_states.
Eigen::MatrixXd symmetrize(const SparseKernel& kernel, const Budget& budget = {});

/// Full spectrum of P through the symmetric similarity transform.
Spectrum spectrum(const SparseKernel& kernel, const Budget& budget = {});

double beta_star(const Spectrum& spectrum);

}  // namespace spectral_gibbs

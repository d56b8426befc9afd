#include "spectral_gibbs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "spectral_gibbs/errors.hpp"

namespace spectral_gibbs {

Spectrum Spectrum::from_eigenvalues(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("empty spectrum");
  std::sort(values.begin(), values.end(), std::greater<>());
  Spectrum s;
  s.eigenvalues = std::move(values);
  s.beta1 = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
  s.beta_min = s.eigenvalues.back();
  s.beta_star = spectral_gibbs::beta_star(s);
  return s;
}

Eigen::MatrixXd symmetrize(const SparseKernel& kernel, const Budget& budget) {
  const auto dim = require_state_budget(kernel.spec(), budget.dense_states, "dense-eigensolve");
  const auto& pi = kernel.pi();
  std::vector<double> root(dim);
  for (std::size_t i = 0; i < dim; ++i) root[i] = std::sqrt(pi[i]);

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  for (Rank u = 0; u < dim; ++u)
    for (const auto& e : kernel.row(u))
      s(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(e.target)) =
          root[u] * e.probability / root[e.target];

  const double asymmetry = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-9) {
    std::ostringstream msg;
    msg << "kernel is not reversible: max |S - S^T| = " << asymmetry;
    throw PreconditionError(msg.str());
  }
  return s;
}

Spectrum spectrum(const SparseKernel& kernel, const Budget& budget) {
  Eigen::MatrixXd s = symmetrize(kernel, budget);
  // Only the lower triangle is read; average it so both halves contribute.
  Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return Spectrum::from_eigenvalues(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

double beta_star(const Spectrum& spectrum) {
  return std::max(spectrum.beta1, std::abs(spectrum.beta_min));
}

}  // namespace spectral_gibbs

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "spectral_gibbs/bounds.hpp"
#include "spectral_gibbs/chain.hpp"

using namespace spectral_gibbs;

TEST_CASE("propagation preserves mass and converges to pi") {
  const auto kernel = build_kernel(ModelSpec(3, 3, 1.0));
  const auto mu = propagate(kernel, 5, 0);
  CHECK(mu[5] == 1.0);
  const auto far = propagate(kernel, 5, 2000);
  CHECK(std::accumulate(far.begin(), far.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(tv_distance(far, kernel.pi().weights) <= 1e-12);
}

TEST_CASE("total variation distance") {
  const std::vector<double> a{0.5, 0.5, 0.0}, b{0.0, 0.5, 0.5};
  CHECK(tv_distance(a, b) == doctest::Approx(0.5));
  CHECK(tv_distance(a, a) == 0.0);
  CHECK_THROWS(tv_distance(a, std::vector<double>{1.0}));
}

TEST_CASE("uniform draws stay in [0, 1) and seeds derive deterministically") {
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("simulation is reproducible and touches one site per step") {
  const ModelSpec spec(6, 3, 0.8);
  const auto start = Configuration::from_letters(spec, "abcabc");
  std::vector<Color> previous = start.colors();
  std::size_t calls = 0;
  const auto end = simulate(spec, start, 500, 99, [&](std::size_t, Site site,
                                                      const std::vector<Color>& now) {
    for (Site i = 0; i < now.size(); ++i)
      if (i != site) CHECK(now[i] == previous[i]);
    previous = now;
    ++calls;
  });
  CHECK(calls == 500);
  CHECK(simulate(spec, start, 500, 99) == end);
}

TEST_CASE("long-run occupancy matches pi") {
  const ModelSpec spec(3, 2, 1.0);
  const auto kernel = build_kernel(spec);
  const auto s = spectrum(kernel);
  const std::size_t steps = 400000;
  std::vector<double> visits(kernel.dimension(), 0.0);
  simulate(spec, Configuration::from_rank(spec, 0), steps, 2024,
           [&](std::size_t, Site, const std::vector<Color>& now) { visits[encode(spec, now)] += 1; });
  const double inflation = (1.0 + s.beta1) / (1.0 - s.beta1);
  for (Rank r = 0; r < kernel.dimension(); ++r) {
    const double p = kernel.pi()[r];
    const double sigma = std::sqrt(p * (1 - p) * inflation / double(steps));
    CHECK(std::abs(visits[r] / double(steps) - p) <= 5.0 * sigma);
  }
}

TEST_CASE("tv curve starts at 1 - pi(x) and stays under the envelope") {
  const ModelSpec spec(2, 2, 1.0);
  const auto kernel = build_kernel(spec);
  const auto s = spectrum(kernel);
  const auto zero = tv_curve(kernel, s.beta_star, 0, 0);
  REQUIRE(zero.ks.size() == 1);
  CHECK(zero.exact_tv[0] == doctest::Approx(1.0 - kernel.pi()[0]).epsilon(1e-15));
  CHECK_FALSE(zero.mc_tv.has_value());

  const auto curve = tv_curve(kernel, s.beta_star, 1, 200);
  CHECK(curve.ks.size() == 201);
  CHECK(curve.within_envelope());
  CHECK(curve.envelope[10] == doctest::Approx(ds_tv_envelope(kernel.pi()[1], s.beta_star, 10)));
}

TEST_CASE("monte carlo arm is seeded and roughly tracks the exact curve") {
  const auto kernel = build_kernel(ModelSpec(3, 2, 1.0));
  const auto s = spectrum(kernel);
  const auto a = tv_curve(kernel, s.beta_star, 0, 20, {4000, 5});
  const auto b = tv_curve(kernel, s.beta_star, 0, 20, {4000, 5});
  REQUIRE(a.mc_tv.has_value());
  CHECK(*a.mc_tv == *b.mc_tv);
  CHECK((*a.mc_tv)[0] == doctest::Approx(a.exact_tv[0]));
  for (std::size_t k = 0; k <= 20; ++k) CHECK(std::abs((*a.mc_tv)[k] - a.exact_tv[k]) < 0.05);
}

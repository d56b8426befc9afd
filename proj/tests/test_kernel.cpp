#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "oracle_values.hpp"
#include "spectral_gibbs/kernel.hpp"

using namespace spectral_gibbs;

namespace {

// Independent transition probability straight from the energy function.
double brute_transition(const ModelSpec& spec, Rank from, Rank to) {
  const auto x = decode(spec, from);
  const auto y = decode(spec, to);
  const std::size_t n = spec.sites();
  double total = 0.0;
  for (Site i = 0; i < n; ++i) {
    bool others_equal = true;
    for (Site j = 0; j < n; ++j)
      if (j != i && x[j] != y[j]) others_equal = false;
    if (!others_equal) continue;
    double z = 0.0;
    auto w = x;
    for (Color c = 0; c < spec.colors(); ++c) {
      w[i] = c;
      z += std::exp(energy(spec, w) / spec.temperature());
    }
    total += std::exp(energy(spec, y) / spec.temperature()) / z / static_cast<double>(n);
  }
  return total;
}

}  // namespace

TEST_CASE("two-site oracle values") {
  const ModelSpec spec(2, 2, 1.0);
  const auto kernel = build_kernel(spec);
  CHECK(kernel.probability(0, 2) ==
        doctest::Approx(oracle::P_aa_ba_n2_N2_T1).epsilon(1e-15));
  const auto aa = Configuration::from_letters(spec, "aa");
  const auto ba = Configuration::from_letters(spec, "ba");
  CHECK(transition_probability(spec, aa, ba) ==
        doctest::Approx(oracle::P_aa_ba_n2_N2_T1).epsilon(1e-15));
}

TEST_CASE("interior conditional given equal neighbours") {
  const ModelSpec spec(3, 3, 1.0);
  const auto x = Configuration::from_letters(spec, "cac");
  CHECK(conditional_probability(spec, x, 1, 2) ==
        doctest::Approx(oracle::interior_cond_same_N3_T1).epsilon(1e-15));
  const ConditionalTable table(spec);
  CHECK(table.at(Color{2}, Color{2})[2] ==
        doctest::Approx(oracle::interior_cond_same_N3_T1).epsilon(1e-15));
}

TEST_CASE("conditionals sum to one, including extreme temperatures") {
  for (double t : {0.01, 0.1, 1.0, 50.0}) {
    const ModelSpec spec(3, 4, t);
    for (auto l : {std::optional<Color>{}, std::optional<Color>{0}, std::optional<Color>{3}})
      for (auto r : {std::optional<Color>{}, std::optional<Color>{0}, std::optional<Color>{1}}) {
        const auto cond = site_conditionals(spec, l, r);
        double sum = 0.0;
        for (double p : cond) {
          CHECK(std::isfinite(p));
          sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
      }
  }
}

TEST_CASE("sparse kernel agrees with a brute-force dense kernel") {
  const ModelSpec spec(3, 3, 0.7);
  const auto kernel = build_kernel(spec);
  const Rank size = 27;
  for (Rank x = 0; x < size; ++x)
    for (Rank y = 0; y < size; ++y)
      CHECK(kernel.probability(x, y) ==
            doctest::Approx(brute_transition(spec, x, y)).epsilon(1e-14).scale(1e-14));
}

TEST_CASE("kernel layout") {
  const ModelSpec spec(4, 3, 1.0);
  const auto kernel = build_kernel(spec);
  CHECK(kernel.row_width() == 4 * 2 + 1);
  CHECK(kernel.edge_count() == 81 * 8);
  CHECK(kernel.edges().size() == kernel.edge_count());
  for (Rank r = 0; r < kernel.dimension(); ++r) {
    const auto row = kernel.row(r);
    for (std::size_t k = 1; k < row.size(); ++k) CHECK(row[k - 1].target < row[k].target);
  }
}

TEST_CASE("validity checks on the grid") {
  for (std::size_t n : {1, 3, 5})
    for (Color colors : {2u, 3u})
      for (double t : {0.2, 1.0, 5.0}) {
        const auto kernel = build_kernel(ModelSpec(n, colors, t));
        CHECK(max_row_sum_error(kernel) <= 1e-12);
        CHECK(check_detailed_balance(kernel) <= 1e-12);
        CHECK(check_stationarity(kernel) <= 1e-12);
        CHECK(is_irreducible(kernel));
      }
}

TEST_CASE("kernel commutes with color permutations") {
  const ModelSpec spec(3, 3, 0.8);
  const auto kernel = build_kernel(spec);
  const std::vector<Color> sigma{1, 2, 0};
  for (Rank x = 0; x < kernel.dimension(); ++x)
    for (const auto& entry : kernel.row(x)) {
      const Rank sx = encode(spec, permute_colors(decode(spec, x), sigma));
      const Rank sy = encode(spec, permute_colors(decode(spec, entry.target), sigma));
      CHECK(kernel.probability(sx, sy) == doctest::Approx(entry.probability).epsilon(1e-14));
    }
}

TEST_CASE("coordinate export has one line per stored entry") {
  const auto kernel = build_kernel(ModelSpec(2, 3, 1.0));
  std::ostringstream out;
  write_coordinate_format(kernel, out);
  std::istringstream in(out.str());
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 9 * kernel.row_width());
}

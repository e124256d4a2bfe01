#include <cmath>
#include <random>

#include "apilab/apriori.hpp"
#include "doctest.h"

using namespace apilab;

TEST_SUITE("apriori") {

TEST_CASE("reliability range") {
  CHECK_THROWS_AS(Reliability(0.49), std::domain_error);
  CHECK_THROWS_AS(Reliability(1.0), std::domain_error);
  CHECK_NOTHROW(Reliability(0.5));
  CHECK(Reliability::clamped(0.2).value() == 0.5);
  CHECK(Reliability::clamped(1.0).value() == Reliability::analytic_max);
  CHECK(Reliability::clamped(std::nan("")).value() == 0.5);
}

TEST_CASE("side information flip counts") {
  BitSequence x(1'000'000, 0);
  const auto half = generate_side_info(x, Reliability(0.5), 11);
  const double sigma = std::sqrt(1e6 * 0.25);
  CHECK(std::abs(static_cast<double>(hamming_weight(half.bits)) - 5e5) < 3 * sigma);

  BitSequence y(100'000, 0);
  const auto flips = hamming_weight(generate_side_info(y, Reliability(0.9), 5).bits);
  CHECK(flips >= 9700);
  CHECK(flips <= 10300);

  BitSequence z(1000, 1);
  const auto near = generate_side_info(z, Reliability(1.0 - 1.0 / 1000), 3);
  CHECK(hamming_distance(near.bits, z) <= 6);
  CHECK(near.estimated_reliability.value() == near.true_reliability.value());
}

TEST_CASE("llr conversions") {
  CHECK(reliability_to_llr(Reliability(0.5)) == 0.0);
  CHECK(reliability_to_llr(Reliability(0.9)) == doctest::Approx(std::log(9.0)).epsilon(1e-12));
  CHECK(reliability_to_llr(Reliability(0.95)) == doctest::Approx(2.9444389792).epsilon(1e-9));
  for (double r = 0.5; r < 0.999; r += 0.0137)
    CHECK(llr_to_reliability(reliability_to_llr(Reliability(r))).value() == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("prior sign rule") {
  const auto l = apriori_llrs(BitSequence{0, 1, 0}, Reliability(0.9));
  CHECK(l[0] == doctest::Approx(2.1972245773));
  CHECK(l[1] == doctest::Approx(-2.1972245773));
  CHECK(l[2] == doctest::Approx(2.1972245773));
  CHECK(apriori_llrs(BitSequence{1, 0, 1, 1}, Reliability(0.5)).isZero());
  CHECK(apriori_llrs(BitSequence{1}, Reliability(0.95))[0] == doctest::Approx(-2.9444389792));
}

TEST_CASE("a-factor values") {
  CHECK(a_factor(Reliability(0.5), Reliability(0.5)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a_factor(Reliability(0.9), Reliability(0.9)) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(a_factor(Reliability(0.9), Reliability(0.8)) == doctest::Approx(0.65).epsilon(1e-12));
}

TEST_CASE("a-factor at perfect estimation") {
  for (double r = 0.5; r < 0.999; r += 0.01)
    CHECK(a_factor(Reliability(r), Reliability(r)) == doctest::Approx(2 * std::sqrt(r * (1 - r))).epsilon(1e-12));
  // A < 1/sqrt(2) exactly when rho > (1 + sqrt(0.5)) / 2.
  const double cross = (1 + std::sqrt(0.5)) / 2;
  CHECK(cross == doctest::Approx(0.8536).epsilon(1e-4));
  CHECK(a_factor(Reliability(cross - 1e-6), Reliability(cross - 1e-6)) > 1 / std::sqrt(2.0));
  CHECK(a_factor(Reliability(cross + 1e-6), Reliability(cross + 1e-6)) < 1 / std::sqrt(2.0));
}

TEST_CASE("a-factor minimized at the true reliability") {
  for (double r : {0.55, 0.7, 0.8, 0.9, 0.95}) {
    const double at_true = a_factor(Reliability(r), Reliability(r));
    for (double e = 0.5; e < 0.999; e += 0.001) CHECK(a_factor(Reliability(r), Reliability(e)) >= at_true - 1e-12);
  }
}

TEST_CASE("correlation estimate") {
  BitSequence a(1000, 0), b(1000, 0);
  CHECK(estimate_correlation(a, b).value() == doctest::Approx(0.9995));
  for (int i = 0; i < 500; ++i) b[static_cast<std::size_t>(i)] = 1;
  CHECK(estimate_correlation(a, b).value() == 0.5);
  BitSequence c(10, 0), d(10, 0);
  d[3] = 1;
  CHECK(estimate_correlation(c, d).value() == doctest::Approx(0.9));
  // anti-correlated input clamps up
  BitSequence e(10, 1);
  CHECK(estimate_correlation(c, e).value() == 0.5);
  CHECK_THROWS_AS(estimate_correlation(c, BitSequence(9, 0)), std::invalid_argument);
  CHECK_THROWS_AS(estimate_correlation(BitSequence{}, BitSequence{}), std::invalid_argument);
}

TEST_CASE("correlation estimate is symmetric") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    BitSequence a(64), b(64);
    for (auto& v : a) v = rng() & 1;
    for (auto& v : b) v = rng() & 1;
    CHECK(estimate_correlation(a, b).value() == estimate_correlation(b, a).value());
  }
}

}

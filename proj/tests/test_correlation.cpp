#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pslset/correlation.hpp"
#include "pslset/solver.hpp"

using namespace pslset;

namespace {

const cdouble I1{0.0, 1.0};

SequenceSet barker13() {
  const int code[13] = {1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1};
  std::vector<double> phases;
  for (int c : code) phases.push_back(c > 0 ? 0.0 : std::numbers::pi);
  return SequenceSet(1, 13, phases);
}

}  // namespace

TEST_CASE("mainlobe equals the length") {
  const SequenceSet set = init_random(3, 17, 5);
  for (std::size_t i = 0; i < 3; ++i) {
    const cdouble r = correlate_brute(set, i, i, 0);
    CHECK(r.real() == doctest::Approx(17.0).epsilon(1e-12));
    CHECK(std::abs(r.imag()) < 1e-12);
  }
}

TEST_CASE("direct sums on small sequences") {
  const SequenceSet ones(1, 4);
  CHECK(std::abs(correlate_brute(ones, 0, 0, 1) - cdouble(3.0)) < 1e-14);

  const auto pair = SequenceSet::from_elements({{1.0, I1}, {1.0, -1.0}});
  const cdouble r = correlate_brute(pair, 0, 1, 0);
  CHECK(std::abs(r - cdouble(1.0, 1.0)) < 1e-14);

  const SequenceSet two(1, 2);
  const CorrelationTable t = correlate_all_fft(two);
  CHECK(std::abs(t.at(0, 0, -1) - cdouble(1.0)) < 1e-14);
  CHECK(std::abs(t.at(0, 0, 0) - cdouble(2.0)) < 1e-14);
  CHECK(std::abs(t.at(0, 0, 1) - cdouble(1.0)) < 1e-14);
}

TEST_CASE("argument checks") {
  const SequenceSet set(2, 4);
  CHECK_THROWS_AS(correlate_brute(set, 2, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(correlate_brute(set, 0, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(correlate_brute(set, 0, 0, -4), std::invalid_argument);
  const CorrelationTable t = correlate_all_fft(set);
  CHECK_THROWS_AS(t.at(0, 0, 4), std::out_of_range);
  const LagConstraintSet empty(2, 4, {});
  CHECK_THROWS_AS(psl(t, empty), std::invalid_argument);
  CHECK_THROWS_AS(isl(t, empty), std::invalid_argument);
}

TEST_CASE("fft table agrees with direct sums") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::size_t L = 1 + seed % 3;
    const std::size_t M = 5 + 7 * seed;
    const SequenceSet set = init_random(L, M, seed);
    const CorrelationTable t = correlate_all_fft(set);
    double worst = 0.0;
    const long lag = static_cast<long>(M) - 1;
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = 0; j < L; ++j)
        for (long k = -lag; k <= lag; ++k)
          worst = std::max(worst, std::abs(t.at(i, j, k) - correlate_brute(set, i, j, k)));
    CHECK(worst <= 1e-10 * static_cast<double>(M));
  }
}

TEST_CASE("conjugate symmetry between mirrored pairs") {
  const SequenceSet set = init_random(2, 23, 11);
  const CorrelationTable t = correlate_all_fft(set);
  for (long k = -22; k <= 22; ++k) {
    CHECK(t.at(0, 1, k) == std::conj(t.at(1, 0, -k)));
    CHECK(std::abs(t.at(0, 1, k)) == std::abs(t.at(1, 0, -k)));
  }
}

TEST_CASE("side-lobe metrics") {
  SUBCASE("two-element sequence") {
    const SequenceSet set(1, 2);
    const auto K = LagConstraintSet::all(1, 2);
    const auto t = correlate_all_fft(set);
    CHECK(psl(t, K).value == doctest::Approx(1.0));
    CHECK(isl(t, K) == doctest::Approx(1.0));
  }
  SUBCASE("three ones") {
    const SequenceSet set(1, 3);
    CHECK(isl(correlate_all_fft(set), LagConstraintSet::all(1, 3)) == doctest::Approx(5.0));
  }
  SUBCASE("barker 13") { CHECK(psl_of(barker13()) == doctest::Approx(1.0).epsilon(1e-12)); }
  SUBCASE("isl dominates squared psl") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SequenceSet set = init_random(2, 30, seed);
      const auto K = LagConstraintSet::all(2, 30);
      const auto t = correlate_all_fft(set);
      const double p = psl(t, K).value;
      CHECK(isl(t, K) >= p * p);
    }
  }
  SUBCASE("argmax is the first maximizer") {
    const SequenceSet set(1, 4);
    const auto peak = psl(correlate_all_fft(set), LagConstraintSet::all(1, 4));
    CHECK(peak.value == doctest::Approx(3.0));
    CHECK(peak.position == 0);
    CHECK(peak.constraint == LagConstraint{0, 0, 1});
  }
}

TEST_CASE("psl is invariant to a common phase rotation and to conjugation") {
  const SequenceSet set = init_random(2, 40, 3);
  std::vector<double> rotated = set.phases(), conjugated = set.phases();
  for (auto& v : rotated) v += 0.7;
  for (auto& v : conjugated) v = -v;
  const double base = psl_of(set);
  CHECK(psl_of(SequenceSet(2, 40, rotated)) == doctest::Approx(base).epsilon(1e-12));
  CHECK(psl_of(SequenceSet(2, 40, conjugated)) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("constraint enumeration") {
  const auto K = LagConstraintSet::all(3, 5);
  CHECK(K.size() == 3 * 4 + 3 * 2 * 5);
  CHECK(K[0] == LagConstraint{0, 0, 1});
  CHECK(K[4] == LagConstraint{0, 1, 0});
  CHECK_FALSE(LagConstraintSet::admissible({0, 0, 0}, 3, 5));
  CHECK_FALSE(LagConstraintSet::admissible({0, 1, 5}, 3, 5));
  CHECK_THROWS_AS(LagConstraintSet(3, 5, {{0, 0, 1}, {0, 0, 1}}), std::invalid_argument);
  const auto sub = K.subset({4, 0});
  CHECK(sub.size() == 2);
  CHECK(sub[0] == K[4]);
}

TEST_CASE("sequence set validation") {
  CHECK_THROWS_AS(SequenceSet(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSet(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSet(1, 2, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSet(1, 2, {0.0, std::nan("")}), std::invalid_argument);
  const SequenceSet set = init_random(2, 9, 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t m = 0; m < 9; ++m) CHECK(std::abs(set.element(i, m)) == doctest::Approx(1.0));
  const SequenceSet back = SequenceSet::from_real_stack(2, 9, set.real_stack());
  CHECK((back.stacked() - set.stacked()).norm() < 1e-14);
}

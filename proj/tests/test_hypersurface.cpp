#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cic/hypersurface.hpp"

using namespace cic;

namespace {

bool every_subset_passes(const std::vector<double>& l) {
  const std::size_t n = l.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const std::array<double, 4> s{l[a], l[b], l[c], l[d]};
          if (!pairing_test(s)) return false;
        }
  return true;
}

}  // namespace

TEST(Pairings, Examples) {
  const std::array<double, 4> a{1, 1, 1, 2};
  const std::array<double, 4> b{1, 2, 3, 4};
  const std::array<double, 4> z{0, 0, 0, 0};
  EXPECT_TRUE(pairing_test(a));
  EXPECT_FALSE(pairing_test(b));
  EXPECT_TRUE(pairing_test(z));
  const auto p = pairings(b);
  EXPECT_EQ(p[0], 14.0);
  EXPECT_EQ(p[1], 11.0);
  EXPECT_EQ(p[2], 10.0);
}

TEST(TwoCurvatureForm, Examples) {
  const auto f = two_curvature_form({0.0, {-1, -1, -1, 1}});
  EXPECT_EQ(f.lambda, -1.0);
  EXPECT_EQ(f.mu, 1.0);
  EXPECT_EQ(f.n, 4u);

  const auto u = two_curvature_form({0.0, {2, 2, 2, 2}});
  EXPECT_EQ(u.lambda, 2.0);
  EXPECT_EQ(u.mu, 2.0);

  const auto moved = two_curvature_form({0.0, {3, 0.5, 0.5, 0.5, 0.5}});
  EXPECT_EQ(moved.lambda, 0.5);
  EXPECT_EQ(moved.mu, 3.0);
}

TEST(TwoCurvatureForm, RejectsWithFailingSubset) {
  try {
    two_curvature_form({0.0, {1, 1, 2, 2}});
    FAIL() << "expected SpectrumError";
  } catch (const SpectrumError& e) {
    const auto& s = e.subset();
    const std::array<double, 4> vals{1, 1, 2, 2};
    std::array<double, 4> picked{vals[s[0]], vals[s[1]], vals[s[2]], vals[s[3]]};
    EXPECT_FALSE(pairing_test(picked));
  }
  const std::vector<double> three{0.1, 0.2, 0.3, 0.3, 0.3};
  try {
    two_curvature_form({0.0, three});
    FAIL() << "expected SpectrumError";
  } catch (const SpectrumError& e) {
    const auto& s = e.subset();
    std::array<double, 4> picked{three[s[0]], three[s[1]], three[s[2]], three[s[3]]};
    EXPECT_FALSE(pairing_test(picked));
  }
  EXPECT_THROW(two_curvature_form({0.0, {1, 2, 3}}), std::invalid_argument);
}

TEST(TwoCurvatureForm, AgreesWithPairingTestOnPlantedSpectra) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 4 + trial % 4;
    std::vector<double> l(n);
    const double a = u(rng), b = u(rng), c = u(rng);
    switch (trial % 5) {
      case 0: std::fill(l.begin(), l.end(), a); break;                       // umbilical
      case 1: std::fill(l.begin(), l.end(), a); l[0] = b; break;             // (n-1, 1)
      case 2: std::fill(l.begin(), l.end(), a); l[0] = l[1] = b; break;      // (n-2, 2)
      case 3: std::fill(l.begin(), l.end(), a); l[0] = b; l[1] = c; break;   // three values
      default: for (auto& v : l) v = u(rng); break;
    }
    std::shuffle(l.begin(), l.end(), rng);
    bool ok = true;
    try {
      const auto f = two_curvature_form({0.0, l});
      EXPECT_EQ(std::count_if(l.begin(), l.end(), [&](double v) { return std::abs(v - f.lambda) <= 1e-9; }) +
                    (f.lambda == f.mu ? 0 : 1),
                static_cast<long>(n));
    } catch (const SpectrumError&) {
      ok = false;
    }
    EXPECT_EQ(ok, every_subset_passes(l)) << "trial " << trial;
  }
}

TEST(CicFromSpectrum, Examples) {
  EXPECT_EQ(cic_from_spectrum(0, -1, 1), 0.0);
  EXPECT_EQ(cic_from_spectrum(0, 1, 1), 4.0);
  EXPECT_EQ(cic_from_spectrum(0.75, -0.5, 1.5), 2.0);
}

TEST(MeanCurvature, Examples) {
  EXPECT_EQ(mean_curvature({-0.5, 1.5, 4}), 0.0);
  EXPECT_EQ(mean_curvature({0, 0, 5}), 0.0);
  EXPECT_EQ(mean_curvature({1, 1, 4}), 4.0);
}

TEST(CmcLambdaSolve, Examples) {
  auto r = cmc_lambda_solve(4, 0.75, 2, 0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].lambda, -0.5, 1e-15);
  EXPECT_NEAR(r[1].lambda, 0.5, 1e-15);
  EXPECT_NEAR(r[0].lambda, -std::sqrt(0.75 - 2.0 / 4), 1e-15);

  r = cmc_lambda_solve(5, 1, 4, 0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].lambda, 0.0);
  EXPECT_EQ(r[0].mu, 0.0);

  r = cmc_lambda_solve(4, 0, 4, 4);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].lambda, 1.0);
  EXPECT_EQ(r[0].mu, 1.0);
  EXPECT_EQ(cic_from_spectrum(0, 1, 1), 4.0);

  EXPECT_TRUE(cmc_lambda_solve(4, 1, 5, 0).empty());
  EXPECT_THROW(cmc_lambda_solve(3, 0, 0, 0), std::invalid_argument);
}

TEST(CmcLambdaSolve, RoundTrip) {
  for (std::size_t n : {4, 5, 6}) {
    for (double c = -1.0; c <= 1.0; c += 0.5) {
      for (double lambda = -1.5; lambda <= 1.5; lambda += 0.5) {
        for (double mu = -1.5; mu <= 1.5; mu += 0.5) {
          const double C = cic_from_spectrum(c, lambda, mu);
          const double H = static_cast<double>(n - 1) * lambda + mu;
          const auto roots = cmc_lambda_solve(n, c, C, H);
          ASSERT_FALSE(roots.empty());
          bool found = false;
          for (const auto& r : roots) {
            EXPECT_NEAR(cic_from_spectrum(c, r.lambda, r.mu), C, 1e-12);
            found = found || (std::abs(r.lambda - lambda) <= 1e-10 && std::abs(r.mu - mu) <= 1e-10);
          }
          EXPECT_TRUE(found) << n << " " << c << " " << lambda << " " << mu;
        }
      }
    }
  }
}

TEST(CmcLambdaSolve, LargeMeanCurvatureStaysAccurate) {
  // H^2 >> |(2-n)(C-4c)| is where the textbook formula cancels.
  const double c = 0.0, lambda = 1e-6, mu = 1e6;
  const double C = cic_from_spectrum(c, lambda, mu);
  const auto roots = cmc_lambda_solve(4, c, C, 3 * lambda + mu);
  ASSERT_EQ(roots.size(), 2u);
  const double small = std::abs(roots[0].lambda) < std::abs(roots[1].lambda) ? roots[0].lambda : roots[1].lambda;
  EXPECT_NEAR(small, lambda, 1e-18);
}

TEST(MinimalClassify, Examples) {
  const auto v = minimal_classify(4, 0.75, 2);
  EXPECT_EQ(v.tag, MinimalTag::Clifford);
  EXPECT_NEAR(v.lambda, -0.5, 1e-15);
  EXPECT_NEAR(v.mu, 1.5, 1e-15);
  EXPECT_NEAR(v.profile_x0, 1.0, 1e-15);
  EXPECT_EQ(minimal_classify(5, 1, 4).tag, MinimalTag::TotallyGeodesic);
  EXPECT_EQ(minimal_classify(4, 1, 5).tag, MinimalTag::None);
  EXPECT_EQ(minimal_classify(4, -1, -4).tag, MinimalTag::TotallyGeodesic);
  EXPECT_EQ(minimal_classify(4, 1, 3).tag, MinimalTag::None);
  EXPECT_EQ(minimal_classify(5, 1, 8.0 / 3).tag, MinimalTag::None);
}

TEST(MinimalClassify, CliffordData) {
  for (double c : {0.25, 0.75, 1.0, 2.0}) {
    const auto v = minimal_classify(4, c, 8 * c / 3);
    ASSERT_EQ(v.tag, MinimalTag::Clifford);
    EXPECT_LE(std::abs(mean_curvature({v.lambda, v.mu, 4})), 1e-14);
    EXPECT_NEAR(cic_from_spectrum(c, v.lambda, v.mu), 8 * c / 3, 1e-12);
    EXPECT_NEAR(v.lambda, -std::sqrt(c / 3), 1e-12);
    EXPECT_NEAR(v.profile_x0, std::sqrt(3 / (4 * c)), 1e-15);
    // The Clifford product S3(4c/3) x S1(4c) has principal curvatures
    // -sqrt(c/3) (three times) and sqrt(3c).
    EXPECT_NEAR(v.lambda * v.lambda + c, 4 * c / 3, 1e-12);
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "cic/curvature.hpp"
#include "cic/probe.hpp"

using namespace cic;

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n, 0.0);
  v[i] = 1.0;
  return v;
}

// Sum of Kulkarni-Nomizu squares h owedge h of random symmetric h; satisfies
// every curvature identity by construction.
CurvatureTensor random_tensor(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CurvatureTensor t(n);
  for (int term = 0; term < 3; ++term) {
    std::vector<double> h(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) h[i * n + j] = h[j * n + i] = g(rng);
    const double sign = term == 1 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l)
            t.raw(i, j, k, l) += sign * (h[i * n + k] * h[j * n + l] - h[i * n + l] * h[j * n + k]);
  }
  return t;
}

double naive_contract(const CurvatureTensor& t, const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
  const std::size_t n = t.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) s += t(i, j, k, l) * x[i] * y[j] * z[k] * w[l];
  return s;
}

double naive_isotropic(const CurvatureTensor& t, const OrthoFrame4& f) {
  auto K = [&](std::size_t a, std::size_t b) { return naive_contract(t, f[a], f[b], f[a], f[b]); };
  return K(0, 2) + K(0, 3) + K(1, 2) + K(1, 3) - 2.0 * naive_contract(t, f[0], f[1], f[2], f[3]);
}

}  // namespace

TEST(ConstantCurvature, ComponentsAndSectional) {
  const auto s3 = build_constant_curvature(3, 1.0);
  EXPECT_EQ(s3(0, 1, 0, 1), 1.0);
  EXPECT_EQ(s3(0, 1, 1, 0), -1.0);
  EXPECT_EQ(s3(0, 1, 0, 2), 0.0);

  const auto flat = build_constant_curvature(4, 0.0);
  for (double v : flat.data()) EXPECT_EQ(v, 0.0);

  const auto t = build_constant_curvature(4, 2.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) {
        EXPECT_DOUBLE_EQ(sectional(t, unit(4, i), unit(4, j)), 2.0);
      }
    }

  EXPECT_THROW(build_constant_curvature(0, 1.0), std::invalid_argument);
}

TEST(ConstantCurvature, SectionalOnRandomPlanesAndIsotropicValue) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const auto t = build_constant_curvature(6, -0.7);
  for (int i = 0; i < 50; ++i) {
    Vector x(6), y(6);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = g(rng);
    EXPECT_NEAR(sectional(t, x, y), -0.7, 1e-12);
  }
  for (const auto& f : sample_frames(6, 50, 11)) EXPECT_NEAR(isotropic_component(t, f), 4 * -0.7, 1e-12);
}

TEST(Product, BlocksAndMixedPlanes) {
  const auto s3r = build_product(parse_product_spec("S3:1 x R1"));
  EXPECT_DOUBLE_EQ(sectional(s3r, unit(4, 0), unit(4, 1)), 1.0);
  EXPECT_DOUBLE_EQ(sectional(s3r, unit(4, 0), unit(4, 3)), 0.0);
  EXPECT_DOUBLE_EQ(isotropic_component(s3r, OrthoFrame4::basis(4, {0, 1, 2, 3})), 2.0);

  const auto s2h2 = build_product(parse_product_spec("S2:1 x H2:-1"));
  EXPECT_DOUBLE_EQ(sectional(s2h2, unit(4, 0), unit(4, 1)), 1.0);
  EXPECT_DOUBLE_EQ(sectional(s2h2, unit(4, 2), unit(4, 3)), -1.0);
  EXPECT_DOUBLE_EQ(sectional(s2h2, unit(4, 1), unit(4, 2)), 0.0);
  EXPECT_DOUBLE_EQ(isotropic_component(s2h2, OrthoFrame4::basis(4, {0, 2, 1, 3})), 0.0);

  const auto s3s1 = build_product(parse_product_spec("S3:1 x S1"));
  for (std::size_t k = 0; k < s3r.data().size(); ++k) EXPECT_EQ(s3s1.data()[k], s3r.data()[k]);

  const auto s5r = build_product(parse_product_spec("S5:1 x R1"));
  EXPECT_DOUBLE_EQ(isotropic_component(s5r, OrthoFrame4::basis(6, {0, 1, 2, 3})), 4.0);
  EXPECT_DOUBLE_EQ(isotropic_component(s5r, OrthoFrame4::basis(6, {0, 1, 2, 5})), 2.0);
}

TEST(Product, ParseAndValidate) {
  const auto spec = parse_product_spec("S3 x S1");
  ASSERT_EQ(spec.factors.size(), 2u);
  EXPECT_EQ(spec.factors[0].kind, FactorKind::Sphere);
  EXPECT_EQ(spec.factors[0].curvature, 1.0);
  EXPECT_EQ(spec.total_dim(), 4u);
  EXPECT_EQ(parse_product_spec("H4").factors[0].curvature, -1.0);
  EXPECT_EQ(to_string(parse_product_spec("S2:1 x H2:-1")), "S2:1 x H2:-1");

  for (const char* bad : {"", "Q3:1", "S3:-1", "H2:1", "R2:1 x R2:2", "S0 x R4", "S3", "S2 x", "Sx"}) {
    EXPECT_THROW(parse_product_spec(bad), std::invalid_argument) << bad;
  }
}

TEST(GaussTensor, SectionalCurvatures) {
  const std::vector<double> prop{-1, -1, -1, 1};
  const auto t = build_from_shape(0.0, prop);
  EXPECT_DOUBLE_EQ(sectional(t, unit(4, 0), unit(4, 1)), 1.0);
  EXPECT_DOUBLE_EQ(sectional(t, unit(4, 0), unit(4, 3)), -1.0);
  EXPECT_EQ(t(0, 1, 2, 3), 0.0);
  EXPECT_EQ(t(0, 1, 0, 2), 0.0);

  const std::vector<double> ones{1, 1, 1, 1};
  const auto sphere = build_from_shape(0.0, ones);
  const auto unit_sphere = build_constant_curvature(4, 1.0);
  for (std::size_t k = 0; k < sphere.data().size(); ++k) EXPECT_EQ(sphere.data()[k], unit_sphere.data()[k]);

  const std::vector<double> zeros(4, 0.0);
  const auto tg = build_from_shape(1.0, zeros);
  for (std::size_t k = 0; k < tg.data().size(); ++k) EXPECT_EQ(tg.data()[k], unit_sphere.data()[k]);

  const std::vector<double> three{1, 2, 3};
  EXPECT_THROW(build_from_shape(0.0, three), std::invalid_argument);
}

TEST(Sectional, RejectsDegeneratePlanes) {
  const auto t = build_constant_curvature(4, 1.0);
  const Vector x{1, 0, 0, 0};
  EXPECT_THROW(sectional(t, x, x), std::invalid_argument);
  EXPECT_THROW(sectional(t, x, Vector{2, 1e-8, 0, 0}), std::invalid_argument);
}

TEST(Frames, RejectNonOrthonormal) {
  std::array<Vector, 4> v{unit(4, 0), unit(4, 1), unit(4, 2), Vector{0, 0, 1e-9, 1}};
  EXPECT_THROW(OrthoFrame4{v}, std::invalid_argument);
  std::array<Vector, 4> small{unit(3, 0), unit(3, 1), unit(3, 2), unit(3, 0)};
  EXPECT_THROW(OrthoFrame4{small}, std::invalid_argument);
}

TEST(Symmetries, ConstructionsAreExact) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> l(5);
    for (auto& v : l) v = u(rng);
    EXPECT_LE(check_symmetries(build_from_shape(u(rng), l)).worst(), 1e-14);
  }
  for (const char* spec : {"S3:1 x R1", "S2:0.5 x H2:-0.5", "S5:1 x R1", "H3:-2 x S2:3 x R1"}) {
    EXPECT_LE(check_symmetries(build_product(parse_product_spec(spec))).worst(), 1e-14) << spec;
  }
  EXPECT_LE(check_symmetries(build_constant_curvature(5, 1.5)).worst(), 1e-14);
}

TEST(Symmetries, DetectsHandCorruption) {
  auto t = build_constant_curvature(4, 1.0);
  t.raw(0, 1, 0, 1) += 1.0;
  const auto rep = check_symmetries(t);
  EXPECT_GT(rep.pair_symmetry + rep.antisymmetry, 0.5);
  EXPECT_FALSE(rep.within(1e-6));

  auto b = CurvatureTensor(4);
  b.set_symmetric(0, 1, 2, 3, 1.0);  // antisymmetric and pair symmetric, but not Bianchi
  const auto rb = check_symmetries(b);
  EXPECT_EQ(rb.antisymmetry, 0.0);
  EXPECT_EQ(rb.pair_symmetry, 0.0);
  EXPECT_GT(rb.bianchi, 0.5);
}

TEST(Projection, AgreesWithNaiveContraction) {
  std::mt19937_64 rng(17);
  for (std::size_t n : {4, 6}) {
    const auto t = random_tensor(n, rng);
    ASSERT_LE(check_symmetries(t).worst(), 1e-12);
    for (const auto& f : sample_frames(n, 100, 99)) {
      const auto p = project_to_frame(t, f);
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          for (std::size_t c = 0; c < 4; ++c)
            for (std::size_t d = 0; d < 4; ++d) {
              ASSERT_NEAR(p[((a * 4 + b) * 4 + c) * 4 + d], naive_contract(t, f[a], f[b], f[c], f[d]), 1e-12);
            }
      EXPECT_NEAR(isotropic_component(t, f), naive_isotropic(t, f), 1e-12);
    }
  }
}

TEST(Projection, RejectsMismatchedDimension) {
  const auto t = build_constant_curvature(5, 1.0);
  EXPECT_THROW(isotropic_component(t, OrthoFrame4::basis(4, {0, 1, 2, 3})), std::invalid_argument);
}

TEST(TensorJson, RoundTrip) {
  std::mt19937_64 rng(23);
  const auto t = random_tensor(5, rng);
  const auto j = to_json(t);
  EXPECT_EQ(j["dim"], 5);
  for (const auto& e : j["components"]) {
    const auto i = e[0].get<std::size_t>(), jj = e[1].get<std::size_t>();
    const auto k = e[2].get<std::size_t>(), l = e[3].get<std::size_t>();
    EXPECT_LT(i, jj);
    EXPECT_LT(k, l);
    EXPECT_TRUE(i < k || (i == k && jj <= l));
  }
  const auto back = tensor_from_json(j);
  for (std::size_t k = 0; k < t.data().size(); ++k) EXPECT_EQ(back.data()[k], t.data()[k]);
}

TEST(TensorJson, RejectsBadEntries) {
  EXPECT_THROW(tensor_from_json(nlohmann::json{{"dim", 4}, {"components", {{1, 0, 2, 3, 1.0}}}}), std::invalid_argument);
  EXPECT_THROW(tensor_from_json(nlohmann::json{{"dim", 4}, {"components", {{0, 1, 2, 7, 1.0}}}}), std::invalid_argument);
  EXPECT_THROW(tensor_from_json(nlohmann::json{{"dim", 4}, {"components", {{0, 1, 2}}}}), std::invalid_argument);
}

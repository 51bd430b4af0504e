#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cic {

/// Values closer than this are treated as one principal curvature.
inline constexpr double kDistinctTolerance = 1e-9;

/// Ambient curvature c plus the principal curvatures at one point.
struct ShapeSpectrum {
  double c = 0.0;
  std::vector<double> lambdas;
};

/// Spectrum with at most two values: `lambda` of multiplicity >= n-1 and
/// `mu` of multiplicity 1. Umbilical points have lambda == mu.
struct TwoCurvatureForm {
  double lambda = 0.0;
  double mu = 0.0;
  std::size_t n = 0;
};

/// Raised when a spectrum cannot come from a CIC hypersurface. `subset`
/// holds the (zero-based) indices of a 4-subset whose pairings disagree.
class SpectrumError : public std::invalid_argument {
 public:
  SpectrumError(const std::string& what, std::array<std::size_t, 4> subset)
      : std::invalid_argument(what), subset_(subset) {}
  const std::array<std::size_t, 4>& subset() const { return subset_; }

 private:
  std::array<std::size_t, 4> subset_;
};

/// The three pairings l1 l2 + l3 l4, l1 l3 + l2 l4, l1 l4 + l2 l3.
std::array<double, 3> pairings(std::span<const double, 4> l);

/// True iff the three pairings agree within `tol`.
bool pairing_test(std::span<const double, 4> l, double tol = kDistinctTolerance);

TwoCurvatureForm two_curvature_form(const ShapeSpectrum& s, double tol = kDistinctTolerance);

/// 4c + 2(lambda^2 + lambda mu).
double cic_from_spectrum(double c, double lambda, double mu);

/// (n-1) lambda + mu.
double mean_curvature(const TwoCurvatureForm& form);

struct CmcRoot {
  double lambda;
  double mu;
};

/// Real roots of (2-n) lambda^2 + H lambda - (C-4c)/2 = 0, each paired with
/// mu = H - (n-1) lambda. A double root is returned once.
std::vector<CmcRoot> cmc_lambda_solve(std::size_t n, double c, double C, double H);

enum class MinimalTag { TotallyGeodesic, Clifford, None };

struct MinimalVerdict {
  MinimalTag tag = MinimalTag::None;
  // Populated for Clifford.
  double lambda = 0.0;
  double mu = 0.0;
  double profile_x0 = 0.0;
};

/// Which minimal hypersurfaces of M^{n+1}(c) have constant isotropic
/// curvature C.
MinimalVerdict minimal_classify(std::size_t n, double c, double C);

std::string to_string(MinimalTag tag);

}  // namespace cic

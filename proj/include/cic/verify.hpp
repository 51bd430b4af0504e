#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cic/curvature.hpp"
#include "cic/probe.hpp"
#include "cic/profile.hpp"

namespace cic {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t frames = kDefaultFrames;
  Window window;
  double step = 1e-3;
  double tol = kDefaultProbeTolerance;
  OutputFormat format = OutputFormat::Csv;

  /// Throws std::invalid_argument unless frames >= 2, grid >= 2, step > 0, tol > 0.
  void validate() const;
};

/// Builds the curvature tensor of a hypersurface from its principal
/// curvatures. Replaceable so that a corrupted builder can be shown to fail.
using GaussBuilder = std::function<CurvatureTensor(double c, std::span<const double> lambdas)>;

struct VerifyOptions {
  RunConfig config;
  GaussBuilder gauss = [](double c, std::span<const double> l) { return build_from_shape(c, l); };
};

struct SuiteResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

SuiteResult check_product_cylinder(const VerifyOptions& opt);     // 1
SuiteResult check_product_suite(const VerifyOptions& opt);        // 2
SuiteResult check_parabolic_profiles(const VerifyOptions& opt);   // 3
SuiteResult check_gauss_identity(const VerifyOptions& opt);       // 4
SuiteResult check_profile_ode(const VerifyOptions& opt);          // 5
SuiteResult check_decision_table(const VerifyOptions& opt);       // 6
SuiteResult check_obstructions(const VerifyOptions& opt);         // 7
SuiteResult check_minimal(const VerifyOptions& opt);              // 8

/// Runs suites 1 through 8 in order.
std::vector<SuiteResult> run_all(const VerifyOptions& opt);

/// Uniform doubles in [0, 1) built from raw 64-bit engine output so that the
/// stream is identical across standard libraries.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed);
  double next();
  double in(double lo, double hi) { return lo + (hi - lo) * next(); }
  int pick(int lo, int hi);  ///< integer in [lo, hi]

 private:
  std::mt19937_64 engine_;
};

}  // namespace cic

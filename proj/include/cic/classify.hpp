#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cic/number.hpp"
#include "cic/profile.hpp"
#include "json.hpp"

namespace cic {

/// Tolerance on C - 2c, C - 4c and C when an operand is not an exact rational.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Complete CIC hypersurface of M^{n+1}(c) with isotropic curvature C.
struct ClassQuery {
  std::size_t n = 4;
  Number c;
  Number C;

  void validate() const;
};

enum class OutcomeTag { Empty, TotallyGeodesic, UmbilicalNonTG, ConstantCurvature, FlatLocal, RotationFamily };

std::string to_string(OutcomeTag tag);

/// Real interval with independently open or closed ends. `hi` may be +inf.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double v) const;
  bool non_empty() const;
  /// Midpoint, or lo + 1 when unbounded above.
  double interior_point() const;
  std::string describe() const;
};

struct ClassificationOutcome {
  OutcomeTag tag = OutcomeTag::Empty;
  /// Empty: the violated bound, e.g. "C ≤ 2c".
  std::string reason;
  /// UmbilicalNonTG: lambda^2 = (C - 4c)/4.
  std::optional<double> lambda_sq;

  // RotationFamily only.
  std::optional<FamilyTag> family;
  std::optional<Interval> alpha;  ///< Trig
  std::optional<Interval> beta;   ///< Parabolic
  std::vector<int> deltas;        ///< admissible parallel types
  std::vector<std::string> conditions;

  nlohmann::json constraints() const;
};

/// Every complete CIC hypersurface compatible with the query. An impossible
/// query yields a single Empty outcome carrying the reason.
std::vector<ClassificationOutcome> classify(const ClassQuery& q);

bool is_empty(const std::vector<ClassificationOutcome>& outcomes);

/// Canonical interior member of a RotationFamily outcome, together with the
/// ambient it lives in. Symbolic outcomes return nullopt.
struct Witness {
  ProfileFamily family;
  AmbientSpec ambient;
};
std::optional<Witness> witness(const ClassificationOutcome& o, const ClassQuery& q);

struct WitnessCheck {
  DomainVerdict domain;
  double mean = 0.0;
  double deviation = 0.0;

  bool passes(double C, double tol) const;
};

/// domain_check plus cic_along_profile over the window.
WitnessCheck verify_witness(const Witness& w, const Window& window = {});

/// The candidate profile an impossible query rules out, and where it breaks.
struct NonexistenceEvidence {
  std::string mechanism;
  std::optional<ProfileFamily> candidate;
  AmbientSpec ambient;
  std::optional<FirstFailure> failure;
  /// n >= 5: the umbilical model would need lambda^2 = (C - 4c)/4 < 0.
  std::optional<double> lambda_sq;
};

/// Throws std::invalid_argument when classify(q) is not Empty, and
/// std::runtime_error if the candidate survives the window.
NonexistenceEvidence nonexistence_witness(const ClassQuery& q, const Window& window = {});

nlohmann::json to_json(const ClassQuery& q);
nlohmann::json to_json(const NonexistenceEvidence& e);

}  // namespace cic

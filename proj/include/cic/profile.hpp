#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace cic {

/// Threshold on delta - c x^2 - x'^2 below which the principal curvatures of
/// a rotation hypersurface are undefined.
inline constexpr double kDomainEpsilon = 1e-9;

inline constexpr double kDefaultWindowMin = -10.0;
inline constexpr double kDefaultWindowMax = 10.0;
inline constexpr std::size_t kDefaultGridPoints = 2001;

/// Ambient space form M^5(c) together with the parallel type of the
/// rotation hypersurface: 1 spherical, 0 parabolic, -1 hyperbolic. Only
/// hyperbolic space (c < 0) admits delta != 1.
struct AmbientSpec {
  double c = 0.0;
  int delta = 1;

  static AmbientSpec make(double c, int delta = 1);
  void validate() const;
};

/// Principal curvatures were requested where delta - c x^2 - x'^2 <= 0.
class DomainBreakdown : public std::runtime_error {
 public:
  DomainBreakdown(const std::string& what, double s, double radicand)
      : std::runtime_error(what), s_(s), radicand_(radicand) {}
  double s() const { return s_; }
  double radicand() const { return radicand_; }

 private:
  double s_;
  double radicand_;
};

enum class FamilyTag { Trig, Parabolic, Exponential, Quadratic };

std::string to_string(FamilyTag tag);

/// x = sqrt(2/C) sqrt(1 - alpha sin(sqrt(C) s)),  C > 0, 0 <= alpha < 1.
struct TrigParams {
  double C;
  double alpha;
};
/// x = sqrt(s^2 + beta),  beta > 0.
struct ParabolicParams {
  double beta;
};
/// x = sqrt(2/-C) sqrt(A e^{a s} + B e^{-a s} - delta),  a = sqrt(-C), C < 0,
/// A, B >= 0, A + B > delta, 4AB > delta^2.
struct ExponentialParams {
  double C;
  double A;
  double B;
  int delta;
};
/// x = sqrt(delta s^2 + A s + B). For delta = 1: B > 0 and A^2 < 4B.
struct QuadraticParams {
  double A;
  double B;
  int delta;
};

struct ProfileState {
  double x;
  double xp;
  double xpp;
};

/// u = x^2 and its first two derivatives.
struct SquareState {
  double u;
  double up;
  double upp;
};

/// Closed-form profile x(s) of a rotation hypersurface. Every family solves
/// (x x')' = delta - (C/2) x^2, i.e. u'' = 2 delta - C u for u = x^2.
class ProfileFamily {
 public:
  static ProfileFamily trig(double C, double alpha);
  static ProfileFamily parabolic(double beta);
  static ProfileFamily exponential(double C, double A, double B, int delta = 1);
  static ProfileFamily quadratic(double A, double B, int delta = 1);

  FamilyTag tag() const;
  const auto& params() const { return params_; }

  /// Constants of the profile ODE this family solves.
  double ode_C() const;
  int ode_delta() const;
  /// K = 4 delta u - C u^2 - u'^2, constant along every solution.
  double first_integral() const;

  SquareState square(double s) const;
  /// Analytic (x, x', x''). Throws DomainBreakdown where u <= 0, which only
  /// the parabolic/hyperbolic quadratic variants reach.
  ProfileState eval(double s) const;

  nlohmann::json to_json() const;
  std::string describe() const;

 private:
  using Params = std::variant<TrigParams, ParabolicParams, ExponentialParams, QuadraticParams>;
  explicit ProfileFamily(Params p) : params_(p) {}
  Params params_;
};

struct PrincipalPair {
  double lambda;
  double mu;
};

/// lambda = -sqrt(delta - c x^2 - x'^2) / x,
/// mu = (x'' + c x) / sqrt(delta - c x^2 - x'^2).
/// Throws DomainBreakdown when the radicand is <= kDomainEpsilon.
PrincipalPair principal_curvatures(const AmbientSpec& a, double x, double xp, double xpp);

/// delta - c x^2 - x'^2 along the family, written through the first integral:
/// (delta_a - delta_f) + (C/4 - c) u + K / (4u). `scale` receives the sum of
/// the magnitudes of those three terms.
double domain_radicand(const ProfileFamily& f, const AmbientSpec& a, double s, double* scale = nullptr);

/// |d/ds (x x') - (delta - (C/2) x^2)| with the derivative taken by central
/// difference of step h.
double ode_residual(const ProfileFamily& f, double C, int delta, double s, double h);

struct ProfilePoint {
  double s;
  double x;
  double xp;
};

struct ProfileCrossing {
  double s;  ///< where u = x^2 fell to kDomainEpsilon
  int direction;  ///< +1 forward sweep, -1 backward sweep
};

struct IntegrationResult {
  std::vector<ProfilePoint> points;  ///< ascending in s
  std::vector<ProfileCrossing> crossings;
  bool ok() const { return crossings.empty(); }
};

/// Classical RK4 on u'' = 2 delta - C u, u = x^2, from s = 0 with
/// x(0) = x0, x'(0) = v0, swept to +s_max and -s_max. The step is shrunk so
/// that it divides s_max. A sweep stops where u <= kDomainEpsilon.
IntegrationResult integrate_profile(double C, int delta, double x0, double v0, double s_max, double step);

struct Window {
  double lo = kDefaultWindowMin;
  double hi = kDefaultWindowMax;
  std::size_t grid = kDefaultGridPoints;

  double at(std::size_t k) const;
};

enum class FailureKind { NonPositiveProfile, DomainBreakdown };

struct FirstFailure {
  double s;
  FailureKind kind;
  std::string reason;
  double radicand;  ///< delta - c x^2 - x'^2 (or u when kind is NonPositiveProfile)
  double cx2;       ///< c x^2
  double xp2;       ///< x'^2
};

struct DomainVerdict {
  std::optional<FirstFailure> failure;
  bool valid() const { return !failure.has_value(); }
};

/// Visits the grid from the point nearest the window center outward,
/// alternating right then left, and reports the first point where x <= 0 or
/// the radicand is not positive (relative to kDomainEpsilon of its terms).
DomainVerdict domain_check(const ProfileFamily& f, const AmbientSpec& a, const Window& w);

struct ProfileSample {
  double s, x, xp, xpp, lambda, mu, cic;
};

struct ProfileSweep {
  std::vector<ProfileSample> samples;
  double mean = 0.0;
  double deviation = 0.0;  ///< max |cic - mean|
};

/// One sample at s. Both the radicand and x'' + c x are written through the
/// first integral K so that neither cancels for large exponential profiles.
ProfileSample sample_profile(const ProfileFamily& f, const AmbientSpec& a, double s);

/// Samples lambda, mu and 4c + 2(lambda^2 + lambda mu) over the grid.
/// Throws DomainBreakdown at the first grid point outside the domain.
ProfileSweep cic_along_profile(const ProfileFamily& f, const AmbientSpec& a, const Window& w);

/// `s,x,xp,lambda,mu,cic` header plus one round-trip-exact row per sample.
void write_profile_csv(std::ostream& os, const std::vector<ProfileSample>& samples);

}  // namespace cic

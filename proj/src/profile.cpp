#include "cic/profile.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

#include "cic/hypersurface.hpp"
#include "cic/number.hpp"

namespace cic {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool valid_delta(int d) { return d == -1 || d == 0 || d == 1; }

std::string fmt(double v) { return format_double(v); }

}  // namespace

// ---------------------------------------------------------------------------
// AmbientSpec

AmbientSpec AmbientSpec::make(double c, int delta) {
  AmbientSpec a{c, delta};
  a.validate();
  return a;
}

void AmbientSpec::validate() const {
  require(std::isfinite(c), "ambient curvature must be finite");
  require(valid_delta(delta), "parallel type delta must be -1, 0 or 1");
  require(c < 0.0 || delta == 1, "only hyperbolic space (c < 0) admits delta != 1");
}

// ---------------------------------------------------------------------------
// ProfileFamily

std::string to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::Trig: return "Trig";
    case FamilyTag::Parabolic: return "Parabolic";
    case FamilyTag::Exponential: return "Exponential";
    case FamilyTag::Quadratic: return "Quadratic";
  }
  return "?";
}

ProfileFamily ProfileFamily::trig(double C, double alpha) {
  require(std::isfinite(C) && C > 0.0, "Trig profile needs C > 0");
  require(alpha >= 0.0 && alpha < 1.0, "Trig profile needs 0 <= alpha < 1");
  return ProfileFamily(TrigParams{C, alpha});
}

ProfileFamily ProfileFamily::parabolic(double beta) {
  require(std::isfinite(beta) && beta > 0.0, "Parabolic profile needs beta > 0");
  return ProfileFamily(ParabolicParams{beta});
}

ProfileFamily ProfileFamily::exponential(double C, double A, double B, int delta) {
  require(std::isfinite(C) && C < 0.0, "Exponential profile needs C < 0");
  require(valid_delta(delta), "Exponential profile needs delta in {-1, 0, 1}");
  require(A >= 0.0 && B >= 0.0, "Exponential profile needs A, B >= 0");
  require(A + B > delta, "Exponential profile needs A + B > delta");
  require(4.0 * A * B > static_cast<double>(delta * delta), "Exponential profile needs 4AB > delta^2");
  return ProfileFamily(ExponentialParams{C, A, B, delta});
}

ProfileFamily ProfileFamily::quadratic(double A, double B, int delta) {
  require(std::isfinite(A) && std::isfinite(B), "Quadratic profile parameters must be finite");
  require(valid_delta(delta), "Quadratic profile needs delta in {-1, 0, 1}");
  if (delta == 1) {
    require(B > 0.0, "Quadratic profile needs B > 0");
    require(A * A < 4.0 * B, "Quadratic profile needs A^2/(4B) < 1");
  } else if (delta == 0) {
    // u = B constant is the umbilical horosphere, not a member of the family.
    require(A != 0.0, "parabolic Quadratic profile needs A != 0");
  }
  return ProfileFamily(QuadraticParams{A, B, delta});
}

FamilyTag ProfileFamily::tag() const { return static_cast<FamilyTag>(params_.index()); }

double ProfileFamily::ode_C() const {
  return std::visit(overloaded{[](const TrigParams& p) { return p.C; },
                               [](const ParabolicParams&) { return 0.0; },
                               [](const ExponentialParams& p) { return p.C; },
                               [](const QuadraticParams&) { return 0.0; }},
                    params_);
}

int ProfileFamily::ode_delta() const {
  return std::visit(overloaded{[](const TrigParams&) { return 1; },
                               [](const ParabolicParams&) { return 1; },
                               [](const ExponentialParams& p) { return p.delta; },
                               [](const QuadraticParams& p) { return p.delta; }},
                    params_);
}

double ProfileFamily::first_integral() const {
  return std::visit(
      overloaded{[](const TrigParams& p) { return 4.0 / p.C * (1.0 - p.alpha * p.alpha); },
                 [](const ParabolicParams& p) { return 4.0 * p.beta; },
                 [](const ExponentialParams& p) {
                   return 4.0 * (4.0 * p.A * p.B - p.delta * p.delta) / (-p.C);
                 },
                 [](const QuadraticParams& p) { return 4.0 * p.delta * p.B - p.A * p.A; }},
      params_);
}

SquareState ProfileFamily::square(double s) const {
  return std::visit(
      overloaded{
          [s](const TrigParams& p) {
            const double w = std::sqrt(p.C);
            const double sn = std::sin(w * s);
            const double cs = std::cos(w * s);
            return SquareState{2.0 / p.C * (1.0 - p.alpha * sn), -2.0 * p.alpha / w * cs,
                               2.0 * p.alpha * sn};
          },
          [s](const ParabolicParams& p) { return SquareState{s * s + p.beta, 2.0 * s, 2.0}; },
          [s](const ExponentialParams& p) {
            const double a = std::sqrt(-p.C);
            const double P = p.A * std::exp(a * s);
            const double Q = p.B * std::exp(-a * s);
            return SquareState{2.0 / (a * a) * (P + Q - p.delta), 2.0 / a * (P - Q), 2.0 * (P + Q)};
          },
          [s](const QuadraticParams& p) {
            return SquareState{p.delta * s * s + p.A * s + p.B, 2.0 * p.delta * s + p.A,
                               2.0 * p.delta};
          }},
      params_);
}

ProfileState ProfileFamily::eval(double s) const {
  const auto sq = square(s);
  if (!(sq.u > 0.0)) {
    throw DomainBreakdown(describe() + ": x^2 = " + fmt(sq.u) + " <= 0 at s = " + fmt(s), s, sq.u);
  }
  const double x = std::sqrt(sq.u);
  const double xp = sq.up / (2.0 * x);
  // x'' = (u''/2 - x'^2)/x rewritten with the first integral; the direct
  // form cancels badly once the exponential terms dominate.
  const double xpp = (first_integral() / (4.0 * sq.u) - ode_C() * sq.u / 4.0) / x;
  return {x, xp, xpp};
}

nlohmann::json ProfileFamily::to_json() const {
  return std::visit(
      overloaded{
          [](const TrigParams& p) {
            return nlohmann::json{{"family", "Trig"}, {"C", p.C}, {"alpha", p.alpha}};
          },
          [](const ParabolicParams& p) { return nlohmann::json{{"family", "Parabolic"}, {"beta", p.beta}}; },
          [](const ExponentialParams& p) {
            return nlohmann::json{{"family", "Exponential"}, {"C", p.C}, {"A", p.A}, {"B", p.B}, {"delta", p.delta}};
          },
          [](const QuadraticParams& p) {
            return nlohmann::json{{"family", "Quadratic"}, {"A", p.A}, {"B", p.B}, {"delta", p.delta}};
          }},
      params_);
}

std::string ProfileFamily::describe() const {
  return std::visit(
      overloaded{
          [](const TrigParams& p) { return "Trig(C=" + fmt(p.C) + ", alpha=" + fmt(p.alpha) + ")"; },
          [](const ParabolicParams& p) { return "Parabolic(beta=" + fmt(p.beta) + ")"; },
          [](const ExponentialParams& p) {
            return "Exponential(C=" + fmt(p.C) + ", A=" + fmt(p.A) + ", B=" + fmt(p.B) +
                   ", delta=" + std::to_string(p.delta) + ")";
          },
          [](const QuadraticParams& p) {
            return "Quadratic(A=" + fmt(p.A) + ", B=" + fmt(p.B) + ", delta=" + std::to_string(p.delta) + ")";
          }},
      params_);
}

// ---------------------------------------------------------------------------
// Principal curvatures

PrincipalPair principal_curvatures(const AmbientSpec& a, double x, double xp, double xpp) {
  if (!(x > 0.0)) {
    throw DomainBreakdown("profile value x = " + fmt(x) + " is not positive", std::nan(""), x);
  }
  const double radicand = a.delta - a.c * x * x - xp * xp;
  if (!(radicand > kDomainEpsilon)) {
    throw DomainBreakdown("delta - c x^2 - x'^2 = " + fmt(radicand) + " <= " + fmt(kDomainEpsilon),
                          std::nan(""), radicand);
  }
  const double root = std::sqrt(radicand);
  return {-root / x, (xpp + a.c * x) / root};
}

double domain_radicand(const ProfileFamily& f, const AmbientSpec& a, double s, double* scale) {
  const auto sq = f.square(s);
  const double t0 = static_cast<double>(a.delta - f.ode_delta());
  const double t1 = (f.ode_C() / 4.0 - a.c) * sq.u;
  const double t2 = f.first_integral() / (4.0 * sq.u);
  if (scale) *scale = std::abs(t0) + std::abs(t1) + std::abs(t2);
  return t0 + t1 + t2;
}

double ode_residual(const ProfileFamily& f, double C, int delta, double s, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("ode_residual: step must be positive");
  auto flux = [&f](double t) {
    const auto st = f.eval(t);
    return st.x * st.xp;
  };
  const double x = f.eval(s).x;
  const double lhs = (flux(s + h) - flux(s - h)) / (2.0 * h);
  return std::abs(lhs - (delta - 0.5 * C * x * x));
}

// ---------------------------------------------------------------------------
// Integrator

IntegrationResult integrate_profile(double C, int delta, double x0, double v0, double s_max, double step) {
  require(x0 > 0.0, "integrate_profile: x0 must be positive");
  require(step > 0.0, "integrate_profile: step must be positive");
  require(s_max >= 0.0, "integrate_profile: s_max must be non-negative");

  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(s_max / step - 1e-9)));
  const double h = s_max / static_cast<double>(steps);

  using State = std::array<double, 2>;  // (u, u')
  auto rhs = [C, delta](const State& y) { return State{y[1], 2.0 * delta - C * y[0]}; };
  auto axpy = [](const State& y, double a, const State& k) { return State{y[0] + a * k[0], y[1] + a * k[1]}; };

  auto sweep = [&](int dir, std::vector<ProfilePoint>& out, IntegrationResult& res) {
    const double dh = dir * h;
    State y{x0 * x0, 2.0 * x0 * v0};
    for (std::size_t i = 1; i <= steps; ++i) {
      const State k1 = rhs(y);
      const State k2 = rhs(axpy(y, 0.5 * dh, k1));
      const State k3 = rhs(axpy(y, 0.5 * dh, k2));
      const State k4 = rhs(axpy(y, dh, k3));
      State next{y[0] + dh / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                 y[1] + dh / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
      const double s_prev = dir * static_cast<double>(i - 1) * h;
      if (next[0] <= kDomainEpsilon) {
        // Linear interpolation of u between the two steps.
        const double frac = (y[0] - kDomainEpsilon) / (y[0] - next[0]);
        res.crossings.push_back({s_prev + frac * dh, dir});
        return;
      }
      y = next;
      const double x = std::sqrt(y[0]);
      out.push_back({dir * static_cast<double>(i) * h, x, y[1] / (2.0 * x)});
    }
  };

  IntegrationResult res;
  std::vector<ProfilePoint> backward;
  std::vector<ProfilePoint> forward;
  sweep(-1, backward, res);
  sweep(+1, forward, res);

  res.points.reserve(backward.size() + forward.size() + 1);
  res.points.insert(res.points.end(), backward.rbegin(), backward.rend());
  res.points.push_back({0.0, x0, v0});
  res.points.insert(res.points.end(), forward.begin(), forward.end());
  return res;
}

// ---------------------------------------------------------------------------
// Windows and sweeps

double Window::at(std::size_t k) const {
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
}

namespace {

std::optional<FirstFailure> failure_at(const ProfileFamily& f, const AmbientSpec& a, double s) {
  const auto sq = f.square(s);
  if (!(sq.u > 0.0)) {
    return FirstFailure{s, FailureKind::NonPositiveProfile,
                        "x^2 = " + fmt(sq.u) + " <= 0: the profile is not positive", sq.u, 0.0, 0.0};
  }
  double scale = 0.0;
  const double radicand = domain_radicand(f, a, s, &scale);
  if (radicand > kDomainEpsilon * scale) return std::nullopt;

  const double cx2 = a.c * sq.u;
  const double xp2 = sq.up * sq.up / (4.0 * sq.u);
  std::string reason;
  if (a.c > 0.0 && cx2 >= a.delta) {
    reason = "c x^2 = " + fmt(cx2) + " >= delta = " + std::to_string(a.delta);
  } else if (a.delta - cx2 > 0.0) {
    reason = "x'^2 = " + fmt(xp2) + " >= delta - c x^2 = " + fmt(a.delta - cx2);
    if (a.c == 0.0 && a.delta == 1) reason += " (|x'| >= 1)";
  } else {
    reason = "delta - c x^2 - x'^2 = " + fmt(radicand) + " <= 0";
  }
  return FirstFailure{s, FailureKind::DomainBreakdown, reason, radicand, cx2, xp2};
}

}  // namespace

DomainVerdict domain_check(const ProfileFamily& f, const AmbientSpec& a, const Window& w) {
  a.validate();
  require(w.grid >= 2, "domain_check: grid must have at least 2 points");
  require(w.lo < w.hi, "domain_check: empty window");

  const double center = 0.5 * (w.lo + w.hi);
  const double frac = (center - w.lo) / (w.hi - w.lo) * static_cast<double>(w.grid - 1);
  const auto mid = static_cast<std::size_t>(std::llround(frac));

  std::size_t right = mid;
  std::size_t left = mid;  // next to visit on the left is left - 1
  if (auto fail = failure_at(f, a, w.at(mid))) return {fail};
  ++right;
  while (right < w.grid || left > 0) {
    if (right < w.grid) {
      if (auto fail = failure_at(f, a, w.at(right))) return {fail};
      ++right;
    }
    if (left > 0) {
      --left;
      if (auto fail = failure_at(f, a, w.at(left))) return {fail};
    }
  }
  return {};
}

ProfileSample sample_profile(const ProfileFamily& f, const AmbientSpec& a, double s) {
  if (auto fail = failure_at(f, a, s)) {
    throw DomainBreakdown(f.describe() + " leaves the domain at s = " + fmt(s) + ": " + fail->reason,
                          s, fail->radicand);
  }
  const auto sq = f.square(s);
  const double radicand = domain_radicand(f, a, s);
  const auto st = f.eval(s);
  const double root = std::sqrt(radicand);
  const double lambda = -root / st.x;
  // x'' + c x = ((c - C/4) u + K/(4u)) / x
  const double mu = ((a.c - f.ode_C() / 4.0) * sq.u + f.first_integral() / (4.0 * sq.u)) / (st.x * root);
  return {s, st.x, st.xp, st.xpp, lambda, mu, cic_from_spectrum(a.c, lambda, mu)};
}

ProfileSweep cic_along_profile(const ProfileFamily& f, const AmbientSpec& a, const Window& w) {
  a.validate();
  require(w.grid >= 2, "cic_along_profile: grid must have at least 2 points");
  ProfileSweep sweep;
  sweep.samples.reserve(w.grid);
  double sum = 0.0;
  for (std::size_t k = 0; k < w.grid; ++k) {
    sweep.samples.push_back(sample_profile(f, a, w.at(k)));
    sum += sweep.samples.back().cic;
  }
  sweep.mean = sum / static_cast<double>(w.grid);
  for (const auto& smp : sweep.samples) {
    sweep.deviation = std::max(sweep.deviation, std::abs(smp.cic - sweep.mean));
  }
  return sweep;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileSample>& samples) {
  os << "s,x,xp,lambda,mu,cic\n";
  for (const auto& r : samples) {
    os << fmt(r.s) << ',' << fmt(r.x) << ',' << fmt(r.xp) << ',' << fmt(r.lambda) << ','
       << fmt(r.mu) << ',' << fmt(r.cic) << '\n';
  }
}

}  // namespace cic

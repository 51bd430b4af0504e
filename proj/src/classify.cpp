#include "cic/classify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cic/hypersurface.hpp"

namespace cic {

namespace {

const Number kZero{Rational{0, 1}};

// Sign of a - factor * b with exact rationals where possible.
int sign_of(const Number& a, int factor, const Number& b) {
  return compare_scaled(a, factor, b, kBoundaryTolerance);
}

ClassificationOutcome empty(std::string reason) {
  ClassificationOutcome o;
  o.reason = std::move(reason);
  return o;
}

ClassificationOutcome symbolic(OutcomeTag tag) {
  ClassificationOutcome o;
  o.tag = tag;
  return o;
}

ClassificationOutcome umbilical(const ClassQuery& q) {
  ClassificationOutcome o;
  o.tag = OutcomeTag::UmbilicalNonTG;
  o.lambda_sq = (q.C.value - 4.0 * q.c.value) / 4.0;
  return o;
}

ClassificationOutcome rotation(FamilyTag family) {
  ClassificationOutcome o;
  o.tag = OutcomeTag::RotationFamily;
  o.family = family;
  o.deltas = {1};
  return o;
}

ClassificationOutcome trig(Interval alpha) {
  auto o = rotation(FamilyTag::Trig);
  o.alpha = alpha;
  return o;
}

ClassificationOutcome trig_full() { return trig({0.0, 1.0, true, false}); }

ClassificationOutcome exponential() {
  auto o = rotation(FamilyTag::Exponential);
  o.deltas = {-1, 0, 1};
  o.conditions = {"A >= 0", "B >= 0", "A + B > delta", "4AB > delta^2"};
  return o;
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

void ClassQuery::validate() const {
  if (n < 4) throw std::invalid_argument("classify: n must be >= 4");
  if (!std::isfinite(c.value) || !std::isfinite(C.value)) {
    throw std::invalid_argument("classify: c and C must be finite");
  }
}

std::string to_string(OutcomeTag tag) {
  switch (tag) {
    case OutcomeTag::Empty: return "Empty";
    case OutcomeTag::TotallyGeodesic: return "TotallyGeodesic";
    case OutcomeTag::UmbilicalNonTG: return "UmbilicalNonTG";
    case OutcomeTag::ConstantCurvature: return "ConstantCurvature";
    case OutcomeTag::FlatLocal: return "FlatLocal";
    case OutcomeTag::RotationFamily: return "RotationFamily";
  }
  return "?";
}

bool Interval::contains(double v) const {
  const bool above = lo_closed ? v >= lo : v > lo;
  const bool below = hi_closed ? v <= hi : v < hi;
  return above && below;
}

bool Interval::non_empty() const { return lo < hi || (lo == hi && lo_closed && hi_closed); }

double Interval::interior_point() const {
  if (std::isinf(hi)) return lo + 1.0;
  return 0.5 * (lo + hi);
}

std::string Interval::describe() const {
  std::string s = lo_closed ? "[" : "(";
  s += fmt(lo) + ", " + (std::isinf(hi) ? std::string("inf") : fmt(hi));
  s += hi_closed ? "]" : ")";
  return s;
}

nlohmann::json ClassificationOutcome::constraints() const {
  nlohmann::json j = nlohmann::json::object();
  auto interval = [](const Interval& i) {
    nlohmann::json r{{"lo", i.lo}, {"lo_closed", i.lo_closed}, {"text", i.describe()}};
    if (!std::isinf(i.hi)) {
      r["hi"] = i.hi;
      r["hi_closed"] = i.hi_closed;
    }
    return r;
  };
  if (lambda_sq) j["lambda_sq"] = *lambda_sq;
  if (alpha) j["alpha"] = interval(*alpha);
  if (beta) j["beta"] = interval(*beta);
  if (!deltas.empty()) j["delta"] = deltas;
  if (!conditions.empty()) j["conditions"] = conditions;
  return j;
}

std::vector<ClassificationOutcome> classify(const ClassQuery& q) {
  q.validate();
  const int vs4c = sign_of(q.C, 4, q.c);  // sign of C - 4c
  const int c_sign = sign_of(q.c, 0, kZero);

  if (q.n >= 5) {
    if (vs4c < 0) return {empty("C < 4c")};
    if (vs4c == 0) {
      return {symbolic(c_sign > 0 ? OutcomeTag::TotallyGeodesic : OutcomeTag::ConstantCurvature)};
    }
    return {umbilical(q)};
  }

  const int C_sign = sign_of(q.C, 0, kZero);
  if (c_sign == 0) {
    if (C_sign < 0) return {empty("C < 0")};
    if (C_sign == 0) {
      auto par = rotation(FamilyTag::Parabolic);
      par.beta = Interval{0.0, std::numeric_limits<double>::infinity(), false, false};
      return {symbolic(OutcomeTag::FlatLocal), par};
    }
    // An affine hyperplane has isotropic curvature 0, so it cannot appear here.
    return {umbilical(q), trig_full()};
  }

  if (c_sign > 0) {
    const int vs2c = sign_of(q.C, 2, q.c);
    if (vs2c <= 0) return {empty("C ≤ 2c")};
    if (vs4c < 0) return {trig({0.0, q.C.value / (2.0 * q.c.value) - 1.0, false, false})};
    if (vs4c == 0) return {symbolic(OutcomeTag::TotallyGeodesic), trig_full()};
    return {umbilical(q), trig_full()};
  }

  if (vs4c < 0) return {empty("C < 4c")};
  if (vs4c == 0) return {symbolic(OutcomeTag::ConstantCurvature), exponential()};
  if (C_sign < 0) return {umbilical(q), exponential()};
  if (C_sign == 0) {
    auto quad = rotation(FamilyTag::Quadratic);
    quad.conditions = {"B > 0", "A^2/(4B) < 1"};
    return {umbilical(q), quad};
  }
  return {umbilical(q), trig_full()};
}

bool is_empty(const std::vector<ClassificationOutcome>& outcomes) {
  return outcomes.size() == 1 && outcomes.front().tag == OutcomeTag::Empty;
}

std::optional<Witness> witness(const ClassificationOutcome& o, const ClassQuery& q) {
  if (o.tag != OutcomeTag::RotationFamily || !o.family) return std::nullopt;
  const double C = q.C.value;
  const AmbientSpec ambient = AmbientSpec::make(q.c.value, 1);
  switch (*o.family) {
    case FamilyTag::Trig:
      return Witness{ProfileFamily::trig(C, o.alpha->interior_point()), ambient};
    case FamilyTag::Parabolic:
      return Witness{ProfileFamily::parabolic(o.beta->interior_point()), ambient};
    case FamilyTag::Exponential: {
      // A = B with 4AB = 2 delta^2 + 2 at delta = 1.
      return Witness{ProfileFamily::exponential(C, 1.0, 1.0, 1), ambient};
    }
    case FamilyTag::Quadratic:
      return Witness{ProfileFamily::quadratic(0.0, 1.0, 1), ambient};
  }
  return std::nullopt;
}

bool WitnessCheck::passes(double C, double tol) const {
  return domain.valid() && deviation <= tol && std::abs(mean - C) <= tol;
}

WitnessCheck verify_witness(const Witness& w, const Window& window) {
  WitnessCheck r;
  r.domain = domain_check(w.family, w.ambient, window);
  if (!r.domain.valid()) return r;
  const auto sweep = cic_along_profile(w.family, w.ambient, window);
  r.mean = sweep.mean;
  r.deviation = sweep.deviation;
  return r;
}

NonexistenceEvidence nonexistence_witness(const ClassQuery& q, const Window& window) {
  const auto outcomes = classify(q);
  if (!is_empty(outcomes)) {
    throw std::invalid_argument("nonexistence_witness: classify(" + std::to_string(q.n) + ", " +
                                to_string(q.c) + ", " + to_string(q.C) + ") is not empty");
  }
  const double c = q.c.value;
  const double C = q.C.value;

  NonexistenceEvidence e;
  e.ambient = AmbientSpec::make(c, 1);
  if (q.n >= 5) {
    e.mechanism = "lambda^2 = (C - 4c)/4 < 0";
    e.lambda_sq = (C - 4.0 * c) / 4.0;
    return e;
  }

  if (c > 0.0 && C > 0.0) {
    // alpha = 0 keeps c x^2 = 2c/C everywhere, in particular at s = 0.
    e.mechanism = "c x^2 = 2c/C >= 1 at s = 0";
    e.candidate = ProfileFamily::trig(C, 0.0);
  } else if (C == 0.0) {
    e.mechanism = "-c + C/4 < 0";
    e.candidate = ProfileFamily::parabolic(1.0);
  } else if (c == 0.0) {
    e.mechanism = "|x'| >= 1";
    e.candidate = ProfileFamily::exponential(C, 1.0, 1.0, 1);
  } else {
    e.mechanism = "-c + C/4 < 0";
    e.candidate = ProfileFamily::exponential(C, 1.0, 1.0, 1);
  }
  const auto verdict = domain_check(*e.candidate, e.ambient, window);
  if (verdict.valid()) {
    throw std::runtime_error("nonexistence_witness: " + e.candidate->describe() +
                             " stays valid on the window");
  }
  e.failure = verdict.failure;
  return e;
}

nlohmann::json to_json(const ClassQuery& q) {
  return {{"n", q.n}, {"c", to_string(q.c)}, {"C", to_string(q.C)}};
}

nlohmann::json to_json(const NonexistenceEvidence& e) {
  nlohmann::json j{{"mechanism", e.mechanism}};
  if (e.candidate) j["candidate"] = e.candidate->to_json();
  if (e.lambda_sq) j["lambda_sq"] = *e.lambda_sq;
  if (e.failure) {
    j["failure"] = {{"s", e.failure->s},
                    {"kind", e.failure->kind == FailureKind::NonPositiveProfile ? "NonPositiveProfile"
                                                                                 : "DomainBreakdown"},
                    {"reason", e.failure->reason},
                    {"radicand", e.failure->radicand},
                    {"cx2", e.failure->cx2},
                    {"xp2", e.failure->xp2}};
  }
  return j;
}

}  // namespace cic

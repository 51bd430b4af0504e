#include "cic/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cic/classify.hpp"
#include "cic/hypersurface.hpp"
#include "cic/number.hpp"

namespace cic {

namespace {

std::string fmt(double v) { return format_double(v); }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Collects failures; the suite passes when none were recorded.
class Findings {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  void note(const std::string& what) { notes_.push_back(what); }

  SuiteResult finish(int id, std::string name, const Stopwatch& sw) const {
    SuiteResult r;
    r.id = id;
    r.name = std::move(name);
    r.passed = count_ == 0;
    r.seconds = sw.seconds();
    std::ostringstream os;
    const auto& parts = count_ == 0 ? notes_ : failures_;
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "; " : "") << parts[i];
    if (count_ > failures_.size()) os << "; ... " << count_ - failures_.size() << " more";
    r.detail = os.str();
    return r;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
  std::size_t count_ = 0;
};

ProbeReport probe_product(const char* text, const RunConfig& cfg) {
  return cic_probe(build_product(parse_product_spec(text)), cfg.frames, cfg.seed, cfg.tol);
}

std::string signature(const ClassificationOutcome& o) {
  if (o.tag != OutcomeTag::RotationFamily) return to_string(o.tag);
  std::string s = to_string(*o.family);
  if (o.alpha) s += o.alpha->lo_closed ? "[0,1)" : "(0,b)";
  return s;
}

struct TableRow {
  std::size_t n;
  const char* c;
  const char* C;
  std::set<std::string> expected;
};

// Boundaries C in {0, 2c, 4c} for c in {-1, 0, 1}, each approached from
// both sides at distance 1e-6.
const std::vector<TableRow>& truth_table() {
  static const std::vector<TableRow> rows = {
      // n = 4, c = -1
      {4, "-1", "-4.000001", {"Empty"}},
      {4, "-1", "-4", {"ConstantCurvature", "Exponential"}},
      {4, "-1", "-3.999999", {"UmbilicalNonTG", "Exponential"}},
      {4, "-1", "-2.000001", {"UmbilicalNonTG", "Exponential"}},
      {4, "-1", "-2", {"UmbilicalNonTG", "Exponential"}},
      {4, "-1", "-1.999999", {"UmbilicalNonTG", "Exponential"}},
      {4, "-1", "-0.000001", {"UmbilicalNonTG", "Exponential"}},
      {4, "-1", "0", {"UmbilicalNonTG", "Quadratic"}},
      {4, "-1", "0.000001", {"UmbilicalNonTG", "Trig[0,1)"}},
      // n = 4, c = 0
      {4, "0", "-0.000001", {"Empty"}},
      {4, "0", "0", {"FlatLocal", "Parabolic"}},
      {4, "0", "0.000001", {"UmbilicalNonTG", "Trig[0,1)"}},
      // n = 4, c = 1
      {4, "1", "-0.000001", {"Empty"}},
      {4, "1", "0", {"Empty"}},
      {4, "1", "0.000001", {"Empty"}},
      {4, "1", "1.999999", {"Empty"}},
      {4, "1", "2", {"Empty"}},
      {4, "1", "2.000001", {"Trig(0,b)"}},
      {4, "1", "3.999999", {"Trig(0,b)"}},
      {4, "1", "4", {"TotallyGeodesic", "Trig[0,1)"}},
      {4, "1", "4.000001", {"UmbilicalNonTG", "Trig[0,1)"}},
      // n = 5, c = -1
      {5, "-1", "-4.000001", {"Empty"}},
      {5, "-1", "-4", {"ConstantCurvature"}},
      {5, "-1", "-3.999999", {"UmbilicalNonTG"}},
      {5, "-1", "-0.000001", {"UmbilicalNonTG"}},
      {5, "-1", "0", {"UmbilicalNonTG"}},
      {5, "-1", "0.000001", {"UmbilicalNonTG"}},
      // n = 5, c = 0
      {5, "0", "-0.000001", {"Empty"}},
      {5, "0", "0", {"ConstantCurvature"}},
      {5, "0", "0.000001", {"UmbilicalNonTG"}},
      // n = 5, c = 1
      {5, "1", "-0.000001", {"Empty"}},
      {5, "1", "0", {"Empty"}},
      {5, "1", "0.000001", {"Empty"}},
      {5, "1", "3.999999", {"Empty"}},
      {5, "1", "4", {"TotallyGeodesic"}},
      {5, "1", "4.000001", {"UmbilicalNonTG"}},
      // n = 6
      {6, "1", "3.999999", {"Empty"}},
      {6, "1", "4", {"TotallyGeodesic"}},
      {6, "1", "4.000001", {"UmbilicalNonTG"}},
      {6, "-1", "-4", {"ConstantCurvature"}},
  };
  return rows;
}

struct OdeInstance {
  ProfileFamily family;
  double C;
  int delta;
};

OdeInstance random_instance(UniformStream& rng, int kind) {
  switch (kind) {
    case 0: {
      const double C = rng.in(0.5, 4.0);
      return {ProfileFamily::trig(C, rng.in(0.0, 0.9)), C, 1};
    }
    case 1:
      return {ProfileFamily::parabolic(rng.in(0.25, 4.0)), 0.0, 1};
    case 2: {
      // |C| is kept small enough that e^{sqrt(-C) |s|} stays moderate on
      // [-10, 10]; the finite-difference residual scales with it.
      const double C = rng.in(-0.36, -0.01);
      const int delta = rng.pick(-1, 1);
      while (true) {
        const double A = rng.in(0.1, 2.0);
        const double B = rng.in(0.1, 2.0);
        if (A + B > delta && 4.0 * A * B > delta * delta) {
          return {ProfileFamily::exponential(C, A, B, delta), C, delta};
        }
      }
    }
    default: {
      const double A = rng.in(-1.0, 1.0);
      const double B = rng.in(A * A / 4.0 + 0.1, 3.0);
      return {ProfileFamily::quadratic(A, B, 1), 0.0, 1};
    }
  }
}

// sup |x_rk - x| over the integrated points.
double integration_error(const ProfileFamily& f, double C, int delta, double s_max, double step) {
  const auto st = f.eval(0.0);
  const auto res = integrate_profile(C, delta, st.x, st.xp, s_max, step);
  if (!res.ok()) return std::numeric_limits<double>::infinity();
  double err = 0.0;
  for (const auto& p : res.points) err = std::max(err, std::abs(p.x - f.eval(p.s).x));
  return err;
}

}  // namespace

void RunConfig::validate() const {
  if (frames < 2) throw std::invalid_argument("frames must be >= 2");
  if (window.grid < 2) throw std::invalid_argument("grid must be >= 2");
  if (!(window.lo < window.hi)) throw std::invalid_argument("window must satisfy lo < hi");
  if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
}

UniformStream::UniformStream(std::uint64_t seed) : engine_(seed) {}

double UniformStream::next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int UniformStream::pick(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

SuiteResult check_product_cylinder(const VerifyOptions& opt) {
  Stopwatch sw;
  Findings f;
  const auto rep = probe_product("S3:1 x R1", opt.config);
  f.require(std::abs(rep.mean - 2.0) <= 1e-10, "S3xR mean " + fmt(rep.mean) + " != 2");
  f.require(rep.spread() <= 1e-10, "S3xR spread " + fmt(rep.spread()) + " > 1e-10");
  f.note("S3xR mean=" + fmt(rep.mean) + " spread=" + fmt(rep.spread()));
  const double t = sw.seconds();
  f.require(t < 1.0, "runtime " + fmt(t) + " s >= 1 s");
  return f.finish(1, "CIC of S3(1) x R", sw);
}

SuiteResult check_product_suite(const VerifyOptions& opt) {
  Stopwatch sw;
  Findings f;
  const auto torus = probe_product("S3:1 x S1", opt.config);
  f.require(std::abs(torus.min - 2.0) <= 1e-10 && std::abs(torus.max - 2.0) <= 1e-10,
            "S3xS1 range [" + fmt(torus.min) + ", " + fmt(torus.max) + "] not within 1e-10 of 2");
  for (const char* spec : {"S2:0.5 x H2:-0.5", "S2:1 x H2:-1", "S2:2 x H2:-2"}) {
    const auto rep = probe_product(spec, opt.config);
    f.require(std::abs(rep.min) <= 1e-10 && std::abs(rep.max) <= 1e-10,
              std::string(spec) + " range [" + fmt(rep.min) + ", " + fmt(rep.max) + "] not within 1e-10 of 0");
  }
  const auto s5 = probe_product("S5:1 x R1", opt.config);
  f.require(s5.spread() >= 1.0, "S5xR spread " + fmt(s5.spread()) + " < 1");
  f.require(!s5.is_constant, "S5xR reported constant");
  f.require(s5.min >= 2.0 - 1e-12 && s5.max <= 4.0 + 1e-12,
            "S5xR range [" + fmt(s5.min) + ", " + fmt(s5.max) + "] leaves [2, 4]");
  f.note("S3xS1 mean=" + fmt(torus.mean) + " S5xR spread=" + fmt(s5.spread()));
  const double t = sw.seconds();
  f.require(t < 5.0, "runtime " + fmt(t) + " s >= 5 s");
  return f.finish(2, "product manifolds", sw);
}

SuiteResult check_parabolic_profiles(const VerifyOptions& opt) {
  Stopwatch sw;
  Findings f;
  const AmbientSpec flat = AmbientSpec::make(0.0, 1);
  double worst = 0.0;
  for (double beta : {0.5, 1.0, 4.0}) {
    const auto fam = ProfileFamily::parabolic(beta);
    const auto sweep = cic_along_profile(fam, flat, opt.config.window);
    for (const auto& smp : sweep.samples) {
      const double lambda = -std::sqrt(beta) / (smp.s * smp.s + beta);
      const double err = std::max({std::abs(smp.lambda - lambda), std::abs(smp.mu + lambda), std::abs(smp.cic)});
      worst = std::max(worst, err);
      f.require(err <= 1e-10, "beta=" + fmt(beta) + " s=" + fmt(smp.s) + " error " + fmt(err));
    }
  }
  f.note("max error " + fmt(worst));
  return f.finish(3, "parabolic profiles in R5", sw);
}

SuiteResult check_gauss_identity(const VerifyOptions& opt) {
  Stopwatch sw;
  Findings f;
  UniformStream rng(opt.config.seed);
  const std::size_t frames = std::min<std::size_t>(opt.config.frames, 500);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double c = rng.in(-2.0, 2.0);
    const double lambda = rng.in(-2.0, 2.0);
    const double mu = rng.in(-2.0, 2.0);
    // Only n = 4 makes the frame span the whole tangent space.
    const std::vector<double> shape{lambda, lambda, lambda, mu};
    const auto t = opt.gauss(c, shape);
    const auto sym = check_symmetries(t);
    f.require(sym.within(1e-12), "instance " + std::to_string(i) + " breaks curvature symmetries by " + fmt(sym.worst()));
    const auto rep = cic_probe(t, frames, opt.config.seed + static_cast<std::uint64_t>(i), opt.config.tol);
    const double expected = cic_from_spectrum(c, lambda, mu);
    const double err = std::max(std::abs(rep.min - expected), std::abs(rep.max - expected));
    worst = std::max(worst, err);
    f.require(err <= 1e-10, "instance " + std::to_string(i) + " (c=" + fmt(c) + ", lambda=" + fmt(lambda) +
                                ", mu=" + fmt(mu) + ") deviates by " + fmt(err));
  }
  f.note("200 instances, " + std::to_string(frames) + " frames, max error " + fmt(worst));
  return f.finish(4, "Gauss equation identity", sw);
}

SuiteResult check_profile_ode(const VerifyOptions& opt) {
  Stopwatch sw;
  Findings f;
  UniformStream rng(opt.config.seed ^ 0x5eedULL);
  const Window& w = opt.config.window;
  const double s_max = std::max(std::abs(w.lo), std::abs(w.hi));
  double worst_residual = 0.0;
  double worst_rk = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_instance(rng, i % 4);
    for (int k = 0; k < 100; ++k) {
      const double s = w.lo + (w.hi - w.lo) * (k + 0.5) / 100.0;
      const double r = ode_residual(inst.family, inst.C, inst.delta, s, 1e-4);
      worst_residual = std::max(worst_residual, r);
      f.require(r <= 1e-6, inst.family.describe() + " residual " + fmt(r) + " at s=" + fmt(s));
    }
    const double err = integration_error(inst.family, inst.C, inst.delta, s_max, opt.config.step);
    worst_rk = std::max(worst_rk, err);
    f.require(err <= 1e-6, inst.family.describe() + " RK sup-error " + fmt(err));
  }

  const auto ref = ProfileFamily::trig(2.0, 0.3);
  const double coarse = integration_error(ref, 2.0, 1, 10.0, 0.05);
  const double fine = integration_error(ref, 2.0, 1, 10.0, 0.025);
  const double ratio = coarse / fine;
  f.require(ratio >= 12.0, "step halving improved Trig(2, 0.3) error only by " + fmt(ratio));

  f.note("max residual " + fmt(worst_residual) + ", max RK error " + fmt(worst_rk) + ", order ratio " + fmt(ratio));
  return f.finish(5, "profile ODE and integrator", sw);
}

SuiteResult check_decision_table(const VerifyOptions& opt) {
  Stopwatch sw;
  Findings f;
  std::size_t witnesses = 0;
  double worst = 0.0;
  for (const auto& row : truth_table()) {
    const ClassQuery q{row.n, parse_number(row.c), parse_number(row.C)};
    const auto outcomes = classify(q);
    std::set<std::string> got;
    for (const auto& o : outcomes) got.insert(signature(o));
    const std::string label = "(" + std::to_string(row.n) + ", " + row.c + ", " + row.C + ")";
    f.require(got == row.expected, label + " classified differently");
    for (const auto& o : outcomes) {
      const auto w = witness(o, q);
      if (!w) continue;
      ++witnesses;
      const auto chk = verify_witness(*w, opt.config.window);
      worst = std::max({worst, chk.deviation, std::abs(chk.mean - q.C.value)});
      f.require(chk.passes(q.C.value, 1e-8), label + " witness " + w->family.describe() + " fails");
    }
  }
  f.note(std::to_string(truth_table().size()) + " queries, " + std::to_string(witnesses) +
         " witnesses, max cic error " + fmt(worst));
  return f.finish(6, "classification table", sw);
}

SuiteResult check_obstructions(const VerifyOptions& opt) {
  Stopwatch sw;
  Findings f;
  const Window& w = opt.config.window;

  // S5(1), C = 1.5: the constant candidate sits at c x^2 = 2c/C > 1.
  const auto sphere = nonexistence_witness({4, parse_number("1"), parse_number("1.5")}, w);
  f.require(sphere.failure.has_value(), "S5 candidate did not fail");
  if (sphere.failure) {
    f.require(std::abs(sphere.failure->s) <= 1e-12, "S5 failure at s=" + fmt(sphere.failure->s) + ", expected 0");
    f.require(std::abs(sphere.failure->cx2 - 2.0 / 1.5) <= 1e-12 && sphere.failure->cx2 > 1.0,
              "S5 failure has c x^2 = " + fmt(sphere.failure->cx2));
    f.note("S5: s=" + fmt(sphere.failure->s) + " c x^2=" + fmt(sphere.failure->cx2));
  }

  // R5, C = -1: the exponential candidate reaches |x'| >= 1.
  const auto flat = nonexistence_witness({4, parse_number("0"), parse_number("-1")}, w);
  f.require(flat.failure.has_value(), "R5 candidate did not fail");
  if (flat.failure) {
    f.require(flat.failure->kind == FailureKind::DomainBreakdown, "R5 failure is not a domain breakdown");
    f.require(flat.failure->xp2 >= 1.0 - 1e-8, "R5 failure has x'^2 = " + fmt(flat.failure->xp2));
    f.require(std::abs(flat.failure->s) > 0.0, "R5 failure at s = 0");
    f.note("R5: s=" + fmt(flat.failure->s) + " x'^2=" + fmt(flat.failure->xp2));
  }

  // H5(-1), C = -5: -c + C/4 < 0 drives the radicand negative.
  const auto hyp = nonexistence_witness({4, parse_number("-1"), parse_number("-5")}, w);
  f.require(-(-1.0) + (-5.0) / 4.0 < 0.0, "H5 query does not have -c + C/4 < 0");
  f.require(hyp.failure.has_value(), "H5 candidate did not fail");
  if (hyp.failure) {
    double scale = 0.0;
    const double r = domain_radicand(*hyp.candidate, hyp.ambient, hyp.failure->s, &scale);
    f.require(r <= kDomainEpsilon * scale, "H5 failure has radicand " + fmt(r));
    f.note("H5: s=" + fmt(hyp.failure->s) + " radicand=" + fmt(hyp.failure->radicand));
  }
  return f.finish(7, "non-existence obstructions", sw);
}

SuiteResult check_minimal(const VerifyOptions&) {
  Stopwatch sw;
  Findings f;
  for (double c : {0.25, 0.75, 1.0, 2.0}) {
    const auto v = minimal_classify(4, c, 8.0 * c / 3.0);
    const std::string label = "c=" + fmt(c);
    f.require(v.tag == MinimalTag::Clifford, label + " not Clifford");
    f.require(std::abs(3.0 * v.lambda + v.mu) <= 1e-14, label + " H = " + fmt(3.0 * v.lambda + v.mu));
    f.require(std::abs(v.lambda + std::sqrt(c / 3.0)) <= 1e-12, label + " lambda = " + fmt(v.lambda));
    f.require(std::abs(v.profile_x0 - std::sqrt(3.0 / (4.0 * c))) <= 1e-15 * v.profile_x0,
              label + " x0 = " + fmt(v.profile_x0));
    f.require(std::abs(cic_from_spectrum(c, v.lambda, v.mu) - 8.0 * c / 3.0) <= 1e-12,
              label + " cic of the Clifford data differs from 8c/3");
  }
  for (std::size_t n : {4, 5, 6}) {
    for (double c : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      for (double gap : {1e-6, 0.5, 3.0}) {
        f.require(minimal_classify(n, c, 4.0 * c + gap).tag == MinimalTag::None,
                  "minimal hypersurface reported for C > 4c at n=" + std::to_string(n) + " c=" + fmt(c));
      }
      if (n >= 5) {
        f.require(minimal_classify(n, c, 4.0 * c).tag == MinimalTag::TotallyGeodesic,
                  "(n=" + std::to_string(n) + ", c=" + fmt(c) + ", C=4c) not totally geodesic");
      }
    }
  }
  f.note("Clifford data for c in {1/4, 3/4, 1, 2}");
  return f.finish(8, "minimal hypersurfaces", sw);
}

std::vector<SuiteResult> run_all(const VerifyOptions& opt) {
  opt.config.validate();
  return {check_product_cylinder(opt), check_product_suite(opt), check_parabolic_profiles(opt),
          check_gauss_identity(opt),   check_profile_ode(opt),    check_decision_table(opt),
          check_obstructions(opt),     check_minimal(opt)};
}

}  // namespace cic

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "cic/classify.hpp"
#include "cic/curvature.hpp"
#include "cic/number.hpp"
#include "cic/probe.hpp"
#include "cic/profile.hpp"
#include "cic/verify.hpp"
#include "json.hpp"

namespace cic {

namespace {

// Bad arguments that CLI11 itself cannot see, such as malformed numbers.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double real_arg(const std::string& text, const char* name) {
  try {
    return parse_number(text).value;
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(name) + ": " + e.what());
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("CIC_SEED");
  if (!env || !*env) return kDefaultSeed;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(env).size() || env[0] == '-') {
    throw UsageError(std::string("CIC_SEED is not an unsigned integer: '") + env + "'");
  }
  return v;
}

OutputFormat format_from(const std::string& s) { return s == "json" ? OutputFormat::Json : OutputFormat::Csv; }

struct ProbeArgs {
  std::string product;
  std::string tensor;
};

int cmd_probe(const ProbeArgs& args, const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  if (args.product.empty() && args.tensor.empty()) throw UsageError("probe: one of --product or --tensor is required");
  std::string label;
  CurvatureTensor t(4);
  if (!args.tensor.empty()) {
    std::ifstream in(args.tensor);
    if (!in) throw UsageError("cannot open tensor file '" + args.tensor + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("tensor file is not valid JSON: " + std::string(e.what()));
    }
    t = tensor_from_json(j);
    label = args.tensor;
  } else {
    const auto spec = parse_product_spec(args.product);
    t = build_product(spec);
    label = to_string(spec);
  }
  const auto rep = cic_probe(t, cfg.frames, cfg.seed, cfg.tol);
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j{{"manifold", label}, {"dim", t.dim()},          {"frames", rep.samples},
                     {"seed", cfg.seed},  {"min", rep.min},           {"max", rep.max},
                     {"mean", rep.mean},  {"spread", rep.spread()},   {"is_constant", rep.is_constant}};
    out << j.dump(2) << '\n';
  } else {
    out << "manifold,dim,frames,seed,min,max,mean,spread,is_constant\n"
        << '"' << label << "\"," << t.dim() << ',' << rep.samples << ',' << cfg.seed << ','
        << format_double(rep.min) << ',' << format_double(rep.max) << ',' << format_double(rep.mean) << ','
        << format_double(rep.spread()) << ',' << (rep.is_constant ? "true" : "false") << '\n';
  }
  return kExitOk;
}

struct ClassifyArgs {
  std::string n, c, C;
  bool witness = false;
};

int cmd_classify(const ClassifyArgs& args, const RunConfig& cfg, std::ostream& out) {
  ClassQuery q;
  try {
    const auto n = parse_number(args.n);
    if (!n.exact || n.exact->den != 1 || n.exact->num < 4) throw std::invalid_argument("must be an integer >= 4");
    q.n = static_cast<std::size_t>(n.exact->num);
    q.c = parse_number(args.c);
    q.C = parse_number(args.C);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("classify: ") + e.what());
  }

  const auto outcomes = classify(q);
  bool all_verified = true;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& o : outcomes) {
    nlohmann::json item{{"tag", to_string(o.tag)}, {"constraints", o.constraints()}};
    if (o.family) item["family"] = to_string(*o.family);
    if (o.tag == OutcomeTag::Empty) item["reason"] = o.reason;
    if (args.witness) {
      if (o.tag == OutcomeTag::Empty) {
        try {
          item["obstruction"] = to_json(nonexistence_witness(q, cfg.window));
        } catch (const std::runtime_error& e) {
          item["obstruction"] = {{"error", e.what()}};
        }
      } else if (const auto w = witness(o, q)) {
        const auto chk = verify_witness(*w, cfg.window);
        const bool ok = chk.passes(q.C.value, 1e-8);
        all_verified = all_verified && ok;
        item["witness"] = w->family.to_json();
        item["witness"]["ambient"] = {{"c", w->ambient.c}, {"delta", w->ambient.delta}};
        item["witness"]["domain_valid"] = chk.domain.valid();
        item["witness"]["cic_mean"] = chk.mean;
        item["witness"]["cic_deviation"] = chk.deviation;
        item["witness"]["verified"] = ok;
      } else {
        item["witness"] = {{"symbolic", to_string(o.tag)}};
      }
    }
    list.push_back(std::move(item));
  }
  out << nlohmann::json{{"query", to_json(q)}, {"outcomes", list}}.dump(2) << '\n';
  return all_verified ? kExitOk : kExitFailure;
}

struct ProfileArgs {
  std::string family;
  std::string C = "1", alpha = "0", beta = "1", A = "1", B = "1", c = "0";
  int delta = 1;
};

int cmd_profile(const ProfileArgs& args, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  const double C = real_arg(args.C, "--C");
  const AmbientSpec ambient{real_arg(args.c, "--c"), args.delta};
  std::optional<ProfileFamily> fam;
  try {
    ambient.validate();
    if (args.family == "trig") fam = ProfileFamily::trig(C, real_arg(args.alpha, "--alpha"));
    if (args.family == "parabolic") fam = ProfileFamily::parabolic(real_arg(args.beta, "--beta"));
    if (args.family == "exponential") {
      fam = ProfileFamily::exponential(C, real_arg(args.A, "--A"), real_arg(args.B, "--B"), args.delta);
    }
    if (args.family == "quadratic") {
      fam = ProfileFamily::quadratic(real_arg(args.A, "--A"), real_arg(args.B, "--B"), args.delta);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const Window& w = cfg.window;
  const auto verdict = domain_check(*fam, ambient, w);

  // Emit the contiguous valid run of grid points around the window center.
  std::size_t first = 0;
  std::size_t last = w.grid;
  if (!verdict.valid()) {
    const std::size_t mid = static_cast<std::size_t>(std::llround(0.5 * static_cast<double>(w.grid - 1)));
    auto ok = [&](std::size_t k) {
      try {
        sample_profile(*fam, ambient, w.at(k));
        return true;
      } catch (const DomainBreakdown&) {
        return false;
      }
    };
    if (!ok(mid)) {
      first = last = mid;
    } else {
      first = mid;
      while (first > 0 && ok(first - 1)) --first;
      last = mid + 1;
      while (last < w.grid && ok(last)) ++last;
    }
  }
  std::vector<ProfileSample> rows;
  for (std::size_t k = first; k < last; ++k) rows.push_back(sample_profile(*fam, ambient, w.at(k)));

  if (cfg.format == OutputFormat::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"s", r.s}, {"x", r.x}, {"xp", r.xp}, {"lambda", r.lambda}, {"mu", r.mu}, {"cic", r.cic}});
    }
    nlohmann::json doc{{"family", fam->to_json()}, {"ambient", {{"c", ambient.c}, {"delta", ambient.delta}}},
                       {"samples", arr}};
    if (!verdict.valid()) doc["failure"] = {{"s", verdict.failure->s}, {"reason", verdict.failure->reason}};
    out << doc.dump(2) << '\n';
  } else {
    write_profile_csv(out, rows);
  }
  if (!verdict.valid()) {
    err << "cic profile: " << fam->describe() << " leaves the domain at s = "
        << format_double(verdict.failure->s) << ": " << verdict.failure->reason << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opt;
  opt.config = cfg;
  const auto results = run_all(opt);
  bool all = true;
  out << std::left << std::setw(4) << "id" << std::setw(32) << "suite" << std::setw(6) << "result"
      << std::setw(10) << "seconds" << "detail\n";
  for (const auto& r : results) {
    all = all && r.passed;
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(3) << r.seconds;
    out << std::left << std::setw(4) << r.id << std::setw(32) << r.name << std::setw(6)
        << (r.passed ? "PASS" : "FAIL") << std::setw(10) << secs.str() << r.detail << '\n';
  }
  out << (all ? "all suites passed" : "some suites FAILED") << '\n';
  return all ? kExitOk : kExitFailure;
}

void add_config_options(CLI::App* cmd, RunConfig& cfg, std::string& format, bool frames, bool window) {
  cmd->add_option("--seed", cfg.seed, "Frame sampling seed (default 42 or $CIC_SEED)");
  cmd->add_option("--tol", cfg.tol, "Constancy tolerance")->check(CLI::PositiveNumber);
  if (frames) cmd->add_option("--frames", cfg.frames, "Number of sampled frames")->check(CLI::Range(2, 100000000));
  if (window) {
    cmd->add_option("--lo", cfg.window.lo, "Window start");
    cmd->add_option("--hi", cfg.window.hi, "Window end");
    cmd->add_option("--grid", cfg.window.grid, "Grid points")->check(CLI::Range(2, 100000000));
    cmd->add_option("--step", cfg.step, "Integrator step")->check(CLI::PositiveNumber);
  }
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "csv";
  try {
    cfg.seed = default_seed();
  } catch (const UsageError& e) {
    err << "cic: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Constant isotropic curvature toolkit"};
  app.require_subcommand(1);

  ProbeArgs probe;
  auto* probe_cmd = app.add_subcommand("probe", "Sample the isotropic functional of a curvature tensor");
  auto* product_opt = probe_cmd->add_option("--product", probe.product, "Product manifold, e.g. \"S3:1 x R1\"");
  auto* tensor_opt = probe_cmd->add_option("--tensor", probe.tensor, "Tensor JSON file");
  product_opt->excludes(tensor_opt);
  add_config_options(probe_cmd, cfg, format, true, false);

  ClassifyArgs cls;
  auto* classify_cmd = app.add_subcommand("classify", "Classify complete CIC hypersurfaces of M^{n+1}(c)");
  classify_cmd->add_option("n", cls.n, "Hypersurface dimension")->required();
  classify_cmd->add_option("c", cls.c, "Ambient curvature")->required();
  classify_cmd->add_option("C", cls.C, "Isotropic curvature")->required();
  classify_cmd->add_flag("--witness", cls.witness, "Attach and verify witnesses");
  classify_cmd->add_option("--lo", cfg.window.lo, "Window start");
  classify_cmd->add_option("--hi", cfg.window.hi, "Window end");
  classify_cmd->add_option("--grid", cfg.window.grid, "Grid points")->check(CLI::Range(2, 100000000));

  ProfileArgs prof;
  auto* profile_cmd = app.add_subcommand("profile", "Emit lambda, mu and cic along a profile curve");
  profile_cmd->add_option("family", prof.family, "trig | parabolic | exponential | quadratic")
      ->required()
      ->check(CLI::IsMember({"trig", "parabolic", "exponential", "quadratic"}));
  profile_cmd->add_option("--C", prof.C, "Isotropic curvature C");
  profile_cmd->add_option("--alpha", prof.alpha, "Trig parameter alpha");
  profile_cmd->add_option("--beta", prof.beta, "Parabolic parameter beta");
  profile_cmd->add_option("--A", prof.A, "Exponential or quadratic parameter A");
  profile_cmd->add_option("--B", prof.B, "Exponential or quadratic parameter B");
  profile_cmd->add_option("--delta", prof.delta, "Parallel type")->check(CLI::IsMember({-1, 0, 1}));
  profile_cmd->add_option("--c", prof.c, "Ambient curvature c");
  add_config_options(profile_cmd, cfg, format, false, true);

  auto* check_cmd = app.add_subcommand("check", "Run every verification suite");
  add_config_options(check_cmd, cfg, format, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.format = format_from(format);

  try {
    if (probe_cmd->parsed()) return cmd_probe(probe, cfg, out);
    if (classify_cmd->parsed()) return cmd_classify(cls, cfg, out);
    if (profile_cmd->parsed()) return cmd_profile(prof, cfg, out, err);
    if (check_cmd->parsed()) return cmd_check(cfg, out);
  } catch (const DomainBreakdown& e) {
    err << "cic: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "cic: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "cic: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace cic

#include "cic/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cic {

namespace {

struct Cluster {
  double sum = 0.0;
  std::vector<std::size_t> members;
  double mean() const { return sum / static_cast<double>(members.size()); }
};

std::vector<Cluster> cluster_values(std::span<const double> values, double tol) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<Cluster> out;
  for (auto idx : order) {
    if (out.empty() || values[idx] - values[out.back().members.back()] > tol) out.emplace_back();
    out.back().sum += values[idx];
    out.back().members.push_back(idx);
  }
  return out;
}

[[noreturn]] void reject(std::span<const double> values, std::array<std::size_t, 4> subset,
                         const std::string& why) {
  std::sort(subset.begin(), subset.end());
  const std::array<double, 4> l{values[subset[0]], values[subset[1]], values[subset[2]],
                                values[subset[3]]};
  const auto p = pairings(l);
  std::ostringstream msg;
  msg << why << "; principal curvatures {" << subset[0] << "," << subset[1] << "," << subset[2]
      << "," << subset[3] << "} = (" << l[0] << ", " << l[1] << ", " << l[2] << ", " << l[3]
      << ") give unequal pairings " << p[0] << ", " << p[1] << ", " << p[2];
  throw SpectrumError(msg.str(), subset);
}

}  // namespace

std::array<double, 3> pairings(std::span<const double, 4> l) {
  return {l[0] * l[1] + l[2] * l[3], l[0] * l[2] + l[1] * l[3], l[0] * l[3] + l[1] * l[2]};
}

bool pairing_test(std::span<const double, 4> l, double tol) {
  const auto p = pairings(l);
  const auto [lo, hi] = std::minmax({p[0], p[1], p[2]});
  return hi - lo <= tol;
}

TwoCurvatureForm two_curvature_form(const ShapeSpectrum& s, double tol) {
  const std::size_t n = s.lambdas.size();
  if (n < 4) throw std::invalid_argument("two_curvature_form: need n >= 4 principal curvatures");
  const auto clusters = cluster_values(s.lambdas, tol);

  if (clusters.size() == 1) {
    const double v = clusters[0].mean();
    return {v, v, n};
  }
  if (clusters.size() >= 3) {
    // One index from each of three distinct values plus any fourth index.
    std::array<std::size_t, 4> sub{clusters[0].members[0], clusters[1].members[0],
                                   clusters[2].members[0], 0};
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(sub.begin(), sub.begin() + 3, i) == sub.begin() + 3) {
        sub[3] = i;
        break;
      }
    }
    reject(s.lambdas, sub, "spectrum has at least three distinct principal curvatures");
  }
  const Cluster& a = clusters[0];
  const Cluster& b = clusters[1];
  if (a.members.size() >= 2 && b.members.size() >= 2) {
    reject(s.lambdas, {a.members[0], a.members[1], b.members[0], b.members[1]},
           "two principal curvatures each of multiplicity >= 2");
  }
  const Cluster& big = a.members.size() >= b.members.size() ? a : b;
  const Cluster& single = a.members.size() >= b.members.size() ? b : a;
  return {big.mean(), single.mean(), n};
}

double cic_from_spectrum(double c, double lambda, double mu) {
  return 4.0 * c + 2.0 * (lambda * lambda + lambda * mu);
}

double mean_curvature(const TwoCurvatureForm& form) {
  return static_cast<double>(form.n - 1) * form.lambda + form.mu;
}

std::vector<CmcRoot> cmc_lambda_solve(std::size_t n, double c, double C, double H) {
  if (n < 4) throw std::invalid_argument("cmc_lambda_solve: n must be >= 4");
  const double a = 2.0 - static_cast<double>(n);
  const double b = H;
  const double k = -(C - 4.0 * c) / 2.0;
  double disc = b * b - 4.0 * a * k;
  // Round-off can push an exact double root slightly negative.
  const double disc_scale = b * b + std::abs(4.0 * a * k);
  if (disc < 0.0 && disc >= -1e-14 * disc_scale) disc = 0.0;

  auto pair = [&](double lambda) { return CmcRoot{lambda, H - static_cast<double>(n - 1) * lambda}; };
  if (disc < 0.0) return {};
  if (disc == 0.0) return {pair(-b / (2.0 * a))};

  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  double r1 = q / a;
  double r2 = q != 0.0 ? k / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  return {pair(r1), pair(r2)};
}

MinimalVerdict minimal_classify(std::size_t n, double c, double C) {
  if (n < 4) throw std::invalid_argument("minimal_classify: n must be >= 4");
  // H = 0 forces lambda = -sqrt(c - C/4), so C <= 4c.
  const double gap = C - 4.0 * c;
  const double scale = std::max({1.0, std::abs(C), std::abs(4.0 * c)});
  if (std::abs(gap) <= 1e-12 * scale) return {MinimalTag::TotallyGeodesic};
  if (gap > 0.0) return {};

  if (n == 4 && c > 0.0) {
    const double clifford = 8.0 * c / 3.0;
    if (std::abs(C - clifford) <= 1e-9 * clifford) {
      MinimalVerdict v;
      v.tag = MinimalTag::Clifford;
      v.lambda = -std::sqrt(c / 3.0);
      v.mu = std::sqrt(3.0 * c);
      v.profile_x0 = std::sqrt(3.0 / (4.0 * c));
      return v;
    }
  }
  return {};
}

std::string to_string(MinimalTag tag) {
  switch (tag) {
    case MinimalTag::TotallyGeodesic: return "TotallyGeodesic";
    case MinimalTag::Clifford: return "Clifford";
    case MinimalTag::None: return "None";
  }
  return "None";
}

}  // namespace cic

#include "cic/probe.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cic {

namespace {

// Gaussian vectors whose residual after projection drops below this are redrawn.
constexpr double kResampleThreshold = 1e-8;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Box-Muller on the raw engine output; std::normal_distribution is not
// specified bit-for-bit across standard libraries.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

OrthoFrame4 sample_frame(std::size_t n, std::uint64_t seed, std::size_t index) {
  if (n < 4) throw std::invalid_argument("sample_frame: n must be >= 4");
  GaussianStream gauss(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index)));

  std::array<Vector, 4> e;
  for (std::size_t a = 0; a < 4; ++a) {
    while (true) {
      Vector v(n);
      for (auto& x : v) x = gauss.next();
      const double scale = std::sqrt(dot(v, v));
      // Two passes of modified Gram-Schmidt keep <e_a, e_b> near round-off.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t b = 0; b < a; ++b) {
          const double p = dot(v, e[b]);
          for (std::size_t i = 0; i < n; ++i) v[i] -= p * e[b][i];
        }
      }
      const double norm = std::sqrt(dot(v, v));
      if (norm < kResampleThreshold * std::max(scale, 1.0)) continue;
      for (auto& x : v) x /= norm;
      e[a] = std::move(v);
      break;
    }
  }
  return OrthoFrame4(std::move(e));
}

std::vector<OrthoFrame4> sample_frames(std::size_t n, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_frames: count must be >= 1");
  std::vector<OrthoFrame4> frames;
  frames.reserve(count);
  for (std::size_t i = 0; i < count; ++i) frames.push_back(sample_frame(n, seed, i));
  return frames;
}

ProbeReport cic_probe(const CurvatureTensor& t, std::size_t count, std::uint64_t seed, double tol) {
  if (count < 2) throw std::invalid_argument("cic_probe: need at least 2 frames");
  ProbeReport rep;
  rep.samples = count;
  rep.min = std::numeric_limits<double>::infinity();
  rep.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double v = isotropic_component(t, sample_frame(t.dim(), seed, i));
    rep.min = std::min(rep.min, v);
    rep.max = std::max(rep.max, v);
    sum += v;
  }
  rep.mean = std::clamp(sum / static_cast<double>(count), rep.min, rep.max);
  rep.is_constant = rep.max - rep.min <= tol;
  return rep;
}

}  // namespace cic

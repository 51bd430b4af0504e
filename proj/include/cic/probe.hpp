#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cic/curvature.hpp"

namespace cic {

inline constexpr std::size_t kDefaultFrames = 1000;
inline constexpr double kDefaultProbeTolerance = 1e-8;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Frame number `index` of the stream identified by `seed`: Gram-Schmidt on
/// four standard-Gaussian vectors drawn from a generator seeded with a mix of
/// (seed, index), so any index range can be produced independently.
OrthoFrame4 sample_frame(std::size_t n, std::uint64_t seed, std::size_t index);

/// Frames 0..count-1 of the stream.
std::vector<OrthoFrame4> sample_frames(std::size_t n, std::size_t count, std::uint64_t seed);

struct ProbeReport {
  std::size_t samples = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  bool is_constant = false;

  double spread() const { return max - min; }
};

/// Isotropic functional over `count` sampled frames; constant iff
/// max - min <= tol.
ProbeReport cic_probe(const CurvatureTensor& t, std::size_t count = kDefaultFrames,
                      std::uint64_t seed = kDefaultSeed, double tol = kDefaultProbeTolerance);

}  // namespace cic

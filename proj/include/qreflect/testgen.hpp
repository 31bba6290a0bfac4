#pragma once

#include <cstdint>

#include "qreflect/sim.hpp"

namespace qreflect {

struct SpectrumSpec {
  std::int64_t dim = 1;
  double delta = 0.5;
  double theta = 0.0;
  std::int64_t target_multiplicity = 1;
  std::uint64_t seed = 0;
};

/// PCG32 (XSH-RR output on a 64-bit LCG state). Portable across platforms
/// and standard libraries, unlike the std distributions.
class Pcg32 {
 public:
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0xda3e39cb94b95bdbULL);

  std::uint32_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

/// U = V diag(phases) V^dagger: target_multiplicity phases equal theta, the
/// rest theta +- u with u uniform on [delta + 0.05 delta, pi]. V is the
/// Householder Q factor of a seeded complex Gaussian matrix.
DenseOperator random_gapped_unitary(const SpectrumSpec& spec);

}  // namespace qreflect

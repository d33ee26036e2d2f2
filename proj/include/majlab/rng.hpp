#pragma once

#include <cstdint>

#include "majlab/linalg.hpp"

// Self-contained deterministic RNG (splitmix64 + Box-Muller) and the shared
// random Hermitian ensemble. Not using <random> distributions keeps streams
// bit-identical across standard library versions, which the reproducibility
// contract of the search reports depends on.

namespace majlab {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Standard normal (Box-Muller, second value cached).
    double gaussian();

  private:
    std::uint64_t state_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

/// Deterministic per-stream seed for (seed, stream index) pairs; parallel and
/// serial restart schedules draw identical numbers.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

/// Gaussian GUE-style draw: M = (G + G*)/2 with standard complex normal G.
/// With rescale set, the result is scaled so its operator norm is at most 2.
HermitianMatrix rand_hermitian(Rng& rng, int n, bool rescale = true, const Tolerances& tol = {});

/// Plain complex Gaussian (Ginibre) square matrix.
ComplexMatrix rand_general(Rng& rng, int n);

} // namespace majlab

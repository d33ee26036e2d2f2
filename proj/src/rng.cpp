#include "majlab/rng.hpp"

#include <cmath>

namespace majlab {

std::uint64_t Rng::next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    Rng mix(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    return mix.next_u64();
}

HermitianMatrix rand_hermitian(Rng& rng, int n, bool rescale, const Tolerances& tol) {
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cx(rng.gaussian(), rng.gaussian());
    HermitianMatrix m = re_part(g);
    if (rescale) {
        const EigenDecomposition eig = hermitian_eig(m, tol);
        const double top = std::max(std::abs(eig.spectrum[0]), std::abs(eig.spectrum[n - 1]));
        if (top > 2.0) m = (2.0 / top) * m;
    }
    return m;
}

ComplexMatrix rand_general(Rng& rng, int n) {
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cx(rng.gaussian(), rng.gaussian());
    return g;
}

} // namespace majlab

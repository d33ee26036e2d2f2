#pragma once

#include <string>

#include "majlab/linalg.hpp"

// Majorization comparators, Ky Fan partial sums, spectral projections and the
// double-commutator trace form Tr(E [X,[X,F]]).

namespace majlab {

enum class Relation { weak, strong, weak_log, log };

std::string to_string(Relation r);

struct MajorizationVerdict {
    Relation relation;
    bool holds;
    int worst_r;   // 1-based index of the most violated prefix
    double margin; // min over prefixes of (prefix_y - prefix_x), sums or log-sums
};

/// Compare sorted spectra under the requested relation.
/// Margins range over r = 1..n for the weak relations and r = 1..n-1 for the
/// strong ones, whose r = n equality is an additional condition on `holds`.
/// Log relations reject entries below 1e-300 instead of taking log of ~0.
MajorizationVerdict check_majorization(const Spectrum& x, const Spectrum& y, Relation relation,
                                       double tol = 1e-9);

/// Sum of the r largest entries; throws if r is outside 1..n.
double ky_fan_sum(const Spectrum& x, int r);

/// Orthogonal projection of rank r; construction validates idempotency,
/// hermiticity and trace within proj_tol.
class SpectralProjection {
  public:
    SpectralProjection(HermitianMatrix e, int rank, double proj_tol = 1e-9);

    const HermitianMatrix& matrix() const { return e_; }
    int rank() const { return rank_; }

  private:
    HermitianMatrix e_;
    int rank_;
};

/// Projection onto the eigenvectors of the r largest eigenvalues (first r
/// columns after the stable sort; any tie representative attains the Ky Fan
/// maximum, and taking the first keeps the choice deterministic).
SpectralProjection top_projection(const HermitianMatrix& m, int r, const Tolerances& tol = {});

/// Tr(E [X, [X, F]]) by direct matrix arithmetic. Requires E to be a Ky Fan
/// maximizer of F, checked via Tr(E F) = ky_fan_sum(lambda(F), r) within tol.
double double_comm_trace(const SpectralProjection& e, const HermitianMatrix& x,
                         const HermitianMatrix& f, double tol = 1e-9,
                         const Tolerances& eig_tol = {});

/// e^M via eigendecomposition; exact for Hermitian arguments.
HermitianMatrix expm_hermitian(const HermitianMatrix& m, const Tolerances& tol = {});

/// Thompson log-majorization baseline: lambda(e^{A+B}) vs the spectrum of the
/// similar positive form e^{B/2} e^A e^{B/2}.
MajorizationVerdict golden_thompson_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                          double tol = 1e-9, const Tolerances& eig_tol = {});

} // namespace majlab

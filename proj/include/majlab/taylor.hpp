#pragma once

#include <vector>

#include "majlab/spectral.hpp"

// Numeric construction of the Taylor coefficient matrices of e^{At}e^{Bt} and
// e^{Ht}: Q_k, R_k = Re Q_k, H^k and the discrepancy D_k = R_k - H^k, plus the
// commutator identities that organize D_k at orders 3, 4 and 5, the
// majorization margin checks and Lie-Trotter splitting errors.

namespace majlab {

/// Q_k = sum_p binom(k,p) A^p B^{k-p}. Rejects k < 1 and k > 60 (binomial
/// would overflow 64-bit integers well before that matters here).
ComplexMatrix compute_Qk(const HermitianMatrix& a, const HermitianMatrix& b, int k);

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y);
/// m-fold iterated commutator ad_x^m(y); m = 0 returns y.
ComplexMatrix ad_power(const ComplexMatrix& x, const ComplexMatrix& y, int m);

/// H = A + B, X = A - B.
struct PairHX {
    HermitianMatrix H;
    HermitianMatrix X;
};
PairHX pair_hx(const HermitianMatrix& a, const HermitianMatrix& b);

/// All order-k coefficient matrices for one pair, with R = Re Q and
/// D = R - H^k derived in place. trace_D is reported for inspection; it is
/// guaranteed to vanish at k = 3 and asserted nowhere else.
struct CoeffBundle {
    int k;
    ComplexMatrix Q;
    HermitianMatrix R;
    HermitianMatrix Hk;
    HermitianMatrix D;
    double trace_D;
};
CoeffBundle coeff_bundle(const HermitianMatrix& a, const HermitianMatrix& b, int k);

/// Relative Frobenius residual of R_3 - H^3 = (1/4)[X,[X,H]], scaled by
/// 1/(1 + ||H||_F^3).
double d3_identity_residual(const HermitianMatrix& a, const HermitianMatrix& b);
/// Residual of R_4 - H^4 = (1/2)[X,[X,H^2]] - (1/4)[X,H]^2.
double d4_identity_residual(const HermitianMatrix& a, const HermitianMatrix& b);
/// Residual of the five-term expansion of D_5 in H and X.
double d5_identity_residual(const HermitianMatrix& a, const HermitianMatrix& b);

/// Spectrum of -[X,H]^2, which is positive semidefinite since [X,H] is
/// skew-Hermitian.
Spectrum skew_square_psd(const HermitianMatrix& x, const HermitianMatrix& h,
                         const Tolerances& tol = {});

struct MarginRow {
    int r;
    double margin;      // ky_fan_sum(lambda(R_k), r) - ky_fan_sum(lambda(H^k), r)
    double certificate; // Tr(E_{k,r} D_k), E per the odd/even projection choice
};
struct ComparisonMargins {
    int k;
    std::vector<MarginRow> rows;
    double trace_residual; // |Tr H^3 - Tr R_3| / (1 + ||H||_F^3); 0 for k != 3
};
/// Prefix margins of lambda(H^k) vs lambda(R_k) together with the projection
/// certificates Tr(E_{k,r} D_k), E drawn from H for odd k and from H^2 for
/// even k. Requires k >= 3.
ComparisonMargins comparison_margins(const HermitianMatrix& a, const HermitianMatrix& b, int k,
                                     const Tolerances& tol = {});

/// Verdict of lambda(H^k) weakly majorized by sigma(Q_k).
MajorizationVerdict sigma_comparison(const HermitianMatrix& a, const HermitianMatrix& b, int k,
                                     double tol = 1e-9, const Tolerances& eig_tol = {});

/// || (e^{tA/n} e^{tB/n})^n - e^{t(A+B)} ||_F.
double trotter_error(const HermitianMatrix& a, const HermitianMatrix& b, double t, int n,
                     const Tolerances& tol = {});

/// One commutator term of a candidate decomposition D = sum c_j [X,[X,F_j]] + sum W_q* W_q.
struct DecompositionTerm {
    double coeff; // must be >= 0
    HermitianMatrix f;
};
/// Frobenius residual of the candidate decomposition; coefficients below zero
/// are rejected.
double decomposition_check(const HermitianMatrix& d, const HermitianMatrix& x,
                           const std::vector<DecompositionTerm>& terms,
                           const std::vector<ComplexMatrix>& ws);

} // namespace majlab

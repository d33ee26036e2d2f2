#include "majlab/taylor.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace majlab {

namespace {

// Powers by iterated multiplication; keeps rounding behavior uniform with the
// Q_k construction. p = 0 gives the identity.
ComplexMatrix power(const ComplexMatrix& m, int p) {
    ComplexMatrix r = ComplexMatrix::identity(m.dim());
    for (int i = 0; i < p; ++i) r = r * m;
    return r;
}

HermitianMatrix hermitian_power(const HermitianMatrix& m, int p) {
    return re_part(power(m.matrix(), p));
}

std::int64_t binomial(int k, int p) {
    std::int64_t c = 1;
    for (int i = 1; i <= p; ++i) c = c * (k - p + i) / i;
    return c;
}

double scale_factor(const HermitianMatrix& h, int k) {
    return 1.0 + std::pow(frobenius_norm(h), k);
}

} // namespace

ComplexMatrix compute_Qk(const HermitianMatrix& a, const HermitianMatrix& b, int k) {
    if (a.dim() != b.dim()) throw std::invalid_argument("compute_Qk: dimension mismatch");
    if (k < 1) throw std::invalid_argument("compute_Qk: k must be >= 1");
    if (k > 60) throw std::invalid_argument("compute_Qk: binomial overflow for k > 60");

    const int n = a.dim();
    std::vector<ComplexMatrix> bpow;
    bpow.reserve(static_cast<std::size_t>(k) + 1);
    bpow.push_back(ComplexMatrix::identity(n));
    for (int p = 1; p <= k; ++p) bpow.push_back(bpow.back() * b.matrix());

    ComplexMatrix apow = ComplexMatrix::identity(n);
    ComplexMatrix q(n);
    for (int p = 0; p <= k; ++p) {
        if (p > 0) apow = apow * a.matrix();
        q += static_cast<double>(binomial(k, p)) * (apow * bpow[static_cast<std::size_t>(k - p)]);
    }
    return q;
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return x * y - y * x;
}

ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return x * y + y * x;
}

ComplexMatrix ad_power(const ComplexMatrix& x, const ComplexMatrix& y, int m) {
    if (m < 0) throw std::invalid_argument("ad_power: m must be >= 0");
    ComplexMatrix r = y;
    for (int i = 0; i < m; ++i) r = commutator(x, r);
    return r;
}

PairHX pair_hx(const HermitianMatrix& a, const HermitianMatrix& b) {
    return PairHX{a + b, a - b};
}

CoeffBundle coeff_bundle(const HermitianMatrix& a, const HermitianMatrix& b, int k) {
    ComplexMatrix q = compute_Qk(a, b, k);
    HermitianMatrix r = re_part(q);
    HermitianMatrix hk = hermitian_power(a + b, k);
    HermitianMatrix d = r - hk;
    const double tr = trace_re(d);
    return CoeffBundle{k, std::move(q), std::move(r), std::move(hk), std::move(d), tr};
}

double d3_identity_residual(const HermitianMatrix& a, const HermitianMatrix& b) {
    const PairHX hx = pair_hx(a, b);
    const CoeffBundle c = coeff_bundle(a, b, 3);
    const ComplexMatrix rhs = 0.25 * ad_power(hx.X.matrix(), hx.H.matrix(), 2);
    return frobenius_norm(c.D.matrix() - rhs) / scale_factor(hx.H, 3);
}

double d4_identity_residual(const HermitianMatrix& a, const HermitianMatrix& b) {
    const PairHX hx = pair_hx(a, b);
    const CoeffBundle c = coeff_bundle(a, b, 4);
    const ComplexMatrix& x = hx.X.matrix();
    const ComplexMatrix h2 = hx.H.matrix() * hx.H.matrix();
    const ComplexMatrix xh = commutator(x, hx.H.matrix());
    const ComplexMatrix rhs = 0.5 * ad_power(x, h2, 2) - 0.25 * (xh * xh);
    return frobenius_norm(c.D.matrix() - rhs) / scale_factor(hx.H, 4);
}

double d5_identity_residual(const HermitianMatrix& a, const HermitianMatrix& b) {
    const PairHX hx = pair_hx(a, b);
    const CoeffBundle c = coeff_bundle(a, b, 5);
    const ComplexMatrix& h = hx.H.matrix();
    const ComplexMatrix& x = hx.X.matrix();
    const ComplexMatrix h2 = h * h;
    const ComplexMatrix h3 = h2 * h;
    const ComplexMatrix adx2_h = ad_power(x, h, 2);
    const ComplexMatrix rhs = (1.0 / 16.0) * ad_power(x, h, 4) +
                              (7.0 / 16.0) * ad_power(x, h3, 2) +
                              (9.0 / 32.0) * anticommutator(h, ad_power(x, h2, 2)) -
                              (1.0 / 32.0) * anticommutator(h2, adx2_h) +
                              (1.0 / 8.0) * (h * adx2_h * h);
    return frobenius_norm(c.D.matrix() - rhs) / scale_factor(hx.H, 5);
}

Spectrum skew_square_psd(const HermitianMatrix& x, const HermitianMatrix& h,
                         const Tolerances& tol) {
    const ComplexMatrix k = commutator(x.matrix(), h.matrix());
    return hermitian_eig(re_part(-(k * k)), tol).spectrum;
}

ComparisonMargins comparison_margins(const HermitianMatrix& a, const HermitianMatrix& b, int k,
                                     const Tolerances& tol) {
    if (k < 3) throw std::invalid_argument("comparison_margins: k must be >= 3");
    const int n = a.dim();
    const PairHX hx = pair_hx(a, b);
    const CoeffBundle c = coeff_bundle(a, b, k);

    const Spectrum lam_r = hermitian_eig(c.R, tol).spectrum;
    const Spectrum lam_hk = hermitian_eig(c.Hk, tol).spectrum;

    // E_{k,r} from H for odd k, from H^2 for even k
    const HermitianMatrix proj_source = (k % 2 == 1) ? hx.H : re_part(hx.H.matrix() * hx.H.matrix());

    ComparisonMargins out{k, {}, 0.0};
    out.rows.reserve(static_cast<std::size_t>(n));
    for (int r = 1; r <= n; ++r) {
        const SpectralProjection e = top_projection(proj_source, r, tol);
        const double margin = ky_fan_sum(lam_r, r) - ky_fan_sum(lam_hk, r);
        const double cert = trace_product(e.matrix().matrix(), c.D.matrix()).real();
        out.rows.push_back(MarginRow{r, margin, cert});
    }
    if (k == 3) out.trace_residual = std::abs(c.trace_D) / scale_factor(hx.H, 3);
    return out;
}

MajorizationVerdict sigma_comparison(const HermitianMatrix& a, const HermitianMatrix& b, int k,
                                     double tol, const Tolerances& eig_tol) {
    const CoeffBundle c = coeff_bundle(a, b, k);
    const Spectrum lam_hk = hermitian_eig(c.Hk, eig_tol).spectrum;
    const Spectrum sig_q = singular_values(c.Q, eig_tol);
    return check_majorization(lam_hk, sig_q, Relation::weak, tol);
}

double trotter_error(const HermitianMatrix& a, const HermitianMatrix& b, double t, int n,
                     const Tolerances& tol) {
    if (n < 1) throw std::invalid_argument("trotter_error: n must be >= 1");
    const HermitianMatrix target = expm_hermitian(t * (a + b), tol);
    const ComplexMatrix step =
        expm_hermitian((t / n) * a, tol).matrix() * expm_hermitian((t / n) * b, tol).matrix();
    ComplexMatrix prod = ComplexMatrix::identity(a.dim());
    for (int i = 0; i < n; ++i) prod = prod * step;
    return frobenius_norm(prod - target.matrix());
}

double decomposition_check(const HermitianMatrix& d, const HermitianMatrix& x,
                           const std::vector<DecompositionTerm>& terms,
                           const std::vector<ComplexMatrix>& ws) {
    ComplexMatrix acc = d.matrix();
    for (const auto& term : terms) {
        if (term.coeff < 0.0)
            throw std::invalid_argument("decomposition_check: coefficients must be nonnegative");
        acc -= term.coeff * ad_power(x.matrix(), term.f.matrix(), 2);
    }
    for (const auto& w : ws) acc -= adjoint(w) * w;
    return frobenius_norm(acc);
}

} // namespace majlab

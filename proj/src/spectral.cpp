#include "majlab/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace majlab {

std::string to_string(Relation r) {
    switch (r) {
        case Relation::weak: return "weak";
        case Relation::strong: return "strong";
        case Relation::weak_log: return "weak_log";
        case Relation::log: return "log";
    }
    return "?";
}

MajorizationVerdict check_majorization(const Spectrum& x, const Spectrum& y, Relation relation,
                                       double tol) {
    const int n = x.size();
    if (n != y.size())
        throw std::invalid_argument("check_majorization: spectra have different lengths");

    const bool logscale = relation == Relation::weak_log || relation == Relation::log;
    const bool strong = relation == Relation::strong || relation == Relation::log;

    auto term = [&](const Spectrum& s, int i) {
        const double v = s[i];
        if (!logscale) return v;
        if (v < 1e-300)
            throw std::domain_error("check_majorization: entry " + std::to_string(v) +
                                    " not usable under a log relation");
        return std::log(v);
    };

    double px = 0.0, py = 0.0;
    double margin = 0.0;
    int worst_r = n;
    bool first = true;
    const int last_margin_r = strong ? n - 1 : n;
    for (int i = 0; i < n; ++i) {
        px += term(x, i);
        py += term(y, i);
        if (i < last_margin_r) {
            const double diff = py - px;
            if (first || diff < margin) {
                margin = diff;
                worst_r = i + 1;
                first = false;
            }
        }
    }
    if (first) { // strong relation with n = 1: no free prefixes
        margin = 0.0;
        worst_r = n;
    }

    bool holds = margin >= -tol;
    if (strong && std::abs(py - px) > tol) holds = false;
    return MajorizationVerdict{relation, holds, worst_r, margin};
}

double ky_fan_sum(const Spectrum& x, int r) {
    if (r < 1 || r > x.size())
        throw std::invalid_argument("ky_fan_sum: r = " + std::to_string(r) + " out of range 1.." +
                                    std::to_string(x.size()));
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += x[i];
    return s;
}

SpectralProjection::SpectralProjection(HermitianMatrix e, int rank, double proj_tol)
    : e_(std::move(e)), rank_(rank) {
    if (rank < 1 || rank > e_.dim())
        throw std::invalid_argument("SpectralProjection: rank out of range");
    const ComplexMatrix& em = e_.matrix();
    if (frobenius_norm(matmul(em, em) - em) > proj_tol)
        throw std::invalid_argument("SpectralProjection: matrix is not idempotent within tolerance");
    if (std::abs(trace(em).real() - rank) > proj_tol)
        throw std::invalid_argument("SpectralProjection: trace does not match rank");
}

SpectralProjection top_projection(const HermitianMatrix& m, int r, const Tolerances& tol) {
    const int n = m.dim();
    if (r < 1 || r > n) throw std::invalid_argument("top_projection: r out of range");
    const EigenDecomposition eig = hermitian_eig(m, tol);
    ComplexMatrix e(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cx s(0.0, 0.0);
            for (int k = 0; k < r; ++k) s += eig.vectors(i, k) * std::conj(eig.vectors(j, k));
            e(i, j) = s;
        }
    return SpectralProjection(re_part(e), r);
}

double double_comm_trace(const SpectralProjection& e, const HermitianMatrix& x,
                         const HermitianMatrix& f, double tol, const Tolerances& eig_tol) {
    const EigenDecomposition eig = hermitian_eig(f, eig_tol);
    const double kf = ky_fan_sum(eig.spectrum, e.rank());
    const double attained = trace_product(e.matrix().matrix(), f.matrix()).real();
    if (std::abs(attained - kf) > tol * (1.0 + std::abs(kf)))
        throw std::invalid_argument(
            "double_comm_trace: E is not a Ky Fan maximizing projection of F (Tr(EF) = " +
            std::to_string(attained) + ", Ky Fan sum = " + std::to_string(kf) + ")");

    const ComplexMatrix xf = x.matrix() * f.matrix() - f.matrix() * x.matrix();
    const ComplexMatrix xxf = x.matrix() * xf - xf * x.matrix();
    return trace_product(e.matrix().matrix(), xxf).real();
}

HermitianMatrix expm_hermitian(const HermitianMatrix& m, const Tolerances& tol) {
    const int n = m.dim();
    const EigenDecomposition eig = hermitian_eig(m, tol);
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cx s(0.0, 0.0);
            for (int k = 0; k < n; ++k)
                s += eig.vectors(i, k) * std::exp(eig.spectrum[k]) * std::conj(eig.vectors(j, k));
            r(i, j) = s;
        }
    return re_part(r);
}

MajorizationVerdict golden_thompson_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                          double tol, const Tolerances& eig_tol) {
    const HermitianMatrix sum_exp = expm_hermitian(a + b, eig_tol);
    const HermitianMatrix eb2 = expm_hermitian(0.5 * b, eig_tol);
    const HermitianMatrix ea = expm_hermitian(a, eig_tol);
    // e^A e^B is similar to this positive definite form, so the eigenvalues match
    const HermitianMatrix product = re_part(eb2.matrix() * ea.matrix() * eb2.matrix());

    const Spectrum lhs = hermitian_eig(sum_exp, eig_tol).spectrum;
    const Spectrum rhs = hermitian_eig(product, eig_tol).spectrum;
    return check_majorization(lhs, rhs, Relation::log, tol);
}

} // namespace majlab

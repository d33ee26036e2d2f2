#include "majlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace majlab {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

} // namespace

ComplexMatrix::ComplexMatrix(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("ComplexMatrix: dim must be positive");
    a_.assign(static_cast<std::size_t>(n) * n, cx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<cx>>& rows) {
    const int n = static_cast<int>(rows.size());
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows, matrix must be square");
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    if (!all_finite(m)) throw std::invalid_argument("ComplexMatrix::from_rows: non-finite entry");
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator+=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator-=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= cx(-1.0, 0.0); }
ComplexMatrix operator*(ComplexMatrix a, cx s) { return a *= s; }
ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "matmul");
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cx aik = a(i, k);
            if (aik == cx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
    return c;
}

cx trace(const ComplexMatrix& a) {
    cx t(0.0, 0.0);
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

cx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "trace_product");
    cx t(0.0, 0.0);
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t += a(i, j) * b(j, i);
    return t;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

bool all_finite(const ComplexMatrix& a) {
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double hermitian_tol)
    : HermitianMatrix(ComplexMatrix(m), Trusted{}) {
    const double defect = frobenius_norm(m - adjoint(m));
    if (defect > hermitian_tol * (1.0 + frobenius_norm(m)))
        throw std::invalid_argument("HermitianMatrix: adjoint defect " + std::to_string(defect) +
                                    " exceeds tolerance; input rejected");
}

// Stores (m + m*)/2. Entry (j,i) becomes the bitwise conjugate of entry (i,j)
// and diagonals have exactly zero imaginary part.
HermitianMatrix::HermitianMatrix(ComplexMatrix m, Trusted) : m_(m.dim()) {
    const int n = m.dim();
    for (int i = 0; i < n; ++i) {
        m_(i, i) = cx(m(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cx v = (m(i, j) + std::conj(m(j, i))) * 0.5;
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
}

HermitianMatrix HermitianMatrix::zero(int n) { return re_part(ComplexMatrix(n)); }
HermitianMatrix HermitianMatrix::identity(int n) { return re_part(ComplexMatrix::identity(n)); }

HermitianMatrix re_part(const ComplexMatrix& y) {
    return HermitianMatrix(y, HermitianMatrix::Trusted{});
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return re_part(a.matrix() + b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return re_part(a.matrix() - b.matrix());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return re_part(cx(s, 0.0) * a.matrix());
}

ComplexMatrix operator*(const HermitianMatrix& a, const HermitianMatrix& b) {
    return matmul(a.matrix(), b.matrix());
}

double frobenius_norm(const HermitianMatrix& a) { return frobenius_norm(a.matrix()); }

double trace_re(const HermitianMatrix& a) { return trace(a.matrix()).real(); }

Spectrum::Spectrum(std::vector<double> sorted_values) : v_(std::move(sorted_values)) {
    for (std::size_t i = 0; i + 1 < v_.size(); ++i)
        if (v_[i] < v_[i + 1])
            throw std::invalid_argument("Spectrum: values not sorted nonincreasing");
}

Spectrum Spectrum::from_unsorted(std::vector<double> values) {
    std::stable_sort(values.begin(), values.end(), [](double a, double b) { return a > b; });
    return Spectrum(std::move(values));
}

namespace {

double offdiag_norm(const ComplexMatrix& m) {
    double s = 0.0;
    const int n = m.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// One Jacobi rotation annihilating m(p,q). V accumulates the product of
// rotations so that V* M0 V stays equal to the working matrix.
void jacobi_rotate(ComplexMatrix& m, ComplexMatrix& v, int p, int q) {
    const cx gamma = m(p, q);
    const double g = std::abs(gamma);
    if (g == 0.0) return;

    const double alpha = m(p, p).real();
    const double beta = m(q, q).real();
    const double tau = (beta - alpha) / (2.0 * g);
    // smaller-magnitude root of g t^2 - (beta-alpha) t - g = 0
    double t;
    if (tau >= 0.0)
        t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double sigma = t * c;
    const cx phase = std::conj(gamma) / g; // e^{-i arg(gamma)}
    const cx s = sigma * phase;

    const int n = m.dim();
    // columns: M <- M U with U = [[c, -conj(s)], [s, c]] on (p,q)
    for (int i = 0; i < n; ++i) {
        const cx mip = m(i, p), miq = m(i, q);
        m(i, p) = c * mip + s * miq;
        m(i, q) = -std::conj(s) * mip + c * miq;
    }
    // rows: M <- U* M
    for (int j = 0; j < n; ++j) {
        const cx mpj = m(p, j), mqj = m(q, j);
        m(p, j) = c * mpj + std::conj(s) * mqj;
        m(q, j) = -s * mpj + c * mqj;
    }
    // exact zeros where the rotation annihilates; diagonals stay real
    m(p, q) = cx(0.0, 0.0);
    m(q, p) = cx(0.0, 0.0);
    m(p, p) = cx(alpha * c * c + beta * sigma * sigma + 2.0 * c * sigma * g, 0.0);
    m(q, q) = cx(alpha * sigma * sigma + beta * c * c - 2.0 * c * sigma * g, 0.0);

    for (int i = 0; i < n; ++i) {
        const cx vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip + s * viq;
        v(i, q) = -std::conj(s) * vip + c * viq;
    }
}

} // namespace

EigenDecomposition hermitian_eig(const HermitianMatrix& h, const Tolerances& tol) {
    const int n = h.dim();
    ComplexMatrix m = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = frobenius_norm(m); // invariant under the unitary sweeps

    if (scale > 0.0 && n > 1) {
        bool converged = false;
        for (int sweep = 0; sweep < tol.max_sweeps; ++sweep) {
            if (offdiag_norm(m) <= tol.jacobi_tol * scale) {
                converged = true;
                break;
            }
            for (int p = 0; p < n - 1; ++p)
                for (int q = p + 1; q < n; ++q) jacobi_rotate(m, v, p, q);
        }
        if (!converged && offdiag_norm(m) > tol.jacobi_tol * scale)
            throw std::runtime_error("hermitian_eig: Jacobi sweep limit (" +
                                     std::to_string(tol.max_sweeps) +
                                     ") reached without convergence");
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return m(i, i).real() > m(j, j).real(); });

    std::vector<double> values(static_cast<std::size_t>(n));
    ComplexMatrix vectors(n);
    for (int j = 0; j < n; ++j) {
        values[static_cast<std::size_t>(j)] = m(order[static_cast<std::size_t>(j)],
                                                order[static_cast<std::size_t>(j)]).real();
        for (int i = 0; i < n; ++i) vectors(i, j) = v(i, order[static_cast<std::size_t>(j)]);
    }

    EigenDecomposition eig{Spectrum(std::move(values)), std::move(vectors)};

    // residual ||M V - V diag||_F <= eig_tol * ||M||_F
    ComplexMatrix resid = matmul(h.matrix(), eig.vectors);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) resid(i, j) -= eig.vectors(i, j) * eig.spectrum[j];
    if (frobenius_norm(resid) > tol.eig_tol * std::max(scale, 1e-300))
        throw std::runtime_error("hermitian_eig: residual exceeds eig_tol");
    ComplexMatrix gram = matmul(adjoint(eig.vectors), eig.vectors);
    gram -= ComplexMatrix::identity(n);
    if (frobenius_norm(gram) > tol.eig_tol)
        throw std::runtime_error("hermitian_eig: eigenvector basis not orthonormal");

    return eig;
}

Spectrum singular_values(const ComplexMatrix& y, const Tolerances& tol) {
    const HermitianMatrix gram = re_part(matmul(adjoint(y), y));
    const EigenDecomposition eig = hermitian_eig(gram, tol);
    std::vector<double> s(eig.spectrum.values().size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = std::sqrt(std::max(eig.spectrum.values()[i], 0.0));
    return Spectrum(std::move(s)); // sqrt preserves the nonincreasing order
}

} // namespace majlab

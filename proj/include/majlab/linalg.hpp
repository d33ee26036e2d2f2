#pragma once

#include <complex>
#include <string>
#include <vector>

// Dense complex linear algebra for small Hermitian problems (n <= ~200):
// matrix arithmetic, a cyclic Jacobi eigensolver, singular values.
// Everything here is an immutable value after construction; all operations
// are pure functions and safe to call concurrently.

namespace majlab {

using cx = std::complex<double>;

/// Numerical tolerances, overridable per call site.
struct Tolerances {
    double hermitian_tol = 1e-12; // relative adjoint-defect bound accepted at construction
    double jacobi_tol = 1e-13;    // converged when off-diagonal Frobenius <= jacobi_tol * ||M||_F
    int max_sweeps = 60;
    double eig_tol = 1e-10;       // residual / orthonormality validation of eigendecompositions
};

/// Square complex matrix, row-major dense storage.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(int n);
    static ComplexMatrix identity(int n);
    static ComplexMatrix from_rows(const std::vector<std::vector<cx>>& rows);

    int dim() const { return n_; }
    cx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const cx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cx s);

  private:
    int n_;
    std::vector<cx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cx s);
ComplexMatrix operator*(cx s, ComplexMatrix a);

/// Dense product; throws std::invalid_argument on dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

cx trace(const ComplexMatrix& a);
/// Tr(a b) without forming the product.
cx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

/// Complex matrix constrained to equal its adjoint. The checked constructor
/// rejects inputs with relative adjoint defect beyond hermitian_tol; the
/// stored form is exactly (M+M*)/2, so M == M* holds bit-exactly afterwards.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(const ComplexMatrix& m, double hermitian_tol = Tolerances{}.hermitian_tol);
    static HermitianMatrix zero(int n);
    static HermitianMatrix identity(int n);

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cx& operator()(int i, int j) const { return m_(i, j); }

  private:
    struct Trusted {};
    HermitianMatrix(ComplexMatrix m, Trusted);
    friend HermitianMatrix re_part(const ComplexMatrix& y);
    ComplexMatrix m_;
};

/// (y + y*)/2. The result is Hermitian bit-exactly; no tolerance involved.
HermitianMatrix re_part(const ComplexMatrix& y);

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);
ComplexMatrix operator*(const HermitianMatrix& a, const HermitianMatrix& b);

double frobenius_norm(const HermitianMatrix& a);
double trace_re(const HermitianMatrix& a);

/// Real vector sorted nonincreasing.
class Spectrum {
  public:
    explicit Spectrum(std::vector<double> sorted_values);
    static Spectrum from_unsorted(std::vector<double> values); // stable descending sort

    int size() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return v_; }

  private:
    std::vector<double> v_;
};

struct EigenDecomposition {
    Spectrum spectrum;     // nonincreasing
    ComplexMatrix vectors; // orthonormal columns, ordered to match spectrum
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
/// Throws std::runtime_error if the off-diagonal norm has not dropped below
/// jacobi_tol * ||M||_F after max_sweeps sweeps, and if the resulting residual
/// or orthonormality defect exceeds eig_tol.
EigenDecomposition hermitian_eig(const HermitianMatrix& m, const Tolerances& tol = {});

/// Singular values via sqrt of the spectrum of Y*Y; roundoff negatives clamped to 0.
Spectrum singular_values(const ComplexMatrix& y, const Tolerances& tol = {});

} // namespace majlab

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace majlab::testing {

namespace {

using cxd = std::complex<double>;

// tiny self-contained complex matrix product so the characteristic-polynomial
// oracle shares no arithmetic with the library
std::vector<cxd> flat_mul(const std::vector<cxd>& a, const std::vector<cxd>& b, int n) {
    std::vector<cxd> c(static_cast<std::size_t>(n) * n, cxd(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cxd aik = a[static_cast<std::size_t>(i) * n + k];
            for (int j = 0; j < n; ++j)
                c[static_cast<std::size_t>(i) * n + j] += aik * b[static_cast<std::size_t>(k) * n + j];
        }
    return c;
}

double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (double ck : c) v = v * x + ck;
    return v;
}

double poly_deriv_eval(const std::vector<double>& c, double x) {
    const int n = static_cast<int>(c.size()) - 1;
    double v = 0.0;
    for (int j = 0; j < n; ++j) v = v * x + c[static_cast<std::size_t>(j)] * (n - j);
    return v;
}

cxd poly_eval(const std::vector<double>& c, cxd z) {
    cxd v(0.0, 0.0);
    for (double ck : c) v = v * z + ck;
    return v;
}

} // namespace

std::vector<double> charpoly_eigs(const HermitianMatrix& m) {
    const int n = m.dim();
    std::vector<cxd> base(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) base[static_cast<std::size_t>(i) * n + j] = m(i, j);

    // power sums s_j = Tr(M^j)
    std::vector<double> s(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<cxd> pw = base;
    for (int j = 1; j <= n; ++j) {
        if (j > 1) pw = flat_mul(pw, base, n);
        cxd tr(0.0, 0.0);
        for (int i = 0; i < n; ++i) tr += pw[static_cast<std::size_t>(i) * n + i];
        s[static_cast<std::size_t>(j)] = tr.real();
    }

    // Newton's identities: e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i
    std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        double sign = 1.0;
        for (int i = 1; i <= k; ++i) {
            acc += sign * e[static_cast<std::size_t>(k - i)] * s[static_cast<std::size_t>(i)];
            sign = -sign;
        }
        e[static_cast<std::size_t>(k)] = acc / k;
    }

    // monic characteristic polynomial coefficients, highest degree first
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    double sign = 1.0;
    for (int k = 0; k <= n; ++k) {
        c[static_cast<std::size_t>(k)] = sign * e[static_cast<std::size_t>(k)];
        sign = -sign;
    }

    // Durand-Kerner
    double radius = 1.0;
    for (int k = 1; k <= n; ++k) radius = std::max(radius, std::abs(c[static_cast<std::size_t>(k)]));
    radius += 1.0;
    std::vector<cxd> z(static_cast<std::size_t>(n));
    cxd w(0.4, 0.9);
    cxd wp = w;
    for (int i = 0; i < n; ++i) {
        z[static_cast<std::size_t>(i)] = radius * wp;
        wp *= w;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            cxd den(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            const cxd delta = poly_eval(c, z[static_cast<std::size_t>(i)]) / den;
            z[static_cast<std::size_t>(i)] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-15 * radius) break;
    }

    // Hermitian input: roots are real; polish on the real axis
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = z[static_cast<std::size_t>(i)].real();
        for (int it = 0; it < 6; ++it) {
            const double dp = poly_deriv_eval(c, x);
            if (dp == 0.0) break;
            x -= poly_eval(c, x) / dp;
        }
        out[static_cast<std::size_t>(i)] = x;
    }
    std::sort(out.begin(), out.end(), [](double a, double b) { return a > b; });
    return out;
}

namespace {

// Householder reduction of a real symmetric matrix to tridiagonal form,
// eigenvalues only. a is row-major and is destroyed.
void tred1(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>& e) {
    const auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[static_cast<std::size_t>(i)] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[static_cast<std::size_t>(i)] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[static_cast<std::size_t>(j)] = g / h;
                    f += e[static_cast<std::size_t>(j)] * at(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = at(i, j);
                    const double ej = e[static_cast<std::size_t>(j)] - hh * f;
                    e[static_cast<std::size_t>(j)] = ej;
                    for (int k = 0; k <= j; ++k) at(j, k) -= f * e[static_cast<std::size_t>(k)] + ej * at(i, k);
                }
            }
        } else {
            e[static_cast<std::size_t>(i)] = at(i, l);
        }
    }
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = at(i, i);
}

// implicit-shift QL on the tridiagonal (d, e), eigenvalues only
bool tql1(std::vector<double>& d, std::vector<double>& e, int n) {
    for (int i = 1; i < n; ++i) e[static_cast<std::size_t>(i - 1)] = e[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(n - 1)] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[static_cast<std::size_t>(m)]) +
                                  std::abs(d[static_cast<std::size_t>(m + 1)]);
                if (std::abs(e[static_cast<std::size_t>(m)]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) return false;
                double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) /
                           (2.0 * e[static_cast<std::size_t>(l)]);
                double r = std::hypot(g, 1.0);
                g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
                    e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
                double s = 1.0, cth = 1.0, p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[static_cast<std::size_t>(i)];
                    const double b = cth * e[static_cast<std::size_t>(i)];
                    r = std::hypot(f, g);
                    e[static_cast<std::size_t>(i + 1)] = r;
                    if (r == 0.0) {
                        d[static_cast<std::size_t>(i + 1)] -= p;
                        e[static_cast<std::size_t>(m)] = 0.0;
                        break;
                    }
                    s = f / r;
                    cth = g / r;
                    g = d[static_cast<std::size_t>(i + 1)] - p;
                    r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * cth * b;
                    p = s * r;
                    d[static_cast<std::size_t>(i + 1)] = g + p;
                    g = cth * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[static_cast<std::size_t>(l)] -= p;
                e[static_cast<std::size_t>(l)] = g;
                e[static_cast<std::size_t>(m)] = 0.0;
            }
        } while (m != l);
    }
    return true;
}

} // namespace

std::vector<double> reference_eigs(const HermitianMatrix& m) {
    const int n = m.dim();
    const int nn = 2 * n;
    // real symmetric embedding [[Re, -Im], [Im, Re]]
    std::vector<double> s(static_cast<std::size_t>(nn) * nn, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cx v = m(i, j);
            s[static_cast<std::size_t>(i) * nn + j] = v.real();
            s[static_cast<std::size_t>(i) * nn + (j + n)] = -v.imag();
            s[static_cast<std::size_t>(i + n) * nn + j] = v.imag();
            s[static_cast<std::size_t>(i + n) * nn + (j + n)] = v.real();
        }
    std::vector<double> d(static_cast<std::size_t>(nn)), e(static_cast<std::size_t>(nn));
    tred1(s, nn, d, e);
    if (!tql1(d, e, nn)) throw std::runtime_error("reference eigensolver did not converge");
    std::sort(d.begin(), d.end(), [](double a, double b) { return a > b; });
    // every eigenvalue of the embedding appears twice
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(j)] =
            0.5 * (d[static_cast<std::size_t>(2 * j)] + d[static_cast<std::size_t>(2 * j + 1)]);
    return out;
}

ComplexMatrix expm_taylor(const ComplexMatrix& m) {
    const int n = m.dim();
    double nrm = frobenius_norm(m);
    int s = 0;
    while (nrm > 0.5) {
        nrm *= 0.5;
        ++s;
    }
    const ComplexMatrix t = m * cx(std::ldexp(1.0, -s), 0.0);
    ComplexMatrix sum = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = term * t;
        term *= cx(1.0 / k, 0.0);
        sum += term;
        if (frobenius_norm(term) < 1e-22) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

HermitianMatrix random_rank_projection(Rng& rng, int n, int r) {
    if (r < 1 || r > n) throw std::invalid_argument("rank out of range");
    std::vector<std::vector<cxd>> basis;
    while (static_cast<int>(basis.size()) < r) {
        std::vector<cxd> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = cxd(rng.gaussian(), rng.gaussian());
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : basis) {
                cxd proj(0.0, 0.0);
                for (int i = 0; i < n; ++i) proj += std::conj(u[static_cast<std::size_t>(i)]) * v[static_cast<std::size_t>(i)];
                for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= proj * u[static_cast<std::size_t>(i)];
            }
        double nrm = 0.0;
        for (const cxd& vi : v) nrm += std::norm(vi);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) continue;
        for (cxd& vi : v) vi /= nrm;
        basis.push_back(v);
    }
    ComplexMatrix e(n);
    for (const auto& u : basis)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                e(i, j) += u[static_cast<std::size_t>(i)] * std::conj(u[static_cast<std::size_t>(j)]);
    return re_part(e);
}

double best_random_projection_trace(const HermitianMatrix& f, int r, int samples, Rng& rng) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const HermitianMatrix e = random_rank_projection(rng, f.dim(), r);
        best = std::max(best, trace_product(e.matrix(), f.matrix()).real());
    }
    return best;
}

double eq23_sum(const HermitianMatrix& f, const HermitianMatrix& x, int r) {
    const EigenDecomposition ed = hermitian_eig(f);
    const int n = f.dim();
    const ComplexMatrix xt = adjoint(ed.vectors) * x.matrix() * ed.vectors;
    double acc = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = r; j < n; ++j)
            acc += (ed.spectrum[i] - ed.spectrum[j]) * std::norm(xt(i, j));
    return 2.0 * acc;
}

} // namespace majlab::testing

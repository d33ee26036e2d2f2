#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "majlab/linalg.hpp"
#include "majlab/matrix_io.hpp"
#include "majlab/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace majlab;
using namespace majlab::testing;

TEST_CASE("matrix arithmetic basics") {
    Rng rng(derive_stream(42, 0));
    const ComplexMatrix m = rand_general(rng, 4);
    const ComplexMatrix id = ComplexMatrix::identity(4);
    const ComplexMatrix zero(4);

    CHECK(max_abs_diff(id * m, m) == 0.0);
    CHECK(frobenius_norm(m * zero) == 0.0);
    CHECK_THROWS_AS(ComplexMatrix(0), std::invalid_argument);
    CHECK_THROWS_AS(m * ComplexMatrix(3), std::invalid_argument);

    const ComplexMatrix xz = pauli_x() * pauli_z();
    const ComplexMatrix expected =
        ComplexMatrix::from_rows({{cx(0.0), cx(-1.0)}, {cx(1.0), cx(0.0)}});
    CHECK(max_abs_diff(xz, expected) == 0.0);
}

TEST_CASE("adjoint") {
    const ComplexMatrix h = pauli_y();
    CHECK(max_abs_diff(adjoint(h), h) == 0.0);

    const ComplexMatrix nil = ComplexMatrix::from_rows({{cx(0.0), cx(1.0)}, {cx(0.0), cx(0.0)}});
    CHECK(max_abs_diff(adjoint(nil),
                       ComplexMatrix::from_rows({{cx(0.0), cx(0.0)}, {cx(1.0), cx(0.0)}})) == 0.0);

    const ComplexMatrix nili =
        ComplexMatrix::from_rows({{cx(0.0), cx(0.0, 1.0)}, {cx(0.0), cx(0.0)}});
    CHECK(max_abs_diff(adjoint(nili), ComplexMatrix::from_rows(
                                          {{cx(0.0), cx(0.0)}, {cx(0.0, -1.0), cx(0.0)}})) == 0.0);
}

TEST_CASE("trace helpers") {
    Rng rng(derive_stream(42, 1));
    const ComplexMatrix a = rand_general(rng, 5);
    const ComplexMatrix b = rand_general(rng, 5);
    CHECK(std::abs(trace_product(a, b) - trace(a * b)) < 1e-12 * (1.0 + frobenius_norm(a) * frobenius_norm(b)));
}

TEST_CASE("all_finite flags injected NaN") {
    ComplexMatrix m(2);
    CHECK(all_finite(m));
    m(0, 0) = cx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK(!all_finite(m));
}

TEST_CASE("hermitian construction enforces the adjoint defect bound") {
    ComplexMatrix m = pauli_x();
    m(0, 1) += cx(0.0, 1e-6); // anti-Hermitian perturbation far beyond tolerance
    CHECK_THROWS_AS(HermitianMatrix{m}, std::invalid_argument);

    ComplexMatrix ok = pauli_x();
    ok(0, 1) += cx(0.0, 1e-14);
    const HermitianMatrix h(ok);
    for (int i = 0; i < 2; ++i) {
        CHECK(h(i, i).imag() == 0.0);
        for (int j = 0; j < 2; ++j) CHECK(h(i, j) == std::conj(h(j, i)));
    }
}

TEST_CASE("eigendecomposition on known matrices") {
    const HermitianMatrix d(ComplexMatrix::from_rows({{cx(1.0), cx(0.0), cx(0.0)},
                                                      {cx(0.0), cx(5.0), cx(0.0)},
                                                      {cx(0.0), cx(0.0), cx(-2.0)}}));
    const EigenDecomposition ed = hermitian_eig(d);
    CHECK(ed.spectrum[0] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(ed.spectrum[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ed.spectrum[2] == doctest::Approx(-2.0).epsilon(1e-12));

    const EigenDecomposition ex = hermitian_eig(HermitianMatrix(pauli_x()));
    CHECK(ex.spectrum[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ex.spectrum[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("eigendecomposition reconstructs the input") {
    for (int dim = 2; dim <= 8; ++dim) {
        for (int t = 0; t < 20; ++t) {
            Rng rng(derive_stream(7, static_cast<std::uint64_t>(dim * 100 + t)));
            const HermitianMatrix m = rand_hermitian(rng, dim);
            const EigenDecomposition ed = hermitian_eig(m);

            ComplexMatrix rec(dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    cx s = 0.0;
                    for (int r = 0; r < dim; ++r)
                        s += ed.vectors(i, r) * ed.spectrum[r] * std::conj(ed.vectors(j, r));
                    rec(i, j) = s;
                }
            CHECK(frobenius_norm(rec - m.matrix()) <= 1e-10 * (1.0 + frobenius_norm(m)));

            const ComplexMatrix gram = adjoint(ed.vectors) * ed.vectors;
            CHECK(frobenius_norm(gram - ComplexMatrix::identity(dim)) <= 1e-10);
            for (int r = 0; r + 1 < dim; ++r) CHECK(ed.spectrum[r] >= ed.spectrum[r + 1]);
        }
    }
}

TEST_CASE("eigenvalues match the characteristic polynomial oracle") {
    for (int dim = 2; dim <= 4; ++dim) {
        for (int t = 0; t < 50; ++t) {
            Rng rng(derive_stream(11, static_cast<std::uint64_t>(dim * 1000 + t)));
            const HermitianMatrix m = rand_hermitian(rng, dim);
            const Spectrum lam = hermitian_eig(m).spectrum;
            const std::vector<double> ref = charpoly_eigs(m);
            for (int i = 0; i < dim; ++i)
                CHECK(std::abs(lam[i] - ref[static_cast<std::size_t>(i)]) <= 1e-10);
        }
    }
}

TEST_CASE("eigenvalues match the tridiagonal QL oracle") {
    for (int dim = 2; dim <= 8; ++dim) {
        for (int t = 0; t < 30; ++t) {
            Rng rng(derive_stream(13, static_cast<std::uint64_t>(dim * 1000 + t)));
            const HermitianMatrix m = rand_hermitian(rng, dim);
            const Spectrum lam = hermitian_eig(m).spectrum;
            const std::vector<double> ref = reference_eigs(m);
            for (int i = 0; i < dim; ++i)
                CHECK(std::abs(lam[i] - ref[static_cast<std::size_t>(i)]) <= 1e-10);
        }
    }
}

TEST_CASE("sweep exhaustion is an error, not a silent return") {
    Tolerances t;
    t.max_sweeps = 0;
    CHECK_THROWS_AS(hermitian_eig(HermitianMatrix(pauli_x()), t), std::runtime_error);
}

TEST_CASE("singular values") {
    Rng rng(derive_stream(42, 2));
    const EigenDecomposition ed = hermitian_eig(rand_hermitian(rng, 5));
    const Spectrum su = singular_values(ed.vectors); // unitary
    for (int i = 0; i < 5; ++i) CHECK(su[i] == doctest::Approx(1.0).epsilon(1e-10));

    const Spectrum sd = singular_values(ComplexMatrix::from_rows({{cx(3.0), cx(0.0)}, {cx(0.0), cx(-4.0)}}));
    CHECK(sd[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sd[1] == doctest::Approx(3.0).epsilon(1e-12));

    const Spectrum sn = singular_values(ComplexMatrix::from_rows({{cx(0.0), cx(2.0)}, {cx(0.0), cx(0.0)}}));
    CHECK(sn[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(sn[1]) <= 1e-12);

    for (int t2 = 0; t2 < 20; ++t2) {
        Rng r2(derive_stream(17, static_cast<std::uint64_t>(t2)));
        const HermitianMatrix m = rand_hermitian(r2, 6);
        const Spectrum sv = singular_values(m.matrix());
        std::vector<double> abs_lam;
        const Spectrum lam = hermitian_eig(m).spectrum;
        for (int i = 0; i < 6; ++i) abs_lam.push_back(std::abs(lam[i]));
        std::sort(abs_lam.begin(), abs_lam.end(), [](double a, double b) { return a > b; });
        for (int i = 0; i < 6; ++i) CHECK(std::abs(sv[i] - abs_lam[static_cast<std::size_t>(i)]) <= 1e-10);
    }
}

TEST_CASE("fan-hoffman inequality on general matrices") {
    for (int dim = 2; dim <= 8; ++dim) {
        for (int t = 0; t < 30; ++t) {
            Rng rng(derive_stream(19, static_cast<std::uint64_t>(dim * 1000 + t)));
            const ComplexMatrix y = rand_general(rng, dim);
            const Spectrum lam = hermitian_eig(re_part(y)).spectrum;
            const Spectrum sv = singular_values(y);
            for (int j = 0; j < dim; ++j) CHECK(lam[j] <= sv[j] + 1e-10);
        }
    }
}

TEST_CASE("trace-commutator identity") {
    for (int t = 0; t < 40; ++t) {
        Rng rng(derive_stream(23, static_cast<std::uint64_t>(t)));
        const int dim = 2 + static_cast<int>(rng.next_u64() % 5);
        const ComplexMatrix z = rand_general(rng, dim);
        const ComplexMatrix x = rand_general(rng, dim);
        const ComplexMatrix y = rand_general(rng, dim);
        const cx lhs = trace_product(z, x * y - y * x);
        const cx rhs = trace_product(z * x - x * z, y);
        const double scale = 1.0 + frobenius_norm(z) * frobenius_norm(x) * frobenius_norm(y);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
    }
}

TEST_CASE("spectrum ordering is enforced") {
    CHECK_THROWS_AS(Spectrum({1.0, 2.0}), std::invalid_argument);
    const Spectrum s = Spectrum::from_unsorted({1.0, 5.0, -2.0});
    CHECK(s[0] == 5.0);
    CHECK(s[1] == 1.0);
    CHECK(s[2] == -2.0);
}

TEST_CASE("matrix json round trip is exact") {
    Rng rng(derive_stream(42, 3));
    const ComplexMatrix m = rand_general(rng, 3);
    const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK(max_abs_diff(m, back) == 0.0);

    const std::string path = "linalg_roundtrip.json";
    save_matrix(path, m);
    const ComplexMatrix loaded = load_matrix(path);
    CHECK(max_abs_diff(m, loaded) == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("matrix text format carries 17 significant digits") {
    ComplexMatrix m(1);
    m(0, 0) = cx(1.0 / 3.0, 0.0);
    const std::string text = matrix_to_file_text(m);
    CHECK(text.find("0.33333333333333331") != std::string::npos);
    CHECK(text.find("\"dim\"") != std::string::npos);
}

TEST_CASE("malformed matrix json is rejected") {
    nlohmann::json j;
    j["dim"] = 2;
    j["re"] = {{1.0, 0.0}, {0.0, 1.0}};
    j["im"] = {{0.0, 0.0}};
    CHECK_THROWS_AS(matrix_from_json(j), std::invalid_argument);
}

#pragma once

#include <algorithm>
#include <cmath>

#include "majlab/linalg.hpp"

namespace majlab::testing {

inline ComplexMatrix pauli_x() {
    return ComplexMatrix::from_rows({{cx(0.0), cx(1.0)}, {cx(1.0), cx(0.0)}});
}

inline ComplexMatrix pauli_y() {
    return ComplexMatrix::from_rows({{cx(0.0), cx(0.0, -1.0)}, {cx(0.0, 1.0), cx(0.0)}});
}

inline ComplexMatrix pauli_z() {
    return ComplexMatrix::from_rows({{cx(1.0), cx(0.0)}, {cx(0.0), cx(-1.0)}});
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

} // namespace majlab::testing

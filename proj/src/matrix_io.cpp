#include "majlab/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace majlab {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    const int n = m.dim();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        nlohmann::json rrow = nlohmann::json::array();
        nlohmann::json irow = nlohmann::json::array();
        for (int j = 0; j < n; ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return nlohmann::json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("matrix_from_json: expected object with dim/re/im");
    const int n = j.at("dim").get<int>();
    if (n < 1) throw std::invalid_argument("matrix_from_json: dim must be positive");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n)
        throw std::invalid_argument("matrix_from_json: row count does not match dim");
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(re[i].size()) != n || static_cast<int>(im[i].size()) != n)
            throw std::invalid_argument("matrix_from_json: column count does not match dim");
        for (int j2 = 0; j2 < n; ++j2)
            m(i, j2) = cx(re[i][j2].get<double>(), im[i][j2].get<double>());
    }
    if (!all_finite(m)) throw std::invalid_argument("matrix_from_json: non-finite entry");
    return m;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

void append_rows(std::string& out, const ComplexMatrix& m, bool imag) {
    out += "[";
    for (int i = 0; i < m.dim(); ++i) {
        if (i) out += ",";
        out += "[";
        for (int j = 0; j < m.dim(); ++j) {
            if (j) out += ",";
            append_double(out, imag ? m(i, j).imag() : m(i, j).real());
        }
        out += "]";
    }
    out += "]";
}

} // namespace

std::string matrix_to_file_text(const ComplexMatrix& m) {
    std::string out = "{\"dim\": " + std::to_string(m.dim()) + ", \"re\": ";
    append_rows(out, m, false);
    out += ", \"im\": ";
    append_rows(out, m, true);
    out += "}\n";
    return out;
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_matrix: cannot open " + path);
    f << matrix_to_file_text(m);
}

ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_matrix: cannot open " + path);
    nlohmann::json j;
    f >> j;
    return matrix_from_json(j);
}

} // namespace majlab

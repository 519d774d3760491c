#include "pplag/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pplag {

namespace {

constexpr const char* kHeader = "%%MatrixMarket matrix array real general";

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    out << std::setprecision(17);
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path.string());
    return in;
}

// next non-comment, non-blank line
bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '%') continue;
        return true;
    }
    return false;
}

}  // namespace

void write_matrix_market(const std::filesystem::path& path, const Matrix& m) {
    auto out = open_out(path);
    out << kHeader << "\n" << m.rows() << " " << m.cols() << "\n";
    // array format is column-major by definition
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) out << m(i, j) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Matrix read_matrix_market(const std::filesystem::path& path) {
    auto in = open_in(path);

    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw std::runtime_error("not a MatrixMarket file: " + path.string());
    {
        std::istringstream hdr(line);
        std::string tag, object, format, field, symmetry;
        hdr >> tag >> object >> format >> field >> symmetry;
        if (object != "matrix" || format != "array" || field != "real" ||
            symmetry != "general")
            throw std::runtime_error(
                "unsupported MatrixMarket flavor (need array real general): " +
                path.string());
    }

    if (!next_data_line(in, line))
        throw std::runtime_error("missing size line: " + path.string());
    Eigen::Index rows = 0, cols = 0;
    {
        std::istringstream sz(line);
        if (!(sz >> rows >> cols) || rows < 0 || cols < 0)
            throw std::runtime_error("bad size line: " + path.string());
    }

    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (!next_data_line(in, line))
                throw std::runtime_error("truncated matrix data: " +
                                         path.string());
            m(i, j) = std::stod(line);
        }
    return m;
}

void write_vector(const std::filesystem::path& path, const Vector& v) {
    auto out = open_out(path);
    for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i] << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Vector read_vector(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        vals.push_back(std::stod(line));
    }
    Vector v(static_cast<Eigen::Index>(vals.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = vals[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace pplag

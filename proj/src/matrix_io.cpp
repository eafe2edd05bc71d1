#include "idemsvd/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace idemsvd {

namespace {

std::vector<std::string_view> tokenize(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;

        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') continue;

        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) tokens.push_back(line.substr(i, j - i));
            i = j;
        }
    }
    return tokens;
}

double to_double(std::string_view tok) {
    // from_chars rejects a leading '+', which some writers emit.
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("invalid number '" + std::string(tok) + "'");
    }
    if (!std::isfinite(v)) throw ParseError("non-finite entry '" + std::string(tok) + "'");
    return v;
}

std::size_t to_count(std::string_view tok) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("invalid dimension '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace

Matrix parse_matrix(std::string_view text) {
    const auto tokens = tokenize(text);
    if (tokens.size() < 2) throw ParseError("missing 'rows cols' header");
    const std::size_t rows = to_count(tokens[0]);
    const std::size_t cols = to_count(tokens[1]);
    const std::size_t expected = 2 + 2 * rows * cols;
    if (tokens.size() != expected) {
        throw ParseError("expected " + std::to_string(2 * rows * cols) + " numbers for a " +
                         std::to_string(rows) + "x" + std::to_string(cols) + " matrix, found " +
                         std::to_string(tokens.size() - 2));
    }
    std::vector<Complex> data(rows * cols);
    for (std::size_t k = 0; k < data.size(); ++k) {
        data[k] = Complex(to_double(tokens[2 + 2 * k]), to_double(tokens[3 + 2 * k]));
    }
    return Matrix(rows, cols, std::move(data));
}

Matrix read_matrix(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_matrix(text);
}

Matrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_matrix(in);
}

std::string format_matrix(const Matrix& m, std::string_view comment) {
    std::ostringstream out;
    write_matrix(out, m, comment);
    return out.str();
}

void write_matrix(std::ostream& out, const Matrix& m, std::string_view comment) {
    if (!comment.empty()) {
        std::istringstream lines{std::string(comment)};
        for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
    }
    out << m.rows() << ' ' << m.cols() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out << "  ";
            const Complex z = m(i, j);
            auto r1 = std::to_chars(buf, buf + sizeof buf, z.real(), std::chars_format::general, 17);
            out.write(buf, r1.ptr - buf);
            out << ' ';
            auto r2 = std::to_chars(buf, buf + sizeof buf, z.imag(), std::chars_format::general, 17);
            out.write(buf, r2.ptr - buf);
        }
        out << '\n';
    }
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m, std::string_view comment) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    write_matrix(out, m, comment);
    if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

}  // namespace idemsvd

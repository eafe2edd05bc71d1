#include "idemsvd/generators.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "idemsvd/kernels.hpp"

namespace idemsvd {

namespace {

// Open interval (0, 1) so that log(u) is finite.
double uniform53(std::mt19937_64& engine) { return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53; }

// Uniform integer in [lo, hi] by rejection-free scaling; the bias is far
// below anything a test sweep could notice.
std::size_t uniform_index(std::mt19937_64& engine, std::size_t lo, std::size_t hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    return lo + std::min(hi - lo, static_cast<std::size_t>(uniform53(engine) * span));
}

class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    // One complex standard normal: real and imaginary parts N(0, 1/2).
    Complex next() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return Complex(radius * std::cos(angle), radius * std::sin(angle)) / std::numbers::sqrt2;
    }

private:
    double uniform() { return uniform53(engine_); }

    std::mt19937_64 engine_;
};

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = text.find(sep, pos);
        parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

template <typename T>
T parse_number(std::string_view tok, const char* what) {
    T v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(std::string("generator spec: invalid ") + what + " '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace

void GeneratorSpec::validate() const {
    if (n == 0) throw DomainError("generator spec: n must be positive");
    if (r > n) throw DomainError("generator spec: r exceeds n");
    if (t > std::min(r, n - r)) throw DomainError("generator spec: t exceeds min(r, n - r)");
    if (psi.size() != t) throw DomainError("generator spec: expected exactly t angles");
    for (std::size_t j = 0; j < psi.size(); ++j) {
        if (!(psi[j] > 0.0) || !(psi[j] < std::numbers::pi / 2)) {
            throw DomainError("generator spec: angles must lie strictly inside (0, pi/2)");
        }
        if (std::numbers::pi / 2 - psi[j] < 1e-12) {
            throw DomainError("generator spec: angle within 1e-12 of pi/2, tan would overflow");
        }
        if (j > 0 && psi[j] > psi[j - 1]) throw DomainError("generator spec: angles must be non-increasing");
    }
}

bool GeneratorSpec::degenerate() const {
    for (std::size_t j = 1; j < psi.size(); ++j)
        if (psi[j - 1] - psi[j] < 1e-12) return true;
    return false;
}

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
    const auto fields = split(text, ':');
    if (fields.size() != 5) throw ParseError("generator spec: expected n:r:t:psi1,psi2,...:seed");
    GeneratorSpec spec;
    spec.n = parse_number<std::size_t>(fields[0], "n");
    spec.r = parse_number<std::size_t>(fields[1], "r");
    spec.t = parse_number<std::size_t>(fields[2], "t");
    if (!fields[3].empty()) {
        for (auto tok : split(fields[3], ',')) spec.psi.push_back(parse_number<double>(tok, "angle"));
    }
    spec.seed = parse_number<std::uint64_t>(fields[4], "seed");
    return spec;
}

std::string GeneratorSpec::to_string() const {
    std::ostringstream out;
    out << n << ':' << r << ':' << t << ':';
    char buf[64];
    for (std::size_t j = 0; j < psi.size(); ++j) {
        if (j > 0) out << ',';
        auto res = std::to_chars(buf, buf + sizeof buf, psi[j]);
        out.write(buf, res.ptr - buf);
    }
    out << ':' << seed;
    return out.str();
}

GeneratorSpec random_spec(std::size_t n_min, std::size_t n_max, std::uint64_t seed, double psi_lo, double psi_hi) {
    if (n_min == 0 || n_min > n_max) throw DomainError("random_spec: need 0 < n_min <= n_max");
    if (!(psi_lo > 0.0) || !(psi_lo <= psi_hi) || !(psi_hi < std::numbers::pi / 2)) {
        throw DomainError("random_spec: need 0 < psi_lo <= psi_hi < pi/2");
    }
    // Offset keeps this stream distinct from the matrix stream seeded by `seed`.
    std::mt19937_64 engine(seed ^ 0x9e3779b97f4a7c15ULL);
    GeneratorSpec spec;
    spec.n = uniform_index(engine, n_min, n_max);
    spec.r = uniform_index(engine, 0, spec.n);
    spec.t = uniform_index(engine, 0, std::min(spec.r, spec.n - spec.r));
    for (std::size_t j = 0; j < spec.t; ++j) spec.psi.push_back(psi_lo + (psi_hi - psi_lo) * uniform53(engine));
    std::sort(spec.psi.begin(), spec.psi.end(), std::greater<>());
    spec.seed = seed;
    return spec;
}

Matrix haar_unitary(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("haar_unitary: n must be positive");
    GaussianSource gauss(seed);
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = gauss.next();

    HouseholderQR qr = qr_householder(g);
    for (std::size_t j = 0; j < n; ++j) {
        const double mod = std::abs(qr.r(j, j));
        const Complex phase = mod > 0.0 ? qr.r(j, j) / mod : Complex(1.0);
        for (std::size_t i = 0; i < n; ++i) qr.q(i, j) *= phase;
    }
    return qr.q;
}

GeneratedMatrix idempotent_from_spec(const GeneratorSpec& spec) {
    spec.validate();
    std::vector<double> tau(spec.t);
    for (std::size_t j = 0; j < spec.t; ++j) tau[j] = std::tan(spec.psi[j]);
    const Matrix nm = canonical_n(spec.n, spec.r, tau);
    const Matrix u = haar_unitary(spec.n, spec.seed);

    GeneratedMatrix out;
    // N = I and N = 0 are fixed by every unitary similarity; return them exactly.
    if (spec.r == spec.n) {
        out.matrix = Matrix::identity(spec.n);
    } else if (spec.r == 0) {
        out.matrix = Matrix::zeros(spec.n, spec.n);
    } else {
        out.matrix = matmul(matmul(u, nm), adjoint(u));
    }
    out.counts = {spec.n, spec.r, spec.n - spec.r, spec.t, std::min(spec.r, spec.n - spec.r)};
    out.angles.psi.assign(spec.r, 0.0);
    std::copy(spec.psi.begin(), spec.psi.end(), out.angles.psi.begin());
    out.degenerate = spec.degenerate();
    return out;
}

GeneratedMatrix involutory_from_spec(const GeneratorSpec& spec, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("involutory_from_spec: sign must be +1 or -1");
    GeneratedMatrix out = idempotent_from_spec(spec);
    out.matrix = Complex(sign) * (Complex(2.0) * out.matrix - Matrix::identity(spec.n));
    return out;
}

}  // namespace idemsvd

#include "idemsvd/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "idemsvd/involutory.hpp"
#include "idemsvd/kernels.hpp"
#include "json.hpp"

namespace idemsvd {

namespace {

using Clock = std::chrono::steady_clock;

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

std::string scientific(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

template <typename F>
std::string join(const std::vector<double>& xs, F&& fmt, const char* suffix = "") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out += ", ";
        out += fmt(xs[i]);
        out += suffix;
    }
    return out;
}

void take_residuals(AnalysisReport& rep, const VerifyReport& vr) {
    static const std::pair<const char*, const char*> names[] = {
        {"reconstruction", "reconstruction"}, {"schur", "schur"},           {"coupling_pattern", "coupling"},
        {"w_form", "w_form"},                 {"tn_relation", "tn_relation"}, {"oracle", "oracle_gap"},
    };
    for (auto [check, label] : names)
        if (const Check* c = vr.find(check)) rep.residuals.emplace_back(label, c->value);
    rep.checks = vr.checks;
}

void fill_tolerances(AnalysisReport& rep, const Matrix& m, const Tolerances& tol, double sigma1) {
    const std::size_t n = m.rows();
    rep.tol_idem = tol.idem;
    rep.tol_count = tol.count_for(n);
    rep.tol_zero = tol.zero_for(n, sigma1);
    rep.rank_tol = n > 0 ? qr_column_pivoted(m, tol.rank).rank_tol : 0.0;
}

}  // namespace

bool AnalysisReport::passed() const {
    return error.empty() && !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

AnalysisReport analyze_idempotent(const Matrix& m, const Tolerances& tol) {
    const auto start = Clock::now();
    AnalysisReport rep;
    rep.mode = "idempotent";
    rep.input = m;
    rep.idempotency_residual = validate_idempotent(m);
    rep.involution_residual = validate_involutory(m);
    double sigma1 = 0.0;
    try {
        const StructuredSVD ss = structured_svd_idempotent(m, tol);
        rep.counts = ss.counts;
        rep.sigma = ss.sigma;
        rep.psi = ss.angles.psi;
        rep.tau = ss.tau;
        sigma1 = ss.sigma.empty() ? 0.0 : ss.sigma[0];
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    take_residuals(rep, verify_idempotent(m, tol));
    fill_tolerances(rep, m, tol, sigma1);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return rep;
}

AnalysisReport analyze_involutory(const Matrix& b, int sign, const Tolerances& tol) {
    const auto start = Clock::now();
    AnalysisReport rep;
    rep.mode = "involutory";
    rep.sign = sign;
    rep.input = b;
    rep.idempotency_residual = validate_idempotent(b);
    rep.involution_residual = validate_involutory(b);
    double sigma1 = 0.0;
    Matrix m = b;
    try {
        m = idempotent_from_involutory(b, sign, tol);
        const InvolutorySVD is = involutory_svd(b, sign, tol);
        const StructuredSVD ss = structured_svd_idempotent(m, tol);
        rep.counts = is.counts;
        rep.sigma = is.sigma;
        rep.psi = ss.angles.psi;
        rep.tau = ss.tau;
        rep.phi = is.phi;
        rep.pair_indices = is.pairing;
        for (auto [j, k] : is.pairing) rep.pairs.emplace_back(is.sigma[j], is.sigma[k]);
        sigma1 = ss.sigma.empty() ? 0.0 : ss.sigma[0];
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    take_residuals(rep, verify_involutory(b, sign, tol));
    fill_tolerances(rep, m, tol, sigma1);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return rep;
}

std::string format_fixed(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8f", x);
    std::string s = buf;
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

std::string render_text(const AnalysisReport& rep) {
    std::ostringstream out;
    out << "mode: " << rep.mode << '\n';
    if (rep.mode == "involutory") out << "sign: " << (rep.sign > 0 ? "+1" : "-1") << '\n';
    out << "size: " << rep.input.rows() << 'x' << rep.input.cols() << '\n';
    out << "idempotency_residual: " << scientific(rep.idempotency_residual) << '\n';
    out << "involution_residual: " << scientific(rep.involution_residual) << '\n';
    if (rep.counts) {
        const auto& c = *rep.counts;
        out << "census: r=" << c.r << " s=" << c.s << " t=" << c.t << '\n';
        out << "nu: " << c.nu << '\n';
    }
    if (!rep.sigma.empty()) {
        out << "sigma: " << join(rep.sigma, format_fixed) << '\n';
        out << "psi: " << join(rep.psi, [](double x) { return format_fixed(degrees(x)); }, "°") << '\n';
        out << "psi_rad: " << join(rep.psi, format_fixed) << '\n';
        out << "tau: " << join(rep.tau, format_fixed) << '\n';
    }
    if (rep.mode == "involutory" && !rep.sigma.empty()) {
        out << "phi: " << join(rep.phi, [](double x) { return format_fixed(degrees(x)); }, "°") << '\n';
        out << "pairs: ";
        for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
            if (i > 0) out << ", ";
            out << '(' << format_fixed(rep.pairs[i].first) << ", " << format_fixed(rep.pairs[i].second) << ')';
        }
        out << '\n';
    }
    out << "residuals:";
    for (const auto& [name, value] : rep.residuals) out << ' ' << name << '=' << scientific(value);
    out << '\n';
    std::size_t passed = 0;
    for (const auto& c : rep.checks) passed += c.pass;
    out << "checks: " << passed << '/' << rep.checks.size() << " pass\n";
    for (const auto& c : rep.checks)
        if (!c.pass) out << "failed: " << c.name << " (" << scientific(c.value) << " > " << scientific(c.limit) << ")\n";
    if (!rep.error.empty()) out << "error: " << rep.error << '\n';
    out << "tolerances: idem=" << scientific(rep.tol_idem) << " count=" << scientific(rep.tol_count)
        << " zero=" << scientific(rep.tol_zero) << " rank=" << scientific(rep.rank_tol) << '\n';
    out << "time_ms: " << format_fixed(rep.elapsed_ms) << '\n';
    return out.str();
}

std::string render_json(const AnalysisReport& rep) {
    using nlohmann::json;
    json j;
    j["mode"] = rep.mode;
    if (rep.mode == "involutory") j["sign"] = rep.sign;
    j["rows"] = rep.input.rows();
    j["cols"] = rep.input.cols();
    json entries = json::array();
    for (const Complex& z : rep.input.data()) entries.push_back({z.real(), z.imag()});
    j["input"] = std::move(entries);
    j["idempotency_residual"] = rep.idempotency_residual;
    j["involution_residual"] = rep.involution_residual;
    if (rep.counts) {
        j["r"] = rep.counts->r;
        j["s"] = rep.counts->s;
        j["t"] = rep.counts->t;
        j["nu"] = rep.counts->nu;
    }
    j["sigma"] = rep.sigma;
    j["psi_rad"] = rep.psi;
    std::vector<double> deg(rep.psi.size());
    std::transform(rep.psi.begin(), rep.psi.end(), deg.begin(), degrees);
    j["psi_deg"] = deg;
    j["tau"] = rep.tau;
    if (rep.mode == "involutory") {
        j["phi_rad"] = rep.phi;
        json pairs = json::array();
        for (auto [a, b] : rep.pairs) pairs.push_back({a, b});
        j["pairs"] = std::move(pairs);
        json idx = json::array();
        for (auto [a, b] : rep.pair_indices) idx.push_back({a, b});
        j["pair_indices"] = std::move(idx);
    }
    for (const auto& [name, value] : rep.residuals) j[name + "_residual"] = value;
    json failed = json::array();
    for (const auto& c : rep.checks)
        if (!c.pass) failed.push_back(c.name);
    j["checks_total"] = rep.checks.size();
    j["checks_failed"] = std::move(failed);
    j["passed"] = rep.passed();
    if (!rep.error.empty()) j["error"] = rep.error;
    j["tol_idem"] = rep.tol_idem;
    j["tol_count"] = rep.tol_count;
    j["tol_zero"] = rep.tol_zero;
    j["rank_tol"] = rep.rank_tol;
    j["time_ms"] = rep.elapsed_ms;
    return j.dump(2) + "\n";
}

}  // namespace idemsvd

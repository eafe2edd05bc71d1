#include "idemsvd/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "idemsvd/involutory.hpp"
#include "idemsvd/matrix_io.hpp"
#include "idemsvd/report.hpp"

namespace idemsvd::cli {

namespace {

std::string shortest(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string number_list(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i > 0 ? ", " : "") + shortest(xs[i]);
    return out;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

// Singular values implied by the spec, non-increasing.
std::vector<double> expected_sigma(const GeneratorSpec& spec, MatrixKind kind) {
    std::vector<double> sigma;
    if (kind == MatrixKind::idempotent) {
        for (double psi : spec.psi) sigma.push_back(1.0 / std::cos(psi));
        sigma.resize(spec.r, 1.0);
        sigma.resize(spec.n, 0.0);
    } else {
        for (double psi : spec.psi) {
            const double big = 1.0 / std::cos(psi) + std::tan(psi);
            sigma.push_back(big);
            sigma.push_back(1.0 / big);
        }
        sigma.resize(spec.n, 1.0);
        std::sort(sigma.begin(), sigma.end(), std::greater<>());
    }
    return sigma;
}

std::filesystem::path truth_path(const std::filesystem::path& p) {
    std::filesystem::path t = p;
    t += ".truth";
    return t;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("truth file: expected 'key = value', got '" + line + "'");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

template <typename T>
T to_number(const std::string& s, const char* what) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(std::string("invalid ") + what + " '" + s + "'");
    }
    return v;
}

struct Truth {
    GeneratedMatrix truth;
    MatrixKind kind = MatrixKind::idempotent;
    int sign = 1;
};

// The sidecar written by generate, when one sits next to the input.
std::optional<Truth> load_truth(const std::filesystem::path& in_path) {
    const auto path = truth_path(in_path);
    if (!std::filesystem::exists(path)) return std::nullopt;
    const auto kv = read_key_values(path);
    auto get = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ParseError(std::string("truth file: missing key '") + key + "'");
        return it->second;
    };
    Truth t;
    t.kind = get("kind") == "involutory" ? MatrixKind::involutory : MatrixKind::idempotent;
    t.sign = to_number<int>(get("sign"), "sign");
    auto& c = t.truth.counts;
    c.n = to_number<std::size_t>(get("n"), "n");
    c.r = to_number<std::size_t>(get("r"), "r");
    c.s = to_number<std::size_t>(get("s"), "s");
    c.t = to_number<std::size_t>(get("t"), "t");
    c.nu = to_number<std::size_t>(get("nu"), "nu");
    std::stringstream list(get("psi"));
    std::string tok;
    while (std::getline(list, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(' '));
        if (!tok.empty()) t.truth.angles.psi.push_back(to_number<double>(tok, "psi"));
    }
    t.truth.angles.psi.resize(c.r, 0.0);
    return t;
}

void write_truth(const std::filesystem::path& path, const GeneratorSpec& spec, MatrixKind kind, int sign,
                 const GeneratedMatrix& g) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    std::vector<double> deg;
    for (double psi : spec.psi) deg.push_back(psi * 180.0 / std::numbers::pi);
    out << "kind = " << (kind == MatrixKind::idempotent ? "idempotent" : "involutory") << '\n';
    out << "spec = " << spec.to_string() << '\n';
    out << "sign = " << sign << '\n';
    out << "n = " << g.counts.n << '\n';
    out << "r = " << g.counts.r << '\n';
    out << "s = " << g.counts.s << '\n';
    out << "t = " << g.counts.t << '\n';
    out << "nu = " << g.counts.nu << '\n';
    out << "psi = " << number_list(spec.psi) << '\n';
    out << "psi_deg = " << number_list(deg) << '\n';
    out << "sigma = " << number_list(expected_sigma(spec, kind)) << '\n';
    out << "degenerate = " << (g.degenerate ? "true" : "false") << '\n';
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
}

// Resolves the analysis branch; nullopt after printing both residuals when
// the input passes neither gate.
std::optional<MatrixKind> classify(const Matrix& m, Mode mode, const Tolerances& tol, std::ostream& err) {
    double idem = std::numeric_limits<double>::infinity();
    double invol = std::numeric_limits<double>::infinity();
    if (m.is_square()) {
        idem = validate_idempotent(m);
        invol = validate_involutory(m);
    }
    MatrixKind kind = MatrixKind::idempotent;
    if (mode == Mode::involutory || (mode == Mode::automatic && invol < idem)) kind = MatrixKind::involutory;
    const double chosen = kind == MatrixKind::idempotent ? idem : invol;
    if (chosen <= tol.idem) return kind;

    err << "error: matrix is ";
    if (mode == Mode::idempotent) err << "not idempotent";
    else if (mode == Mode::involutory) err << "not involutory";
    else err << "neither idempotent nor involutory";
    err << " within " << sci(tol.idem) << '\n';
    if (!m.is_square()) err << "shape: " << m.rows() << 'x' << m.cols() << " (not square)\n";
    err << "idempotency_residual: " << sci(idem) << '\n';
    err << "involution_residual: " << sci(invol) << '\n';
    return std::nullopt;
}

void print_checks(const VerifyReport& rep, std::ostream& out) {
    for (const auto& c : rep.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ' ' << sci(c.value) << (c.pass ? " <= " : " > ")
            << sci(c.limit);
        if (!c.note.empty()) out << "  (" << c.note << ')';
        out << '\n';
    }
}

void add_tolerance_flags(CLI::App* cmd, Tolerances& tol, double& count, double& zero, double& rank,
                         std::vector<CLI::Option*>& opts) {
    cmd->add_option("--tol-idem", tol.idem, "Idempotency / involution gate")->capture_default_str();
    opts = {cmd->add_option("--tol-count", count, "Half-width of the unit singular value band"),
            cmd->add_option("--tol-zero", zero, "Zero singular value threshold"),
            cmd->add_option("--rank-tol", rank, "Pivoted QR rank threshold")};
}

void apply_tolerance_flags(Tolerances& tol, double count, double zero, double rank,
                           const std::vector<CLI::Option*>& opts) {
    if (opts[0]->count() > 0) tol.count = count;
    if (opts[1]->count() > 0) tol.zero = zero;
    if (opts[2]->count() > 0) tol.rank = rank;
}

const std::map<std::string, Mode> mode_names = {
    {"auto", Mode::automatic}, {"idempotent", Mode::idempotent}, {"involutory", Mode::involutory}};
const std::map<std::string, MatrixKind> kind_names = {
    {"idempotent", MatrixKind::idempotent}, {"involutory", MatrixKind::involutory}};

}  // namespace

int cmd_generate(MatrixKind kind, std::string_view spec_text, int sign, const std::filesystem::path& out_path,
                 std::ostream& out, std::ostream& err) {
    GeneratorSpec spec;
    GeneratedMatrix g;
    try {
        spec = GeneratorSpec::parse(spec_text);
        g = kind == MatrixKind::idempotent ? idempotent_from_spec(spec) : involutory_from_spec(spec, sign);
    } catch (const std::exception& e) {
        err << "error: invalid spec: " << e.what() << '\n';
        return exit_domain;
    }
    try {
        write_matrix_file(out_path, g.matrix, (kind == MatrixKind::idempotent ? "idempotent " : "involutory ") + spec.to_string());
        write_truth(truth_path(out_path), spec, kind, kind == MatrixKind::idempotent ? 1 : sign, g);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    out << "wrote " << out_path.string() << " (" << g.matrix.rows() << 'x' << g.matrix.cols() << ") and "
        << truth_path(out_path).string() << '\n';
    return exit_ok;
}

int cmd_analyze(const std::filesystem::path& in_path, const AnalyzeOptions& opts, std::ostream& out,
                std::ostream& err) {
    Matrix m;
    try {
        m = read_matrix_file(in_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    const auto kind = classify(m, opts.mode, opts.tol, err);
    if (!kind) return exit_domain;

    const AnalysisReport rep = *kind == MatrixKind::idempotent ? analyze_idempotent(m, opts.tol)
                                                                : analyze_involutory(m, opts.sign, opts.tol);
    out << (opts.json ? render_json(rep) : render_text(rep));
    return rep.passed() ? exit_ok : exit_invariant_failure;
}

SweepOptions SweepOptions::parse(std::string_view text) {
    SweepOptions opts;
    std::stringstream in{std::string(text)};
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("sweep: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "n") opts.n = to_number<std::size_t>(value, "sweep n");
        else if (key == "count") opts.count = to_number<std::size_t>(value, "sweep count");
        else if (key == "seed") opts.seed = to_number<std::uint64_t>(value, "sweep seed");
        else if (key == "kind" && kind_names.contains(value)) opts.kind = kind_names.at(value);
        else throw ParseError("sweep: unknown key or value '" + item + "'");
    }
    if (opts.n == 0) throw ParseError("sweep: n must be positive");
    return opts;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.sweep) {
        const auto& sw = *opts.sweep;
        const auto cases = run_sweep(sw.kind, sw.n, sw.n, sw.count, sw.seed, opts.tol);
        std::size_t passed = 0;
        for (const auto& c : cases) {
            const bool ok = c.report.passed();
            passed += ok;
            out << (ok ? "PASS " : "FAIL ") << c.spec.to_string();
            for (const auto& ch : c.report.checks)
                if (!ch.pass) out << ' ' << ch.name << '=' << sci(ch.value);
            out << '\n';
        }
        out << passed << '/' << cases.size() << " pass\n";
        return passed == cases.size() ? exit_ok : exit_invariant_failure;
    }

    Matrix m;
    std::optional<Truth> truth;
    try {
        m = read_matrix_file(*opts.in_path);
        truth = load_truth(*opts.in_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    Mode mode = opts.mode;
    int sign = opts.sign;
    if (truth && mode == Mode::automatic) {
        mode = truth->kind == MatrixKind::idempotent ? Mode::idempotent : Mode::involutory;
        sign = truth->sign;
    }
    const auto kind = classify(m, mode, opts.tol, err);
    if (!kind) return exit_domain;

    const GeneratedMatrix* t = truth ? &truth->truth : nullptr;
    const VerifyReport rep = *kind == MatrixKind::idempotent ? verify_idempotent(m, opts.tol, t)
                                                             : verify_involutory(m, sign, opts.tol, t);
    out << "mode: " << rep.kind << '\n';
    print_checks(rep, out);
    const auto passed = std::count_if(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.pass; });
    out << passed << '/' << rep.checks.size() << " pass\n";
    return rep.passed() ? exit_ok : exit_invariant_failure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Structured SVD of idempotent and involutory matrices", "idemsvd"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Synthesize a matrix from n:r:t:psi1,psi2,...:seed");
    MatrixKind gen_kind = MatrixKind::idempotent;
    std::string gen_spec;
    std::string gen_out;
    int gen_sign = 1;
    gen->add_option("kind", gen_kind, "idempotent or involutory")
        ->required()
        ->transform(CLI::CheckedTransformer(kind_names, CLI::ignore_case));
    gen->add_option("spec", gen_spec, "n:r:t:psi1,psi2,...:seed (angles in radians)")->required();
    gen->add_option("out", gen_out, "Output matrix file")->required();
    gen->add_option("--sign", gen_sign, "Sign of B = sign (2M - I)")->check(CLI::IsMember({-1, 1}));

    // analyze
    auto* ana = app.add_subcommand("analyze", "Structured SVD report for one matrix file");
    AnalyzeOptions ana_opts;
    std::string ana_in;
    double ana_count = 0, ana_zero = 0, ana_rank = 0;
    std::vector<CLI::Option*> ana_tol;
    ana->add_option("input", ana_in, "Matrix file")->required();
    ana->add_option("--mode", ana_opts.mode, "auto, idempotent or involutory")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    ana->add_flag("--json", ana_opts.json, "Machine-readable output");
    ana->add_option("--sign", ana_opts.sign, "Sign of B = sign (2M - I)")->check(CLI::IsMember({-1, 1}));
    add_tolerance_flags(ana, ana_opts.tol, ana_count, ana_zero, ana_rank, ana_tol);

    // verify
    auto* ver = app.add_subcommand("verify", "Run the invariant suite on a file or a seeded sweep");
    VerifyOptions ver_opts;
    std::string ver_in;
    std::string ver_sweep;
    double ver_count = 0, ver_zero = 0, ver_rank = 0;
    std::vector<CLI::Option*> ver_tol;
    auto* ver_in_opt = ver->add_option("input", ver_in, "Matrix file");
    auto* ver_sweep_opt = ver->add_option("--sweep", ver_sweep, "n=..,count=..,seed=..[,kind=involutory]");
    ver_in_opt->excludes(ver_sweep_opt);
    ver->add_option("--mode", ver_opts.mode, "auto, idempotent or involutory")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    ver->add_option("--sign", ver_opts.sign, "Sign of B = sign (2M - I)")->check(CLI::IsMember({-1, 1}));
    add_tolerance_flags(ver, ver_opts.tol, ver_count, ver_zero, ver_rank, ver_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_io;
    }

    if (gen->parsed()) return cmd_generate(gen_kind, gen_spec, gen_sign, gen_out, out, err);
    if (ana->parsed()) {
        apply_tolerance_flags(ana_opts.tol, ana_count, ana_zero, ana_rank, ana_tol);
        return cmd_analyze(ana_in, ana_opts, out, err);
    }
    apply_tolerance_flags(ver_opts.tol, ver_count, ver_zero, ver_rank, ver_tol);
    if (ver_sweep_opt->count() > 0) {
        try {
            ver_opts.sweep = SweepOptions::parse(ver_sweep);
        } catch (const ParseError& e) {
            err << "error: " << e.what() << '\n';
            return exit_io;
        }
    } else if (ver_in_opt->count() > 0) {
        ver_opts.in_path = ver_in;
    } else {
        err << "error: verify needs an input file or --sweep\n";
        return exit_io;
    }
    return cmd_verify(ver_opts, out, err);
}

}  // namespace idemsvd::cli

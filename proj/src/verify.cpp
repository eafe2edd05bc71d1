#include "idemsvd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "idemsvd/idempotent.hpp"
#include "idemsvd/involutory.hpp"
#include "idemsvd/kernels.hpp"

namespace idemsvd {

namespace {

void add(VerifyReport& rep, std::string name, double value, double limit, std::string note = {}) {
    rep.checks.push_back({std::move(name), value, limit, value <= limit, std::move(note)});
}

void add_skipped(VerifyReport& rep, std::string name, double value, std::string note) {
    rep.checks.push_back({std::move(name), value, 0.0, true, std::move(note)});
}

double reconstruction(const Matrix& a, const Matrix& u, std::span<const double> sigma, const Matrix& v) {
    return frobenius_norm(a - matmul(scale_columns(u, sigma), adjoint(v))) / std::max(1.0, frobenius_norm(a));
}

double oracle_gap(const Matrix& a, std::span<const double> sigma) {
    const OracleSVD os = svd_oracle(a);
    double gap = 0.0;
    for (std::size_t j = 0; j < os.sigma.size(); ++j) gap = std::max(gap, std::abs(os.sigma[j] - sigma[j]));
    return os.sigma.empty() || os.sigma[0] == 0.0 ? gap : gap / os.sigma[0];
}

std::size_t census_distance(const CountProfile& a, const CountProfile& b) {
    const auto d = [](std::size_t x, std::size_t y) { return x > y ? x - y : y - x; };
    return d(a.n, b.n) + d(a.r, b.r) + d(a.s, b.s) + d(a.t, b.t) + d(a.nu, b.nu);
}

double angle_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
    return worst;
}

void idempotent_checks(VerifyReport& rep, const Matrix& m, const Tolerances& tol, const GeneratedMatrix* truth) {
    const std::size_t n = m.rows();
    const double relax = tol.relax;
    const StructuredSVD ss = structured_svd_idempotent(m, tol);
    const CanonicalForm cf = canonical_form(m, ss, tol);
    const Coupling cp = coupling_matrix(ss, cf);
    const std::size_t r = ss.counts.r;
    const std::size_t t = ss.counts.t;

    // Census: both t computations and the three singular-value classes.
    const double band = tol.count_for(n);
    const double zero = tol.zero_for(n, n > 0 ? ss.sigma[0] : 0.0);
    const CountProfile by_nullity = count_profile(m, tol);
    std::size_t above = 0, unit = 0, zeros = 0;
    for (double sg : ss.sigma) {
        if (sg > 1.0 + band) ++above;
        else if (std::abs(sg - 1.0) <= band) ++unit;
        else if (sg <= zero) ++zeros;
    }
    add(rep, "census_agreement", static_cast<double>(above > by_nullity.t ? above - by_nullity.t : by_nullity.t - above),
        0.0);
    const std::size_t misclassified = (above != t) + (unit != r - t) + (zeros != ss.counts.s);
    add(rep, "census_classes", static_cast<double>(misclassified), 0.0);
    if (truth) add(rep, "census_truth", static_cast<double>(census_distance(ss.counts, truth->counts)), 0.0);

    add(rep, "reconstruction", reconstruction(m, ss.u, ss.sigma, ss.v), 1e-9 * relax);
    add(rep, "u_unitary", unitarity_defect(ss.u), 1e-9 * relax);
    add(rep, "v_unitary", unitarity_defect(ss.v), 1e-9 * relax);

    // u_j^H v_j = 1 / sigma_j, and U_r^H V_r diagonal.
    const Matrix g = matmul(adjoint(ss.u.columns(0, r)), ss.v.columns(0, r));
    double lemma = 0.0, off = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) lemma = std::max(lemma, std::abs(g(i, i) - 1.0 / ss.sigma[i]));
            else off += std::norm(g(i, j));
        }
    }
    add(rep, "lemma1", lemma, 1e-9 * relax);
    add(rep, "lemma1_offdiag", std::sqrt(off), 1e-8 * relax);

    double unit_vec = 0.0;
    for (std::size_t j = t; j < r; ++j) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += std::norm(ss.v(i, j) - ss.u(i, j));
        unit_vec = std::max(unit_vec, std::sqrt(d));
    }
    add(rep, "unit_class_vectors", unit_vec, 1e-8 * relax);

    // sigma = 1 / cos(psi), tau = tan(psi) = sqrt(sigma^2 - 1).
    double sec = 0.0, tan_gap = 0.0;
    for (std::size_t j = 0; j < r; ++j) sec = std::max(sec, std::abs(ss.sigma[j] * std::cos(ss.angles.psi[j]) - 1.0));
    for (std::size_t j = 0; j < t; ++j) {
        const double from_sigma = std::sqrt((ss.sigma[j] - 1.0) * (ss.sigma[j] + 1.0));
        tan_gap = std::max({tan_gap, std::abs(ss.tau[j] - from_sigma) / ss.tau[j],
                            std::abs(ss.tau[j] - std::tan(ss.angles.psi[j])) / ss.tau[j]});
    }
    add(rep, "angle_bridge_sec", sec, 1e-9 * relax);
    add(rep, "angle_bridge_tan", tan_gap, 1e-9 * relax);
    add(rep, "principal_angles", angle_distance(ss.angles.psi, principal_angles(m, tol)), 1e-8 * relax);
    if (truth) add(rep, "angles_truth", angle_distance(ss.angles.psi, truth->angles.psi), 1e-8 * relax);
    add(rep, "eig_consistency", ss.eig_consistency, 1e-10 * relax);

    if (truth) {
        const OracleSVD xs = svd_oracle(ss.x);
        double gap = 0.0;
        for (std::size_t j = 0; j < xs.sigma.size(); ++j) {
            const double expect = j < truth->counts.t ? std::tan(truth->angles.psi[j]) : 0.0;
            gap = std::max(gap, std::abs(xs.sigma[j] - expect) / std::max(1.0, expect));
        }
        add(rep, "x_singular_values", gap, 1e-9 * relax);
    }

    const double norm = std::max(1.0, frobenius_norm(m));
    add(rep, "schur", cf.residual / norm, 1e-9 * relax);
    if (cp.degenerate) {
        add_skipped(rep, "coupling_pattern", cp.pattern_residual, "skipped: clustered angles");
    } else {
        add(rep, "coupling_pattern", cp.pattern_residual, 1e-8 * relax);
    }

    // M = W (O S) W^H with W = V (I_{n-t} + E).
    std::vector<double> e(n, 1.0);
    for (std::size_t j = 0; j < t; ++j) e[n - t + j] = cp.e[j];
    const Matrix w = scale_columns(ss.v, e);
    const Matrix os = scale_columns(cp.o, ss.sigma);
    add(rep, "w_form", frobenius_norm(m - matmul(matmul(w, os), adjoint(w))) / norm, 1e-8 * relax);

    add(rep, "oracle", oracle_gap(m, ss.sigma), 1e-9 * relax);
}

void involutory_checks(VerifyReport& rep, const Matrix& b, int sign, const Tolerances& tol,
                       const GeneratedMatrix* truth) {
    const std::size_t n = b.rows();
    const double relax = tol.relax;
    const InvolutorySVD is = involutory_svd(b, sign, tol);
    const PairingReport pr = pairing_check(is, tol);
    const CountProfile& c = is.counts;

    if (truth) add(rep, "census_truth", static_cast<double>(census_distance(c, truth->counts)), 0.0);
    add(rep, "reconstruction", reconstruction(b, is.u, is.sigma, is.v), 1e-9 * relax);
    add(rep, "u_unitary", unitarity_defect(is.u), 1e-9 * relax);
    add(rep, "v_unitary", unitarity_defect(is.v), 1e-9 * relax);
    add(rep, "pair_products", pr.max_product_error, 1e-9 * relax);
    add(rep, "reciprocal_closure", pr.max_reciprocal_error, 1e-9 * relax);
    add(rep, "pair_count", static_cast<double>(pr.pairs > c.nu ? pr.pairs - c.nu : c.nu - pr.pairs), 0.0);
    const std::size_t unit_pairs = c.nu - c.t;
    add(rep, "unit_pairs",
        static_cast<double>(pr.unit_pairs > unit_pairs ? pr.unit_pairs - unit_pairs : unit_pairs - pr.unit_pairs), 0.0);
    const std::size_t unpaired = n - 2 * c.nu;
    add(rep, "unpaired_units",
        static_cast<double>(pr.unpaired_units > unpaired ? pr.unpaired_units - unpaired
                                                         : unpaired - pr.unpaired_units),
        0.0);

    // Larger member of each non-unit pair against tan((pi/2 + psi) / 2), psi
    // from the principal angles of the underlying idempotent.
    const Matrix m = idempotent_from_involutory(b, sign, tol);
    const std::vector<double> pa = principal_angles(m, tol);
    double bridge = 0.0;
    for (std::size_t j = 0; j < c.t && j < pa.size(); ++j) {
        const double expect = std::tan(0.5 * (std::numbers::pi / 2 + pa[j]));
        const double got = is.sigma[is.pairing[j].first];
        bridge = std::max(bridge, std::abs(got - expect) / expect);
    }
    add(rep, "angle_bridge_phi", bridge, 1e-9 * relax);
    if (truth) {
        double gap = 0.0;
        for (std::size_t j = 0; j < c.t && j < truth->angles.psi.size(); ++j) {
            const double expect = 0.5 * (std::numbers::pi / 2 + truth->angles.psi[j]);
            gap = std::max(gap, std::abs(is.phi[j] - expect));
        }
        add(rep, "angles_truth", gap, 1e-8 * relax);
    }
    add(rep, "tn_relation", tn_relation_check(is) / std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1))),
        1e-9 * relax);
    add(rep, "oracle", oracle_gap(b, is.sigma), 1e-9 * relax);
}

}  // namespace

bool VerifyReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerifyReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

VerifyReport verify_idempotent(const Matrix& m, const Tolerances& tol, const GeneratedMatrix* truth) {
    VerifyReport rep;
    rep.kind = "idempotent";
    const double gate = validate_idempotent(m);
    if (!(gate <= tol.idem)) {
        throw DomainError("matrix is not idempotent (residual " + std::to_string(gate) + ")");
    }
    add(rep, "idempotency", gate, tol.idem);
    try {
        idempotent_checks(rep, m, tol, truth);
    } catch (const std::exception& e) {
        rep.checks.push_back({"decomposition", 1.0, 0.0, false, e.what()});
    }
    return rep;
}

VerifyReport verify_involutory(const Matrix& b, int sign, const Tolerances& tol, const GeneratedMatrix* truth) {
    VerifyReport rep;
    rep.kind = "involutory";
    const double gate = validate_involutory(b);
    if (!(gate <= tol.idem)) {
        throw DomainError("matrix is not involutory (residual " + std::to_string(gate) + ")");
    }
    add(rep, "involution", gate, tol.idem);
    try {
        involutory_checks(rep, b, sign, tol, truth);
    } catch (const std::exception& e) {
        rep.checks.push_back({"decomposition", 1.0, 0.0, false, e.what()});
    }
    return rep;
}

std::vector<SweepCase> run_sweep(MatrixKind kind, std::size_t n_min, std::size_t n_max, std::size_t count,
                                 std::uint64_t seed, const Tolerances& tol) {
    std::vector<SweepCase> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        SweepCase sc;
        sc.spec = random_spec(n_min, n_max, seed + k);
        if (kind == MatrixKind::idempotent) {
            const GeneratedMatrix g = idempotent_from_spec(sc.spec);
            sc.report = verify_idempotent(g.matrix, tol, &g);
        } else {
            const GeneratedMatrix g = involutory_from_spec(sc.spec, 1);
            sc.report = verify_involutory(g.matrix, 1, tol, &g);
        }
        out.push_back(std::move(sc));
    }
    return out;
}

}  // namespace idemsvd

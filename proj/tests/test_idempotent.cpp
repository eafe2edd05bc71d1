#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "idemsvd/generators.hpp"
#include "idemsvd/idempotent.hpp"
#include "idemsvd/kernels.hpp"
#include "idemsvd/verify.hpp"

using namespace idemsvd;

namespace {

const Complex I1{0.0, 1.0};
const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;

const Matrix kOblique{{1, 1}, {0, 0}};
const Matrix kLemmaN{{1, 0, kSqrt3}, {0, 1, 0}, {0, 0, 0}};

GeneratedMatrix generate(std::size_t n, std::size_t r, std::vector<double> psi, std::uint64_t seed) {
    GeneratorSpec spec{n, r, psi.size(), std::move(psi), seed};
    return idempotent_from_spec(spec);
}

}  // namespace

TEST(ValidateIdempotent, Examples) {
    EXPECT_EQ(validate_idempotent(Matrix::identity(5)), 0.0);
    EXPECT_EQ(validate_idempotent(kOblique), 0.0);
    const Matrix jordan{{1, 1}, {0, 1}};
    EXPECT_DOUBLE_EQ(validate_idempotent(jordan), 1.0 / kSqrt3);
    EXPECT_FALSE(is_idempotent(jordan));
    EXPECT_TRUE(is_idempotent(kOblique));
}

TEST(ValidateIdempotent, NonSquare) { EXPECT_THROW(validate_idempotent(Matrix(2, 3)), ShapeError); }

TEST(CountProfile, Examples) {
    EXPECT_EQ(count_profile(Matrix::identity(3)), (CountProfile{3, 3, 0, 0, 0}));
    EXPECT_EQ(count_profile(kOblique), (CountProfile{2, 1, 1, 1, 1}));
    EXPECT_EQ(count_profile(Matrix::zeros(4, 4)), (CountProfile{4, 0, 4, 0, 0}));
    EXPECT_EQ(count_profile(kLemmaN), (CountProfile{3, 2, 1, 1, 1}));
}

TEST(CountProfile, RejectsNonIdempotent) {
    EXPECT_THROW(count_profile(Matrix{{1, 1}, {0, 1}}), DomainError);
    EXPECT_THROW(count_profile(Matrix(2, 3)), ShapeError);
}

TEST(StructuredSVD, Identity) {
    const StructuredSVD s = structured_svd_idempotent(Matrix::identity(2));
    EXPECT_EQ(s.sigma, (std::vector<double>{1.0, 1.0}));
    EXPECT_EQ(s.counts.t, 0u);
    EXPECT_EQ(s.angles.psi, (std::vector<double>{0.0, 0.0}));
    EXPECT_LE(max_abs_diff(s.u, s.v), 1e-15);
}

TEST(StructuredSVD, ObliqueTwoByTwo) {
    const StructuredSVD s = structured_svd_idempotent(kOblique);
    EXPECT_NEAR(s.sigma[0], kSqrt2, 1e-15);
    EXPECT_EQ(s.sigma[1], 0.0);
    EXPECT_NEAR(s.angles.psi[0], std::numbers::pi / 4, 1e-15);
    EXPECT_NEAR(std::abs(s.u(0, 0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(s.u(1, 0)), 0.0, 1e-15);
    // v_1 = (1, 1)/sqrt(2) up to the phase of u_1
    const Complex phase = s.u(0, 0);
    EXPECT_NEAR(std::abs(s.v(0, 0) - phase / kSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.v(1, 0) - phase / kSqrt2), 0.0, 1e-15);
    const Complex uv = dot(s.u.column(0), s.v.column(0));
    EXPECT_NEAR(uv.real(), 1.0 / kSqrt2, 1e-15);
    EXPECT_EQ(uv.imag(), 0.0);
}

TEST(StructuredSVD, ComplexPhaseConvention) {
    const Matrix m{{1, I1}, {0, 0}};
    ASSERT_EQ(validate_idempotent(m), 0.0);
    const StructuredSVD s = structured_svd_idempotent(m);
    EXPECT_NEAR(s.sigma[0], kSqrt2, 1e-15);
    const Complex phase = s.u(0, 0);
    EXPECT_NEAR(std::abs(s.v(0, 0) - phase / kSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.v(1, 0) + I1 * phase / kSqrt2), 0.0, 1e-15);
    const Complex uv = dot(s.u.column(0), s.v.column(0));
    EXPECT_NEAR(uv.real(), 1.0 / kSqrt2, 1e-15);
    EXPECT_NEAR(uv.imag(), 0.0, 1e-16);
}

TEST(StructuredSVD, CondensedForm) {
    const StructuredSVD s = structured_svd_idempotent(kLemmaN);
    ASSERT_EQ(s.sigma.size(), 3u);
    EXPECT_NEAR(s.sigma[0], 2.0, 1e-12);
    EXPECT_NEAR(s.sigma[1], 1.0, 1e-12);
    EXPECT_EQ(s.sigma[2], 0.0);
    EXPECT_NEAR(s.angles.psi[0], std::numbers::pi / 3, 1e-15);
    EXPECT_NEAR(s.tau[0], kSqrt3, 1e-15);
}

TEST(StructuredSVD, ZeroMatrix) {
    const StructuredSVD s = structured_svd_idempotent(Matrix::zeros(3, 3));
    EXPECT_EQ(s.sigma, (std::vector<double>{0.0, 0.0, 0.0}));
    EXPECT_EQ(s.counts, (CountProfile{3, 0, 3, 0, 0}));
    EXPECT_LE(unitarity_defect(s.v), 1e-15);
}

TEST(StructuredSVD, OrthogonalProjectorHasUnitSigma) {
    const Matrix u = haar_unitary(6, 21);
    const Matrix ur = u.columns(0, 3);
    const Matrix p = matmul(ur, adjoint(ur));
    const StructuredSVD s = structured_svd_idempotent(p);
    EXPECT_EQ(s.counts, (CountProfile{6, 3, 3, 0, 3}));
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(s.sigma[j], 1.0, 1e-12);
    for (double psi : principal_angles(p)) EXPECT_NEAR(psi, 0.0, 1e-12);
}

TEST(StructuredSVD, RejectsNonIdempotent) {
    EXPECT_THROW(structured_svd_idempotent(Matrix{{1, 1}, {0, 1}}), DomainError);
    Matrix m = generate(8, 3, {1.0}, 5).matrix;
    m(2, 4) += 1e-3;
    EXPECT_THROW(structured_svd_idempotent(m), DomainError);
}

TEST(StructuredSVD, RelaxedGateAdmitsSmallPerturbation) {
    Matrix m = generate(8, 3, {1.0}, 5).matrix;
    m(2, 4) += 1e-8;
    EXPECT_THROW(structured_svd_idempotent(m), DomainError);
    Tolerances tol;
    tol.idem = 1e-6;
    tol.relax = 1e3;
    tol.rank = 1e-6;  // the perturbation lifts the trailing R diagonal to ~1e-8
    const StructuredSVD s = structured_svd_idempotent(m, tol);
    EXPECT_EQ(s.counts.r, 3u);
    EXPECT_EQ(s.counts.t, 1u);
}

TEST(StructuredSVD, CensusMismatchIsReported) {
    // sigma_1 - 1 = 0.1395 lies inside the band, while |1 - sigma_1^2| = 0.2985
    // is outside the doubled null-space threshold: the two t computations split.
    const Matrix m = generate(6, 2, {0.5}, 3).matrix;
    Tolerances tol;
    tol.count = 0.145;
    try {
        structured_svd_idempotent(m, tol);
        FAIL() << "expected CensusMismatch";
    } catch (const CensusMismatch& e) {
        EXPECT_EQ(e.t_threshold(), 0u);
        EXPECT_EQ(e.t_nullity(), 1u);
    }
}

TEST(StructuredSVD, Deterministic) {
    const Matrix m = generate(12, 5, {1.2, 0.7}, 9).matrix;
    const StructuredSVD a = structured_svd_idempotent(m);
    const StructuredSVD b = structured_svd_idempotent(m);
    EXPECT_EQ(a.u, b.u);
    EXPECT_EQ(a.v, b.v);
    EXPECT_EQ(a.sigma, b.sigma);
}

TEST(CanonicalForm, ObliqueTwoByTwo) {
    const CanonicalForm cf = canonical_form(kOblique);
    EXPECT_EQ(cf.n_matrix, kOblique);
    ASSERT_EQ(cf.tau.size(), 1u);
    EXPECT_NEAR(cf.tau[0], 1.0, 1e-15);
    // schur_u = I up to column phases
    for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_NEAR(std::abs(cf.schur_u(j, j)), 1.0, 1e-15);
        EXPECT_NEAR(std::abs(cf.schur_u(1 - j, j)), 0.0, 1e-15);
    }
    EXPECT_LE(cf.residual, 1e-15);
}

TEST(CanonicalForm, Identity) {
    const CanonicalForm cf = canonical_form(Matrix::identity(3));
    EXPECT_EQ(cf.n_matrix, Matrix::identity(3));
    EXPECT_TRUE(cf.tau.empty());
}

TEST(CanonicalForm, CanonicalNLayout) {
    const std::vector<double> tau{2.0, 0.5};
    const Matrix n = canonical_n(7, 4, tau);
    EXPECT_EQ(n(0, 5), Complex(2.0));
    EXPECT_EQ(n(1, 6), Complex(0.5));
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(n(j, j), Complex(1.0));
    EXPECT_EQ(n(4, 4), Complex(0.0));
    EXPECT_EQ(validate_idempotent(n), 0.0);
    EXPECT_THROW(canonical_n(4, 3, tau), DomainError);
}

TEST(CanonicalForm, RecoversGeneratorN) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const GeneratorSpec spec = random_spec(4, 40, seed);
        const GeneratedMatrix g = idempotent_from_spec(spec);
        std::vector<double> tau;
        for (double psi : spec.psi) tau.push_back(std::tan(psi));
        const Matrix n0 = canonical_n(spec.n, spec.r, tau);
        const CanonicalForm cf = canonical_form(g.matrix);
        EXPECT_LE(max_abs_diff(cf.n_matrix, n0), 1e-10 * std::max(1.0, tau.empty() ? 1.0 : tau[0]))
            << spec.to_string();
        EXPECT_LE(unitarity_defect(cf.schur_u), 1e-10) << spec.to_string();
    }
}

TEST(CanonicalForm, MismatchedDecomposition) {
    const StructuredSVD s = structured_svd_idempotent(kOblique);
    EXPECT_THROW(canonical_form(Matrix::identity(3), s), ShapeError);
}

TEST(Coupling, ObliqueTwoByTwo) {
    const StructuredSVD s = structured_svd_idempotent(kOblique);
    const Coupling c = coupling_matrix(s, canonical_form(kOblique, s));
    const double h = 1.0 / kSqrt2;
    EXPECT_LE(max_abs_diff(c.o, Matrix{{h, h}, {h, -h}}), 1e-15);
    EXPECT_EQ(c.e, std::vector<int>{1});
    EXPECT_FALSE(c.degenerate);
}

TEST(Coupling, IdentityGivesIdentity) {
    const Matrix m = Matrix::identity(4);
    const StructuredSVD s = structured_svd_idempotent(m);
    const Coupling c = coupling_matrix(s, canonical_form(m, s));
    EXPECT_LE(max_abs_diff(c.o, Matrix::identity(4)), 1e-15);
    EXPECT_TRUE(c.e.empty());
}

TEST(Coupling, RecoversCosines) {
    const Matrix m = generate(9, 4, {1.0, 0.5}, 17).matrix;
    const StructuredSVD s = structured_svd_idempotent(m);
    const Coupling c = coupling_matrix(s, canonical_form(m, s));
    EXPECT_NEAR(c.o(0, 0).real(), std::cos(1.0), 1e-8);
    EXPECT_NEAR(c.o(1, 1).real(), std::cos(0.5), 1e-8);
    EXPECT_LE(c.pattern_residual, 1e-8);
}

TEST(Coupling, DegenerateAnglesAreFlagged) {
    const GeneratedMatrix g = generate(10, 4, {0.8, 0.8, 0.3}, 2);
    ASSERT_TRUE(g.degenerate);
    const StructuredSVD s = structured_svd_idempotent(g.matrix);
    const Coupling c = coupling_matrix(s, canonical_form(g.matrix, s));
    EXPECT_TRUE(c.degenerate);
    EXPECT_TRUE(std::isfinite(c.pattern_residual));
}

TEST(Coupling, InconsistentInputs) {
    const StructuredSVD s = structured_svd_idempotent(kOblique);
    const CanonicalForm cf = canonical_form(Matrix::identity(3));
    EXPECT_THROW(coupling_matrix(s, cf), ShapeError);
}

TEST(PrincipalAngles, Examples) {
    const auto a = principal_angles(kOblique);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_NEAR(a[0], std::numbers::pi / 4, 1e-15);
    for (double x : principal_angles(Matrix::identity(3))) EXPECT_EQ(x, 0.0);
    EXPECT_THROW(principal_angles(Matrix{{1, 1}, {0, 1}}), DomainError);
}

TEST(JointKernel, MatchesGramNullspaceWidth) {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const GeneratorSpec spec = random_spec(4, 32, seed);
        const Matrix m = idempotent_from_spec(spec).matrix;
        const Matrix gram = matmul(adjoint(m), m) + matmul(m, adjoint(m));
        const double tol = 1e-10 * std::max(1.0, frobenius_norm(gram));
        EXPECT_EQ(nullspace_basis(gram, tol).cols(), spec.n - spec.r - spec.t) << spec.to_string();
        // joint-kernel block of v is annihilated by M and M^H
        const StructuredSVD s = structured_svd_idempotent(m);
        const Matrix k = s.v.columns(spec.r, spec.n - spec.r - spec.t);
        EXPECT_LE(frobenius_norm(matmul(m, k)), 1e-10 * std::max(1.0, frobenius_norm(m)));
        EXPECT_LE(frobenius_norm(matmul(adjoint(m), k)), 1e-10 * std::max(1.0, frobenius_norm(m)));
    }
}

TEST(IdempotentProperties, GeneratorSweep) {
    // 200 seeded specs, n in [4, 64], angles in [1e-3, pi/2 - 1e-3].
    const auto cases = run_sweep(MatrixKind::idempotent, 4, 64, 200, 2024);
    for (const auto& c : cases) {
        for (const auto& check : c.report.checks) {
            EXPECT_TRUE(check.pass) << c.spec.to_string() << ": " << check.name << " = " << check.value << " > "
                                    << check.limit << ' ' << check.note;
        }
    }
}

TEST(IdempotentProperties, ExtremeAnglesInOneMatrix) {
    // Largest and smallest admissible angles together stress the Schur columns.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const GeneratedMatrix g = generate(40, 15, {std::numbers::pi / 2 - 1e-3, 0.7, 1e-3}, seed);
        const VerifyReport rep = verify_idempotent(g.matrix, {}, &g);
        for (const auto& check : rep.checks) EXPECT_TRUE(check.pass) << seed << ": " << check.name << ' ' << check.value;
    }
}

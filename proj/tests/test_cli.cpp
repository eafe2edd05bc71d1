#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "idemsvd/cli.hpp"
#include "idemsvd/matrix_io.hpp"

using namespace idemsvd;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "idemsvd");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("idemsvd_cli_" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const Matrix& m) {
        spit(path(name), format_matrix(m, ""));
        return path(name);
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateIdentity) {
    const Result r = run_cli({"generate", "idempotent", "3:3:0::1", path("id.txt")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_matrix_file(path("id.txt")), Matrix::identity(3));
    const std::string truth = slurp(path("id.txt.truth"));
    EXPECT_NE(truth.find("kind = idempotent"), std::string::npos);
    EXPECT_NE(truth.find("r = 3"), std::string::npos);
    EXPECT_NE(truth.find("t = 0"), std::string::npos);
}

TEST_F(CliTest, GenerateWritesTruth) {
    const Result r = run_cli({"generate", "involutory", "8:3:2:1.2,0.4:7", path("b.txt"), "--sign", "-1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string truth = slurp(path("b.txt.truth"));
    EXPECT_NE(truth.find("kind = involutory"), std::string::npos);
    EXPECT_NE(truth.find("spec = 8:3:2:1.2,0.4:7"), std::string::npos);
    EXPECT_NE(truth.find("sign = -1"), std::string::npos);
    EXPECT_NE(truth.find("nu = 3"), std::string::npos);
    EXPECT_NE(truth.find("degenerate = false"), std::string::npos);
}

TEST_F(CliTest, GenerateRejectsInvalidSpec) {
    EXPECT_EQ(run_cli({"generate", "idempotent", "5:2:3:0.3,0.2,0.1:1", path("x.txt")}).code, cli::exit_domain);
    EXPECT_EQ(run_cli({"generate", "idempotent", "4:2:1:1.5707963267948966:1", path("x.txt")}).code,
              cli::exit_domain);
    EXPECT_EQ(run_cli({"generate", "idempotent", "4:2", path("x.txt")}).code, cli::exit_domain);
    EXPECT_FALSE(fs::exists(path("x.txt")));
}

TEST_F(CliTest, AnalyzeTwoByTwo) {
    const std::string in = write("m.txt", Matrix{{1, 1}, {0, 0}});
    const Result r = run_cli({"analyze", in});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("r=1 s=1 t=1"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("sigma: 1.41421356, 0"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("psi: 45°"), std::string::npos) << r.out;
}

TEST_F(CliTest, AnalyzeIdentityHasNoAngles) {
    const Result r = run_cli({"analyze", write("i.txt", Matrix::identity(4)), "--mode", "idempotent"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("r=4 s=0 t=0"), std::string::npos) << r.out;
}

TEST_F(CliTest, AnalyzeInvolutoryPairs) {
    const Result r = run_cli({"analyze", write("b.txt", Matrix{{1, 2}, {0, -1}})});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("mode: involutory"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("pairs: (2.41421356, 0.41421356)"), std::string::npos) << r.out;
}

TEST_F(CliTest, AnalyzeRejectsNonIdempotent) {
    const Result r = run_cli({"analyze", write("n.txt", Matrix{{1, 1}, {0, 1}}), "--mode", "idempotent"});
    EXPECT_EQ(r.code, cli::exit_domain);
    EXPECT_NE(r.err.find("idempotency_residual"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("involution_residual"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({"analyze", write("rect.txt", Matrix(2, 3))}).code, cli::exit_domain);
}

TEST_F(CliTest, IoAndUsageErrors) {
    EXPECT_EQ(run_cli({"analyze", path("missing.txt")}).code, cli::exit_io);
    spit(path("bad.txt"), "2 2\n1 0 0\n");
    EXPECT_EQ(run_cli({"analyze", path("bad.txt")}).code, cli::exit_io);
    EXPECT_EQ(run_cli({"analyze"}).code, cli::exit_io);
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::exit_io);
    EXPECT_EQ(run_cli({"verify"}).code, cli::exit_io);
    EXPECT_EQ(run_cli({"verify", "--sweep", "n=4,bogus=1"}).code, cli::exit_io);
}

TEST_F(CliTest, JsonRoundTripIsBitwise) {
    ASSERT_EQ(run_cli({"generate", "idempotent", "9:4:3:1.3,0.9,0.2:21", path("g.txt")}).code, 0);
    const Result first = run_cli({"analyze", path("g.txt"), "--json"});
    ASSERT_EQ(first.code, 0) << first.err;
    const auto j = nlohmann::json::parse(first.out);
    EXPECT_EQ(j["r"], 4);
    EXPECT_EQ(j["t"], 3);
    EXPECT_TRUE(j["passed"].get<bool>());

    const std::size_t rows = j["rows"], cols = j["cols"];
    Matrix rebuilt(rows, cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        const auto& e = j["input"][k];
        rebuilt(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    EXPECT_EQ(rebuilt, read_matrix_file(path("g.txt")));

    const Result second = run_cli({"analyze", write("again.txt", rebuilt), "--json"});
    ASSERT_EQ(second.code, 0);
    const auto k = nlohmann::json::parse(second.out);
    EXPECT_EQ(j["sigma"].get<std::vector<double>>(), k["sigma"].get<std::vector<double>>());
}

TEST_F(CliTest, VerifyGeneratedFile) {
    ASSERT_EQ(run_cli({"generate", "involutory", "10:6:3:1.1,0.5,0.4:2", path("b.txt")}).code, 0);
    const Result r = run_cli({"verify", path("b.txt")});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("mode: involutory"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST_F(CliTest, VerifyPerturbedFileIsRejected) {
    ASSERT_EQ(run_cli({"generate", "idempotent", "6:3:2:0.8,0.3:5", path("m.txt")}).code, 0);
    Matrix m = read_matrix_file(path("m.txt"));
    m(0, 0) += 1e-4;
    spit(path("m.txt"), format_matrix(m, ""));
    EXPECT_EQ(run_cli({"verify", path("m.txt")}).code, cli::exit_domain);
}

TEST_F(CliTest, VerifyWrongTruthFails) {
    ASSERT_EQ(run_cli({"generate", "idempotent", "6:3:2:0.8,0.3:5", path("m.txt")}).code, 0);
    std::string truth = slurp(path("m.txt.truth"));
    const auto at = truth.find("\nr = 3");
    ASSERT_NE(at, std::string::npos);
    truth.replace(at, 6, "\nr = 2");
    spit(path("m.txt.truth"), truth);
    const Result r = run_cli({"verify", path("m.txt")});
    EXPECT_EQ(r.code, cli::exit_invariant_failure) << r.out;
    EXPECT_NE(r.out.find("FAIL census_truth"), std::string::npos) << r.out;
}

TEST_F(CliTest, VerifySweep) {
    const Result r = run_cli({"verify", "--sweep", "n=16,count=50,seed=1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("50/50 pass"), std::string::npos) << r.out;
    const Result b = run_cli({"verify", "--sweep", "n=12,count=10,seed=3,kind=involutory"});
    EXPECT_EQ(b.code, 0);
    EXPECT_NE(b.out.find("10/10 pass"), std::string::npos) << b.out;
}

TEST(SweepOptions, Parse) {
    const auto s = cli::SweepOptions::parse("n=16,count=50,seed=1");
    EXPECT_EQ(s.n, 16u);
    EXPECT_EQ(s.count, 50u);
    EXPECT_EQ(s.seed, 1u);
    EXPECT_EQ(s.kind, MatrixKind::idempotent);
    EXPECT_EQ(cli::SweepOptions::parse("kind=involutory").kind, MatrixKind::involutory);
    EXPECT_THROW(cli::SweepOptions::parse("n=0"), ParseError);
    EXPECT_THROW(cli::SweepOptions::parse("n"), ParseError);
    EXPECT_THROW(cli::SweepOptions::parse("kind=other"), ParseError);
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "idemsvd/generators.hpp"
#include "idemsvd/tolerances.hpp"
#include "idemsvd/verify.hpp"

namespace idemsvd::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_invariant_failure = 1,
    exit_domain = 2,
    exit_io = 3,
};

enum class Mode { automatic, idempotent, involutory };

/// Writes the matrix to `out_path` and the ground truth to `<out_path>.truth`.
int cmd_generate(MatrixKind kind, std::string_view spec_text, int sign, const std::filesystem::path& out_path,
                 std::ostream& out, std::ostream& err);

struct AnalyzeOptions {
    Mode mode = Mode::automatic;
    bool json = false;
    int sign = 1;
    Tolerances tol;
};

int cmd_analyze(const std::filesystem::path& in_path, const AnalyzeOptions& opts, std::ostream& out,
                std::ostream& err);

/// "n=16,count=50,seed=1[,kind=involutory]"
struct SweepOptions {
    std::size_t n = 16;
    std::size_t count = 50;
    std::uint64_t seed = 1;
    MatrixKind kind = MatrixKind::idempotent;

    static SweepOptions parse(std::string_view text);
};

struct VerifyOptions {
    std::optional<std::filesystem::path> in_path;
    std::optional<SweepOptions> sweep;
    Mode mode = Mode::automatic;
    int sign = 1;
    Tolerances tol;
};

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace idemsvd::cli

#pragma once

#include "gcsent/analysis.hpp"
#include "gcsent/entanglement.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gcsent::cli {

enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kInvalidArguments = 2,
    kDomainError = 3,
    kVerificationFailed = 4,
    kTruncationFailure = 5,
    kNullState = 6,
};

/// Environment variable naming the default directory for `figures`.
inline constexpr const char *kOutputDirEnv = "GCSENT_OUTPUT_DIR";

inline constexpr std::string_view kCsvHeader = "family,variant,phi,sweep_param,A,p,concurrence,entanglement";

/// Bad command-line input; maps to exit code 2.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Radians from "1.2", "pi", "-pi", "0.5pi" or "0.5*pi".
[[nodiscard]] double parse_phase(std::string_view text);

/// Fixed 12 significant digits, "%.12g".
[[nodiscard]] std::string format_number(double v);

/// Value rounded to what format_number prints.
[[nodiscard]] double round_to_printed(double v);

/// "cs", "ls[gamma=0.1]", or "any" for rows without a family.
[[nodiscard]] std::string family_label(const SweepRow &row);

void write_csv(std::ostream &out, std::span<const SweepRow> rows);

/// Writes fig1.csv .. fig4.csv into dir and returns their paths.
std::vector<std::filesystem::path> write_figure_presets(const std::filesystem::path &dir);

/// Runs the command line (args[0] is the program name). Never throws.
int run(std::span<const std::string> args, std::ostream &out, std::ostream &err);

} // namespace gcsent::cli

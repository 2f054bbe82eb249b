#pragma once

// Command implementations behind the `su2lqu` executable. They talk to the
// library exclusively through the C API and write CSV to `out`, diagnostics to
// `err`, returning the process exit code.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace su2lqu::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitDomain = 2,
  kExitNumeric = 3,
};

enum class MethodChoice { closed, wmatrix, numeric, all };

struct CommandOptions {
  int j_twice = 1;
  std::optional<double> p;
  std::optional<double> q;
  int steps = 201;
  MethodChoice method = MethodChoice::closed;
  int seeds = 64;
};

// Thrown for argument problems; carries a message naming the constraint.
class UsageError : public std::exception {
public:
  explicit UsageError(std::string message) : message_(std::move(message)) {}
  const char* what() const noexcept override { return message_.c_str(); }

private:
  std::string message_;
};

// "5/2", "3", "2/4" -> twice the value. Throws UsageError otherwise.
int parse_spin_twice(std::string_view text);
// Decimal ("0.25") or rational ("1/9"); must lie in [0, 1].
double parse_probability(std::string_view text, std::string_view name);
MethodChoice parse_method(std::string_view text);

// %.12g, "." decimal separator regardless of locale.
std::string format_number(double value);

inline constexpr const char* kSweepHeader = "j_twice,p,q,lqu_closed,lqu_numeric,method_delta";
inline constexpr double kValidateThreshold = 1e-10;

int cmd_compute(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep_p(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep_pq(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err);

// Full command line (argv[0] included); output goes to `out` unless --out is
// given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace su2lqu::cli

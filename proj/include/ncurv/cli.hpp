#ifndef NCURV_CLI_HPP
#define NCURV_CLI_HPP

#include "ncurv/prolongation.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace ncurv {

enum class Command { symbol, prolong, cohomology, verify_engel, verify_contact, flat_check };

/// One CLI invocation. Exactly one input source is used: `builtin`,
/// `input_path` (algebra or distribution JSON), `pfaff` or `fields`.
struct JobSpec {
  Command command = Command::symbol;
  std::string builtin;
  std::string input_path;
  std::string pfaff;
  std::string fields;
  std::optional<int> n_vars;
  /// "(0,0,0);(1,1,1)"; empty means the default sample.
  std::string points;
  std::optional<std::pair<int, int>> orders;
  /// Defaults to the smallest sufficient cap for the command.
  std::optional<int> cap;
  int s = 2;
  /// "der" for (der g-)_0 or "o" for o(n) on an abelian algebra.
  std::string g0 = "der";
  ProlongMethod method = ProlongMethod::shchepochkina;
  int r = 1;
  std::string json_path;
  bool parallel = true;
};

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

std::optional<Command> parse_command(const std::string& name);
const char* command_name(Command c);

/// "LO..HI" with LO <= HI; throws std::invalid_argument otherwise.
std::pair<int, int> parse_orders(const std::string& text);

/// Runs the job, writing the text report to `out` and diagnostics to `err`.
/// Returns kExitOk, kExitCheckFailed (a verify expectation failed or the
/// distribution is irregular on the sample) or kExitError (bad input or
/// parameters).
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace ncurv

#endif  // NCURV_CLI_HPP

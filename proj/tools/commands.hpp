#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace hypfrac::cli {

enum ExitCode : int { kPass = 0, kAssertionFailure = 1, kUsage = 2, kNumeric = 3 };

using Cell = std::variant<double, long long, bool, std::string>;

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<Check> checks;

  bool pass() const;
};

// Parses "a,b,c" or "lo:hi:n" (n evenly spaced points). Throws DomainError when malformed or empty.
std::vector<double> parse_grid(const std::string& text);

std::string format_csv(const Report& r);

// args excludes the program name. Tables go to out, diagnostics and the check summary to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hypfrac::cli

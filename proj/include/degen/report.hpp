#ifndef DEGEN_REPORT_HPP
#define DEGEN_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "degen/cone.hpp"
#include "degen/problem.hpp"

namespace degen {

/// Ordered `key = value` lines; rendering is byte-deterministic.
struct Report {
  std::vector<std::string> lines;

  bool operator==(const Report&) const = default;
};

/// Options shared by every command.
struct CommandFlags {
  long precision = 8;    // default series precision for [arc] sections
  int degree_bound = 0;  // when positive, `family` appends Hilbert slices
  std::optional<LatVec> xi2;
};

/// Dispatches one command against a parsed problem. Commands: in-ideal,
/// gcone, family, restrict, reduce, iterate, check-approx, novikov-extend.
Report run_command(const std::string& command, const ProblemFile& problem,
                   const CommandFlags& flags);

/// One line per entry plus a trailing newline; `ok` for an empty report.
std::string render_report(const Report& report);
void emit_report(const Report& report, std::ostream& sink);

}  // namespace degen

#endif

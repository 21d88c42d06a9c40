#ifndef DEGEN_PROBLEM_HPP
#define DEGEN_PROBLEM_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "degen/cone.hpp"
#include "degen/novikov.hpp"
#include "degen/rational.hpp"

namespace degen {

/// Line-oriented problem description: `[section]` headers over `key = value`
/// entries. Section and key names are validated during parsing; values are
/// kept verbatim and interpreted per command.
struct ProblemFile {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;

  bool has(const std::string& section) const;
  bool has_key(const std::string& section, const std::string& key) const;
  /// First value under the key; ConsistencyError when absent.
  const std::string& get(const std::string& section, const std::string& key) const;
  /// Every value under the key, in file order.
  std::vector<std::string> get_all(const std::string& section, const std::string& key) const;
};

/// Parses and validates the structure, reporting the first offending line.
ProblemFile parse_problem(const std::string& text);

/// Canonical rendering; parse(problem_to_string(parse(text))) == parse(text).
std::string problem_to_string(const ProblemFile& problem);

/// Value-level parsers shared by the commands. All throw ParseError with the
/// offending text on malformed input.
long long parse_integer(const std::string& text);
Rat parse_rational(const std::string& text);
LatVec parse_latvec(const std::string& text);
XiVec parse_xivec(const std::string& text);
/// Splits on the separator at parenthesis depth zero and trims the pieces.
std::vector<std::string> split_list(const std::string& text, char sep);

/// Series syntax: signed terms `c`, `c*t^e`, `t^e`, or `t`, with integer
/// exponents written plainly (`t^3`) and scalar exponents parenthesized
/// (`t^(3/2)`, `t^(1 + sqrt(2))`).
NovikovSeries parse_series(const std::string& text, const QuadExt& precision);

}  // namespace degen

#endif

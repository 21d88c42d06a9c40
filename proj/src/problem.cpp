#include "degen/problem.hpp"

#include <algorithm>
#include <cctype>

#include "degen/errors.hpp"

namespace degen {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0;
  size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

const std::map<std::string, std::vector<std::string>>& known_sections() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"lattice", {"rank", "d"}},
      {"xi", {"xi", "m", "pi"}},
      {"action", {"weights"}},
      {"cone", {"generators"}},
      {"arc", {"coordinates", "precision"}},
      {"ideal", {"vars", "gens"}},
      {"strata", {"destabilized"}},
      {"stratification", {"stratum"}},
  };
  return table;
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
  fail(ErrCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

}  // namespace

bool ProblemFile::has(const std::string& section) const { return sections.count(section) > 0; }

bool ProblemFile::has_key(const std::string& section, const std::string& key) const {
  auto it = sections.find(section);
  if (it == sections.end()) return false;
  for (const auto& [k, v] : it->second)
    if (k == key) return true;
  return false;
}

const std::string& ProblemFile::get(const std::string& section, const std::string& key) const {
  auto it = sections.find(section);
  if (it != sections.end())
    for (const auto& [k, v] : it->second)
      if (k == key) return v;
  fail(ErrCode::ConsistencyError, "missing `" + key + "` in section [" + section + "]");
}

std::vector<std::string> ProblemFile::get_all(const std::string& section,
                                              const std::string& key) const {
  std::vector<std::string> out;
  auto it = sections.find(section);
  if (it != sections.end())
    for (const auto& [k, v] : it->second)
      if (k == key) out.push_back(v);
  return out;
}

ProblemFile parse_problem(const std::string& text) {
  ProblemFile out;
  std::string current;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (pos > text.size() && line.empty()) break;

    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "unterminated section header");
      std::string name = trim(line.substr(1, line.size() - 2));
      if (!known_sections().count(name)) parse_fail(line_no, "unknown section [" + name + "]");
      if (out.sections.count(name)) parse_fail(line_no, "duplicate section [" + name + "]");
      out.sections[name];
      current = name;
      continue;
    }

    size_t eq = line.find('=');
    if (eq == std::string::npos) parse_fail(line_no, "expected `key = value`");
    if (current.empty()) parse_fail(line_no, "entry before the first section header");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    const std::vector<std::string>& allowed = known_sections().at(current);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      parse_fail(line_no, "unknown key `" + key + "` in section [" + current + "]");
    if (value.empty()) parse_fail(line_no, "empty value for `" + key + "`");
    out.sections[current].emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::string problem_to_string(const ProblemFile& problem) {
  std::string out;
  for (const auto& [name, entries] : problem.sections) {
    out += "[" + name + "]\n";
    for (const auto& [key, value] : entries) out += key + " = " + value + "\n";
  }
  return out;
}

long long parse_integer(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) fail(ErrCode::ParseError, "expected an integer");
  size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(s, &used);
  } catch (const std::exception&) {
    fail(ErrCode::ParseError, "not an integer: `" + s + "`");
  }
  if (used != s.size()) fail(ErrCode::ParseError, "not an integer: `" + s + "`");
  return value;
}

Rat parse_rational(const std::string& text) {
  std::string s = trim(text);
  if (s.empty() || s.find_first_not_of("0123456789/-") != std::string::npos)
    fail(ErrCode::ParseError, "not a rational number: `" + s + "`");
  try {
    Rat q(s);
    if (q.get_den() == 0) fail(ErrCode::DivisionByZero, "zero denominator in `" + s + "`");
    q.canonicalize();
    return q;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrCode::ParseError, "not a rational number: `" + s + "`");
  }
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string piece;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(piece));
      piece.clear();
    } else {
      piece += ch;
    }
  }
  out.push_back(trim(piece));
  return out;
}

namespace {

std::string strip_outer_parens(const std::string& text) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    fail(ErrCode::ParseError, "expected a parenthesized vector, got `" + s + "`");
  return s.substr(1, s.size() - 2);
}

}  // namespace

LatVec parse_latvec(const std::string& text) {
  LatVec out;
  for (const std::string& piece : split_list(strip_outer_parens(text), ','))
    out.push_back(parse_integer(piece));
  return out;
}

XiVec parse_xivec(const std::string& text) {
  XiVec out;
  for (const std::string& piece : split_list(strip_outer_parens(text), ','))
    out.push_back(qx_parse(piece));
  return out;
}

namespace {

// Signed top-level chunks of a series expression, whitespace removed outside
// parentheses. "1 + t^(1 + sqrt(2))" -> {"1", "+t^(1+sqrt(2))"}... the inner
// sign stays attached to each chunk.
std::vector<std::string> signed_chunks(const std::string& text) {
  std::vector<std::string> out;
  std::string piece;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) continue;
    if (depth == 0 && (ch == '+' || ch == '-') && !piece.empty()) {
      out.push_back(piece);
      piece.clear();
    }
    piece += ch;
  }
  if (!piece.empty()) out.push_back(piece);
  return out;
}

}  // namespace

NovikovSeries parse_series(const std::string& text, const QuadExt& precision) {
  std::vector<std::pair<QuadExt, Rat>> terms;
  std::string body = trim(text);
  if (body.empty()) fail(ErrCode::ParseError, "empty series");
  for (const std::string& chunk : signed_chunks(body)) {
    size_t i = 0;
    Rat coeff(1);
    if (chunk[i] == '+' || chunk[i] == '-') {
      if (chunk[i] == '-') coeff = Rat(-1);
      ++i;
    }
    if (i >= chunk.size()) fail(ErrCode::ParseError, "dangling sign in series `" + text + "`");

    size_t digits = i;
    while (digits < chunk.size() &&
           (std::isdigit(static_cast<unsigned char>(chunk[digits])) || chunk[digits] == '/'))
      ++digits;
    bool has_coeff = digits > i;
    if (has_coeff) {
      coeff *= parse_rational(chunk.substr(i, digits - i));
      i = digits;
      if (i < chunk.size() && chunk[i] == '*') ++i;
    }

    QuadExt expo(0);
    if (i < chunk.size()) {
      if (chunk[i] != 't')
        fail(ErrCode::ParseError, "expected `t` in series term `" + chunk + "`");
      ++i;
      if (i < chunk.size()) {
        if (chunk[i] != '^')
          fail(ErrCode::ParseError, "expected `^` in series term `" + chunk + "`");
        ++i;
        if (i < chunk.size() && chunk[i] == '(') {
          if (chunk.back() != ')')
            fail(ErrCode::ParseError, "unbalanced exponent in series term `" + chunk + "`");
          expo = qx_parse(chunk.substr(i + 1, chunk.size() - i - 2));
          i = chunk.size();
        } else {
          expo = QuadExt(static_cast<long>(parse_integer(chunk.substr(i))));
          i = chunk.size();
        }
      } else {
        expo = QuadExt(1);
      }
    } else if (!has_coeff) {
      fail(ErrCode::ParseError, "empty series term in `" + text + "`");
    }
    if (i != chunk.size())
      fail(ErrCode::ParseError, "trailing input in series term `" + chunk + "`");
    if (qx_sign(expo) < 0)
      fail(ErrCode::ParseError, "negative exponent in series term `" + chunk + "`");
    terms.emplace_back(expo, coeff);
  }
  return make_series(std::move(terms), precision);
}

}  // namespace degen

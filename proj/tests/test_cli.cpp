#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "degen/errors.hpp"
#include "degen/problem.hpp"
#include "degen/report.hpp"

using namespace degen;

namespace {

const char* kReduceProblem =
    "# one semistable reduction step of the running arc family\n"
    "[lattice]\n"
    "rank = 2\n"
    "d = 2\n"
    "\n"
    "[action]\n"
    "weights = (-1, 0); (0, -1); (1, 1)\n"
    "\n"
    "[cone]\n"
    "generators = (1, 0); (0, 1)\n"
    "\n"
    "[xi]\n"
    "xi = (1, sqrt(2))\n"
    "\n"
    "[arc]\n"
    "coordinates = t^2; t^3; 1 + t\n"
    "precision = 8\n";

const char* kIdealProblem =
    "[lattice]\n"
    "rank = 2\n"
    "[action]\n"
    "weights = (1, 0); (0, 1)\n"
    "[ideal]\n"
    "vars = x, y\n"
    "gens = x + y\n"
    "[xi]\n"
    "xi = (1, sqrt(2))\n";

std::string run(const std::string& command, const std::string& text,
                CommandFlags flags = CommandFlags{}) {
  return render_report(run_command(command, parse_problem(text), flags));
}

ErrCode code_of_run(const std::string& command, const std::string& text,
                    CommandFlags flags = CommandFlags{}) {
  try {
    run_command(command, parse_problem(text), flags);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected the command to throw");
  return ErrCode::ParseError;
}

std::string parse_message(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e.what();
  }
  FAIL("expected a parse failure");
  return "";
}

}  // namespace

TEST_CASE("problem files parse into validated sections") {
  ProblemFile p = parse_problem(kReduceProblem);
  CHECK(p.has("lattice"));
  CHECK(p.has("arc"));
  CHECK(!p.has("ideal"));
  CHECK(p.has_key("arc", "precision"));
  CHECK(!p.has_key("arc", "vars"));
  CHECK(p.get("lattice", "rank") == "2");
  CHECK(p.get("arc", "coordinates") == "t^2; t^3; 1 + t");
  CHECK(p.get_all("action", "weights") == std::vector<std::string>{"(-1, 0); (0, -1); (1, 1)"});
  CHECK(p.get_all("action", "generators").empty());

  try {
    p.get("arc", "vars");
    FAIL("expected ConsistencyError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::ConsistencyError);
  }

  // Repeated keys inside one section stay in file order.
  ProblemFile multi = parse_problem(
      "[stratification]\n"
      "stratum = a\n"
      "stratum = b\n");
  CHECK(multi.get_all("stratification", "stratum") == std::vector<std::string>{"a", "b"});
  CHECK(multi.get("stratification", "stratum") == "a");
}

TEST_CASE("structural parse failures carry line numbers") {
  CHECK(parse_message("[orbit]\n") == "ParseError: line 1: unknown section [orbit]");
  CHECK(parse_message("[lattice]\nrank = 2\n[lattice]\n") ==
        "ParseError: line 3: duplicate section [lattice]");
  CHECK(parse_message("[lattice\nrank = 2\n") ==
        "ParseError: line 1: unterminated section header");
  CHECK(parse_message("[lattice]\nrank\n") == "ParseError: line 2: expected `key = value`");
  CHECK(parse_message("rank = 2\n") ==
        "ParseError: line 1: entry before the first section header");
  CHECK(parse_message("[lattice]\nweights = (1, 0)\n") ==
        "ParseError: line 2: unknown key `weights` in section [lattice]");
  CHECK(parse_message("# leading comment\n\n[arc]\ncoordinates =\n") ==
        "ParseError: line 4: empty value for `coordinates`");
}

TEST_CASE("canonical printing round-trips through the parser") {
  ProblemFile p = parse_problem(kReduceProblem);
  std::string canonical = problem_to_string(p);
  CHECK(parse_problem(canonical).sections == p.sections);
  CHECK(problem_to_string(parse_problem(canonical)) == canonical);
  // Comments and blank lines do not survive; entries and order do.
  CHECK(canonical.find('#') == std::string::npos);
  CHECK(canonical.find("coordinates = t^2; t^3; 1 + t\n") != std::string::npos);
}

TEST_CASE("value parsers accept the documented forms and reject the rest") {
  CHECK(parse_integer(" -7 ") == -7);
  CHECK(parse_rational("3/2") == Rat(3, 2));
  CHECK(parse_rational("-5") == Rat(-5));
  CHECK(parse_latvec("(1, -2)") == LatVec{1, -2});
  CHECK(parse_latvec("(3)") == LatVec{3});
  XiVec xi = parse_xivec("(1, sqrt(2))");
  REQUIRE(xi.size() == 2);
  CHECK(qx_eq(xi[0], QuadExt(1)));
  CHECK(qx_eq(xi[1], QuadExt(Rat(0), Rat(1), 2)));
  CHECK(split_list("(1, 0); (0, 1)", ';') == std::vector<std::string>{"(1, 0)", "(0, 1)"});
  CHECK(split_list("1/4 | (1,0);(0,1) | (1, sqrt(2))", '|') ==
        std::vector<std::string>{"1/4", "(1,0);(0,1)", "(1, sqrt(2))"});

  struct Bad {
    const char* text;
    ErrCode code;
  };
  const Bad bad[] = {
      {"4x", ErrCode::ParseError},
      {"", ErrCode::ParseError},
      {"1/0", ErrCode::DivisionByZero},
  };
  for (const Bad& b : bad) {
    try {
      if (b.text == std::string("1/0"))
        parse_rational(b.text);
      else
        parse_integer(b.text);
      FAIL("expected a failure for ", b.text);
    } catch (const Error& e) {
      CHECK(e.code() == b.code);
    }
  }
  try {
    parse_latvec("1, 2");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::ParseError);
  }
}

TEST_CASE("series expressions parse to canonical truncated series") {
  QuadExt prec(8);
  CHECK(series_to_string(parse_series("t^2", prec)) == "1 t^(2) + O(t^(8))");
  CHECK(series_to_string(parse_series("1 + t", prec)) == "1 t^(0) + 1 t^(1) + O(t^(8))");
  CHECK(series_to_string(parse_series("3/2*t^(1 + sqrt(2))", prec)) ==
        "3/2 t^(1 + sqrt(2)) + O(t^(8))");
  CHECK(series_to_string(parse_series("t^(3/2)", prec)) == "1 t^(3/2) + O(t^(8))");
  CHECK(series_to_string(parse_series("-t^3 + 2", prec)) == "2 t^(0) + -1 t^(3) + O(t^(8))");
  CHECK(series_to_string(parse_series("5", prec)) == "5 t^(0) + O(t^(8))");
  CHECK(series_to_string(parse_series("t", prec)) == "1 t^(1) + O(t^(8))");
  // Cancellation and truncation go through the series constructor.
  CHECK(series_to_string(parse_series("t^2 - t^2 + t^9", prec)) == "O(t^(8))");

  const char* bad[] = {"", "1 +", "x", "t^", "t^-1", "t^(1", "t^2y", "t*t"};
  for (const char* text : bad) {
    try {
      parse_series(text, prec);
      FAIL("expected ParseError for ", text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrCode::ParseError);
    }
  }
}

TEST_CASE("in-ideal and gcone reports") {
  CHECK(run("in-ideal", kIdealProblem) == "initial_ideal = { x }\n");
  CHECK(run("gcone", kIdealProblem) ==
        "reduced_basis = { x + y }\n"
        "rank = 2\n"
        "generators = { (-1,-1), (-1,1), (1,1) }\n");
}

TEST_CASE("family and restrict reports") {
  CHECK(run("family", kIdealProblem) ==
        "base_cone = { (-1,-1), (-1,1), (1,1) }\n"
        "hilbert_basis = { (-1,1) }\n"
        "family = { x + u1*y }\n"
        "identity_fiber = { x + y }\n"
        "deep_fiber = { x }\n"
        "xi_certified = true\n");

  CommandFlags hilbert_flags;
  hilbert_flags.degree_bound = 3;
  CHECK(run("family", kIdealProblem, hilbert_flags) ==
        "base_cone = { (-1,-1), (-1,1), (1,1) }\n"
        "hilbert_basis = { (-1,1) }\n"
        "family = { x + u1*y }\n"
        "identity_fiber = { x + y }\n"
        "deep_fiber = { x }\n"
        "xi_certified = true\n"
        "hilbert_identity = (1, 1, 1, 1)\n"
        "hilbert_deep = (1, 1, 1, 1)\n");

  // A [cone] section fixes the base and skips the direction certificate.
  std::string fixed_base =
      "[action]\n"
      "weights = (1, 0); (0, 1)\n"
      "[ideal]\n"
      "vars = x, y\n"
      "gens = x + y\n"
      "[cone]\n"
      "generators = (1, 1); (0, 1)\n";
  std::string report = run("family", fixed_base);
  CHECK(report.find("xi_certified") == std::string::npos);
  CHECK(report.find("hilbert_basis = { (-1,1), (1,0) }\n") != std::string::npos);
  CHECK(report.find("family = { x + u1*y }\n") != std::string::npos);
  CHECK(report.find("identity_fiber = { x + y }\n") != std::string::npos);
  CHECK(report.find("deep_fiber = { x }\n") != std::string::npos);

  CommandFlags restrict_flags;
  restrict_flags.xi2 = LatVec{1, 2};
  CHECK(run("restrict", kIdealProblem, restrict_flags) ==
        "restricted = { x + t*y }\n"
        "weight_profile = (1, 2)\n");
  CHECK(code_of_run("restrict", kIdealProblem) == ErrCode::ConsistencyError);
}

TEST_CASE("reduce report pins the worked example") {
  const std::string expected =
      "critical_scale = 2\n"
      "exit_set = { 1 }\n"
      "walls = [3/2*sqrt(2), 2]\n"
      "limit = (1, 0, 0)\n"
      "deeper_limit = (0, 0, 0)\n"
      "base_monoid = { 1, sqrt(2) }\n";
  CHECK(run("reduce", kReduceProblem) == expected);

  // Byte-identical across repeated runs on freshly parsed input.
  CHECK(run("reduce", kReduceProblem) == expected);
  CHECK(run("reduce", kReduceProblem) == expected);
}

TEST_CASE("explicit destabilized sets override the attractor locus") {
  std::string narrowed = std::string(kReduceProblem) +
                         "[strata]\n"
                         "destabilized = 1\n";
  CHECK(run("reduce", narrowed) ==
        "critical_scale = 2\n"
        "exit_set = { 1 }\n"
        "walls = [2]\n"
        "limit = (1, 0, 0)\n"
        "deeper_limit = (0, 0, 0)\n"
        "base_monoid = { 1, sqrt(2) }\n");

  // Destabilizing only the second coordinate drives the first one off to
  // negative exponents, so the limit genuinely fails to exist.
  std::string second = std::string(kReduceProblem) +
                       "[strata]\n"
                       "destabilized = 2\n";
  CHECK(code_of_run("reduce", second) == ErrCode::LimitDoesNotExist);

  std::string out_of_range = std::string(kReduceProblem) +
                             "[strata]\n"
                             "destabilized = 4\n";
  CHECK(code_of_run("reduce", out_of_range) == ErrCode::ConsistencyError);
}

TEST_CASE("check-approx compares a rational direction against the step") {
  CommandFlags match_flags;
  match_flags.xi2 = LatVec{1, 1};
  CHECK(run("check-approx", kReduceProblem, match_flags) == "result = Match\n");

  CommandFlags mismatch_flags;
  mismatch_flags.xi2 = LatVec{1, 2};
  CHECK(run("check-approx", kReduceProblem, mismatch_flags) == "result = Mismatch(exit_set)\n");

  CHECK(code_of_run("check-approx", kReduceProblem) == ErrCode::ConsistencyError);
}

TEST_CASE("iterate report walks the two-stratum example") {
  std::string text =
      "[action]\n"
      "weights = (-1, 0); (0, -1); (1, 1)\n"
      "[arc]\n"
      "coordinates = t^2; t^3; 1 + t\n"
      "precision = 8\n"
      "[stratification]\n"
      "stratum = 1/4 | (1, 0); (0, 1) | (1, sqrt(2))\n"
      "stratum = 1/2 | (-1, 1) | (-1, 1)\n";
  CHECK(run("iterate", text) ==
        "steps = 2\n"
        "step = 1\n"
        "critical_scale = 2\n"
        "exit_set = { 1 }\n"
        "walls = [3/2*sqrt(2), 2]\n"
        "limit = (1, 0, 0)\n"
        "deeper_limit = (0, 0, 0)\n"
        "base_monoid = { 1, sqrt(2) }\n"
        "step = 2\n"
        "critical_scale = 3 - 2*sqrt(2)\n"
        "exit_set = { 2 }\n"
        "walls = [3 - 2*sqrt(2)]\n"
        "limit = (0, 1, 0)\n"
        "deeper_limit = (0, 0, 0)\n"
        "base_monoid = { 1, sqrt(2) }\n");

  std::string malformed = text;
  malformed.replace(malformed.find("1/2 | (-1, 1) | (-1, 1)"), 23, "1/2 | (-1, 1)");
  CHECK(code_of_run("iterate", malformed) == ErrCode::ParseError);
}

TEST_CASE("novikov-extend reports the rescaled exponent monoid") {
  std::string text =
      "[lattice]\n"
      "rank = 2\n"
      "[action]\n"
      "weights = (1, 0); (0, 1)\n"
      "[xi]\n"
      "xi = (1, sqrt(2))\n"
      "m = (0, 1)\n";
  CHECK(run("novikov-extend", text) ==
        "b = 1/2*sqrt(2)\n"
        "monoid = { 1/2*sqrt(2), 1 }\n"
        "relation = (1, sqrt(2))\n");

  // An explicit uniformizer value rescales the adjoined generator.
  CHECK(run("novikov-extend", text + "pi = 2\n") ==
        "b = sqrt(2)\n"
        "monoid = { 1, sqrt(2) }\n"
        "relation = (2, sqrt(2))\n");
}

TEST_CASE("commands demand the sections and shapes they consume") {
  CHECK(code_of_run("unknown-command", kIdealProblem) == ErrCode::ParseError);
  CHECK(code_of_run("reduce", kIdealProblem) == ErrCode::ConsistencyError);  // no [arc]
  CHECK(code_of_run("in-ideal", kReduceProblem) == ErrCode::ConsistencyError);  // no [ideal]

  std::string short_arc =
      "[action]\n"
      "weights = (-1, 0); (0, -1); (1, 1)\n"
      "[cone]\n"
      "generators = (1, 0); (0, 1)\n"
      "[xi]\n"
      "xi = (1, sqrt(2))\n"
      "[arc]\n"
      "coordinates = t^2; t^3\n";
  CHECK(code_of_run("reduce", short_arc) == ErrCode::ConsistencyError);

  std::string bad_rank = std::string(kIdealProblem);
  bad_rank.replace(bad_rank.find("rank = 2"), 8, "rank = 3");
  CHECK(code_of_run("in-ideal", bad_rank) == ErrCode::ConsistencyError);

  std::string short_xi = std::string(kIdealProblem);
  short_xi.replace(short_xi.find("xi = (1, sqrt(2))"), 17, "xi = (1)");
  CHECK(code_of_run("in-ideal", short_xi) == ErrCode::ConsistencyError);
}

TEST_CASE("rendering is line-oriented with a trailing newline") {
  CHECK(render_report(Report{}) == "ok\n");
  Report two;
  two.lines = {"a = 1", "b = 2"};
  CHECK(render_report(two) == "a = 1\nb = 2\n");

  std::ostringstream sink;
  emit_report(two, sink);
  CHECK(sink.str() == "a = 1\nb = 2\n");
}

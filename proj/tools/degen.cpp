#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "degen/errors.hpp"
#include "degen/report.hpp"

namespace {

struct Slot {
  std::string output;
  std::string error;
  int status = 0;
};

std::string read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) degen::fail(degen::ErrCode::IoError, "cannot open `" + path + "`");
    buffer << in.rdbuf();
  }
  return buffer.str();
}

Slot process(const std::string& command, const std::string& path,
             const degen::CommandFlags& flags) {
  Slot slot;
  try {
    degen::ProblemFile problem = degen::parse_problem(read_input(path));
    slot.output = degen::render_report(degen::run_command(command, problem, flags));
  } catch (const degen::Error& e) {
    slot.error = e.what();
    slot.status = degen::exit_status(e.code());
  } catch (const std::exception& e) {
    slot.error = e.what();
    slot.status = 3;
  }
  return slot;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact degenerations of affine varieties along torus weight directions"};
  app.fallthrough();
  app.require_subcommand(1);

  long precision = 8;
  int degree_bound = 0;
  int jobs = 1;
  std::string xi2_text;
  app.add_option("--precision", precision, "default series precision Q for [arc] sections")
      ->check(CLI::PositiveNumber);
  app.add_option("--degree-bound", degree_bound,
                 "degree bound D; `family` appends Hilbert slices when positive");
  app.add_option("--jobs", jobs, "process problem files with N concurrent workers")
      ->check(CLI::PositiveNumber);
  app.add_option("--xi2", xi2_text, "rational direction \"(a, b)\" for restrict/check-approx");

  std::vector<std::string> paths;
  const char* names[] = {"in-ideal", "gcone",   "family",       "restrict",
                         "reduce",   "iterate", "check-approx", "novikov-extend"};
  const char* blurbs[] = {"initial ideal of the input ideal under the weight direction",
                          "reduced basis and the cone of directions sharing its initial ideal",
                          "orbit-closure degeneration family over the base cone",
                          "one-parameter restriction of the family along --xi2",
                          "one semistable reduction step of the arc family",
                          "iterated reduction along a stratification",
                          "replay the reduction step with the rational direction --xi2",
                          "extend the exponent monoid by the relation pi = chi^m"};
  for (int i = 0; i < 8; ++i)
    app.add_subcommand(names[i], blurbs[i])
        ->add_option("paths", paths, "problem files (default: standard input)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  degen::CommandFlags flags;
  flags.precision = precision;
  flags.degree_bound = degree_bound;
  try {
    if (!xi2_text.empty()) flags.xi2 = degen::parse_latvec(xi2_text);
  } catch (const degen::Error& e) {
    std::cerr << "degen: " << e.what() << "\n";
    return degen::exit_status(e.code());
  }

  if (paths.empty()) paths.push_back("-");
  std::vector<Slot> slots(paths.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < paths.size(); ++i) slots[i] = process(command, paths[i], flags);
  } else {
    for (size_t start = 0; start < paths.size(); start += jobs) {
      std::vector<std::thread> pool;
      size_t stop = std::min(paths.size(), start + jobs);
      for (size_t i = start; i < stop; ++i)
        pool.emplace_back(
            [&, i]() { slots[i] = process(command, paths[i], flags); });
      for (std::thread& t : pool) t.join();
    }
  }

  int status = 0;
  for (size_t i = 0; i < paths.size(); ++i) {
    if (!slots[i].error.empty()) {
      std::cerr << "degen: " << paths[i] << ": " << slots[i].error << "\n";
      if (status == 0) status = slots[i].status;
    } else {
      if (paths.size() > 1) std::cout << "file = " << paths[i] << "\n";
      std::cout << slots[i].output;
    }
  }
  return status;
}

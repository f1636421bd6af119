#include "cli.hpp"

#include "properties.hpp"
#include "tasks.hpp"

#include "lcint/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#ifndef LCINT_SCENARIO_DIR
#define LCINT_SCENARIO_DIR "scenarios"
#endif

namespace lcint::app {

namespace fs = std::filesystem;

namespace {

std::pair<int, int> parse_precision(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw PreconditionError("--precision expects N,M");
  try {
    std::size_t a = 0, b = 0;
    const int N = std::stoi(text.substr(0, comma), &a);
    const int M = std::stoi(text.substr(comma + 1), &b);
    if (a != comma || b != text.size() - comma - 1) throw std::invalid_argument(text);
    return {N, M};
  } catch (const std::logic_error&) {
    throw PreconditionError("--precision expects N,M, got '" + text + "'");
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot write " + path.string());
  f << content;
}

std::vector<fs::path> corpus_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw PreconditionError("no scenario directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".scn") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

int selftest(const fs::path& corpus, const Overrides& o, const std::optional<fs::path>& out_dir, std::ostream& out,
             std::ostream& err) {
  int failures = 0;
  for (const auto& r : run_property_suite(o.seed)) {
    out << (r.pass() ? "ok   " : "FAIL ") << r.name << " (" << r.instances << " instances)\n";
    if (!r.pass()) {
      ++failures;
      err << r.name << ": " << r.failures << " failures, first: " << r.first_failure << '\n';
    }
  }
  for (const auto& path : corpus_files(corpus)) {
    const auto name = path.stem().string();
    try {
      const auto s = apply(load_scenario(path.string()), o);
      const auto a = run_scenario(s, name, o), b = run_scenario(s, name, o);
      auto bad = check_expectations(a);
      if (a.text() != b.text() || a.json() != b.json()) bad.push_back("reports differ between runs");
      if (parse_scenario(serialize(s)) != s) bad.push_back("scenario does not survive a round trip");
      if (out_dir) {
        write_file(*out_dir / (name + ".txt"), a.text());
        write_file(*out_dir / (name + ".json"), a.json());
      }
      out << (bad.empty() ? "ok   " : "FAIL ") << "scenario " << name << '\n';
      for (const auto& m : bad) err << name << ": " << m << '\n';
      failures += !bad.empty();
    } catch (const std::exception& e) {
      out << "FAIL scenario " << name << '\n';
      err << name << ": " << e.what() << '\n';
      ++failures;
    }
  }
  return failures ? ExitCode::invariant : ExitCode::ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local constancy of intersection numbers in truncated p-adic families", "lcint"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  std::string precision, out_dir, corpus = LCINT_SCENARIO_DIR, scenario_path;
  Overrides o;
  int refine_max = -1;
  app.add_option("--precision", precision, "override the ring truncation as N,M");
  app.add_option("--refine-max", refine_max, "deepest ball level the prober may reach")->check(CLI::NonNegativeNumber);
  app.add_option("--workers", o.workers, "worker threads for probing")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "directory for <scenario>.txt and <scenario>.json");
  app.add_option("--seed", o.seed, "seed for sampling");

  std::vector<CLI::App*> tasks;
  for (const char* name : {"intersect", "probe", "artin-rees", "lattices"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " task on a scenario");
    sub->fallthrough();
    sub->add_option("scenario", scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
    tasks.push_back(sub);
  }
  auto* self = app.add_subcommand("selftest", "property suite plus every corpus scenario");
  self->fallthrough();
  self->add_option("--corpus", corpus, "scenario directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ExitCode::ok : ExitCode::validation;
  }

  try {
    if (!precision.empty()) o.precision = parse_precision(precision);
    if (refine_max >= 0) o.refine_max = refine_max;
    std::optional<fs::path> dir;
    if (!out_dir.empty()) {
      dir = out_dir;
      fs::create_directories(*dir);
    }
    if (self->parsed()) return selftest(corpus, o, dir, out, err);

    const auto* sub = *std::find_if(tasks.begin(), tasks.end(), [](const CLI::App* a) { return a->parsed(); });
    const auto s = apply(load_scenario(scenario_path), o);
    if (to_string(s.task) != sub->get_name())
      throw PreconditionError("scenario is a " + to_string(s.task) + " task, not " + sub->get_name());
    const auto name = fs::path(scenario_path).stem().string();
    const auto report = run_scenario(s, name, o);
    if (dir) {
      write_file(*dir / (name + ".txt"), report.text());
      write_file(*dir / (name + ".json"), report.json());
    }
    out << report.text();
    return exit_code_for(report);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::validation;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return ExitCode::budget;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return ExitCode::invariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::invariant;
  }
}

}  // namespace lcint::app

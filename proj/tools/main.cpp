#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kanext/runner.hpp"

namespace {

using namespace kanext;

struct Globals {
  std::string spec_path;
  std::string format = "human";
  RunOptions run;
};

SpecFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_spec(text.str());
  } catch (const SpecError& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string source_name(const Globals& g) {
  return g.spec_path.empty() ? "built-in" : std::filesystem::path(g.spec_path).filename().string();
}

int finish(const Report& report, const Globals& g) {
  std::cout << emit(report, g.format == "machine" ? Format::Machine : Format::Human);
  return report.all_pass() ? 0 : 1;
}

/// One command given on the command line, against the spec file if any.
int run_words(const Globals& g, std::vector<std::string> words) {
  SpecFile spec = g.spec_path.empty() ? SpecFile{} : load(g.spec_path);
  const Command cmd = make_command(spec, words);
  Report report;
  report.source = source_name(g);
  report.records.push_back(run_command(spec, cmd, g.run));
  return finish(report, g);
}

/// `check <tag>` with no arguments: the file's commands with that tag, or the
/// built-in suite when no file is given.
int run_check(const Globals& g, const std::string& tag, const std::vector<std::string>& args) {
  if (!args.empty()) {
    std::vector<std::string> words{"check", tag};
    words.insert(words.end(), args.begin(), args.end());
    return run_words(g, words);
  }
  Report report;
  report.source = source_name(g);
  if (g.spec_path.empty()) {
    if (std::find(check_tags().begin(), check_tags().end(), tag) == check_tags().end()) {
      throw Error("unknown check tag '" + tag + "'");
    }
    report.records.push_back(run_suite(tag, g.run));
    return finish(report, g);
  }
  SpecFile spec = load(g.spec_path);
  std::vector<Command> selected;
  for (const Command& c : spec.commands) {
    if ((c.words[0] == "check" && c.words[1] == tag) ||
        (c.words[0] == "theory" && c.words[1] != "models" && tag == "lawvere-adjunction")) {
      selected.push_back(c);
    }
  }
  if (selected.empty()) throw Error(g.spec_path + " has no '" + tag + "' commands");
  spec.commands = std::move(selected);
  return finish(run_spec(spec, report.source, g.run), g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kanext: finite category theory over finite sets"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--spec", g.spec_path, "Spec file with the entities and commands");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--seed", g.run.seed, "Seed for randomized instances");
  app.add_option("--max-size", g.run.max_size, "Bound on generated carriers and fixture sets")
      ->check(CLI::Range(0, 8));
  app.add_option("--jobs", g.run.jobs, "Commands run in parallel; report order is spec order")
      ->check(CLI::Range(1, 64));

  std::vector<std::string> args;
  std::string name, tag, action;

  auto* run = app.add_subcommand("run", "Run every command of the spec file");
  auto* validate = app.add_subcommand("validate", "Check the axioms of a declared entity");
  validate->add_option("name", name, "Entity name")->required();
  auto* derive = app.add_subcommand("derive-cartesian", "Search products and a terminal object");
  derive->add_option("category", name, "Category name")->required();
  auto* lan = app.add_subcommand("lan", "Pointwise left Kan extension Lan_J F");
  lan->add_option("args", args, "J F")->required()->expected(2);
  auto* convolve = app.add_subcommand("convolve", "Day convolution M * N over a promonoidal structure");
  convolve->add_option("args", args, "M N P")->required()->expected(3);
  auto* check = app.add_subcommand("check", "Run a theorem check");
  check->add_option("tag", tag, "Check tag")->required();
  check->add_option("args", args, "Arguments; none runs the shipped fixtures or the file's checks");
  auto* theory = app.add_subcommand("theory", "Lawvere theories: models, free-model, adjunction");
  theory->add_option("action", action, "models | free-model | adjunction")->required();
  theory->add_option("args", args, "Theory or theory morphism, then max=N or S=N");
  for (auto* sub : {run, validate, derive, lan, convolve, check, theory}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (g.spec_path.empty()) throw Error("run needs --spec");
      const SpecFile spec = load(g.spec_path);
      return finish(run_spec(spec, source_name(g), g.run), g);
    }
    if (*validate) return run_words(g, {"validate", name});
    if (*derive) return run_words(g, {"derive-cartesian", name});
    if (*lan) return run_words(g, {"lan", args[0], args[1]});
    if (*convolve) return run_words(g, {"convolve", args[0], args[1], args[2]});
    if (*check) return run_check(g, tag, args);
    std::vector<std::string> words{"theory", action};
    words.insert(words.end(), args.begin(), args.end());
    return run_words(g, words);
  } catch (const std::exception& e) {
    std::cerr << "kanext: " << e.what() << "\n";
    return 2;
  }
}

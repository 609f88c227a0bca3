// kannudi: scripted composition, corpus analysis and savings tables.

#include <cstdio>
#include <exception>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kannudi/kannudi.hpp"
#include "kannudi/session.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  try {
    return kannudi::read_corpus_file(path);
  } catch (const kannudi::AnalysisError& e) {
    throw DataError(e.what());
  }
}

kannudi::ReportFormat parse_format(const std::string& s) {
  return s == "csv" ? kannudi::ReportFormat::Csv : kannudi::ReportFormat::Text;
}

struct ComposeOptions {
  std::string script_path;
  bool trace = false;
  std::string default_vowel = "a";
  std::string mode = "off";
  bool no_shunyify = false;
  bool no_arkify = false;
  bool no_strict = false;
  bool ascii_digits = false;
  std::string layout_path;
  std::vector<std::string> repha_exceptions;
};

kannudi::ComposerConfig make_config(const ComposeOptions& o) {
  kannudi::ComposerConfig c;
  c.default_vowel = o.default_vowel == "null" ? kannudi::DefaultVowel::Null : kannudi::DefaultVowel::InherentA;
  if (o.mode == "so") c.ohok_mode = kannudi::OhokMode::SvaOttu;
  if (o.mode == "ko") c.ohok_mode = kannudi::OhokMode::Kandante;
  if (o.mode == "ao") c.ohok_mode = kannudi::OhokMode::Andante;
  c.shunyification = !o.no_shunyify;
  c.arkification = !o.no_arkify;
  c.strict_rules = !o.no_strict;
  c.numerals = o.ascii_digits ? kannudi::Numerals::Ascii : kannudi::Numerals::Kannada;
  c.repha_exceptions = o.repha_exceptions;
  return c;
}

kannudi::KeyLayout make_layout(const std::string& path) {
  if (path.empty()) return kannudi::default_layout();
  try {
    return kannudi::load_layout(read_input(path), path);
  } catch (const kannudi::LayoutError& e) {
    throw DataError(path + ": " + e.what());
  }
}

int run_compose(const ComposeOptions& o) {
  std::vector<kannudi::ScriptStep> steps;
  try {
    steps = kannudi::parse_script(read_input(o.script_path));
  } catch (const kannudi::ScriptError& e) {
    throw DataError((o.script_path.empty() ? std::string("<stdin>") : o.script_path) + ":" + e.what());
  }
  kannudi::Session session(make_config(o), make_layout(o.layout_path));
  for (const auto& step : steps) {
    for (const auto& notice : session.step(step.input)) {
      std::cerr << step.line << ':' << step.column << ": " << step.label << ": " << kannudi::notice_name(notice.kind)
                << ": " << notice.message << '\n';
    }
    if (o.trace) std::cout << step.label << '\t' << session.text() << '\n';
  }
  std::cout << session.text() << '\n';
  return kExitOk;
}

int run_analyze(const std::vector<std::string>& paths, const std::string& format) {
  try {
    const auto counts = kannudi::count_files(paths);
    std::cout << kannudi::format_frequency_report(counts, parse_format(format));
  } catch (const kannudi::AnalysisError& e) {
    throw DataError(e.what());
  }
  return kExitOk;
}

int run_savings(const std::vector<std::string>& freq_paths, const std::string& format) {
  kannudi::FrequencyTable freq = kannudi::FrequencyTable::reference();
  if (!freq_paths.empty()) {
    try {
      freq = kannudi::FrequencyTable::from_counts(kannudi::count_files(freq_paths));
    } catch (const kannudi::AnalysisError& e) {
      throw DataError(e.what());
    }
  }
  std::cout << kannudi::format_savings_grid(freq, parse_format(format));
  return kExitOk;
}

int run_session(const ComposeOptions& o) {
  kannudi::Session session(make_config(o), make_layout(o.layout_path));
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json reply;
    try {
      reply = kannudi::json_bridge::handle_request(session, nlohmann::json::parse(line));
    } catch (const std::exception& e) {
      reply = {{"error", e.what()}};
    }
    std::cout << reply.dump() << '\n' << std::flush;
  }
  return kExitOk;
}

void add_config_flags(CLI::App& cmd, ComposeOptions& o) {
  cmd.add_option("--default-vowel", o.default_vowel, "Default vowel: a or null")
      ->check(CLI::IsMember({"a", "null"}));
  cmd.add_option("--mode", o.mode, "OHOK mode: off, so, ko, ao")->check(CLI::IsMember({"off", "so", "ko", "ao"}));
  cmd.add_flag("--no-shunyify", o.no_shunyify, "Keep nasal + virama before consonants");
  cmd.add_flag("--no-arkify", o.no_arkify, "Disable repha exception handling");
  cmd.add_flag("--no-strict", o.no_strict, "Do not block non-initial vowels and aspirate clusters");
  cmd.add_flag("--ascii-digits", o.ascii_digits, "Digit keys produce ASCII digits");
  cmd.add_option("--layout", o.layout_path, "Layout file (default: bundled kgp_default)");
  cmd.add_option("--repha-exception", o.repha_exceptions, "Word that keeps full ra before an ottu (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kannada phonetic input engine"};
  app.require_subcommand(1);

  ComposeOptions compose_opts;
  auto* compose = app.add_subcommand("compose", "Replay a keystroke script and print the text");
  compose->add_option("script", compose_opts.script_path, "Script file (default: stdin)");
  compose->add_flag("--trace", compose_opts.trace, "Print the text after every keystroke");
  add_config_flags(*compose, compose_opts);

  std::vector<std::string> analyze_paths;
  std::string analyze_format = "text";
  auto* analyze = app.add_subcommand("analyze", "Syllable frequencies of corpus files");
  analyze->add_option("files", analyze_paths, "UTF-8 text files")->required();
  analyze->add_option("--format", analyze_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  std::vector<std::string> freq_paths;
  std::string savings_format = "text";
  auto* savings = app.add_subcommand("savings", "Keystrokes saved per 1000 syllables for every mode");
  savings->add_option("--freq", freq_paths, "Measure frequencies from these corpus files");
  savings->add_option("--format", savings_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  ComposeOptions session_opts;
  auto* session = app.add_subcommand("session", "JSON-lines editing session on stdin/stdout");
  add_config_flags(*session, session_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compose) return run_compose(compose_opts);
    if (*analyze) return run_analyze(analyze_paths, analyze_format);
    if (*savings) return run_savings(freq_paths, savings_format);
    if (*session) return run_session(session_opts);
  } catch (const DataError& e) {
    std::cerr << "kannudi: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "kannudi: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

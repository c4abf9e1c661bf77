#ifndef SMTKIT_CLI_COMMANDS_H_
#define SMTKIT_CLI_COMMANDS_H_

#include <functional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

namespace smtkit::cli {

struct Context {
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  unsigned jobs = 1;
  // The selected command; run after parsing so that parse errors and command
  // errors are reported separately.
  std::function<void()> action;
};

// Output options shared by every command that produces a report.
struct ReportOptions {
  std::string report_path;
  bool json = false;

  void add(CLI::App* cmd);
  // Writes `report` to the report file if one was given, and prints either
  // the JSON or `text` on stdout.
  void emit(Context& ctx, const nlohmann::json& report, const std::string& text) const;
};

void add_corpus_commands(CLI::App& app, Context& ctx);
void add_extract_commands(CLI::App& app, Context& ctx);
void add_lm_commands(CLI::App& app, Context& ctx);
void add_score_command(CLI::App& app, Context& ctx);
void add_symmetrize_command(CLI::App& app, Context& ctx);

}  // namespace smtkit::cli

#endif  // SMTKIT_CLI_COMMANDS_H_

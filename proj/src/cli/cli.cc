#include "smtkit/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "commands.h"
#include "smtkit/error.h"

namespace smtkit::cli {

void ReportOptions::add(CLI::App* cmd) {
  cmd->add_option("--report", report_path, "Write the JSON report to this file");
  cmd->add_flag("--json", json, "Print the JSON report instead of text");
}

void ReportOptions::emit(Context& ctx, const nlohmann::json& report,
                         const std::string& text) const {
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) throw InputError("cannot write " + report_path);
    f << report.dump(2) << '\n';
  }
  if (json)
    *ctx.out << report.dump(2) << '\n';
  else
    *ctx.out << text;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;

  CLI::App app{"Corpus preparation, language modelling and evaluation for phrase-based MT"};
  app.name("smtkit");
  app.set_config("--config", "", "INI or TOML file with option defaults; flags override it");
  app.add_option("-j,--jobs", ctx.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.require_subcommand(1);
  app.fallthrough();

  add_corpus_commands(app, ctx);
  add_extract_commands(app, ctx);
  add_lm_commands(app, ctx);
  add_score_command(app, ctx);
  add_symmetrize_command(app, ctx);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (ctx.action) ctx.action();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace smtkit::cli

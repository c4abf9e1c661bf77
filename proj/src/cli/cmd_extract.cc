#include <fstream>
#include <map>
#include <memory>

#include <fmt/format.h>

#include "commands.h"
#include "smtkit/corpus.h"
#include "smtkit/error.h"
#include "smtkit/tagged.h"

namespace smtkit::cli {

namespace {

struct ExtractArgs {
  std::string input;
  std::string mode = "all";
  std::string output;
  std::string encoding;
  std::string marker = std::string(kDefaultLineMarker);
  std::string lexicon;
  ReportOptions report;
};

}  // namespace

void add_extract_commands(CLI::App& app, Context& ctx) {
  auto args = std::make_shared<ExtractArgs>();
  auto* cmd = app.add_subcommand("extract", "Derive base-form and SVO corpora from tagged XML");
  cmd->add_option("--input", args->input, "Tagger output")->required()->check(CLI::ExistingFile);
  cmd->add_option("--mode", args->mode,
                  "base, svo, both (base forms in SVO order) or all three")
      ->check(CLI::IsMember({"base", "svo", "both", "all"}));
  cmd->add_option("--output", args->output,
                  "Output file; with --mode all a prefix for .base, .svo and .both")
      ->required();
  cmd->add_option("--encoding", args->encoding, "Override the encoding in the XML declaration");
  cmd->add_option("--marker", args->marker, "End-of-line marker token");
  cmd->add_option("--lexicon", args->lexicon, "Also write \"form base\" pairs here");
  args->report.add(cmd);
  cmd->callback([&ctx, args] {
    ctx.action = [&ctx, args] {
      TaggedParseOptions options;
      options.line_marker = args->marker;
      if (!args->encoding.empty()) {
        options.encoding = parse_encoding(args->encoding);
        if (!options.encoding) throw InputError("unknown encoding " + args->encoding);
      }
      std::ifstream in(args->input, std::ios::binary);
      if (!in) throw InputError("cannot open " + args->input);
      const auto sentences = parse_tagged_xml(in, options);
      const auto derived = build_derived_corpora(sentences);
      if (args->mode == "base") write_lines(args->output, derived.base);
      if (args->mode == "svo") write_lines(args->output, derived.svo);
      if (args->mode == "both") write_lines(args->output, derived.base_svo);
      if (args->mode == "all") {
        write_lines(args->output + ".base", derived.base);
        write_lines(args->output + ".svo", derived.svo);
        write_lines(args->output + ".both", derived.base_svo);
      }
      if (!args->lexicon.empty()) {
        std::map<std::string, std::string> pairs;
        for (const auto& s : sentences)
          for (const auto& t : s.tokens) pairs.emplace(t.orth, t.chosen().base);
        std::vector<std::string> lines;
        for (const auto& [form, base] : pairs) lines.push_back(form + " " + base);
        write_lines(args->lexicon, lines);
      }
      const nlohmann::json j = {{"sentences", sentences.size()},
                                {"svo_fallbacks", derived.svo_fallbacks},
                                {"svo_multiple_verbs", derived.svo_multi_verb}};
      args->report.emit(ctx, j,
                        fmt::format("sentences {}  svo fallbacks {}  multiple verbs {}\n",
                                    sentences.size(), derived.svo_fallbacks,
                                    derived.svo_multi_verb));
    };
  });
}

}  // namespace smtkit::cli

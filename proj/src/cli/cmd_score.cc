#include <filesystem>
#include <memory>

#include "commands.h"
#include "smtkit/error.h"
#include "smtkit/evaluation.h"
#include "smtkit/report.h"
#include "smtkit/stemmer.h"

namespace smtkit::cli {

namespace {

struct ScoreArgs {
  std::vector<std::string> hypotheses;
  std::vector<std::string> references;
  std::vector<std::string> names;
  std::string stem_language = "en";
  std::string lexicon;
  std::string synonyms;
  ScoreConfig config;
  ReportOptions report;
};

// One synonym set per line, words separated by whitespace.
SynonymTable read_synonyms(const std::string& path, bool lowercase) {
  TokenizationScheme scheme;
  scheme.lowercase = lowercase;
  SynonymTable table;
  int id = 0;
  for (const auto& line : read_lines(path)) {
    const auto words = tokenize_words(line, scheme);
    if (words.empty()) continue;
    for (const auto& w : words) table[w].insert(id);
    ++id;
  }
  return table;
}

}  // namespace

void add_score_command(CLI::App& app, Context& ctx) {
  auto args = std::make_shared<ScoreArgs>();
  auto* cmd = app.add_subcommand("score", "BLEU, NIST, TER and METEOR for one or more systems");
  cmd->add_option("--hyp", args->hypotheses, "System output; repeat for several systems")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--ref", args->references, "Reference translation; repeat for several")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--name", args->names, "Row label per --hyp (default: file name)");
  cmd->add_flag("--case-sensitive", args->config.case_sensitive,
                "Compare tokens without lowercasing");
  cmd->add_option("--max-n", args->config.bleu_max_n, "Highest BLEU n-gram order")
      ->check(CLI::Range(1, 9));
  cmd->add_option("--nist-max-n", args->config.nist_max_n, "Highest NIST n-gram order")
      ->check(CLI::Range(1, 9));
  cmd->add_flag("--meteor-cubic", args->config.meteor_cubic,
                "Use the cubic METEOR fragmentation penalty");
  cmd->add_option("--ter-exhaustive-max-len", args->config.ter_exhaustive_max_len,
                  "Exact TER search for pairs up to this length (0: greedy only)");
  cmd->add_option("--stem", args->stem_language, "Stemmer language for METEOR (en or none)")
      ->check(CLI::IsMember({"en", "none"}));
  cmd->add_option("--lexicon", args->lexicon, "\"form base\" pairs used as the METEOR stemmer")
      ->check(CLI::ExistingFile);
  cmd->add_option("--synonyms", args->synonyms, "Synonym sets for METEOR, one per line")
      ->check(CLI::ExistingFile);
  args->report.add(cmd);
  cmd->callback([&ctx, args] {
    ctx.action = [&ctx, args] {
      if (!args->names.empty() && args->names.size() != args->hypotheses.size())
        throw InputError("--name must be given once per --hyp");
      std::unique_ptr<Stemmer> stemmer;
      if (!args->lexicon.empty())
        stemmer = std::make_unique<LexiconStemmer>(LexiconStemmer::from_file(args->lexicon));
      else if (args->stem_language != "none")
        stemmer = make_stemmer(args->stem_language);
      SynonymTable synonyms;
      ScoreConfig config = args->config;
      config.jobs = ctx.jobs;
      config.stemmer = stemmer.get();
      if (!args->synonyms.empty()) {
        synonyms = read_synonyms(args->synonyms, !config.case_sensitive);
        config.synonyms = &synonyms;
      }
      std::vector<std::pair<std::string, MetricReport>> rows;
      nlohmann::json j = nlohmann::json::array();
      for (std::size_t i = 0; i < args->hypotheses.size(); ++i) {
        const std::string name = args->names.empty()
                                     ? std::filesystem::path(args->hypotheses[i]).filename().string()
                                     : args->names[i];
        try {
          rows.emplace_back(name, score_all(args->hypotheses[i], args->references, config));
        } catch (const LineCountMismatch& e) {
          throw InputError(args->hypotheses[i] + ": " + e.what());
        }
        auto entry = to_json(rows.back().second);
        entry["system"] = name;
        j.push_back(entry);
      }
      args->report.emit(ctx, j, render_table(rows));
    };
  });
}

}  // namespace smtkit::cli

#include <fstream>
#include <memory>

#include <fmt/format.h>

#include "commands.h"
#include "smtkit/cleaning.h"
#include "smtkit/encoding.h"
#include "smtkit/error.h"
#include "smtkit/report.h"

namespace smtkit::cli {

namespace {

struct CleaningArgs {
  std::string source, target, dictionary;
  std::string source_language = "src", target_language = "tgt";
  std::string dictionary_side = "src";
  bool case_sensitive = false;
  CleaningConfig config;
  ReportOptions report;

  void add(CLI::App* cmd) {
    cmd->add_option("--src", source, "Source side, one segment per line")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--tgt", target, "Target side, line-parallel to --src")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--dict", dictionary, "Word list for the coverage report")
        ->check(CLI::ExistingFile);
    cmd->add_option("--dict-side", dictionary_side, "Side the dictionary describes")
        ->check(CLI::IsMember({"src", "tgt"}));
    cmd->add_option("--src-lang", source_language);
    cmd->add_option("--tgt-lang", target_language);
    cmd->add_option("--max-len", config.max_len, "Drop pairs with a side longer than this")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-ratio", config.max_ratio, "Drop pairs whose length ratio exceeds this")
        ->check(CLI::Range(1.0, 1e9));
    cmd->add_option("--min-block", config.min_block, "Shortest duplicated block reported")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--scripts", config.scripts, "Allowed scripts, e.g. Latin,Greek");
    cmd->add_option("--foreign-run", config.foreign_run,
                    "Shortest run of foreign-script tokens reported")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--case-sensitive", case_sensitive, "Compare tokens without lowercasing");
    report.add(cmd);
  }

  ParallelCorpus load() const {
    return ParallelCorpus(read_lines(source), read_lines(target), source_language,
                          target_language);
  }

  CleaningConfig resolved(unsigned jobs) const {
    CleaningConfig c = config;
    c.scheme.lowercase = !case_sensitive;
    c.dictionary_side = dictionary_side == "tgt" ? Side::kTarget : Side::kSource;
    c.jobs = jobs;
    return c;
  }

  std::optional<Dictionary> load_dictionary() const {
    if (dictionary.empty()) return std::nullopt;
    TokenizationScheme scheme;
    scheme.lowercase = !case_sensitive;
    return read_dictionary(dictionary, scheme);
  }
};

std::vector<std::string> texts(const Corpus& corpus) {
  std::vector<std::string> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) out.push_back(s.text());
  return out;
}

}  // namespace

void add_corpus_commands(CLI::App& app, Context& ctx) {
  {
    auto args = std::make_shared<CleaningArgs>();
    auto outputs = std::make_shared<std::pair<std::string, std::string>>();
    auto* cmd = app.add_subcommand("clean", "Remove duplications and noise, filter by length");
    args->add(cmd);
    cmd->add_option("--out-src", outputs->first, "Cleaned source side")->required();
    cmd->add_option("--out-tgt", outputs->second, "Cleaned target side")->required();
    cmd->add_flag("--remove-foreign", args->config.remove_foreign,
                  "Also delete runs of foreign-script tokens");
    cmd->add_flag("!--keep-noise", args->config.remove_noise, "Leave symbol noise in place");
    cmd->callback([&ctx, args, outputs] {
      ctx.action = [&ctx, args, outputs] {
        const auto corpus = args->load();
        const auto dict = args->load_dictionary();
        const auto result = clean(corpus, dict ? &*dict : nullptr, args->resolved(ctx.jobs));
        write_lines(outputs->first, texts(result.corpus.source()));
        write_lines(outputs->second, texts(result.corpus.target()));
        args->report.emit(ctx, to_json(result.report),
                          describe(result.report) +
                              fmt::format("kept {} of {} pairs\n", result.corpus.size(),
                                          corpus.size()));
      };
    });
  }
  {
    auto args = std::make_shared<CleaningArgs>();
    auto* cmd = app.add_subcommand("diagnose", "Report corpus errors without changing anything");
    args->add(cmd);
    cmd->callback([&ctx, args] {
      ctx.action = [&ctx, args] {
        const auto dict = args->load_dictionary();
        const auto report = diagnose(args->load(), dict ? &*dict : nullptr, args->resolved(ctx.jobs));
        args->report.emit(ctx, to_json(report), describe(report));
      };
    });
  }
  {
    struct VocabArgs {
      std::string input, dictionary, output;
      bool case_sensitive = false;
      std::size_t sample = 20;
      ReportOptions report;
    };
    auto args = std::make_shared<VocabArgs>();
    auto* cmd = app.add_subcommand("vocab", "Word frequencies and dictionary coverage");
    cmd->add_option("--input", args->input, "Corpus file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--dict", args->dictionary, "Dictionary for the coverage report")
        ->check(CLI::ExistingFile);
    cmd->add_option("--output", args->output, "Write \"word count\" lines here");
    cmd->add_option("--sample", args->sample, "Number of frequent OOV words listed");
    cmd->add_flag("--case-sensitive", args->case_sensitive);
    args->report.add(cmd);
    cmd->callback([&ctx, args] {
      ctx.action = [&ctx, args] {
        TokenizationScheme scheme;
        scheme.lowercase = !args->case_sensitive;
        const auto vocab = build_vocabulary(make_corpus(read_lines(args->input)), scheme);
        if (!args->output.empty()) {
          std::vector<std::string> lines;
          for (const auto& [w, c] : vocab.by_frequency()) lines.push_back(w + " " + std::to_string(c));
          write_lines(args->output, lines);
        }
        nlohmann::json j = {{"types", vocab.size()}, {"tokens", vocab.total_tokens()}};
        std::string text = fmt::format("types {}  tokens {}\n", vocab.size(), vocab.total_tokens());
        if (!args->dictionary.empty()) {
          const auto cov = coverage_report(vocab, read_dictionary(args->dictionary, scheme), args->sample);
          j["coverage"] = to_json(cov);
          text += describe(cov);
        }
        args->report.emit(ctx, j, text);
      };
    });
  }
  {
    struct TranscodeArgs {
      std::string input, output, from = "windows-1250", to = "utf-8";
    };
    auto args = std::make_shared<TranscodeArgs>();
    auto* cmd = app.add_subcommand("transcode", "Convert between UTF-8 and Windows-1250");
    cmd->add_option("--input", args->input)->required()->check(CLI::ExistingFile);
    cmd->add_option("--output", args->output)->required();
    cmd->add_option("--from", args->from, "Source encoding");
    cmd->add_option("--to", args->to, "Target encoding");
    cmd->callback([&ctx, args] {
      ctx.action = [args] {
        const auto from = parse_encoding(args->from);
        const auto to = parse_encoding(args->to);
        if (!from) throw InputError("unknown encoding " + args->from);
        if (!to) throw InputError("unknown encoding " + args->to);
        std::ifstream in(args->input, std::ios::binary);
        if (!in) throw InputError("cannot open " + args->input);
        const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const std::string result = transcode(bytes, *from, *to);
        std::ofstream out(args->output, std::ios::binary);
        if (!out) throw InputError("cannot write " + args->output);
        out << result;
      };
    });
  }
}

}  // namespace smtkit::cli

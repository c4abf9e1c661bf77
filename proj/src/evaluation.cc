#include "smtkit/evaluation.h"

#include <algorithm>

#include <fmt/format.h>

#include "smtkit/error.h"

namespace smtkit {

EvalCorpus make_eval_corpus(const std::vector<std::string>& hypotheses,
                            const std::vector<std::vector<std::string>>& references,
                            const TokenizationScheme& scheme) {
  if (hypotheses.empty()) throw EmptyCorpus();
  if (references.empty()) throw InputError("at least one reference is required");
  for (const auto& ref : references)
    if (ref.size() != hypotheses.size())
      throw LineCountMismatch(hypotheses.size(), ref.size(), "reference");
  EvalCorpus corpus(hypotheses.size());
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    corpus[i].hypothesis = tokenize_words(hypotheses[i], scheme);
    for (const auto& ref : references) corpus[i].references.push_back(tokenize_words(ref[i], scheme));
  }
  return corpus;
}

MetricReport score_corpus(const EvalCorpus& corpus, const ScoreConfig& config) {
  MetricReport report;
  report.sentences = corpus.size();
  BleuOptions bleu_options;
  bleu_options.max_n = config.bleu_max_n;
  report.bleu = bleu(corpus, bleu_options);
  report.nist = nist(corpus, NistOptions{config.nist_max_n});
  TerOptions ter_options;
  ter_options.exhaustive_max_len = config.ter_exhaustive_max_len;
  report.ter = ter_corpus(corpus, ter_options, config.jobs);
  MeteorOptions meteor_options;
  meteor_options.stemmer = config.stemmer;
  meteor_options.synonyms = config.synonyms;
  meteor_options.cubic_penalty = config.meteor_cubic;
  report.meteor = meteor_corpus(corpus, meteor_options, config.jobs);
  return report;
}

MetricReport score_all(const std::string& hypothesis_path,
                       const std::vector<std::string>& reference_paths, const ScoreConfig& config) {
  const auto hyp = read_lines(hypothesis_path);
  std::vector<std::vector<std::string>> refs;
  for (const auto& path : reference_paths) refs.push_back(read_lines(path));
  TokenizationScheme scheme;
  scheme.lowercase = !config.case_sensitive;
  return score_corpus(make_eval_corpus(hyp, refs, scheme), config);
}

std::string render_table(const std::vector<std::pair<std::string, MetricReport>>& rows) {
  std::size_t width = 6;
  for (const auto& [name, r] : rows) width = std::max(width, name.size());
  std::string out = fmt::format("{:<{}}  {:>7}  {:>7}  {:>7}  {:>7}\n", "System", width, "BLEU",
                                "NIST", "TER", "METEOR");
  for (const auto& [name, r] : rows)
    out += fmt::format("{:<{}}  {:>7.2f}  {:>7.2f}  {:>7.2f}  {:>7.2f}\n", name, width,
                       r.bleu.score * 100.0, r.nist.score, r.ter.score * 100.0,
                       r.meteor.score * 100.0);
  out += "BLEU, TER and METEOR are scaled by 100; lower TER is better.\n";
  return out;
}

}  // namespace smtkit

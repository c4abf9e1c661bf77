#include "smtkit/report.h"

#include <fmt/format.h>

namespace smtkit {

using nlohmann::json;

json to_json(const CoverageReport& report) {
  json sample = json::array();
  for (const auto& [word, count] : report.oov_sample) sample.push_back({{"word", word}, {"count", count}});
  return {{"corpus_vocab_size", report.corpus_vocab_size},
          {"dictionary_size", report.dictionary_size},
          {"intersection_size", report.intersection_size},
          {"oov_size", report.oov_size},
          {"oov_rate", report.oov_rate},
          {"oov_token_rate", report.oov_token_rate},
          {"oov_sample", sample}};
}

json to_json(const CorruptionFinding& finding) {
  return {{"segment", finding.segment_id},
          {"side", to_string(finding.side)},
          {"kind", to_string(finding.kind)},
          {"span", {finding.span_begin, finding.span_end}},
          {"evidence", finding.evidence}};
}

json to_json(const DiagnosticsReport& report) {
  json counts = json::object();
  for (std::size_t k = 0; k < kCorruptionKindCount; ++k)
    counts[std::string(to_string(static_cast<CorruptionKind>(k)))] = report.counts[k];
  json findings = json::array();
  for (const auto& f : report.findings) findings.push_back(to_json(f));
  json mods = json::array();
  for (const auto& m : report.modifications)
    mods.push_back({{"segment", m.segment_id},
                    {"side", to_string(m.side)},
                    {"action", m.action},
                    {"detail", m.detail}});
  json out = {{"segments", report.segment_count},
              {"counts", counts},
              {"affected_segments", report.affected_segments},
              {"affected_fraction", report.affected_fraction},
              {"findings", findings},
              {"modifications", mods}};
  if (report.coverage) out["coverage"] = to_json(*report.coverage);
  return out;
}

json to_json(const PerplexityResult& result) {
  return {{"perplexity", result.perplexity}, {"log10_total", result.log10_total},
          {"tokens", result.tokens},         {"sentences", result.sentences},
          {"oov", result.oov},               {"zero_probability", result.zero_probability}};
}

json to_json(const TuneResult& result) {
  return {{"weights", result.weights},
          {"log_likelihood", result.log_likelihood},
          {"iterations", result.iterations}};
}

json to_json(const Discount& discount) {
  return {{"value", discount.value}, {"n1", discount.n1}, {"n2", discount.n2},
          {"clamped", discount.clamped}};
}

json to_json(const BleuResult& result) {
  return {{"score", result.score},
          {"precisions", result.precisions},
          {"brevity_penalty", result.brevity_penalty},
          {"hyp_length", result.stats.hyp_length},
          {"ref_length", result.stats.ref_length},
          {"matches", result.stats.matches},
          {"totals", result.stats.totals}};
}

json to_json(const NistResult& result) {
  return {{"score", result.score},
          {"per_order", result.per_order},
          {"brevity_factor", result.brevity_factor},
          {"hyp_length", result.hyp_length},
          {"ref_length", result.ref_length}};
}

json to_json(const TerResult& result) {
  return {{"score", result.score},
          {"insertions", result.edits.insertions},
          {"deletions", result.edits.deletions},
          {"substitutions", result.edits.substitutions},
          {"shifts", result.edits.shifts},
          {"edits", result.edits.total()},
          {"ref_length", result.ref_length}};
}

json to_json(const MeteorResult& result) {
  return {{"score", result.score},
          {"precision", result.precision},
          {"recall", result.recall},
          {"fmean", result.fmean},
          {"penalty", result.penalty},
          {"matches", result.stats.matches},
          {"chunks", result.stats.chunks},
          {"hyp_length", result.stats.hyp_length},
          {"ref_length", result.stats.ref_length},
          {"exact_search", result.exact_search}};
}

json to_json(const MetricReport& report) {
  return {{"sentences", report.sentences},
          {"bleu", to_json(report.bleu)},
          {"nist", to_json(report.nist)},
          {"ter", to_json(report.ter)},
          {"meteor", to_json(report.meteor)}};
}

namespace {

json records(const MsdCounts& counts, std::string_view direction) {
  json out = json::array();
  const auto p = counts.probabilities();
  for (int k = 0; k < 3; ++k)
    out.push_back({{"orientation", to_string(static_cast<Orientation>(k))},
                   {"direction", direction},
                   {"count", counts.counts[k]},
                   {"probability", p[k]}});
  return out;
}

json lexical(const std::map<std::pair<std::string, std::string>, MsdCounts>& table) {
  json out = json::array();
  for (const auto& [key, c] : table) {
    const auto p = c.probabilities();
    out.push_back({{"f", key.first}, {"e", key.second}, {"counts", c.counts}, {"probabilities", p}});
  }
  return out;
}

}  // namespace

json to_json(const OrientationCounts& counts) {
  json out = {{"conditioning", to_string(counts.direction)},
              {"previous", records(counts.previous, "previous")}};
  if (counts.direction == MsdDirection::kBidirectional)
    out["next"] = records(counts.next, "next");
  if (!counts.lexical_previous.empty()) out["lexical_previous"] = lexical(counts.lexical_previous);
  if (!counts.lexical_next.empty()) out["lexical_next"] = lexical(counts.lexical_next);
  return out;
}

std::string describe(const CoverageReport& report) {
  return fmt::format(
      "vocabulary {}  dictionary {}  intersection {}  oov types {} ({:.2f}%)  oov tokens {:.2f}%\n",
      report.corpus_vocab_size, report.dictionary_size, report.intersection_size, report.oov_size,
      report.oov_rate * 100.0, report.oov_token_rate * 100.0);
}

std::string describe(const DiagnosticsReport& report) {
  std::string out = fmt::format("segments {}  affected {} ({:.2f}%)\n", report.segment_count,
                                report.affected_segments, report.affected_fraction * 100.0);
  for (std::size_t k = 0; k < kCorruptionKindCount; ++k)
    out += fmt::format("  {:<20} {}\n", to_string(static_cast<CorruptionKind>(k)), report.counts[k]);
  if (!report.modifications.empty())
    out += fmt::format("modifications {}\n", report.modifications.size());
  if (report.coverage) out += describe(*report.coverage);
  return out;
}

}  // namespace smtkit

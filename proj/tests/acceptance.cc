// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any fails. Tolerances and sample sizes are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <functional>
#include <set>
#include <sstream>

#include "generators.h"
#include "oracles/lm_oracle.h"
#include "oracles/meteor_oracle.h"
#include "oracles/ter_oracle.h"
#include "smtkit/alignment.h"
#include "smtkit/arpa.h"
#include "smtkit/bleu.h"
#include "smtkit/cleaning.h"
#include "smtkit/corpus.h"
#include "smtkit/evaluation.h"
#include "smtkit/meteor.h"
#include "smtkit/mixture.h"
#include "smtkit/smoothing.h"
#include "smtkit/tagged.h"
#include "smtkit/ter.h"

namespace {

using namespace smtkit;
using smtkit::testing::Gen;
using Clock = std::chrono::steady_clock;

constexpr double kBrevityTolerance = 1e-9;
constexpr double kPublishedRounding = 5e-9;  // 0.77880078 has eight decimals
constexpr double kNormalizationTolerance = 1e-6;
constexpr double kOracleTolerance = 1e-9;
constexpr double kInterpolationTolerance = 1e-4;
constexpr double kArpaTolerance = 1e-4;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

EvalPair random_eval_pair(Gen& gen, std::size_t max_len, std::size_t vocab) {
  Tokens ref = gen.sentence(1, max_len, vocab);
  Tokens hyp = ref;
  for (std::size_t k = gen.uniform(0, 2); k > 0 && hyp.size() > 1; --k) {
    const std::size_t len = gen.uniform(1, hyp.size() - 1);
    const std::size_t from = gen.uniform(0, hyp.size() - len);
    Tokens block(hyp.begin() + from, hyp.begin() + from + len);
    hyp.erase(hyp.begin() + from, hyp.begin() + from + len);
    const std::size_t to = gen.uniform(0, hyp.size());
    hyp.insert(hyp.begin() + to, block.begin(), block.end());
  }
  for (std::size_t k = gen.uniform(0, 2); k > 0; --k) {
    const int op = static_cast<int>(gen.uniform(0, 2));
    if (op == 0 && !hyp.empty()) hyp[gen.uniform(0, hyp.size() - 1)] = gen.word(vocab);
    if (op == 1 && hyp.size() > 1) hyp.erase(hyp.begin() + gen.uniform(0, hyp.size() - 1));
    if (op == 2 && hyp.size() < max_len) hyp.insert(hyp.begin() + gen.uniform(0, hyp.size()), gen.word(vocab));
  }
  return EvalPair{hyp, {ref}};
}

Outcome metric_identities() {
  Gen gen(1);
  EvalCorpus corpus;
  for (int i = 0; i < 1000; ++i) {
    const auto s = gen.sentence(1, 30, 3000);
    corpus.push_back(EvalPair{s, {s}});
  }
  const auto start = Clock::now();
  const auto r = score_corpus(corpus, ScoreConfig{});
  const double secs = seconds_since(start);
  bool sentences_ok = true;
  for (const auto& p : corpus) {
    const double m = static_cast<double>(p.hypothesis.size());
    sentences_ok = sentences_ok && meteor(p).score == 1.0 - 0.5 / m && ter(p).score == 0.0;
  }
  const double corpus_meteor = 1.0 - 0.5 * static_cast<double>(corpus.size()) /
                                         static_cast<double>(r.meteor.stats.matches);
  const bool pass = r.bleu.score == 1.0 && r.ter.score == 0.0 && r.meteor.score == corpus_meteor &&
                    sentences_ok && secs < 1.0;
  return {pass, fmt::format("BLEU {} TER {} METEOR {:.6f} per-sentence exact {} in {:.3f}s",
                            r.bleu.score, r.ter.score, r.meteor.score, sentences_ok, secs)};
}

Outcome brevity() {
  const double bp = brevity_penalty(4, 5);
  const double direct = std::exp(1.0 - 5.0 / 4.0);
  const bool pass = std::abs(bp - direct) <= kBrevityTolerance &&
                    std::abs(bp - 0.77880078) <= kPublishedRounding;
  return {pass, fmt::format("BP(4,5) = {:.12f}, |BP - e^(1-5/4)| = {:.1e}, |BP - 0.77880078| = {:.1e}",
                            bp, std::abs(bp - direct), std::abs(bp - 0.77880078))};
}

Outcome ter_oracle() {
  Gen gen(2);
  std::size_t equal = 0, below = 0;
  const std::size_t n = 500;
  double oracle_secs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = random_eval_pair(gen, 8, 5);
    const auto& ref = p.references[0];
    const auto start = Clock::now();
    const std::size_t best = oracle::ter_optimal_edits(p.hypothesis, ref);
    oracle_secs += seconds_since(start);
    const std::size_t greedy = ter_greedy(p.hypothesis, ref).total();
    below += greedy < best;
    equal += greedy == best;
  }
  const double rate = static_cast<double>(equal) / static_cast<double>(n);
  const bool pass = below == 0 && rate >= 0.95 && oracle_secs < 60.0;
  return {pass, fmt::format("greedy below optimum {} times, equal on {:.1f}% of {}, oracle {:.2f}s",
                            below, 100.0 * rate, n, oracle_secs)};
}

Outcome meteor_chunks() {
  Gen gen(3);
  std::size_t agree = 0;
  const std::size_t n = 500;
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = random_eval_pair(gen, 8, 4);
    const auto expected = oracle::meteor_chunk_optimum(p.hypothesis, p.references[0]);
    const auto r = meteor(p);
    agree += r.stats.matches == expected.matches && r.stats.chunks == expected.chunks;
  }
  return {agree == n, fmt::format("{} of {} pairs match the exhaustive minimum", agree, n)};
}

Outcome lm_normalization() {
  Gen gen(4);
  const testing::MarkovDomain domain(5, 200);
  const auto corpus = domain.corpus(gen, 200);
  const auto start = Clock::now();
  double worst = 0.0;
  std::size_t histories = 0;
  for (Smoothing s : {Smoothing::kKneserNey, Smoothing::kWittenBell})
    for (int order = 1; order <= 6; ++order) {
      const auto model = estimate(count_ngrams(corpus, order), s);
      std::vector<NGram> hs{NGram{}};
      for (int n = 1; n < model.order(); ++n)
        for (const auto& [g, e] : model.table(n))
          if (g.back() != LmVocab::kEos) hs.push_back(g);
      for (const auto& h : hs) {
        double sum = 0.0;
        for (WordId w : model.predictable()) sum += model.prob(h, w);
        worst = std::max(worst, std::abs(sum - 1.0));
        ++histories;
      }
    }
  const double secs = seconds_since(start);
  return {worst <= kNormalizationTolerance && secs < 10.0,
          fmt::format("{} histories, max |sum - 1| = {:.2e}, {:.2f}s", histories, worst, secs)};
}

Outcome lm_oracle() {
  Sentences toy;
  for (const char* line : {"the cat sat", "the dog sat down", "a cat ran"}) toy.push_back(tokenize_words(line));
  double worst = 0.0;
  std::size_t checked = 0;
  for (Smoothing s : {Smoothing::kKneserNey, Smoothing::kWittenBell})
    for (int order = 1; order <= 4; ++order) {
      const auto model = estimate(count_ngrams(toy, order), s);
      const oracle::SmoothedLm ref(toy, order,
                                   s == Smoothing::kKneserNey ? oracle::SmoothedLm::Kind::kKneserNey
                                                              : oracle::SmoothedLm::Kind::kWittenBell);
      for (const auto& h : ref.histories())
        for (const auto& w : ref.predictable()) {
          std::vector<WordId> ids;
          for (const auto& x : h) ids.push_back(model.vocab().lookup(x));
          worst = std::max(worst, std::abs(model.prob(ids, model.vocab().lookup(w)) - ref.prob(h, w)));
          ++checked;
        }
    }
  return {worst <= kOracleTolerance, fmt::format("{} probabilities, max error {:.2e}", checked, worst)};
}

Outcome interpolation() {
  Gen gen(6);
  const testing::MarkovDomain da(60), db(61);
  const auto a = estimate_kneser_ney(count_ngrams(da.corpus(gen, 200), 3));
  const auto b = estimate_witten_bell(count_ngrams(db.corpus(gen, 200), 3));
  const auto test = da.corpus(gen, 100);
  const double pa = perplexity(a, test).perplexity;
  const double pm = perplexity(interpolate({&a, &b}, {1.0, 0.0}), test).perplexity;
  const double rel = std::abs(pm - pa) / pa;

  std::size_t recovered = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Gen g(100 + seed);
    const testing::MarkovDomain x(200 + 2 * seed), y(201 + 2 * seed);
    const auto mx = estimate_kneser_ney(count_ngrams(x.corpus(g, 300), 3));
    const auto my = estimate_kneser_ney(count_ngrams(y.corpus(g, 300), 3));
    Sentences dev = x.corpus(g, 80);
    for (const auto& s : y.corpus(g, 20)) dev.push_back(s);
    recovered += tune_weights({&mx, &my}, dev).weights[0] > 0.5;
  }
  return {rel <= kInterpolationTolerance && recovered >= 9,
          fmt::format("weights (1,0) relative PPL error {:.2e}; dominant weight recovered in {}/10 seeds",
                      rel, recovered)};
}

Outcome domain_ordering() {
  std::size_t ordered = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Gen g(300 + seed);
    const testing::MarkovDomain da(400 + 2 * seed), db(401 + 2 * seed);
    const auto lm_a = estimate_kneser_ney(count_ngrams(da.corpus(g, 300), 3));
    const auto lm_b = estimate_kneser_ney(count_ngrams(db.corpus(g, 300), 3));
    const auto dev = da.corpus(g, 100);
    ordered += perplexity(lm_a, dev).perplexity < perplexity(lm_b, dev).perplexity;
  }
  return {ordered >= 9, fmt::format("in-domain model lower on {}/10 seeds", ordered)};
}

bool subset(const AlignmentMatrix& a, const AlignmentMatrix& b) {
  return std::includes(b.links().begin(), b.links().end(), a.links().begin(), a.links().end());
}

Outcome symmetrization() {
  Gen gen(7);
  std::size_t bounded = 0, nested = 0;
  const std::size_t n = 1000;
  const Heuristic five[] = {Heuristic::kIntersection, Heuristic::kUnion, Heuristic::kGrowDiag,
                            Heuristic::kGrowDiagFinal, Heuristic::kGrowDiagFinalAnd};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = gen.uniform(1, 10), tgt = gen.uniform(1, 10);
    AlignmentMatrix fwd(src, tgt), rev(tgt, src);
    for (std::size_t i = 0; i < src; ++i)
      for (std::size_t j = 0; j < tgt; ++j) {
        if (gen.coin(0.2)) fwd.add(i, j);
        if (gen.coin(0.2)) rev.add(j, i);
      }
    const auto lo = intersect(fwd, rev.transpose());
    const auto hi = unite(fwd, rev.transpose());
    bool ok = true;
    for (Heuristic h : five) {
      const auto out = symmetrize(fwd, rev, h);
      ok = ok && subset(lo, out) && subset(out, hi);
    }
    bounded += ok;
    nested += subset(symmetrize(fwd, rev, Heuristic::kGrowDiagFinalAnd),
                     symmetrize(fwd, rev, Heuristic::kGrowDiagFinal));
  }
  const AlignmentMatrix fwd(3, 3, {{0, 0}, {1, 1}});
  const AlignmentMatrix rev(3, 3, {{0, 0}, {1, 1}, {2, 2}});
  const auto worked = symmetrize(fwd, rev, Heuristic::kGrowDiagFinalAnd);
  const bool example = worked == AlignmentMatrix(3, 3, {{0, 0}, {1, 1}, {2, 2}});
  return {bounded == n && nested == n && example,
          fmt::format("bounded {}/{}, gdf contains gdfa {}/{}, worked example \"{}\"", bounded, n, nested,
                      n, format_alignment(worked))};
}

std::size_t duplication_findings(const DiagnosticsReport& r, std::set<std::size_t>* segments = nullptr) {
  std::size_t count = 0;
  for (const auto& f : r.findings)
    if (is_duplication(f.kind)) {
      ++count;
      if (segments) segments->insert(f.segment_id);
    }
  return count;
}

Outcome cleaning() {
  const auto seeded = testing::seeded_corpus(8, 1000, 100);
  const ParallelCorpus original(seeded.clean, seeded.clean);
  const ParallelCorpus corrupted(seeded.corrupted, seeded.clean);
  const std::size_t on_clean = duplication_findings(diagnose(original, nullptr, CleaningConfig{}));
  std::set<std::size_t> flagged;
  duplication_findings(diagnose(corrupted, nullptr, CleaningConfig{}), &flagged);
  std::size_t hits = 0;
  for (auto id : seeded.seeded) hits += flagged.count(id);
  const double recall = static_cast<double>(hits) / static_cast<double>(seeded.seeded.size());
  const auto cleaned = clean(corrupted, nullptr, CleaningConfig{});
  const std::size_t after = duplication_findings(diagnose(cleaned.corpus, nullptr, CleaningConfig{}));
  return {recall >= 0.95 && on_clean == 0 && after == 0,
          fmt::format("recall {}/{}, findings on original {}, findings after cleaning {}", hits,
                      seeded.seeded.size(), on_clean, after)};
}

Outcome coverage() {
  Gen gen(9);
  std::size_t ok = 0;
  const std::size_t n = 200;
  for (std::size_t k = 0; k < n; ++k) {
    Vocabulary v;
    for (std::size_t i = gen.uniform(1, 300); i > 0; --i) v.add(gen.word(400));
    Dictionary d;
    for (std::size_t i = gen.uniform(1, 300); i > 0; --i) d.insert(gen.word(400));
    const auto r = coverage_report(v, d);
    ok += r.intersection_size + r.oov_size == v.size();
  }
  Vocabulary v;
  for (int i = 0; i < 92135; ++i) v.add("w" + std::to_string(i));
  Dictionary d;
  for (int i = 0; i < 58393; ++i) d.insert("w" + std::to_string(i));
  d.insert("extra");
  const auto r = coverage_report(v, d);
  const bool published = r.intersection_size == 58393 && r.oov_size == 33742;
  return {ok == n && published,
          fmt::format("identity holds on {}/{} random pairs; {} + {} = {}", ok, n, r.intersection_size,
                      r.oov_size, v.size())};
}

Outcome arpa_round_trip() {
  Gen gen(10);
  const testing::MarkovDomain domain(11);
  const auto train = domain.corpus(gen, 300);
  double worst = 0.0;
  for (Smoothing s : {Smoothing::kKneserNey, Smoothing::kWittenBell}) {
    const auto model = estimate(count_ngrams(train, 5), s);
    std::stringstream buf;
    write_arpa(model, buf);
    const auto back = read_arpa(buf);
    for (int k = 0; k < 100; ++k) {
      const auto sentence = gen.coin() ? domain.sentence(gen) : gen.sentence(0, 12, 70);
      worst = std::max(worst, std::abs(sentence_logprob(model, sentence) - sentence_logprob(back, sentence)));
    }
  }
  return {worst <= kArpaTolerance, fmt::format("max log10 difference {:.2e} over 200 sentences", worst)};
}

TaggedSentence random_tagged(Gen& gen, std::size_t max_len) {
  static const std::vector<std::string> ctags = {
      "subst:sg:nom:m1", "subst:sg:acc:m3", "subst:pl:gen:f", "adj:sg:nom:m1:pos",
      "fin:sg:ter:imperf", "praet:sg:m1:perf", "prep:loc", "interp", "conj", "ppron3:sg:dat:m1:ter",
      "subst:sg:nom.acc:n", "inf:imperf", "adv:pos"};
  TaggedSentence s;
  for (std::size_t k = gen.uniform(0, max_len); k > 0; --k) {
    TaggedToken t;
    t.orth = gen.word(30, "o");
    for (std::size_t a = gen.uniform(1, 2); a > 0; --a)
      t.analyses.push_back(Analysis{gen.word(30, "b"), ctags[gen.uniform(0, ctags.size() - 1)], gen.coin(0.3)});
    s.tokens.push_back(std::move(t));
  }
  return s;
}

Outcome tagged_extraction() {
  const std::string doc =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<chunkList><chunk><sentence><tok>"
      "<orth>ludzi</orth>"
      "<lex disamb=\"1\"><base>człowiek</base><ctag>subst:pl:gen:m1</ctag></lex>"
      "<lex disamb=\"1\"><base>ludzie</base><ctag>subst:pl:gen:m1</ctag></lex>"
      "</tok></sentence></chunk></chunkList>\n";
  const auto parsed = parse_tagged_xml(doc);
  const bool fixture = parsed.size() == 1 && parsed[0].tokens.size() == 1 &&
                       parsed[0].tokens[0].analyses.size() == 2 &&
                       extract_base_forms(parsed[0]) == std::vector<std::string>{"człowiek"};
  Gen gen(12);
  std::size_t permutations = 0;
  const std::size_t n = 1000;
  for (std::size_t k = 0; k < n; ++k) {
    const auto s = random_tagged(gen, 12);
    auto words = reorder_svo_words(s, false);
    auto orig = surface_forms(s);
    std::sort(words.begin(), words.end());
    std::sort(orig.begin(), orig.end());
    permutations += words == orig;
  }
  return {fixture && permutations == n,
          fmt::format("ludzi fixture {}, permutations {}/{}", fixture ? "ok" : "wrong", permutations, n)};
}

}  // namespace

int main() {
  report("metric identities", metric_identities);
  report("BLEU brevity penalty", brevity);
  report("TER oracle equivalence", ter_oracle);
  report("METEOR chunk minimality", meteor_chunks);
  report("LM normalization", lm_normalization);
  report("KN/WB closed-form oracle", lm_oracle);
  report("interpolation degeneracy and tuning", interpolation);
  report("perplexity domain ordering", domain_ordering);
  report("symmetrization containment", symmetrization);
  report("cleaning recall and precision", cleaning);
  report("coverage arithmetic", coverage);
  report("ARPA round trip", arpa_round_trip);
  report("tagged extraction", tagged_extraction);
  return failures == 0 ? 0 : 1;
}

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "oracles/meteor_oracle.h"
#include "oracles/ter_oracle.h"
#include "smtkit/bleu.h"
#include "smtkit/corpus.h"
#include "smtkit/error.h"
#include "smtkit/evaluation.h"
#include "smtkit/meteor.h"
#include "smtkit/nist.h"
#include "smtkit/stemmer.h"
#include "smtkit/ter.h"
#include "support.h"

namespace smtkit {
namespace {

using testing::Gen;

Tokens t(const std::string& s) { return tokenize_words(s); }

EvalPair pair_of(const std::string& hyp, std::vector<std::string> refs) {
  EvalPair p{t(hyp), {}};
  for (const auto& r : refs) p.references.push_back(t(r));
  return p;
}

// Reference pair, then a hypothesis made by shuffling blocks, dropping,
// inserting and substituting words.
EvalPair random_pair(Gen& gen, std::size_t max_len, std::size_t vocab) {
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

TEST(Bleu, IdentityIsOne) {
  const EvalCorpus c = {pair_of("the cat sat on the mat", {"the cat sat on the mat"}),
                        pair_of("a b", {"a b"})};
  const auto r = bleu(c);
  EXPECT_EQ(r.score, 1.0);
  EXPECT_EQ(r.brevity_penalty, 1.0);
}

TEST(Bleu, ClippingGivesZero) {
  const auto r = bleu({pair_of("the the the", {"the cat"})});
  EXPECT_DOUBLE_EQ(r.precisions[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.precisions[1], 0.0);
  EXPECT_EQ(r.score, 0.0);
}

TEST(Bleu, BrevityPenalty) {
  // The published value is rounded to eight places.
  EXPECT_NEAR(brevity_penalty(4, 5), 0.77880078, 5e-9);
  EXPECT_NEAR(brevity_penalty(4, 5), std::exp(1.0 - 5.0 / 4.0), 1e-15);
  EXPECT_EQ(brevity_penalty(5, 4), 1.0);
  EXPECT_EQ(brevity_penalty(0, 4), 0.0);
  BleuOptions two;
  two.max_n = 2;
  const auto r = bleu({pair_of("a b c d", {"a b c d e"})}, two);
  EXPECT_NEAR(r.brevity_penalty, 0.77880078, 1e-8);
  EXPECT_NEAR(r.score, 0.77880078, 1e-8);
}

TEST(Bleu, ClosestReferenceLengthPrefersShorter) {
  const auto s = bleu_stats(pair_of("a b c", {"a b", "a b c d"}), 4);
  EXPECT_EQ(s.ref_length, 2u);
}

TEST(Bleu, ClipsAtMaxOverReferences) {
  const auto s = bleu_stats(pair_of("a a a", {"a b", "a a c"}), 1);
  EXPECT_EQ(s.matches[0], 2u);
}

TEST(Bleu, EmptyCorpusAndWeights) {
  EXPECT_THROW(bleu({}), EmptyCorpus);
  BleuOptions bad;
  bad.weights = {0.5, 0.5, 0.5, 0.5};
  EXPECT_THROW(bleu({pair_of("a", {"a"})}, bad), InputError);
}

TEST(Bleu, SmoothingOnlyAboveUnigrams) {
  BleuOptions smooth;
  smooth.add_one = true;
  const auto r = bleu({pair_of("x y z w", {"a b c d"})}, smooth);
  EXPECT_EQ(r.precisions[0], 0.0);
  EXPECT_EQ(r.score, 0.0);
  const auto r2 = bleu({pair_of("a y z w", {"a b c d"})}, smooth);
  EXPECT_GT(r2.score, 0.0);
}

TEST(Bleu, Properties) {
  Gen gen(41);
  for (int trial = 0; trial < 200; ++trial) {
    EvalCorpus c;
    for (std::size_t i = gen.uniform(1, 6); i > 0; --i) c.push_back(random_pair(gen, 10, 6));
    const auto r = bleu(c);
    EXPECT_GE(r.score, 0.0);
    EXPECT_LE(r.score, 1.0);
    auto shuffled = c;
    std::shuffle(shuffled.begin(), shuffled.end(), gen.engine());
    EXPECT_DOUBLE_EQ(bleu(shuffled).score, r.score);
    for (const auto& p : c) {
      const auto s = bleu_stats(p, 4);
      for (int n = 0; n < 4; ++n) EXPECT_LE(s.matches[n], s.totals[n]);
    }
  }
}

TEST(Nist, IdentityOnDistinctWords) {
  const auto r = nist({pair_of("a b c", {"a b c"})});
  EXPECT_NEAR(r.score, std::log2(3.0), 1e-12);
  EXPECT_NEAR(r.per_order[0], std::log2(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(r.brevity_factor, 1.0);
}

TEST(Nist, NoOverlap) { EXPECT_EQ(nist({pair_of("x y", {"a b"})}).score, 0.0); }

TEST(Nist, InfoInvariantUnderScaling) {
  const EvalCorpus one = {pair_of("a b", {"a b a c"}), pair_of("c", {"b a"})};
  EvalCorpus two = one;
  two.insert(two.end(), one.begin(), one.end());
  const NistInfo i1(one, 3), i2(two, 3);
  for (const auto& g : std::vector<Tokens>{{"a"}, {"b"}, {"a", "b"}, {"b", "a"}, {"a", "c"}})
    EXPECT_DOUBLE_EQ(i1.info(g), i2.info(g));
}

TEST(Nist, BrevityFactor) {
  EXPECT_NEAR(nist_brevity_factor(2.0, 3.0), 0.5, 1e-12);
  EXPECT_EQ(nist_brevity_factor(3.0, 3.0), 1.0);
  EXPECT_EQ(nist_brevity_factor(4.0, 3.0), 1.0);
}

TEST(Meteor, PerfectMatchKeepsPenalty) {
  const auto r = meteor(pair_of("a b c d e f g h i j", {"a b c d e f g h i j"}));
  EXPECT_DOUBLE_EQ(r.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 1.0);
  EXPECT_EQ(r.stats.chunks, 1u);
  EXPECT_EQ(r.stats.matches, 10u);
  EXPECT_DOUBLE_EQ(r.penalty, 0.05);
  EXPECT_DOUBLE_EQ(r.score, 0.95);
}

TEST(Meteor, NoOverlap) { EXPECT_EQ(meteor(pair_of("x y", {"a b"})).score, 0.0); }

TEST(Meteor, SwappedPair) {
  const auto r = meteor(pair_of("a b", {"b a"}));
  EXPECT_EQ(r.stats.chunks, 2u);
  EXPECT_DOUBLE_EQ(r.penalty, 0.5);
  EXPECT_DOUBLE_EQ(r.score, 0.5);
}

TEST(Meteor, CubicPenalty) {
  MeteorOptions o;
  o.cubic_penalty = true;
  const auto r = meteor(pair_of("a b", {"b a"}), o);
  EXPECT_DOUBLE_EQ(r.penalty, 0.5);
  const auto r2 = meteor(pair_of("a b c d", {"c d a b"}), o);
  EXPECT_DOUBLE_EQ(r2.penalty, 0.5 * 0.125);
}

TEST(Meteor, ChunksAreMinimalAmongMaximumMatchings) {
  // Greedy left-to-right matching would split this into three chunks.
  const auto r = meteor(pair_of("the cat the cat sat", {"the cat sat"}));
  EXPECT_EQ(r.stats.matches, 3u);
  EXPECT_EQ(r.stats.chunks, 1u);
}

TEST(Meteor, StemAndSynonymStages) {
  PorterStemmer porter;
  SynonymTable syn = {{"couch", {1}}, {"sofa", {1}}};
  MeteorOptions o;
  o.stemmer = &porter;
  o.synonyms = &syn;
  const auto r = meteor(pair_of("the cats sat on the couch", {"the cat sat on the sofa"}), o);
  EXPECT_EQ(r.stats.matches, 6u);
  EXPECT_EQ(r.stats.chunks, 1u);
  const auto exact = meteor(pair_of("the cats sat on the couch", {"the cat sat on the sofa"}));
  EXPECT_EQ(exact.stats.matches, 4u);
}

TEST(Meteor, ExactStageBeforeStem) {
  PorterStemmer porter;
  MeteorOptions o;
  o.stemmer = &porter;
  bool exact = false;
  const auto links = meteor_align(t("runs run"), t("run"), o, &exact);
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0], (std::pair<std::size_t, std::size_t>{1, 0}));
  EXPECT_TRUE(exact);
}

TEST(Meteor, BestReferenceWins) {
  const auto r = meteor(pair_of("a b c", {"x y z", "a b c"}));
  EXPECT_EQ(r.best_reference, 1u);
  EXPECT_DOUBLE_EQ(r.score, 1.0 - 0.5 / 3.0);
}

TEST(Meteor, BudgetFallsBackToGreedy) {
  MeteorOptions o;
  o.state_budget = 5;
  bool exact = true;
  const auto links = meteor_align(t("a b a b a b a b"), t("b a b a b a b a"), o, &exact);
  EXPECT_FALSE(exact);
  EXPECT_EQ(links.size(), 8u);
}

TEST(Meteor, MatchesExhaustiveChunkMinimum) {
  Gen gen(55);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = random_pair(gen, 8, 4);
    const auto expected = oracle::meteor_chunk_optimum(p.hypothesis, p.references[0]);
    const auto r = meteor(p);
    ASSERT_EQ(r.stats.matches, expected.matches);
    ASSERT_EQ(r.stats.chunks, expected.chunks)
        << testing::join_words(p.hypothesis) << " | " << testing::join_words(p.references[0]);
    EXPECT_TRUE(r.exact_search);
    EXPECT_GE(r.score, 0.0);
    EXPECT_LE(r.score, 1.0);
  }
}

TEST(Meteor, CorpusUsesSummedStats) {
  const EvalCorpus c = {pair_of("a b", {"a b"}), pair_of("c d e", {"e d c"})};
  const auto r = meteor_corpus(c);
  EXPECT_EQ(r.stats.matches, 5u);
  EXPECT_EQ(r.stats.chunks, 4u);
  EXPECT_DOUBLE_EQ(r.score, 1.0 - 0.5 * 4.0 / 5.0);
  EXPECT_THROW(meteor_corpus({}), EmptyCorpus);
}

TEST(Ter, Identity) { EXPECT_EQ(ter(pair_of("a b c", {"a b c"})).score, 0.0); }

TEST(Ter, OneSubstitution) {
  const auto r = ter(pair_of("a b x d e", {"a b c d e"}));
  EXPECT_DOUBLE_EQ(r.score, 0.2);
  EXPECT_EQ(r.edits.substitutions, 1u);
}

TEST(Ter, OneShift) {
  const auto p = pair_of("b a c d", {"a b c d"});
  EXPECT_EQ(ter_exhaustive(p.hypothesis, p.references[0]).total(), 1u);
  EXPECT_EQ(oracle::ter_optimal_edits(p.hypothesis, p.references[0]), 1u);
  TerOptions exact;
  exact.exhaustive_max_len = 8;
  const auto r = ter(p, exact);
  EXPECT_DOUBLE_EQ(r.score, 0.25);
  EXPECT_EQ(r.edits.shifts, 1u);
}

TEST(Ter, GreedyShiftsLongBlock) {
  const auto p = pair_of("d e f a b c", {"a b c d e f"});
  const auto e = ter_greedy(p.hypothesis, p.references[0]);
  EXPECT_EQ(e.shifts, 1u);
  EXPECT_EQ(e.total(), 1u);
}

TEST(Ter, EmptyReference) {
  EXPECT_THROW(ter(pair_of("a", {""})), EmptyReference);
  EXPECT_THROW(ter_corpus({pair_of("a", {""})}), EmptyReference);
  const auto r = ter_corpus({pair_of("a", {""}), pair_of("a b", {"a b"})});
  EXPECT_DOUBLE_EQ(r.score, 0.5);
}

TEST(Ter, MeanReferenceLength) {
  const auto r = ter(pair_of("a b", {"a b", "a b c d"}));
  EXPECT_DOUBLE_EQ(r.ref_length, 3.0);
  EXPECT_EQ(r.edits.total(), 0u);
  EXPECT_EQ(r.best_reference, 0u);
}

TEST(Ter, NeverAboveLevenshteinRate) {
  Gen gen(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_pair(gen, 12, 5);
    const auto r = ter(p);
    EXPECT_LE(r.edits.total(), levenshtein(p.hypothesis, p.references[0]));
    EXPECT_GE(r.score, 0.0);
  }
}

TEST(Ter, ExhaustiveAgreesWithOracle) {
  Gen gen(71);
  for (int trial = 0; trial < 150; ++trial) {
    const auto p = random_pair(gen, 7, 4);
    const auto& ref = p.references[0];
    const auto e = ter_exhaustive(p.hypothesis, ref);
    ASSERT_EQ(e.total(), oracle::ter_optimal_edits(p.hypothesis, ref))
        << testing::join_words(p.hypothesis) << " | " << testing::join_words(ref);
    EXPECT_GE(ter_greedy(p.hypothesis, ref).total(), e.total());
  }
}

TEST(Ter, GreedyUsuallyOptimal) {
  Gen gen(73);
  int equal = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const auto p = random_pair(gen, 8, 5);
    const auto& ref = p.references[0];
    const std::size_t best = oracle::ter_optimal_edits(p.hypothesis, ref);
    const std::size_t greedy = ter_greedy(p.hypothesis, ref).total();
    ASSERT_GE(greedy, best);
    equal += greedy == best;
  }
  EXPECT_GE(equal, trials * 95 / 100);
}

TEST(Ter, ThreadCountIndependent) {
  Gen gen(79);
  EvalCorpus c;
  for (int i = 0; i < 100; ++i) c.push_back(random_pair(gen, 15, 6));
  const auto a = ter_corpus(c, {}, 1);
  const auto b = ter_corpus(c, {}, 4);
  EXPECT_EQ(a.edits.total(), b.edits.total());
  EXPECT_EQ(a.score, b.score);
}

TEST(Porter, ReferenceVectors) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"caresses", "caress"},
      {"ponies", "poni"},
      {"ties", "ti"},
      {"caress", "caress"},
      {"cats", "cat"},
      {"feed", "feed"},
      {"agreed", "agre"},
      {"plastered", "plaster"},
      {"bled", "bled"},
      {"motoring", "motor"},
      {"sing", "sing"},
      {"conflated", "conflat"},
      {"troubled", "troubl"},
      {"sized", "size"},
      {"hopping", "hop"},
      {"tanned", "tan"},
      {"falling", "fall"},
      {"hissing", "hiss"},
      {"fizzed", "fizz"},
      {"failing", "fail"},
      {"filing", "file"},
      {"happy", "happi"},
      {"sky", "sky"},
      {"relational", "relat"},
      {"conditional", "condit"},
      {"rational", "ration"},
      {"valenci", "valenc"},
      {"hesitanci", "hesit"},
      {"digitizer", "digit"},
      {"conformabli", "conform"},
      {"radicalli", "radic"},
      {"differentli", "differ"},
      {"vileli", "vile"},
      {"analogousli", "analog"},
      {"vietnamization", "vietnam"},
      {"predication", "predic"},
      {"operator", "oper"},
      {"feudalism", "feudal"},
      {"decisiveness", "decis"},
      {"hopefulness", "hope"},
      {"callousness", "callous"},
      {"formaliti", "formal"},
      {"sensitiviti", "sensit"},
      {"sensibiliti", "sensibl"},
      {"triplicate", "triplic"},
      {"formative", "form"},
      {"formalize", "formal"},
      {"electriciti", "electr"},
      {"electrical", "electr"},
      {"hopeful", "hope"},
      {"goodness", "good"},
      {"revival", "reviv"},
      {"allowance", "allow"},
      {"inference", "infer"},
      {"airliner", "airlin"},
      {"gyroscopic", "gyroscop"},
      {"adjustable", "adjust"},
      {"defensible", "defens"},
      {"irritant", "irrit"},
      {"replacement", "replac"},
      {"adjustment", "adjust"},
      {"dependent", "depend"},
      {"adoption", "adopt"},
      {"homologou", "homolog"},
      {"communism", "commun"},
      {"activate", "activ"},
      {"angulariti", "angular"},
      {"homologous", "homolog"},
      {"effective", "effect"},
      {"bowdlerize", "bowdler"},
      {"probate", "probat"},
      {"rate", "rate"},
      {"cease", "ceas"},
      {"controll", "control"},
      {"roll", "roll"},
      {"generalization", "gener"},
      {"oscillators", "oscil"},
      {"a", "a"},
      {"is", "is"},
      {"sky", "sky"},
      {"dying", "dy"},
      {"lying", "ly"},
      {"news", "new"},
      {"innings", "in"},
      {"proceed", "proce"},
      {"exceed", "exce"},
      {"succeed", "succe"},
      {"running", "run"},
      {"logi", "logi"},
      {"archaeology", "archaeolog"},
      {"bli", "bli"},
      {"possibly", "possibl"},
      {"generously", "gener"}
  };
  PorterStemmer p;
  for (const auto& [word, stem] : cases) EXPECT_EQ(p.stem(word), stem) << word;
}

TEST(Porter, LeavesNonAsciiAlone) {
  PorterStemmer p;
  EXPECT_EQ(p.stem("żółwie"), "żółwie");
  EXPECT_EQ(p.stem("abc123"), "abc123");
}

TEST(Lexicon, MapsKnownForms) {
  LexiconStemmer s;
  s.add("ludzi", "człowiek");
  EXPECT_EQ(s.stem("ludzi"), "człowiek");
  EXPECT_EQ(s.stem("kot"), "kot");
  EXPECT_EQ(make_stemmer("pl"), nullptr);
  EXPECT_NE(make_stemmer("en"), nullptr);
}

TEST(ScoreAll, IdentityCorpus) {
  testing::TempDir dir;
  const auto hyp = dir.write("hyp", "the cat sat\nOn the mat .\n");
  const auto ref = dir.write("ref", "the cat sat\non the mat .\n");
  const auto r = score_all(hyp, {ref}, ScoreConfig{});
  EXPECT_EQ(r.bleu.score, 1.0);
  EXPECT_EQ(r.ter.score, 0.0);
  EXPECT_DOUBLE_EQ(r.meteor.score, 1.0 - 0.5 * 2.0 / 7.0);
  const std::string table = render_table({{"sys", r}});
  EXPECT_NE(table.find("100.00"), std::string::npos);
  EXPECT_NE(table.find("0.00"), std::string::npos);
  ScoreConfig cs;
  cs.case_sensitive = true;
  EXPECT_LT(score_all(hyp, {ref}, cs).bleu.score, 1.0);
}

TEST(ScoreAll, Errors) {
  testing::TempDir dir;
  const auto empty = dir.write("empty", "");
  const auto ref = dir.write("ref", "a\nb\n");
  const auto one = dir.write("one", "a\n");
  EXPECT_THROW(score_all(empty, {ref}, ScoreConfig{}), EmptyCorpus);
  EXPECT_THROW(score_all(one, {ref}, ScoreConfig{}), LineCountMismatch);
}

TEST(ScoreAll, PartsEqualWhole) {
  Gen gen(83);
  EvalCorpus c;
  for (int i = 0; i < 30; ++i) c.push_back(random_pair(gen, 12, 8));
  const auto all = score_corpus(c, ScoreConfig{});
  EXPECT_EQ(all.bleu.score, bleu(c).score);
  EXPECT_EQ(all.nist.score, nist(c).score);
  EXPECT_EQ(all.ter.score, ter_corpus(c).score);
  EXPECT_EQ(all.meteor.score, meteor_corpus(c).score);
}

TEST(ScoreAll, IdentityIsFast) {
  Gen gen(89);
  EvalCorpus c;
  for (int i = 0; i < 1000; ++i) {
    const auto s = gen.sentence(5, 25, 2000);
    c.push_back(EvalPair{s, {s}});
  }
  const auto start = std::chrono::steady_clock::now();
  const auto r = score_corpus(c, ScoreConfig{});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(r.bleu.score, 1.0);
  EXPECT_EQ(r.ter.score, 0.0);
  EXPECT_DOUBLE_EQ(r.meteor.score, 1.0 - 0.5 * 1000.0 / static_cast<double>(r.meteor.stats.matches));
  EXPECT_LT(secs, 1.0);
}

}  // namespace
}  // namespace smtkit

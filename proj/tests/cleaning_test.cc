#include <gtest/gtest.h>

#include "generators.h"
#include "oracles/dup_oracle.h"
#include "smtkit/cleaning.h"
#include "smtkit/error.h"

namespace smtkit {
namespace {

using testing::Gen;

std::vector<CorruptionFinding> dups(const std::string& text, std::size_t min_block) {
  return detect_internal_duplication(Segment(0, text), min_block);
}

TEST(Duplication, SentenceRepetition) {
  const std::string s = "Zakumulują się u tych najbardziej pijanych i skąpych .";
  const auto f = dups(s + " " + s, 3);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].kind, CorruptionKind::kSentenceRepetition);
  EXPECT_EQ(f[0].span_begin, 9u);
  EXPECT_EQ(f[0].span_end, 18u);
}

TEST(Duplication, NoRepeats) { EXPECT_TRUE(dups("a b c", 1).empty()); }

TEST(Duplication, SingleTokenRepeat) {
  const auto f = dups("x y y z", 1);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].span_begin, 2u);
  EXPECT_EQ(f[0].span_end, 3u);
  EXPECT_EQ(f[0].kind, CorruptionKind::kBlockDuplication);
}

TEST(Duplication, MinBlockZeroRejected) { EXPECT_THROW(dups("a a", 0), InputError); }

TEST(Duplication, NestedClausesMarkedAsNesting) {
  const auto f = dups("a b c a b c d e f . d e f .", 3);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].kind, CorruptionKind::kPartialNesting);
  EXPECT_EQ(f[1].kind, CorruptionKind::kPartialNesting);
}

TEST(Strip, NestedClauses) {
  const std::string text =
      "Ale będę starał się udowodnić, że mimo złożoności, Ale będę starał się udowodnić, że mimo "
      "złożoności, istnieją pewne rzeczy pomagające w zrozumieniu. istnieją pewne rzeczy "
      "pomagające w zrozumieniu.";
  EXPECT_EQ(strip_internal_duplication(Segment(0, text), 3).text(),
            "Ale będę starał się udowodnić, że mimo złożoności, istnieją pewne rzeczy pomagające w "
            "zrozumieniu.");
}

TEST(Strip, CleanSegmentUnchanged) {
  const std::string text = "To jest  zdanie,  bez powtórzeń.";
  EXPECT_EQ(strip_internal_duplication(Segment(0, text), 1).text(), text);
}

TEST(Strip, RepeatedSingleTokenCollapses) {
  EXPECT_EQ(strip_internal_duplication(Segment(0, "a a a a"), 1).text(), "a");
}

// Random short token strings over a tiny alphabet, checked against the
// exhaustive (start, length) scan.
TEST(Duplication, AgreesWithExhaustiveScan) {
  Gen gen(101);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto words = gen.sentence(0, 10, 3, "t");
    const std::size_t min_block = gen.uniform(1, 3);
    const std::string text = testing::join_words(words);
    const bool found = !dups(text, min_block).empty();
    EXPECT_EQ(found, oracle::has_adjacent_repeat(words, min_block)) << text;

    const Segment stripped = strip_internal_duplication(Segment(0, text), min_block);
    EXPECT_FALSE(oracle::has_adjacent_repeat(stripped.words(), min_block)) << text;
    EXPECT_EQ(stripped.text() == text, !found) << text;
    EXPECT_EQ(strip_internal_duplication(stripped, min_block).text(), stripped.text());
    EXPECT_LE(stripped.words().size(), words.size());
  }
}

TEST(Noise, SymbolInPolishSentence) {
  NoiseOptions options;
  options.allowed_scripts = parse_scripts("Latin");
  const auto f = detect_noise(Segment(0, "prędkość Ψ rośnie"), options);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].kind, CorruptionKind::kSymbolNoise);
  EXPECT_EQ(f[0].span_begin, 1u);
  EXPECT_EQ(f[0].span_end, 2u);
}

TEST(Noise, PurePolishSentence) {
  NoiseOptions options;
  options.allowed_scripts = parse_scripts("Latin");
  EXPECT_TRUE(detect_noise(Segment(0, "Zażółć gęślą jaźń, proszę."), options).empty());
}

// Script detection cannot see a foreign clause written in the same script.
TEST(Noise, SameScriptForeignClauseIsInvisible) {
  NoiseOptions options;
  options.allowed_scripts = parse_scripts("Latin");
  EXPECT_TRUE(
      detect_noise(Segment(0, "On powiedział ich weiß es nicht i wyszedł."), options).empty());
}

TEST(Noise, ForeignScriptRun) {
  NoiseOptions options;
  options.allowed_scripts = parse_scripts("Latin");
  options.foreign_run = 3;
  const auto f = detect_noise(Segment(0, "on powiedział Это очень хорошо i wyszedł"), options);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].kind, CorruptionKind::kForeignScript);
  EXPECT_EQ(f[0].span_begin, 2u);
  EXPECT_EQ(f[0].span_end, 5u);
}

TEST(Noise, UnknownScriptName) { EXPECT_THROW(parse_scripts("Latin,Klingon"), InputError); }

TEST(LengthFilter, Overlong) {
  const auto d = length_filter(81, 81, 80, 9.0);
  EXPECT_FALSE(d.keep);
  EXPECT_EQ(d.reason, CorruptionKind::kOverlong);
}

TEST(LengthFilter, EqualSidesKept) { EXPECT_TRUE(length_filter(10, 10, 80, 9.0).keep); }

TEST(LengthFilter, BoundaryInclusive) { EXPECT_TRUE(length_filter(90, 90, 90, 9.0).keep); }

TEST(LengthFilter, Ratio) {
  const auto d = length_filter(1, 10, 80, 9.0);
  EXPECT_FALSE(d.keep);
  EXPECT_EQ(d.reason, CorruptionKind::kLengthRatio);
  EXPECT_TRUE(length_filter(1, 9, 80, 9.0).keep);
}

TEST(LengthFilter, EmptySides) {
  EXPECT_TRUE(length_filter(0, 0, 80, 9.0).keep);
  EXPECT_FALSE(length_filter(0, 3, 80, 9.0).keep);
}

ParallelCorpus pair_of(const std::vector<std::string>& lines) { return ParallelCorpus(lines, lines); }

TEST(Diagnose, AffectedFraction) {
  std::vector<std::string> lines;
  for (int i = 0; i < 300; ++i)
    lines.push_back(i < 51 ? "a b c a b c koniec" : "zdanie numer " + std::to_string(i));
  CleaningConfig config;
  const auto r = diagnose(ParallelCorpus(lines, std::vector<std::string>(300, "ok")), nullptr, config);
  EXPECT_EQ(r.affected_segments, 51u);
  EXPECT_NEAR(r.affected_fraction, 0.17, 1e-12);
}

TEST(Diagnose, CleanCorpusHasNoFindings) {
  const auto seeded = testing::seeded_corpus(5, 200, 0);
  const auto r = diagnose(pair_of(seeded.clean), nullptr, CleaningConfig{});
  for (std::size_t k = 0; k < kCorruptionKindCount; ++k) EXPECT_EQ(r.counts[k], 0u);
  EXPECT_TRUE(r.findings.empty());
}

TEST(Diagnose, SeededSingleBlockDuplications) {
  Gen gen(17);
  std::vector<std::string> lines;
  for (int i = 0; i < 100; ++i) lines.push_back(testing::join_words(testing::clean_sentence(gen, 8, 15)));
  for (int i = 0; i < 10; ++i) {
    auto words = tokenize_words(lines[i * 10]);
    const std::vector<std::string> block(words.begin() + 1, words.begin() + 4);
    words.insert(words.begin() + 4, block.begin(), block.end());  // doubles words 1..3
    lines[i * 10] = testing::join_words(words);
  }
  const auto r = diagnose(ParallelCorpus(lines, std::vector<std::string>(100, "x")), nullptr,
                          CleaningConfig{});
  EXPECT_EQ(r.count(CorruptionKind::kBlockDuplication), 10u);
  EXPECT_EQ(r.duplication_count(), 10u);
}

TEST(Diagnose, FindsSeededDuplications) {
  const auto seeded = testing::seeded_corpus(23, 1000, 100);
  const auto r = diagnose(ParallelCorpus(seeded.corrupted, seeded.clean), nullptr, CleaningConfig{});
  std::set<std::size_t> flagged;
  for (const auto& f : r.findings)
    if (is_duplication(f.kind) && f.side == Side::kSource) flagged.insert(f.segment_id);
  std::size_t hits = 0;
  for (auto id : seeded.seeded) hits += flagged.count(id);
  EXPECT_GE(hits, 95u);
  EXPECT_EQ(flagged.size(), hits);  // nothing flagged outside the seeded lines
}

TEST(Diagnose, CoverageAttachedWithDictionary) {
  const Dictionary dict{"a"};
  const auto r = diagnose(ParallelCorpus({"a b"}, {"x"}), &dict, CleaningConfig{});
  ASSERT_TRUE(r.coverage.has_value());
  EXPECT_DOUBLE_EQ(r.coverage->oov_rate, 0.5);
  const Dictionary empty;
  EXPECT_THROW(diagnose(ParallelCorpus({"a"}, {"a"}), &empty, CleaningConfig{}), EmptyDictionary);
}

TEST(Clean, DropsOverlongPairFromBothSides) {
  std::vector<std::string> src, tgt;
  for (int i = 0; i < 10; ++i) {
    src.push_back("zdanie " + std::to_string(i));
    tgt.push_back("sentence " + std::to_string(i));
  }
  std::string longer;
  for (int k = 0; k < 81; ++k) longer += "w" + std::to_string(k) + " ";
  src[5] = longer;
  const auto result = clean(ParallelCorpus(src, tgt), nullptr, CleaningConfig{});
  ASSERT_EQ(result.corpus.size(), 9u);
  EXPECT_EQ(result.corpus.target().size(), 9u);
  for (const auto& s : result.corpus.target()) EXPECT_NE(s.text(), "sentence 5");
  EXPECT_EQ(result.report.count(CorruptionKind::kOverlong), 1u);
}

TEST(Clean, CleanCorpusIsIdentity) {
  const auto seeded = testing::seeded_corpus(9, 100, 0);
  const auto result = clean(pair_of(seeded.clean), nullptr, CleaningConfig{});
  ASSERT_EQ(result.corpus.size(), seeded.clean.size());
  for (std::size_t i = 0; i < seeded.clean.size(); ++i)
    EXPECT_EQ(result.corpus.source()[i].text(), seeded.clean[i]);
  EXPECT_TRUE(result.report.findings.empty());
  EXPECT_TRUE(result.report.modifications.empty());
}

TEST(Clean, SeededCorpusPassesRediagnosis) {
  const auto seeded = testing::seeded_corpus(31, 300, 60);
  CleaningConfig config;
  const auto result = clean(ParallelCorpus(seeded.corrupted, seeded.clean), nullptr, config);
  EXPECT_EQ(result.corpus.source().size(), result.corpus.target().size());
  const auto again = diagnose(result.corpus, nullptr, config);
  EXPECT_EQ(again.duplication_count(), 0u);
  std::size_t restored = 0;
  for (std::size_t i = 0; i < seeded.clean.size(); ++i) {
    EXPECT_LE(result.corpus.source()[i].words().size(), tokenize_words(seeded.corrupted[i]).size());
    restored += result.corpus.source()[i].text() == seeded.clean[i];
  }
  EXPECT_GE(restored, 285u);
}

TEST(Clean, ParallelismAndNoGrowth) {
  Gen gen(47);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> src, tgt;
    for (std::size_t i = gen.uniform(1, 30); i > 0; --i) {
      src.push_back(testing::join_words(gen.sentence(0, 30, 5)));
      tgt.push_back(testing::join_words(gen.sentence(0, 30, 5)));
    }
    CleaningConfig config;
    config.max_len = 25;
    const auto result = clean(ParallelCorpus(src, tgt), nullptr, config);
    EXPECT_EQ(result.corpus.source().size(), result.corpus.target().size());
    EXPECT_LE(result.corpus.size(), src.size());
  }
}

TEST(Clean, ThreadCountDoesNotChangeResult) {
  const auto seeded = testing::seeded_corpus(3, 400, 40);
  CleaningConfig one, four;
  four.jobs = 4;
  const auto a = clean(ParallelCorpus(seeded.corrupted, seeded.clean), nullptr, one);
  const auto b = clean(ParallelCorpus(seeded.corrupted, seeded.clean), nullptr, four);
  ASSERT_EQ(a.corpus.size(), b.corpus.size());
  for (std::size_t i = 0; i < a.corpus.size(); ++i)
    EXPECT_EQ(a.corpus.source()[i].text(), b.corpus.source()[i].text());
  EXPECT_EQ(a.report.findings.size(), b.report.findings.size());
}

}  // namespace
}  // namespace smtkit

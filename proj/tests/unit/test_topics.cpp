#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "planted.hpp"
#include "signalcast/error.hpp"
#include "signalcast/topics.hpp"

using namespace signalcast;
using namespace signalcast::topics;
using ingest::CleanDoc;

namespace {

std::vector<CleanDoc> docs_of(std::vector<std::vector<std::string>> tokens) {
  std::vector<CleanDoc> out;
  int i = 0;
  for (auto& t : tokens) out.push_back({"doc" + std::to_string(i++), *parse_date("2021-08-01"), std::move(t)});
  return out;
}

LdaModel fit(const VocabularyBuild& vb, int k, int iterations, std::uint64_t seed) {
  LdaOptions o;
  o.k = k;
  o.iterations = iterations;
  o.seed = seed;
  return fit_lda(vb.corpus, vb.vocabulary, o);
}

int planted_topic_of(const std::string& word) { return word[1] - '0'; }

}  // namespace

TEST(Vocabulary, SharedTermAboveThreshold) {
  const auto vb = build_vocabulary(docs_of({{"covid", "rare1"}, {"covid", "rare2"}}), 2);
  EXPECT_EQ(vb.vocabulary.size(), 1u);
  ASSERT_EQ(vb.corpus.docs.size(), 2u);
  EXPECT_EQ(vb.corpus.docs[0], (BowDoc{{0, 1}}));
  EXPECT_EQ(vb.vocabulary.doc_freq[0], 2);
}

TEST(Vocabulary, MinFreqOneKeepsEveryDistinctToken) {
  const auto docs = docs_of({{"a", "b", "a"}, {"c"}, {"b", "d"}});
  const auto vb = build_vocabulary(docs, 1);
  EXPECT_EQ(vb.vocabulary.size(), 4u);
  for (std::size_t i = 0; i < vb.vocabulary.size(); ++i) {
    EXPECT_EQ(vb.vocabulary.id(vb.vocabulary.term(static_cast<int>(i))), static_cast<int>(i));
  }
  EXPECT_EQ(vb.corpus.docs[0], (BowDoc{{0, 2}, {1, 1}}));
  EXPECT_EQ(vb.corpus.total_tokens(), 6);
}

TEST(Vocabulary, PrunesExactlyTheRareTerms) {
  std::vector<std::vector<std::string>> raw;
  std::mt19937_64 rng(3);
  for (int d = 0; d < 200; ++d) {
    std::vector<std::string> doc;
    for (int i = 0; i < 12; ++i) doc.push_back("common" + std::to_string(rng() % 15));
    if (d < 10) doc.push_back("rare" + std::to_string(d));
    raw.push_back(doc);
  }
  raw.push_back({"rare0", "rare1"});
  std::map<std::string, int> freq;
  for (const auto& d : raw) {
    for (const auto& t : d) ++freq[t];
  }
  const auto vb = build_vocabulary(docs_of(raw), 5);
  std::size_t expected = 0;
  for (const auto& [term, n] : freq) {
    EXPECT_EQ(vb.vocabulary.id(term) >= 0, n >= 5) << term;
    expected += n >= 5;
  }
  EXPECT_EQ(vb.vocabulary.size(), expected);
  EXPECT_EQ(expected, 15u);
  ASSERT_EQ(vb.dropped.size(), 1u);
  EXPECT_EQ(vb.dropped[0], 200u);
}

TEST(Vocabulary, AllPrunedThrows) {
  EXPECT_THROW(build_vocabulary(docs_of({{"a"}, {"b"}}), 2), ValidationError);
  EXPECT_THROW(build_vocabulary({}, 1), ValidationError);
}

TEST(Lda, CountConservationAndDistributions) {
  const auto planted = sim::planted_corpus(3, 10, 60, 15, 1);
  const auto vb = build_vocabulary(planted.docs, 1);
  const auto m = fit(vb, 4, 30, 9);
  const auto total = vb.corpus.total_tokens();
  EXPECT_EQ(std::accumulate(m.topic_word_counts.begin(), m.topic_word_counts.end(), std::int64_t{0}), total);
  EXPECT_EQ(std::accumulate(m.doc_topic_counts.begin(), m.doc_topic_counts.end(), std::int64_t{0}), total);
  EXPECT_EQ(std::accumulate(m.topic_totals.begin(), m.topic_totals.end(), std::int64_t{0}), total);
  for (int t = 0; t < m.k; ++t) {
    std::int64_t row = 0;
    for (std::size_t w = 0; w < m.vocab_size(); ++w) row += m.word_count(t, static_cast<int>(w));
    EXPECT_EQ(row, m.topic_totals[static_cast<std::size_t>(t)]);
    const auto phi = m.topic_word_distribution(t);
    EXPECT_NEAR(std::accumulate(phi.begin(), phi.end(), 0.0), 1.0, 1e-9);
  }
  EXPECT_DOUBLE_EQ(m.alpha, 50.0 / 4);
}

TEST(Lda, SeedDeterminism) {
  const auto planted = sim::planted_corpus(3, 10, 60, 15, 2);
  const auto vb = build_vocabulary(planted.docs, 1);
  const auto a = fit(vb, 3, 25, 77);
  const auto b = fit(vb, 3, 25, 77);
  const auto c = fit(vb, 3, 25, 78);
  EXPECT_EQ(a.token_assignments, b.token_assignments);
  EXPECT_EQ(a.topic_word_counts, b.topic_word_counts);
  EXPECT_NE(a.token_assignments, c.token_assignments);
}

TEST(Lda, TwoDisjointVocabulariesSeparate) {
  const auto planted = sim::planted_corpus(2, 12, 100, 20, 5);
  const auto vb = build_vocabulary(planted.docs, 1);
  LdaOptions o;
  o.k = 2;
  o.alpha = 0.1;
  o.iterations = 200;
  o.seed = 11;
  const auto m = fit_lda(vb.corpus, vb.vocabulary, o);
  for (int t = 0; t < 2; ++t) {
    const auto top = m.top_words(t, 10);
    const int owner = planted_topic_of(vb.vocabulary.term(top[0]));
    for (int w : top) EXPECT_EQ(planted_topic_of(vb.vocabulary.term(w)), owner);
  }
}

TEST(Lda, SingleTokenCorpus) {
  const auto vb = build_vocabulary(docs_of({{"solo"}}), 1);
  const auto m = fit(vb, 2, 5, 1);
  EXPECT_EQ(m.topic_totals[0] + m.topic_totals[1], 1);
  EXPECT_FALSE(m.warnings.empty());
  for (int t = 0; t < 2; ++t) EXPECT_NEAR(m.topic_word_distribution(t)[0], 1.0, 1e-12);
}

TEST(Lda, RejectsBadOptions) {
  const auto vb = build_vocabulary(docs_of({{"a", "b"}}), 1);
  LdaOptions o;
  o.k = 1;
  EXPECT_THROW(fit_lda(vb.corpus, vb.vocabulary, o), ValidationError);
  o.k = 2;
  o.iterations = 0;
  EXPECT_THROW(fit_lda(vb.corpus, vb.vocabulary, o), ValidationError);
  o.iterations = 1;
  o.beta = 0.0;
  EXPECT_THROW(fit_lda(vb.corpus, vb.vocabulary, o), ValidationError);
  EXPECT_THROW(fit_lda(BowCorpus{}, vb.vocabulary, LdaOptions{2}), ValidationError);
}

TEST(Coherence, HandComputedToyCorpus) {
  // Windows of width 2: [a b] [b c] from doc 1, [a b] from doc 2, [c d] from
  // doc 3. p(a)=2/4, p(b)=3/4, p(a,b)=2/4.
  const auto docs = docs_of({{"a", "b", "c"}, {"a", "b"}, {"c", "d"}});
  const auto score = coherence_cv_sets({{"a", "b"}}, docs, 2);
  const double nab = std::log(0.5 / (0.5 * 0.75)) / -std::log(0.5);
  // Context vectors (1, nab) and (nab, 1); both are compared against (1+nab, 1+nab).
  const double cosine = (1.0 + nab) / std::sqrt(2.0 * (1.0 + nab * nab));
  ASSERT_EQ(score.per_topic.size(), 1u);
  EXPECT_NEAR(score.per_topic[0], cosine, 1e-9);
  EXPECT_NEAR(score.value, cosine, 1e-12);
}

TEST(Coherence, PerfectAssociationApproachesOne) {
  std::vector<std::vector<std::string>> raw;
  for (int i = 0; i < 20; ++i) raw.push_back({"x", "y", "z"});
  for (int i = 0; i < 20; ++i) raw.push_back({"p", "q"});
  const auto score = coherence_cv_sets({{"x", "y", "z"}}, docs_of(raw), 110);
  EXPECT_NEAR(score.value, 1.0, 1e-9);
}

TEST(Coherence, NeverCooccurringWordsScoreLow) {
  std::vector<std::vector<std::string>> raw;
  for (int i = 0; i < 30; ++i) raw.push_back({i % 2 ? "x" : "y", "filler"});
  const auto score = coherence_cv_sets({{"x", "y"}}, docs_of(raw), 2);
  const auto together = coherence_cv_sets({{"x", "filler"}}, docs_of(raw), 2);
  EXPECT_LT(score.value, 0.1);
  EXPECT_GT(together.value, score.value);
  const auto unseen = coherence_cv_sets({{"nowhere", "x"}}, docs_of(raw), 2);
  EXPECT_TRUE(std::isfinite(unseen.value));
}

TEST(Coherence, ValueIsMeanOfTopics) {
  const auto planted = sim::planted_corpus(3, 10, 90, 15, 8);
  const auto vb = build_vocabulary(planted.docs, 1);
  const auto m = fit(vb, 3, 50, 4);
  const auto score = coherence_cv(m, planted.docs, 5, 110);
  ASSERT_EQ(score.per_topic.size(), 3u);
  EXPECT_NEAR(score.value, std::accumulate(score.per_topic.begin(), score.per_topic.end(), 0.0) / 3, 1e-15);
}

TEST(Coherence, PermutedCountsNeverBeatConvergedModel) {
  const auto planted = sim::planted_corpus(3, 10, 150, 20, 21);
  const auto vb = build_vocabulary(planted.docs, 1);
  LdaOptions o;
  o.k = 3;
  o.alpha = 0.1;
  o.iterations = 150;
  o.seed = 2;
  const auto m = fit_lda(vb.corpus, vb.vocabulary, o);
  const double converged = coherence_cv(m, planted.docs, 5, 110).value;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto shuffled = m;
    std::mt19937_64 rng(s);
    std::shuffle(shuffled.topic_word_counts.begin(), shuffled.topic_word_counts.end(), rng);
    EXPECT_LE(coherence_cv(shuffled, planted.docs, 5, 110).value, converged + 1e-12) << "seed " << s;
  }
}

TEST(SelectK, SingleValueRange) {
  const auto planted = sim::planted_corpus(3, 8, 45, 12, 3);
  const auto vb = build_vocabulary(planted.docs, 1);
  KSelectionOptions o;
  o.k_min = o.k_max = 4;
  o.iterations = 20;
  o.top_n = 5;
  const auto sel = select_k(vb.corpus, vb.vocabulary, planted.docs, o);
  EXPECT_EQ(sel.best.k, 4);
  ASSERT_EQ(sel.table.size(), 1u);
  o.k_min = 5;
  EXPECT_THROW(select_k(vb.corpus, vb.vocabulary, planted.docs, o), ValidationError);
}

TEST(AssignTopic, ExclusiveWordsPickTheirTopic) {
  const auto planted = sim::planted_corpus(3, 10, 150, 20, 13);
  const auto vb = build_vocabulary(planted.docs, 1);
  LdaOptions o;
  o.k = 3;
  o.alpha = 0.1;
  o.iterations = 150;
  o.seed = 5;
  const auto m = fit_lda(vb.corpus, vb.vocabulary, o);
  for (int planted_topic = 0; planted_topic < 3; ++planted_topic) {
    CleanDoc doc{"probe" + std::to_string(planted_topic), *parse_date("2021-08-01"), {}};
    for (int w = 0; w < 6; ++w) doc.tokens.push_back(sim::planted_word(planted_topic, w));
    const auto a = assign_topic(m, doc);
    const int owner = planted_topic_of(vb.vocabulary.term(m.top_words(a.topic, 1)[0]));
    EXPECT_EQ(owner, planted_topic);
    EXPECT_GT(a.probabilities[static_cast<std::size_t>(a.topic)], 1.0 / 3);
    EXPECT_NEAR(std::accumulate(a.probabilities.begin(), a.probabilities.end(), 0.0), 1.0, 1e-9);
  }
}

TEST(AssignTopic, UniformModelTiesToTopicZero) {
  LdaModel m;
  m.k = 3;
  m.alpha = 0.5;
  m.beta = 0.01;
  for (const char* w : {"a", "b", "c"}) m.vocabulary.add(w);
  m.topic_word_counts.assign(9, 4);
  m.topic_totals.assign(3, 12);
  const auto a = assign_topic(m, CleanDoc{"u", *parse_date("2021-08-01"), {"a", "b", "c", "a"}});
  EXPECT_EQ(a.topic, 0);
  for (double p : a.probabilities) EXPECT_NEAR(p, 1.0 / 3, 1e-12);
}

TEST(AssignTopic, OutOfVocabularyIsDistinctError) {
  const auto vb = build_vocabulary(docs_of({{"a", "b"}, {"b", "c"}}), 1);
  const auto m = fit(vb, 2, 5, 1);
  EXPECT_THROW(assign_topic(m, CleanDoc{"x", *parse_date("2021-08-01"), {"zzz", "yyy"}}), OutOfVocabulary);
  try {
    assign_topic(m, CleanDoc{"x", *parse_date("2021-08-01"), {}});
    FAIL() << "empty doc accepted";
  } catch (const OutOfVocabulary&) {
    FAIL() << "empty doc reported as out of vocabulary";
  } catch (const ValidationError&) {
  }
}

#include <gtest/gtest.h>

#include <cmath>

#include <numeric>

#include "signalcast/error.hpp"
#include "signalcast/sentiment.hpp"

using namespace signalcast;
using namespace signalcast::sentiment;

namespace {

ingest::TweetRecord rec(std::string text, std::optional<int> label = std::nullopt, std::string id = "1") {
  return {std::move(id), *parse_timestamp("2021-08-01"), std::move(text), "a", "b", label};
}

double sum(const SentimentLabel& l) { return std::accumulate(l.probabilities.begin(), l.probabilities.end(), 0.0); }

}  // namespace

TEST(PassThrough, UsesColumn) {
  const PassThroughProvider p;
  EXPECT_EQ(classify(rec("x", 2), p).label, 2);
  EXPECT_THROW(classify(rec("x"), p), ValidationError);
}

TEST(Lexicon, SignOfScore) {
  const LexiconProvider p({{"good", 1}});
  const auto l = p.classify_text("good good");
  EXPECT_EQ(l.label, kPositive);
  EXPECT_NEAR(sum(l), 1.0, 1e-12);
  const double z = std::exp(-2.0) + 1.0 + std::exp(2.0);
  EXPECT_NEAR(l.probabilities[2], std::exp(2.0) / z, 1e-12);
}

TEST(Lexicon, NoHitsIsUniformNeutral) {
  const LexiconProvider p({{"good", 1}, {"bad", -1}});
  for (const char* text : {"nothing here", "", "good bad"}) {
    const auto l = p.classify_text(text);
    EXPECT_EQ(l.label, kNeutral);
    for (double v : l.probabilities) EXPECT_NEAR(v, 1.0 / 3, 1e-12);
  }
  EXPECT_EQ(p.classify_text("BAD, bad! good").label, kNegative);
}

TEST(Lexicon, BundledIsSigned) {
  const auto p = LexiconProvider::bundled();
  EXPECT_GE(p.size(), 150u);
  EXPECT_EQ(p.classify_text("great news, happy and safe").label, kPositive);
  EXPECT_EQ(p.classify_text("terrible outbreak, people died").label, kNegative);
}

TEST(Sidecar, LooksUpById) {
  const SidecarProvider p({{"a", 0}, {"b", 2}});
  EXPECT_EQ(classify(rec("x", std::nullopt, "a"), p).label, 0);
  EXPECT_EQ(classify(rec("x", std::nullopt, "b"), p).label, 2);
  EXPECT_THROW(classify(rec("x", std::nullopt, "c"), p), ValidationError);
  EXPECT_THROW(SidecarProvider({{"a", 5}}), ValidationError);
}

TEST(Labels, ArgmaxAndNormalised) {
  const auto p = LexiconProvider::bundled();
  const std::vector<std::string> texts{"good", "bad bad", "great great great", "sad happy", "x"};
  for (const auto& t : texts) {
    const auto l = p.classify_text(t);
    EXPECT_NEAR(sum(l), 1.0, 1e-9);
    int arg = 0;
    for (int c = 1; c < kClasses; ++c) {
      if (l.probabilities[static_cast<std::size_t>(c)] > l.probabilities[static_cast<std::size_t>(arg)]) arg = c;
    }
    if (l.probabilities[0] != l.probabilities[2]) EXPECT_EQ(l.label, arg) << t;
  }
  EXPECT_EQ(polarity_name(0), "negative");
  EXPECT_EQ(certain(2).probabilities[2], 1.0);
}

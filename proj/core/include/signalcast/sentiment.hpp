#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>

#include "signalcast/ingest.hpp"

namespace signalcast::sentiment {

enum Polarity : int { kNegative = 0, kNeutral = 1, kPositive = 2 };

inline constexpr int kClasses = 3;

std::string_view polarity_name(int label);  ///< "negative" / "neutral" / "positive"

struct SentimentLabel {
  int label = kNeutral;
  std::array<double, kClasses> probabilities{1.0 / 3, 1.0 / 3, 1.0 / 3};
};

/// Read-only after construction, safe to share between threads.
class SentimentProvider {
 public:
  virtual ~SentimentProvider() = default;
  virtual SentimentLabel classify(const ingest::TweetRecord& record) const = 0;
};

/// Uses the corpus's own sentiment column. Missing labels throw ValidationError.
class PassThroughProvider final : public SentimentProvider {
 public:
  SentimentLabel classify(const ingest::TweetRecord& record) const override;
};

/// Signed word counts. With s = #positive - #negative hits, probabilities are
/// softmax(-s, 0, s). A zero score is labelled neutral.
class LexiconProvider final : public SentimentProvider {
 public:
  explicit LexiconProvider(std::unordered_map<std::string, int> lexicon);

  static LexiconProvider bundled();
  /// CSV with columns word,score; score sign is what matters.
  static LexiconProvider from_file(const std::string& path);

  SentimentLabel classify(const ingest::TweetRecord& record) const override;
  SentimentLabel classify_text(std::string_view text) const;
  std::size_t size() const { return lexicon_.size(); }

 private:
  std::unordered_map<std::string, int> lexicon_;
};

/// Labels produced elsewhere, keyed by tweet id (CSV columns id,label).
class SidecarProvider final : public SentimentProvider {
 public:
  explicit SidecarProvider(std::unordered_map<std::string, int> labels);
  static SidecarProvider from_file(const std::string& path);

  SentimentLabel classify(const ingest::TweetRecord& record) const override;

 private:
  std::unordered_map<std::string, int> labels_;
};

SentimentLabel classify(const ingest::TweetRecord& record, const SentimentProvider& provider);

/// One-hot label helper.
SentimentLabel certain(int label);

}  // namespace signalcast::sentiment

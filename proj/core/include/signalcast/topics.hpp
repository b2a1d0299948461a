#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "signalcast/error.hpp"
#include "signalcast/ingest.hpp"

namespace signalcast::topics {

class Vocabulary {
 public:
  /// Adds a term if unseen; returns its id.
  int add(const std::string& term);
  /// -1 when absent.
  int id(const std::string& term) const;
  const std::string& term(int id) const { return id_to_term_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return id_to_term_.size(); }
  const std::vector<std::string>& terms() const { return id_to_term_; }

  std::vector<std::int64_t> doc_freq;

 private:
  std::unordered_map<std::string, int> term_to_id_;
  std::vector<std::string> id_to_term_;
};

/// (term_id, count) pairs, term ids unique and ascending within a document.
using BowDoc = std::vector<std::pair<int, int>>;

struct BowCorpus {
  std::vector<BowDoc> docs;
  std::vector<std::size_t> source_index;  ///< position of each doc in the input sequence

  std::int64_t total_tokens() const;
};

struct VocabularyBuild {
  Vocabulary vocabulary;
  BowCorpus corpus;
  std::vector<std::size_t> dropped;  ///< input docs left empty after pruning
};

/// Keeps terms whose corpus frequency is at least min_freq. Ids follow
/// first appearance. Throws ValidationError when docs is empty or every doc
/// is pruned away.
VocabularyBuild build_vocabulary(const std::vector<ingest::CleanDoc>& docs, std::int64_t min_freq);

struct LdaModel {
  int k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  int iterations = 0;
  Vocabulary vocabulary;

  std::vector<std::int64_t> topic_word_counts;  ///< k x V, row-major
  std::vector<std::int64_t> topic_totals;       ///< k
  std::vector<std::int64_t> doc_topic_counts;   ///< D x k, row-major
  std::vector<std::vector<int>> token_words;    ///< expanded tokens per doc
  std::vector<std::vector<int>> token_assignments;
  std::vector<std::string> warnings;

  std::size_t vocab_size() const { return vocabulary.size(); }
  std::size_t doc_count() const { return token_words.size(); }
  std::int64_t word_count(int topic, int word) const {
    return topic_word_counts[static_cast<std::size_t>(topic) * vocab_size() + static_cast<std::size_t>(word)];
  }
  std::int64_t doc_count(std::size_t doc, int topic) const {
    return doc_topic_counts[doc * static_cast<std::size_t>(k) + static_cast<std::size_t>(topic)];
  }

  /// Smoothed p(word | topic); each row sums to one.
  std::vector<double> topic_word_distribution(int topic) const;
  /// Word ids ordered by count descending, ties by lower id.
  std::vector<int> top_words(int topic, std::size_t n) const;
};

struct LdaOptions {
  int k = 0;
  double alpha = -1.0;  ///< negative selects 50/k
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 0;
};

/// Collapsed Gibbs sampling over tokens in fixed document/token order. Same
/// inputs and seed give a bit-identical model.
LdaModel fit_lda(const BowCorpus& corpus, const Vocabulary& vocabulary, const LdaOptions& options);

struct CoherenceScore {
  double value = 0.0;
  std::vector<double> per_topic;
};

inline constexpr double kCoherenceEpsilon = 1e-12;

/// c_v coherence: boolean sliding windows over the token streams, NPMI
/// context vectors over each topic's top words, cosine against the topic's
/// summed vector, averaged per topic and then over topics.
CoherenceScore coherence_cv(const LdaModel& model, const std::vector<ingest::CleanDoc>& docs,
                            std::size_t top_n = 20, std::size_t window = 110);

/// Scores explicit word sets; the building block of coherence_cv.
CoherenceScore coherence_cv_sets(const std::vector<std::vector<std::string>>& topic_words,
                                 const std::vector<ingest::CleanDoc>& docs, std::size_t window);

struct KSelection {
  LdaModel best;
  std::vector<std::pair<int, double>> table;  ///< k -> mean coherence over seeds
};

struct KSelectionOptions {
  int k_min = 5;
  int k_max = 50;
  int seeds_per_k = 1;
  double alpha = -1.0;
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 0;
  std::size_t top_n = 20;
  std::size_t window = 110;
};

/// Highest mean coherence wins, ties to the smaller k. The returned model is
/// the best-scoring seed at the chosen k.
KSelection select_k(const BowCorpus& corpus, const Vocabulary& vocabulary,
                    const std::vector<ingest::CleanDoc>& docs, const KSelectionOptions& options);

class OutOfVocabulary : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct TopicAssignment {
  int topic = 0;
  std::vector<double> probabilities;
};

inline constexpr int kFoldInSweeps = 50;
inline constexpr int kFoldInAveraged = 10;

/// Fold-in posterior with frozen topic-word counts. Throws ValidationError for
/// an empty doc and OutOfVocabulary when no token is known to the model.
TopicAssignment assign_topic(const LdaModel& model, const ingest::CleanDoc& doc);

}  // namespace signalcast::topics

#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "signalcast/date.hpp"

namespace signalcast::ingest {

struct TweetRecord {
  std::string id;
  Timestamp timestamp;
  std::string text;
  std::string small_region;
  std::string larger_region;
  std::optional<int> precomputed_sentiment;  ///< 0 negative, 1 neutral, 2 positive
};

struct CleanDoc {
  std::string tweet_id;
  Date date;
  std::vector<std::string> tokens;
};

class StopwordList {
 public:
  /// Throws ValidationError when terms is empty.
  explicit StopwordList(std::unordered_set<std::string> terms);

  /// The bundled English list.
  static StopwordList english();
  /// One term per line; blank lines and lines starting with '#' are skipped.
  static StopwordList from_file(const std::string& path);

  bool contains(std::string_view term) const;
  std::size_t size() const { return terms_.size(); }

 private:
  std::unordered_set<std::string> terms_;
};

/// Maps a cleaned token to its normalized form. Implementations must be pure.
class TermNormalizer {
 public:
  virtual ~TermNormalizer() = default;
  virtual std::string normalize(std::string_view token) const = 0;
};

class IdentityNormalizer final : public TermNormalizer {
 public:
  std::string normalize(std::string_view token) const override;
};

/// Light English suffix stripping: plural -s/-es/-ies and verbal -ed/-ing.
class SuffixStripper final : public TermNormalizer {
 public:
  std::string normalize(std::string_view token) const override;
};

std::unique_ptr<TermNormalizer> make_normalizer(std::string_view name);

/// Required columns are id, created_at, text, small_region, larger_region;
/// sentiment is optional. Names can be remapped for differently labelled files.
struct CorpusSchema {
  std::string id = "id";
  std::string created_at = "created_at";
  std::string text = "text";
  std::string small_region = "small_region";
  std::string larger_region = "larger_region";
  std::string sentiment = "sentiment";
};

struct Rejection {
  std::size_t row_number;  ///< 1-based data row (header excluded)
  std::string reason;
};

struct ParsedCorpus {
  std::vector<TweetRecord> records;
  std::vector<Rejection> rejections;
};

/// Reads a tweets CSV. Rows with unparseable timestamps, empty ids, duplicate
/// ids, bad sentiment values or timestamps outside `window` are rejected and
/// reported. Missing file, missing required column and malformed quoting throw
/// ValidationError.
ParsedCorpus parse_corpus(const std::string& path, const CorpusSchema& schema = {},
                          std::optional<DateRange> window = std::nullopt);
ParsedCorpus parse_corpus_text(std::string_view text, const CorpusSchema& schema = {},
                               std::optional<DateRange> window = std::nullopt);

void write_rejections(std::ostream& out, const std::vector<Rejection>& rejections);

/// Drops exact-duplicate texts (keeping the earliest by timestamp, then id),
/// records with fewer than min_terms whitespace-separated terms, and records
/// without any region. Output is ordered by (timestamp, id).
std::vector<TweetRecord> select_tweets(std::vector<TweetRecord> records, std::size_t min_terms = 10);

/// Splits "small, larger" on the last comma. Both parts are trimmed.
std::pair<std::string, std::string> split_region(std::string_view full_name);

std::size_t count_terms(std::string_view text);

/// Lowercases, drops URL and mention tokens, strips everything outside
/// [a-z0-9], removes stopwords and normalizes. nullopt when nothing survives.
std::optional<CleanDoc> clean_and_tokenize(const TweetRecord& record, const StopwordList& stopwords,
                                           const TermNormalizer& normalizer,
                                           std::chrono::minutes utc_offset = std::chrono::minutes{0});

struct BigramMerge {
  std::set<std::pair<std::string, std::string>> bigrams;
  std::vector<CleanDoc> docs;
};

/// Adjacent pairs seen at least min_freq times across the corpus are fused
/// into "a_b" tokens. One left-to-right pass per document, no overlaps.
BigramMerge detect_and_merge_bigrams(std::vector<CleanDoc> docs, std::size_t min_freq);

}  // namespace signalcast::ingest

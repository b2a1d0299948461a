#include "signalcast/sentiment.hpp"

#include <cmath>

#include "bundled_lists.hpp"
#include "signalcast/csv.hpp"
#include "signalcast/error.hpp"

namespace signalcast::sentiment {
namespace {

int parse_label(const std::string& s) {
  if (s == "0" || s == "1" || s == "2") return s.front() - '0';
  throw ValidationError("sentiment label must be 0, 1 or 2, got '" + s + "'");
}

}  // namespace

std::string_view polarity_name(int label) {
  switch (label) {
    case kNegative:
      return "negative";
    case kNeutral:
      return "neutral";
    case kPositive:
      return "positive";
    default:
      throw ValidationError("sentiment label out of range: " + std::to_string(label));
  }
}

SentimentLabel certain(int label) {
  polarity_name(label);
  SentimentLabel out;
  out.label = label;
  out.probabilities = {0.0, 0.0, 0.0};
  out.probabilities[static_cast<std::size_t>(label)] = 1.0;
  return out;
}

SentimentLabel PassThroughProvider::classify(const ingest::TweetRecord& record) const {
  if (!record.precomputed_sentiment) {
    throw ValidationError("record " + record.id + " has no precomputed sentiment");
  }
  return certain(*record.precomputed_sentiment);
}

LexiconProvider::LexiconProvider(std::unordered_map<std::string, int> lexicon) : lexicon_(std::move(lexicon)) {}

LexiconProvider LexiconProvider::bundled() {
  std::unordered_map<std::string, int> lex;
  for (const auto& [w, s] : bundled::sentiment_lexicon()) lex.emplace(std::string(w), s);
  return LexiconProvider(std::move(lex));
}

LexiconProvider LexiconProvider::from_file(const std::string& path) {
  const auto rows = csv::read_file(path);
  if (rows.empty()) throw ValidationError("lexicon file " + path + " is empty");
  const csv::Header header(rows.front());
  const auto c_word = header.require("word");
  const auto c_score = header.require("score");
  std::unordered_map<std::string, int> lex;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != header.size()) throw ValidationError("lexicon row " + std::to_string(r) + " has wrong width");
    double score = 0.0;
    try {
      score = std::stod(f[c_score]);
    } catch (const std::exception&) {
      throw ValidationError("lexicon row " + std::to_string(r) + ": bad score '" + f[c_score] + "'");
    }
    lex[f[c_word]] = score > 0 ? 1 : (score < 0 ? -1 : 0);
  }
  return LexiconProvider(std::move(lex));
}

SentimentLabel LexiconProvider::classify_text(std::string_view text) const {
  long score = 0;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    if (auto it = lexicon_.find(word); it != lexicon_.end()) score += it->second;
    word.clear();
  };
  for (char c : text) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      word.push_back(c);
    } else {
      flush();
    }
  }
  flush();

  SentimentLabel out;
  if (score == 0) return out;  // neutral, uniform
  const double s = static_cast<double>(score);
  // softmax(-s, 0, s), shifted by |s| for stability
  const double m = std::abs(s);
  const double e_neg = std::exp(-s - m), e_neu = std::exp(-m), e_pos = std::exp(s - m);
  const double z = e_neg + e_neu + e_pos;
  out.probabilities = {e_neg / z, e_neu / z, e_pos / z};
  out.label = score > 0 ? kPositive : kNegative;
  return out;
}

SentimentLabel LexiconProvider::classify(const ingest::TweetRecord& record) const {
  return classify_text(record.text);
}

SidecarProvider::SidecarProvider(std::unordered_map<std::string, int> labels) : labels_(std::move(labels)) {
  for (const auto& [id, label] : labels_) {
    if (label < 0 || label >= kClasses) {
      throw ValidationError("sidecar label for " + id + " must be 0, 1 or 2");
    }
  }
}

SidecarProvider SidecarProvider::from_file(const std::string& path) {
  const auto rows = csv::read_file(path);
  if (rows.empty()) throw ValidationError("sidecar file " + path + " is empty");
  const csv::Header header(rows.front());
  const auto c_id = header.require("id");
  const auto c_label = header.require("label");
  std::unordered_map<std::string, int> labels;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != header.size()) throw ValidationError("sidecar row " + std::to_string(r) + " has wrong width");
    labels[f[c_id]] = parse_label(f[c_label]);
  }
  return SidecarProvider(std::move(labels));
}

SentimentLabel SidecarProvider::classify(const ingest::TweetRecord& record) const {
  const auto it = labels_.find(record.id);
  if (it == labels_.end()) throw ValidationError("no sidecar label for tweet " + record.id);
  return certain(it->second);
}

SentimentLabel classify(const ingest::TweetRecord& record, const SentimentProvider& provider) {
  return provider.classify(record);
}

}  // namespace signalcast::sentiment

#include "signalcast/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "bundled_lists.hpp"
#include "signalcast/csv.hpp"
#include "signalcast/error.hpp"

namespace signalcast::ingest {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_word_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }
bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_url_or_mention(std::string_view token) {
  return starts_with(token, "http://") || starts_with(token, "https://") || starts_with(token, "www.") ||
         starts_with(token, "@");
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; }

bool has_vowel(std::string_view s) { return std::any_of(s.begin(), s.end(), is_vowel); }

std::string strip_verbal(std::string word, std::size_t suffix_len) {
  std::string stem = word.substr(0, word.size() - suffix_len);
  if (stem.size() < 3 || !has_vowel(stem)) return word;
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) && stem[n - 1] != 'l' && stem[n - 1] != 's' &&
      stem[n - 1] != 'z') {
    stem.pop_back();
  }
  return stem;
}

}  // namespace

StopwordList::StopwordList(std::unordered_set<std::string> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ValidationError("stopword list is empty");
}

StopwordList StopwordList::english() {
  std::unordered_set<std::string> terms;
  for (auto w : bundled::english_stopwords()) terms.emplace(w);
  return StopwordList(std::move(terms));
}

StopwordList StopwordList::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open stopword file " + path);
  std::unordered_set<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string term(t);
    std::transform(term.begin(), term.end(), term.begin(), ascii_lower);
    terms.insert(std::move(term));
  }
  return StopwordList(std::move(terms));
}

bool StopwordList::contains(std::string_view term) const { return terms_.count(std::string(term)) > 0; }

std::string IdentityNormalizer::normalize(std::string_view token) const { return std::string(token); }

std::string SuffixStripper::normalize(std::string_view token) const {
  std::string w(token);
  if (w.size() <= 3) return w;
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies") && w.size() > 4) {
    w.resize(w.size() - 3);
    w.push_back('y');
  } else if (ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "zes")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) {
    w.pop_back();
  }
  if (ends_with(w, "ing") && w.size() > 5) return strip_verbal(w, 3);
  if (ends_with(w, "ed") && w.size() > 4) return strip_verbal(w, 2);
  return w;
}

std::unique_ptr<TermNormalizer> make_normalizer(std::string_view name) {
  if (name == "identity" || name.empty()) return std::make_unique<IdentityNormalizer>();
  if (name == "suffix") return std::make_unique<SuffixStripper>();
  throw ValidationError("unknown normalizer '" + std::string(name) + "' (expected identity or suffix)");
}

ParsedCorpus parse_corpus_text(std::string_view text, const CorpusSchema& schema, std::optional<DateRange> window) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw ValidationError("tweets file has no header row");
  const csv::Header header(rows.front());
  const std::size_t c_id = header.require(schema.id);
  const std::size_t c_time = header.require(schema.created_at);
  const std::size_t c_text = header.require(schema.text);
  const std::size_t c_small = header.require(schema.small_region);
  const std::size_t c_large = header.require(schema.larger_region);
  const std::ptrdiff_t c_sent = header.find(schema.sentiment);

  ParsedCorpus out;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    auto reject = [&](std::string reason) { out.rejections.push_back({r, std::move(reason)}); };
    if (f.size() != header.size()) {
      reject("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(f.size()));
      continue;
    }
    TweetRecord rec;
    rec.id = std::string(trim(f[c_id]));
    if (rec.id.empty()) {
      reject("empty id");
      continue;
    }
    const auto ts = parse_timestamp(trim(f[c_time]));
    if (!ts) {
      reject("unparseable timestamp '" + f[c_time] + "'");
      continue;
    }
    rec.timestamp = *ts;
    if (window && !window->contains(std::chrono::floor<std::chrono::days>(*ts))) {
      reject("timestamp outside study window");
      continue;
    }
    if (c_sent >= 0) {
      const auto s = trim(f[static_cast<std::size_t>(c_sent)]);
      if (!s.empty()) {
        if (s != "0" && s != "1" && s != "2") {
          reject("sentiment must be 0, 1 or 2");
          continue;
        }
        rec.precomputed_sentiment = s.front() - '0';
      }
    }
    if (!seen_ids.insert(rec.id).second) {
      reject("duplicate id " + rec.id);
      continue;
    }
    rec.text = f[c_text];
    rec.small_region = std::string(trim(f[c_small]));
    rec.larger_region = std::string(trim(f[c_large]));
    out.records.push_back(std::move(rec));
  }
  return out;
}

ParsedCorpus parse_corpus(const std::string& path, const CorpusSchema& schema, std::optional<DateRange> window) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open tweets file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus_text(buf.str(), schema, window);
}

void write_rejections(std::ostream& out, const std::vector<Rejection>& rejections) {
  csv::write_row(out, {"row_number", "reason"});
  for (const auto& r : rejections) csv::write_row(out, {std::to_string(r.row_number), r.reason});
}

std::size_t count_terms(std::string_view text) {
  std::size_t n = 0;
  bool in_term = false;
  for (char c : text) {
    if (is_space(c)) {
      in_term = false;
    } else if (!in_term) {
      in_term = true;
      ++n;
    }
  }
  return n;
}

std::vector<TweetRecord> select_tweets(std::vector<TweetRecord> records, std::size_t min_terms) {
  if (min_terms < 1) throw ValidationError("min_terms must be at least 1");
  std::sort(records.begin(), records.end(), [](const TweetRecord& a, const TweetRecord& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.id < b.id;
  });
  std::unordered_set<std::string> seen_texts;
  std::vector<TweetRecord> out;
  for (auto& r : records) {
    if (!seen_texts.insert(r.text).second) continue;
    if (count_terms(r.text) < min_terms) continue;
    if (r.small_region.empty() && r.larger_region.empty()) continue;
    out.push_back(std::move(r));
  }
  return out;
}

std::pair<std::string, std::string> split_region(std::string_view full_name) {
  const auto comma = full_name.rfind(',');
  if (comma == std::string_view::npos) return {std::string(trim(full_name)), {}};
  return {std::string(trim(full_name.substr(0, comma))), std::string(trim(full_name.substr(comma + 1)))};
}

std::optional<CleanDoc> clean_and_tokenize(const TweetRecord& record, const StopwordList& stopwords,
                                           const TermNormalizer& normalizer, std::chrono::minutes utc_offset) {
  CleanDoc doc;
  doc.tweet_id = record.id;
  doc.date = bucket_day(record.timestamp, utc_offset);

  std::string lowered(record.text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(), ascii_lower);

  std::string_view rest(lowered);
  std::string piece;
  auto emit = [&] {
    if (piece.empty() || stopwords.contains(piece)) {
      piece.clear();
      return;
    }
    auto norm = normalizer.normalize(piece);
    if (!norm.empty()) doc.tokens.push_back(std::move(norm));
    piece.clear();
  };
  while (!rest.empty()) {
    while (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);
    std::size_t end = 0;
    while (end < rest.size() && !is_space(rest[end])) ++end;
    const auto raw = rest.substr(0, end);
    rest.remove_prefix(end);
    if (raw.empty() || is_url_or_mention(raw)) continue;
    for (char c : raw) {
      if (is_word_char(c)) {
        piece.push_back(c);
      } else {
        emit();
      }
    }
    emit();
  }
  if (doc.tokens.empty()) return std::nullopt;
  return doc;
}

BigramMerge detect_and_merge_bigrams(std::vector<CleanDoc> docs, std::size_t min_freq) {
  if (min_freq < 1) throw ValidationError("bigram min_freq must be at least 1");
  std::unordered_map<std::string, std::size_t> counts;
  std::string key;
  for (const auto& d : docs) {
    for (std::size_t i = 0; i + 1 < d.tokens.size(); ++i) {
      key.assign(d.tokens[i]).push_back('\x1f');
      key.append(d.tokens[i + 1]);
      ++counts[key];
    }
  }

  BigramMerge out;
  for (const auto& [k, n] : counts) {
    if (n < min_freq) continue;
    const auto sep = k.find('\x1f');
    out.bigrams.emplace(k.substr(0, sep), k.substr(sep + 1));
  }

  if (!out.bigrams.empty()) {
    for (auto& d : docs) {
      std::vector<std::string> merged;
      merged.reserve(d.tokens.size());
      std::size_t i = 0;
      while (i < d.tokens.size()) {
        if (i + 1 < d.tokens.size() && out.bigrams.count({d.tokens[i], d.tokens[i + 1]})) {
          merged.push_back(d.tokens[i] + "_" + d.tokens[i + 1]);
          i += 2;
        } else {
          merged.push_back(std::move(d.tokens[i]));
          ++i;
        }
      }
      d.tokens = std::move(merged);
    }
  }
  out.docs = std::move(docs);
  return out;
}

}  // namespace signalcast::ingest

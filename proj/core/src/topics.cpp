#include "signalcast/topics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_map>

#include "signalcast/error.hpp"
#include "signalcast/parallel.hpp"

namespace signalcast::topics {
namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int draw(std::mt19937_64& rng, const std::vector<double>& cumulative) {
  const double u = uniform01(rng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                   static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double resolve_alpha(double alpha, int k) { return alpha < 0.0 ? 50.0 / k : alpha; }

}  // namespace

int Vocabulary::add(const std::string& term) {
  auto [it, inserted] = term_to_id_.emplace(term, static_cast<int>(id_to_term_.size()));
  if (inserted) {
    id_to_term_.push_back(term);
    doc_freq.push_back(0);
  }
  return it->second;
}

int Vocabulary::id(const std::string& term) const {
  const auto it = term_to_id_.find(term);
  return it == term_to_id_.end() ? -1 : it->second;
}

std::int64_t BowCorpus::total_tokens() const {
  std::int64_t n = 0;
  for (const auto& d : docs) {
    for (const auto& [id, c] : d) n += c;
  }
  return n;
}

VocabularyBuild build_vocabulary(const std::vector<ingest::CleanDoc>& docs, std::int64_t min_freq) {
  if (docs.empty()) throw ValidationError("build_vocabulary: no documents");
  std::unordered_map<std::string, std::int64_t> freq;
  std::vector<std::string> order;
  for (const auto& d : docs) {
    for (const auto& t : d.tokens) {
      if (freq[t]++ == 0) order.push_back(t);
    }
  }

  VocabularyBuild out;
  for (const auto& t : order) {
    if (freq[t] >= min_freq) out.vocabulary.add(t);
  }

  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::unordered_map<int, int> counts;
    for (const auto& t : docs[i].tokens) {
      const int id = out.vocabulary.id(t);
      if (id >= 0) ++counts[id];
    }
    if (counts.empty()) {
      out.dropped.push_back(i);
      continue;
    }
    BowDoc bow(counts.begin(), counts.end());
    std::sort(bow.begin(), bow.end());
    for (const auto& [id, c] : bow) ++out.vocabulary.doc_freq[static_cast<std::size_t>(id)];
    out.corpus.docs.push_back(std::move(bow));
    out.corpus.source_index.push_back(i);
  }
  if (out.corpus.docs.empty()) {
    throw ValidationError("build_vocabulary: every document is empty after pruning at min_freq " +
                          std::to_string(min_freq));
  }
  return out;
}

std::vector<double> LdaModel::topic_word_distribution(int topic) const {
  const std::size_t v = vocab_size();
  std::vector<double> dist(v);
  const double denom = static_cast<double>(topic_totals[static_cast<std::size_t>(topic)]) + beta * static_cast<double>(v);
  for (std::size_t w = 0; w < v; ++w) {
    dist[w] = (static_cast<double>(word_count(topic, static_cast<int>(w))) + beta) / denom;
  }
  return dist;
}

std::vector<int> LdaModel::top_words(int topic, std::size_t n) const {
  std::vector<int> ids(vocab_size());
  std::iota(ids.begin(), ids.end(), 0);
  n = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(), [&](int a, int b) {
    const auto ca = word_count(topic, a), cb = word_count(topic, b);
    return ca != cb ? ca > cb : a < b;
  });
  ids.resize(n);
  return ids;
}

LdaModel fit_lda(const BowCorpus& corpus, const Vocabulary& vocabulary, const LdaOptions& options) {
  if (corpus.docs.empty()) throw ValidationError("fit_lda: empty corpus");
  if (options.k < 2) throw ValidationError("fit_lda: k must be at least 2");
  if (options.iterations < 1) throw ValidationError("fit_lda: iterations must be at least 1");
  const double alpha = resolve_alpha(options.alpha, options.k);
  if (!(alpha > 0.0) || !(options.beta > 0.0)) throw ValidationError("fit_lda: alpha and beta must be positive");
  if (vocabulary.size() == 0) throw ValidationError("fit_lda: empty vocabulary");

  LdaModel m;
  m.k = options.k;
  m.alpha = alpha;
  m.beta = options.beta;
  m.seed = options.seed;
  m.iterations = options.iterations;
  m.vocabulary = vocabulary;
  if (static_cast<std::size_t>(m.k) > corpus.docs.size()) {
    m.warnings.push_back("k=" + std::to_string(m.k) + " exceeds the number of documents (" +
                         std::to_string(corpus.docs.size()) + ")");
  }

  const std::size_t k = static_cast<std::size_t>(m.k);
  const std::size_t v = vocabulary.size();
  const std::size_t docs = corpus.docs.size();
  m.topic_word_counts.assign(k * v, 0);
  m.topic_totals.assign(k, 0);
  m.doc_topic_counts.assign(docs * k, 0);
  m.token_words.resize(docs);
  m.token_assignments.resize(docs);

  std::mt19937_64 rng(options.seed);
  for (std::size_t d = 0; d < docs; ++d) {
    for (const auto& [w, c] : corpus.docs[d]) {
      if (w < 0 || static_cast<std::size_t>(w) >= v) throw ValidationError("fit_lda: term id out of range");
      for (int i = 0; i < c; ++i) m.token_words[d].push_back(w);
    }
    m.token_assignments[d].resize(m.token_words[d].size());
    for (std::size_t i = 0; i < m.token_words[d].size(); ++i) {
      const auto z = static_cast<std::size_t>(std::min<double>(uniform01(rng) * m.k, m.k - 1));
      const auto w = static_cast<std::size_t>(m.token_words[d][i]);
      m.token_assignments[d][i] = static_cast<int>(z);
      ++m.topic_word_counts[z * v + w];
      ++m.topic_totals[z];
      ++m.doc_topic_counts[d * k + z];
    }
  }

  const double vbeta = static_cast<double>(v) * m.beta;
  std::vector<double> cumulative(k);
  for (int it = 0; it < options.iterations; ++it) {
    for (std::size_t d = 0; d < docs; ++d) {
      auto& words = m.token_words[d];
      auto& z = m.token_assignments[d];
      std::int64_t* dt = &m.doc_topic_counts[d * k];
      for (std::size_t i = 0; i < words.size(); ++i) {
        const auto w = static_cast<std::size_t>(words[i]);
        auto old = static_cast<std::size_t>(z[i]);
        --m.topic_word_counts[old * v + w];
        --m.topic_totals[old];
        --dt[old];
        double acc = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
          acc += (static_cast<double>(dt[t]) + m.alpha) *
                 (static_cast<double>(m.topic_word_counts[t * v + w]) + m.beta) /
                 (static_cast<double>(m.topic_totals[t]) + vbeta);
          cumulative[t] = acc;
        }
        const auto nz = static_cast<std::size_t>(draw(rng, cumulative));
        z[i] = static_cast<int>(nz);
        ++m.topic_word_counts[nz * v + w];
        ++m.topic_totals[nz];
        ++dt[nz];
      }
    }
  }
  return m;
}

CoherenceScore coherence_cv_sets(const std::vector<std::vector<std::string>>& topic_words,
                                 const std::vector<ingest::CleanDoc>& docs, std::size_t window) {
  if (window < 1) throw ValidationError("coherence: window must be at least 1");
  std::unordered_map<std::string, int> index;
  for (const auto& set : topic_words) {
    for (const auto& w : set) index.emplace(w, static_cast<int>(index.size()));
  }
  const std::size_t r = index.size();
  std::vector<double> single(r, 0.0);
  std::vector<double> joint(r * r, 0.0);
  double windows = 0.0;

  std::vector<int> ids;
  std::vector<char> present(r, 0);
  std::vector<int> present_list;
  for (const auto& d : docs) {
    ids.clear();
    for (const auto& t : d.tokens) {
      const auto it = index.find(t);
      ids.push_back(it == index.end() ? -1 : it->second);
    }
    if (ids.empty()) continue;
    const std::size_t n_windows = ids.size() <= window ? 1 : ids.size() - window + 1;
    const std::size_t span = std::min(window, ids.size());
    for (std::size_t s = 0; s < n_windows; ++s) {
      present_list.clear();
      for (std::size_t i = s; i < s + span; ++i) {
        const int id = ids[i];
        if (id >= 0 && !present[static_cast<std::size_t>(id)]) {
          present[static_cast<std::size_t>(id)] = 1;
          present_list.push_back(id);
        }
      }
      for (std::size_t a = 0; a < present_list.size(); ++a) {
        const auto ia = static_cast<std::size_t>(present_list[a]);
        single[ia] += 1.0;
        for (std::size_t b = 0; b < present_list.size(); ++b) {
          joint[ia * r + static_cast<std::size_t>(present_list[b])] += 1.0;
        }
      }
      for (int id : present_list) present[static_cast<std::size_t>(id)] = 0;
      windows += 1.0;
    }
  }

  auto npmi = [&](std::size_t a, std::size_t b) {
    if (windows == 0.0) return 0.0;
    const double pa = single[a] / windows, pb = single[b] / windows;
    const double pab = joint[a * r + b] / windows + kCoherenceEpsilon;
    double denom = pa * pb;
    if (denom == 0.0) denom = kCoherenceEpsilon;
    return std::log(pab / denom) / -std::log(pab);
  };

  CoherenceScore out;
  for (const auto& set : topic_words) {
    const std::size_t n = set.size();
    if (n == 0) {
      out.per_topic.push_back(0.0);
      continue;
    }
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::size_t>(index.at(set[i]));
    std::vector<double> vectors(n * n);
    std::vector<double> total(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        vectors[i * n + j] = npmi(idx[i], idx[j]);
        total[j] += vectors[i * n + j];
      }
    }
    double total_norm = 0.0;
    for (double x : total) total_norm += x * x;
    total_norm = std::sqrt(total_norm);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0, norm = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        dot += vectors[i * n + j] * total[j];
        norm += vectors[i * n + j] * vectors[i * n + j];
      }
      norm = std::sqrt(norm);
      sum += (norm > 0.0 && total_norm > 0.0) ? dot / (norm * total_norm) : 0.0;
    }
    out.per_topic.push_back(sum / static_cast<double>(n));
  }
  if (!out.per_topic.empty()) {
    out.value = std::accumulate(out.per_topic.begin(), out.per_topic.end(), 0.0) /
                static_cast<double>(out.per_topic.size());
  }
  return out;
}

CoherenceScore coherence_cv(const LdaModel& model, const std::vector<ingest::CleanDoc>& docs, std::size_t top_n,
                            std::size_t window) {
  if (top_n > model.vocab_size()) {
    throw ValidationError("coherence: top_n " + std::to_string(top_n) + " exceeds vocabulary size " +
                          std::to_string(model.vocab_size()));
  }
  std::vector<std::vector<std::string>> sets;
  for (int t = 0; t < model.k; ++t) {
    std::vector<std::string> words;
    for (int id : model.top_words(t, top_n)) words.push_back(model.vocabulary.term(id));
    sets.push_back(std::move(words));
  }
  return coherence_cv_sets(sets, docs, window);
}

KSelection select_k(const BowCorpus& corpus, const Vocabulary& vocabulary, const std::vector<ingest::CleanDoc>& docs,
                    const KSelectionOptions& options) {
  if (options.k_min > options.k_max) throw ValidationError("select_k: empty k range");
  if (options.seeds_per_k < 1) throw ValidationError("select_k: seeds_per_k must be at least 1");
  const int n_k = options.k_max - options.k_min + 1;
  const auto seeds = static_cast<std::size_t>(options.seeds_per_k);
  const std::size_t jobs = static_cast<std::size_t>(n_k) * seeds;

  std::vector<std::optional<LdaModel>> models(jobs);
  std::vector<double> scores(jobs, 0.0);
  parallel_for(jobs, [&](std::size_t job) {
    LdaOptions o;
    o.k = options.k_min + static_cast<int>(job / seeds);
    o.alpha = options.alpha;
    o.beta = options.beta;
    o.iterations = options.iterations;
    o.seed = options.seed + job % seeds;
    auto m = fit_lda(corpus, vocabulary, o);
    scores[job] = coherence_cv(m, docs, std::min(options.top_n, m.vocab_size()), options.window).value;
    models[job] = std::move(m);
  });

  KSelection out;
  int best_k_index = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_k; ++i) {
    double mean = 0.0;
    for (std::size_t s = 0; s < seeds; ++s) mean += scores[static_cast<std::size_t>(i) * seeds + s];
    mean /= static_cast<double>(seeds);
    out.table.emplace_back(options.k_min + i, mean);
    if (mean > best_score) {
      best_score = mean;
      best_k_index = i;
    }
  }
  std::size_t best_job = static_cast<std::size_t>(best_k_index) * seeds;
  for (std::size_t s = 1; s < seeds; ++s) {
    const std::size_t job = static_cast<std::size_t>(best_k_index) * seeds + s;
    if (scores[job] > scores[best_job]) best_job = job;
  }
  out.best = std::move(*models[best_job]);
  return out;
}

TopicAssignment assign_topic(const LdaModel& model, const ingest::CleanDoc& doc) {
  if (doc.tokens.empty()) throw ValidationError("assign_topic: document " + doc.tweet_id + " has no tokens");
  std::vector<std::size_t> words;
  for (const auto& t : doc.tokens) {
    const int id = model.vocabulary.id(t);
    if (id >= 0) words.push_back(static_cast<std::size_t>(id));
  }
  if (words.empty()) {
    throw OutOfVocabulary("assign_topic: document " + doc.tweet_id + " has no in-vocabulary tokens");
  }

  const auto k = static_cast<std::size_t>(model.k);
  const std::size_t v = model.vocab_size();
  const double vbeta = static_cast<double>(v) * model.beta;
  std::vector<double> word_term(words.size() * k);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      word_term[i * k + t] = (static_cast<double>(model.topic_word_counts[t * v + words[i]]) + model.beta) /
                             (static_cast<double>(model.topic_totals[t]) + vbeta);
    }
  }

  TopicAssignment out;
  out.probabilities.assign(k, 1.0 / static_cast<double>(k));

  // When no token separates the topics the posterior mean is exactly uniform.
  bool separable = false;
  for (std::size_t i = 0; i < words.size() && !separable; ++i) {
    for (std::size_t t = 1; t < k; ++t) {
      if (word_term[i * k + t] != word_term[i * k]) {
        separable = true;
        break;
      }
    }
  }
  if (!separable) return out;

  std::mt19937_64 rng(splitmix64(model.seed ^ fnv1a(doc.tweet_id)));
  std::vector<std::size_t> z(words.size());
  std::vector<double> dt(k, 0.0);
  for (auto& zi : z) {
    zi = static_cast<std::size_t>(std::min<double>(uniform01(rng) * model.k, model.k - 1));
    dt[zi] += 1.0;
  }

  std::vector<double> expected(k, 0.0);
  std::vector<double> weights(k);
  std::vector<double> cumulative(k);
  for (int sweep = 0; sweep < kFoldInSweeps; ++sweep) {
    const bool record = sweep >= kFoldInSweeps - kFoldInAveraged;
    for (std::size_t i = 0; i < words.size(); ++i) {
      dt[z[i]] -= 1.0;
      double acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        weights[t] = (dt[t] + model.alpha) * word_term[i * k + t];
        acc += weights[t];
        cumulative[t] = acc;
      }
      if (record) {
        for (std::size_t t = 0; t < k; ++t) expected[t] += weights[t] / acc;
      }
      z[i] = static_cast<std::size_t>(draw(rng, cumulative));
      dt[z[i]] += 1.0;
    }
  }

  const double n = static_cast<double>(words.size());
  for (std::size_t t = 0; t < k; ++t) {
    out.probabilities[t] = (expected[t] / kFoldInAveraged + model.alpha) / (n + static_cast<double>(k) * model.alpha);
  }
  out.topic = static_cast<int>(std::max_element(out.probabilities.begin(), out.probabilities.end()) -
                               out.probabilities.begin());
  return out;
}

}  // namespace signalcast::topics

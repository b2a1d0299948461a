#pragma once

#include <random>
#include <string>
#include <vector>

#include "signalcast/ingest.hpp"

namespace sim {

/// Disjoint vocabularies "t<topic>w<word>"; every document draws all of its
/// tokens from a single topic, cycling through topics.
struct PlantedCorpus {
  std::vector<signalcast::ingest::CleanDoc> docs;
  std::vector<int> truth;  ///< planted topic per doc
};

inline std::string planted_word(int topic, int word) {
  return "t" + std::to_string(topic) + "w" + std::to_string(word);
}

inline PlantedCorpus planted_corpus(int topics, int words_per_topic, int docs, int tokens_per_doc,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, words_per_topic - 1);
  PlantedCorpus out;
  const auto day = *signalcast::parse_date("2021-08-01");
  for (int d = 0; d < docs; ++d) {
    const int topic = d % topics;
    signalcast::ingest::CleanDoc doc{"d" + std::to_string(d), day, {}};
    for (int i = 0; i < tokens_per_doc; ++i) doc.tokens.push_back(planted_word(topic, pick(rng)));
    out.docs.push_back(std::move(doc));
    out.truth.push_back(topic);
  }
  return out;
}

}  // namespace sim

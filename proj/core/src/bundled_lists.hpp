#pragma once

#include <span>
#include <string_view>
#include <utility>

namespace signalcast::bundled {

std::span<const std::string_view> english_stopwords();
/// (word, +1 | -1)
std::span<const std::pair<std::string_view, int>> sentiment_lexicon();

}  // namespace signalcast::bundled

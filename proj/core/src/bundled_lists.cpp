#include "bundled_lists.hpp"

#include <array>

namespace signalcast::bundled {
namespace {

using namespace std::string_view_literals;

constexpr std::array kStopwords = {
    "i"sv, "me"sv, "my"sv, "myself"sv, "we"sv, "our"sv, "ours"sv, "ourselves"sv, "you"sv, "your"sv,
    "yours"sv, "yourself"sv, "yourselves"sv, "he"sv, "him"sv, "his"sv, "himself"sv, "she"sv, "her"sv, "hers"sv,
    "herself"sv, "it"sv, "its"sv, "itself"sv, "they"sv, "them"sv, "their"sv, "theirs"sv, "themselves"sv, "what"sv,
    "which"sv, "who"sv, "whom"sv, "this"sv, "that"sv, "these"sv, "those"sv, "am"sv, "is"sv, "are"sv,
    "was"sv, "were"sv, "be"sv, "been"sv, "being"sv, "have"sv, "has"sv, "had"sv, "having"sv, "do"sv,
    "does"sv, "did"sv, "doing"sv, "a"sv, "an"sv, "the"sv, "and"sv, "but"sv, "if"sv, "or"sv,
    "because"sv, "as"sv, "until"sv, "while"sv, "of"sv, "at"sv, "by"sv, "for"sv, "with"sv, "about"sv,
    "against"sv, "between"sv, "into"sv, "through"sv, "during"sv, "before"sv, "after"sv, "above"sv, "below"sv, "to"sv,
    "from"sv, "up"sv, "down"sv, "in"sv, "out"sv, "on"sv, "off"sv, "over"sv, "under"sv, "again"sv,
    "further"sv, "then"sv, "once"sv, "here"sv, "there"sv, "when"sv, "where"sv, "why"sv, "how"sv, "all"sv,
    "any"sv, "both"sv, "each"sv, "few"sv, "more"sv, "most"sv, "other"sv, "some"sv, "such"sv, "no"sv,
    "nor"sv, "not"sv, "only"sv, "own"sv, "same"sv, "so"sv, "than"sv, "too"sv, "very"sv, "s"sv,
    "t"sv, "can"sv, "will"sv, "just"sv, "don"sv, "should"sv, "now"sv, "d"sv, "ll"sv, "m"sv,
    "o"sv, "re"sv, "ve"sv, "y"sv, "ain"sv, "aren"sv, "couldn"sv, "didn"sv, "doesn"sv, "hadn"sv,
    "hasn"sv, "haven"sv, "isn"sv, "ma"sv, "mightn"sv, "mustn"sv, "needn"sv, "shan"sv, "shouldn"sv, "wasn"sv,
    "weren"sv, "won"sv, "wouldn"sv, "amp"sv, "rt"sv, "via"sv, "im"sv, "would"sv, "could"sv, "also"sv,
    "get"sv, "got"sv, "one"sv, "like"sv, "us"sv, "let"sv, "still"sv, "even"sv, "much"sv, "many"sv,
};

constexpr std::array<std::pair<std::string_view, int>, 205> kLexicon = {{
    {"good", 1}, {"great", 1}, {"happy", 1}, {"love", 1}, {"excellent", 1},
    {"safe", 1}, {"hope", 1}, {"hopeful", 1}, {"thanks", 1}, {"thank", 1},
    {"grateful", 1}, {"recover", 1}, {"recovered", 1}, {"recovery", 1}, {"better", 1},
    {"best", 1}, {"glad", 1}, {"relief", 1}, {"relieved", 1}, {"positive", 1},
    {"wonderful", 1}, {"amazing", 1}, {"awesome", 1}, {"brilliant", 1}, {"well", 1},
    {"healthy", 1}, {"strong", 1}, {"support", 1}, {"supportive", 1}, {"kind", 1},
    {"care", 1}, {"caring", 1}, {"proud", 1}, {"protect", 1}, {"protected", 1},
    {"effective", 1}, {"success", 1}, {"successful", 1}, {"win", 1}, {"winning", 1},
    {"free", 1}, {"freedom", 1}, {"joy", 1}, {"enjoy", 1}, {"fantastic", 1},
    {"nice", 1}, {"calm", 1}, {"confident", 1}, {"optimistic", 1}, {"improve", 1},
    {"improved", 1}, {"improving", 1}, {"heal", 1}, {"healing", 1}, {"cure", 1},
    {"celebrate", 1}, {"perfect", 1}, {"beautiful", 1}, {"fun", 1}, {"excited", 1},
    {"exciting", 1}, {"encouraging", 1}, {"reassuring", 1}, {"welcome", 1}, {"vaccinated", 1},
    {"helpful", 1}, {"help", 1}, {"helping", 1}, {"together", 1}, {"solidarity", 1},
    {"heroes", 1}, {"hero", 1}, {"appreciate", 1}, {"appreciated", 1}, {"lucky", 1},
    {"smile", 1}, {"laugh", 1}, {"peace", 1}, {"resilient", 1}, {"comfort", 1},
    {"trust", 1}, {"fair", 1}, {"clean", 1}, {"clear", 1}, {"easy", 1},
    {"benefit", 1}, {"benefits", 1}, {"progress", 1}, {"promising", 1}, {"reopen", 1},
    {"reopening", 1}, {"survive", 1}, {"survived", 1}, {"survivor", 1}, {"blessed", 1},
    {"cheers", 1}, {"congrats", 1}, {"congratulations", 1}, {"yay", 1}, {"fine", 1},
    {"bad", -1}, {"sad", -1}, {"angry", -1}, {"hate", -1}, {"terrible", -1},
    {"awful", -1}, {"horrible", -1}, {"worst", -1}, {"worse", -1}, {"fear", -1},
    {"afraid", -1}, {"scared", -1}, {"scary", -1}, {"panic", -1}, {"worried", -1},
    {"worry", -1}, {"anxious", -1}, {"anxiety", -1}, {"stress", -1}, {"stressed", -1},
    {"death", -1}, {"deaths", -1}, {"dead", -1}, {"die", -1}, {"died", -1},
    {"dying", -1}, {"sick", -1}, {"ill", -1}, {"illness", -1}, {"pain", -1},
    {"suffer", -1}, {"suffering", -1}, {"crisis", -1}, {"disaster", -1}, {"tragic", -1},
    {"tragedy", -1}, {"failure", -1}, {"fail", -1}, {"failed", -1}, {"lost", -1},
    {"lose", -1}, {"loss", -1}, {"grief", -1}, {"mourn", -1}, {"cry", -1},
    {"crying", -1}, {"lonely", -1}, {"isolated", -1}, {"depressed", -1}, {"depression", -1},
    {"frustrated", -1}, {"frustrating", -1}, {"annoyed", -1}, {"annoying", -1}, {"furious", -1},
    {"outrage", -1}, {"disgusting", -1}, {"shame", -1}, {"shameful", -1}, {"stupid", -1},
    {"idiot", -1}, {"idiots", -1}, {"selfish", -1}, {"irresponsible", -1}, {"reckless", -1},
    {"dangerous", -1}, {"danger", -1}, {"threat", -1}, {"risk", -1}, {"risky", -1},
    {"unsafe", -1}, {"chaos", -1}, {"mess", -1}, {"broke", -1}, {"broken", -1},
    {"lie", -1}, {"lies", -1}, {"liar", -1}, {"corrupt", -1}, {"blame", -1},
    {"wrong", -1}, {"poor", -1}, {"struggle", -1}, {"struggling", -1}, {"hard", -1},
    {"difficult", -1}, {"tired", -1}, {"exhausted", -1}, {"boring", -1}, {"bored", -1},
    {"nightmare", -1}, {"hell", -1}, {"kill", -1}, {"killed", -1}, {"killing", -1},
    {"outbreak", -1}, {"surge", -1}, {"spike", -1}, {"overwhelmed", -1}, {"shortage", -1},
    {"unemployed", -1}, {"jobless", -1}, {"conspiracy", -1}, {"hoax", -1}, {"misinformation", -1},
}};

}  // namespace

std::span<const std::string_view> english_stopwords() { return kStopwords; }

std::span<const std::pair<std::string_view, int>> sentiment_lexicon() { return kLexicon; }

}  // namespace signalcast::bundled

// Writes a small synthetic corpus with a known driver: daily cases follow the
// count of negative posts on the illness topic two days earlier.
//
//   make_minicorpus <out_dir> [seed]

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "signalcast/csv.hpp"
#include "signalcast/date.hpp"

namespace {

using signalcast::Date;

const std::array<std::vector<std::string>, 4> kTopics{{
    {"vaccine", "dose", "pfizer", "moderna", "appointment", "clinic", "booster", "shot", "jab", "pharmacy",
     "eligible", "immunity", "arm", "second", "first", "astrazeneca", "vaccinated", "rollout", "supply", "nurse",
     "needle", "centre", "booking", "waitlist", "priority", "age", "group", "approved", "trial", "efficacy"},
    {"lockdown", "restrictions", "reopening", "curfew", "stay", "home", "businesses", "closed", "patio",
     "restaurants", "gyms", "capacity", "premier", "announcement", "phase", "measures", "masks", "mandate",
     "indoor", "gatherings", "limit", "schools", "remote", "order", "extended", "province", "rules", "fines",
     "police", "stores"},
    {"fever", "cough", "sick", "symptoms", "tested", "positive", "isolating", "hospital", "icu", "breathing",
     "headache", "tired", "throat", "taste", "smell", "quarantine", "family", "exposure", "results", "swab",
     "ambulance", "oxygen", "ward", "patients", "doctor", "infection", "variant", "outbreak", "spread", "contact"},
    {"hockey", "game", "playoffs", "leafs", "goal", "season", "fans", "arena", "team", "score", "win", "loss",
     "coach", "trade", "draft", "stanley", "cup", "overtime", "jersey", "highlights", "stream", "tonight",
     "match", "league", "player", "injury", "roster", "victory", "referee", "bench"},
}};

const std::vector<std::string> kFiller{"the", "and", "is", "to", "my", "a", "of", "in", "this", "for",
                                       "with", "on", "it", "so", "just", "again"};
const std::vector<std::string> kRegions{"Toronto, Ontario", "Ottawa, Ontario", "Hamilton, Ontario",
                                        "Kitchener, Ontario", "London, Ontario", "Windsor, Ontario"};

constexpr int kDriverTopic = 2;
constexpr int kDriverSentiment = 0;

std::string make_text(std::mt19937_64& rng, int topic) {
  const auto& words = kTopics[static_cast<std::size_t>(topic)];
  std::uniform_int_distribution<int> len(10, 16);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_word(0, words.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_filler(0, kFiller.size() - 1);
  std::uniform_int_distribution<int> other_topic(0, 3);
  const int n = len(rng);
  std::string text;
  for (int i = 0; i < n; ++i) {
    std::string w;
    const double r = u(rng);
    if (r < 0.35) {
      w = kFiller[pick_filler(rng)];
    } else if (r < 0.92) {
      w = words[pick_word(rng)];
    } else if (r < 0.95 && topic == 1) {
      w = "social distancing";
    } else {
      const auto& other = kTopics[static_cast<std::size_t>(other_topic(rng))];
      w = other[pick_word(rng) % other.size()];
    }
    if (i == 0 && u(rng) < 0.1) w = "@neighbour " + w;
    if (!text.empty()) text += ' ';
    text += w;
  }
  if (u(rng) < 0.15) text += " https://example.org/p/" + std::to_string(rng() % 100000);
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_minicorpus <out_dir> [seed]\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 20210301;
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(seed);

  const Date start = *signalcast::parse_date("2021-03-01");
  const Date end = *signalcast::parse_date("2021-09-30");
  const int days = static_cast<int>((end - start).count()) + 1;

  // Driver count with two presample days so every case value has its lag.
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> s(static_cast<std::size_t>(days + 2));
  double state = 0.0;
  for (int i = 0; i < 100; ++i) state = 0.8 * state + z(rng);
  for (auto& v : s) v = state = 0.8 * state + z(rng);
  std::vector<int> driver(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) driver[i] = std::max(0, static_cast<int>(std::lround(30.0 + 10.0 * s[i])));

  std::ofstream tweets(dir / "tweets.csv");
  signalcast::csv::write_row(tweets, {"id", "created_at", "text", "small_region", "larger_region", "sentiment"});
  std::uniform_int_distribution<int> second_of_day(0, 86399);
  std::uniform_int_distribution<std::size_t> region(0, kRegions.size() - 1);
  std::array<std::array<double, 3>, 4> base{{{4, 6, 5}, {6, 5, 3}, {0, 5, 2}, {2, 6, 7}}};
  long id = 1000000;
  for (int t = 0; t < days; ++t) {
    const Date day = start + std::chrono::days{t};
    for (int topic = 0; topic < 4; ++topic) {
      for (int sent = 0; sent < 3; ++sent) {
        int count = 0;
        if (topic == kDriverTopic && sent == kDriverSentiment) {
          count = driver[static_cast<std::size_t>(t + 2)];
        } else {
          std::poisson_distribution<int> pois(base[static_cast<std::size_t>(topic)][static_cast<std::size_t>(sent)]);
          count = pois(rng);
        }
        for (int i = 0; i < count; ++i) {
          const auto ts = std::chrono::sys_seconds{day} + std::chrono::seconds{second_of_day(rng)};
          const std::string full = kRegions[region(rng)];
          const auto comma = full.find(',');
          signalcast::csv::write_row(tweets, {std::to_string(id++), signalcast::format_timestamp(ts),
                                              make_text(rng, topic), full.substr(0, comma), full.substr(comma + 2),
                                              std::to_string(sent)});
        }
      }
    }
  }

  std::ofstream cases(dir / "cases.csv");
  signalcast::csv::write_row(cases, {"date", "new_cases"});
  std::normal_distribution<double> noise(0.0, 25.0);
  for (int t = 0; t < days; ++t) {
    const double y = 300.0 + 25.0 * driver[static_cast<std::size_t>(t)] + noise(rng);
    signalcast::csv::write_row(cases, {signalcast::format_date(start + std::chrono::days{t}),
                                       std::to_string(std::max(0L, std::lround(y)))});
  }
  std::cout << "wrote " << id - 1000000 << " posts over " << days << " days to " << dir.string() << "\n";
  return 0;
}

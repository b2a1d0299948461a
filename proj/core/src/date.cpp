#include "signalcast/date.hpp"

#include <charconv>
#include <cstdio>

namespace signalcast {
namespace {

bool read_int(std::string_view& s, std::size_t width, int& out) {
  if (s.size() < width) return false;
  for (std::size_t i = 0; i < width; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  std::from_chars(s.data(), s.data() + width, out);
  s.remove_prefix(width);
  return true;
}

bool expect(std::string_view& s, char c) {
  if (s.empty() || s.front() != c) return false;
  s.remove_prefix(1);
  return true;
}

std::optional<Date> read_date(std::string_view& s) {
  int y = 0, m = 0, d = 0;
  if (!read_int(s, 4, y) || !expect(s, '-') || !read_int(s, 2, m) || !expect(s, '-') || !read_int(s, 2, d)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days{ymd};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  auto d = read_date(text);
  if (!d || !text.empty()) return std::nullopt;
  return d;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  auto day = read_date(text);
  if (!day) return std::nullopt;
  if (text.empty()) return Timestamp{*day};
  if (text.front() != 'T' && text.front() != ' ') return std::nullopt;
  text.remove_prefix(1);

  int hh = 0, mm = 0, ss = 0;
  if (!read_int(text, 2, hh) || !expect(text, ':') || !read_int(text, 2, mm)) return std::nullopt;
  if (!text.empty() && text.front() == ':') {
    text.remove_prefix(1);
    if (!read_int(text, 2, ss)) return std::nullopt;
    if (!text.empty() && text.front() == '.') {
      text.remove_prefix(1);
      if (text.empty() || text.front() < '0' || text.front() > '9') return std::nullopt;
      while (!text.empty() && text.front() >= '0' && text.front() <= '9') text.remove_prefix(1);
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;

  int offset_minutes = 0;
  if (!text.empty()) {
    if (text == "Z" || text == "z") {
      text.remove_prefix(1);
    } else if (text.front() == '+' || text.front() == '-') {
      const int sign = text.front() == '-' ? -1 : 1;
      text.remove_prefix(1);
      int oh = 0, om = 0;
      if (!read_int(text, 2, oh)) return std::nullopt;
      if (!text.empty() && text.front() == ':') text.remove_prefix(1);
      if (!text.empty() && !read_int(text, 2, om)) return std::nullopt;
      if (oh > 23 || om > 59) return std::nullopt;
      offset_minutes = sign * (oh * 60 + om);
    } else {
      return std::nullopt;
    }
  }
  if (!text.empty()) return std::nullopt;

  using namespace std::chrono;
  return Timestamp{*day} + hours{hh} + minutes{mm} + seconds{ss} - minutes{offset_minutes};
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_timestamp(Timestamp ts) {
  const auto day = std::chrono::floor<std::chrono::days>(ts);
  const std::chrono::hh_mm_ss hms{ts - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(day).c_str(), static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()), static_cast<int>(hms.seconds().count()));
  return buf;
}

Date bucket_day(Timestamp ts, std::chrono::minutes utc_offset) {
  return std::chrono::floor<std::chrono::days>(ts + utc_offset);
}

}  // namespace signalcast

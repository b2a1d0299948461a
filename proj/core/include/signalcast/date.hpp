#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace signalcast {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DD".
std::optional<Date> parse_date(std::string_view text);

/// Parses ISO-8601 date-times: "YYYY-MM-DD[T| ]HH:MM[:SS[.fff]][Z|+HH:MM|-HH:MM|+HHMM]".
/// A bare date is accepted as midnight UTC. Offsets are folded into UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);

std::string format_date(Date d);
std::string format_timestamp(Timestamp ts);

/// Calendar day of a UTC timestamp in a zone with a fixed offset from UTC.
Date bucket_day(Timestamp ts, std::chrono::minutes utc_offset = std::chrono::minutes{0});

/// Inclusive day range.
struct DateRange {
  Date first;
  Date last;

  bool contains(Date d) const { return d >= first && d <= last; }
  std::int64_t days() const { return (last - first).count() + 1; }
};

}  // namespace signalcast

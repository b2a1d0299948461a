#include <gtest/gtest.h>

#include <sstream>

#include "signalcast/csv.hpp"
#include "signalcast/date.hpp"
#include "signalcast/error.hpp"

using namespace signalcast;
using namespace std::chrono;

TEST(Csv, QuotedFieldsWithCommasAndNewlines) {
  const auto rows = csv::parse("a,b\r\n\"x, y\",\"line1\nline2\"\n\"he said \"\"hi\"\"\",3\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].fields[0], "x, y");
  EXPECT_EQ(rows[1].fields[1], "line1\nline2");
  EXPECT_EQ(rows[2].fields[0], "he said \"hi\"");
  EXPECT_EQ(rows[2].line, 4u);
}

TEST(Csv, MalformedQuotingThrows) {
  EXPECT_THROW(csv::parse("a,b\n\"open,1\n"), ValidationError);
  EXPECT_THROW(csv::parse("a,b\n\"x\"y,1\n"), ValidationError);
}

TEST(Csv, EscapeRoundTrip) {
  std::ostringstream out;
  csv::write_row(out, {"plain", "with,comma", "q\"uote", "nl\nx"});
  const auto rows = csv::parse(out.str());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].fields, (std::vector<std::string>{"plain", "with,comma", "q\"uote", "nl\nx"}));
}

TEST(Csv, HeaderLookup) {
  const auto rows = csv::parse("id,text\n1,a\n");
  csv::Header h(rows[0]);
  EXPECT_EQ(h.require("text"), 1u);
  EXPECT_EQ(h.find("missing"), -1);
  EXPECT_THROW(h.require("missing"), ValidationError);
}

TEST(Date, ParsesIsoVariants) {
  const auto base = sys_days{year{2021} / 8 / 26};
  EXPECT_EQ(parse_timestamp("2021-08-26T10:00:00Z"), base + hours{10});
  EXPECT_EQ(parse_timestamp("2021-08-26 10:00"), base + hours{10});
  EXPECT_EQ(parse_timestamp("2021-08-26T20:00:00+10:00"), base + hours{10});
  EXPECT_EQ(parse_timestamp("2021-08-26T00:30:00-0130"), base + hours{2});
  EXPECT_EQ(parse_timestamp("2021-08-26"), base);
  EXPECT_FALSE(parse_timestamp("2021-02-30T00:00:00Z"));
  EXPECT_FALSE(parse_timestamp("yesterday"));
  EXPECT_EQ(format_date(base), "2021-08-26");
}

TEST(Date, BucketsWithOffset) {
  const auto ts = *parse_timestamp("2021-08-26T20:00:00Z");
  EXPECT_EQ(format_date(bucket_day(ts)), "2021-08-26");
  EXPECT_EQ(format_date(bucket_day(ts, minutes{600})), "2021-08-27");
}

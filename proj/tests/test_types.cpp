#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atdsc/types.hpp"

using namespace atdsc;

TEST_CASE("civil date round trip") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(days_from_civil(2020, 6, 1) == 18414);
  for (std::int64_t d : {-1000LL, 0LL, 18414LL, 20000LL}) {
    const CivilDate c = civil_from_days(d);
    CHECK(days_from_civil(c.year, c.month, c.day) == d);
  }
  // 2020-06-01 was a Monday.
  CHECK(weekday_from_days(18414) == 0);
  // 2020-06-06 was a Saturday.
  CHECK(weekday_from_days(18419) == 5);
}

TEST_CASE("minute stamp parsing") {
  auto t = parse_minute_stamp("2020-06-01T10:30:00");
  REQUIRE(t.has_value());
  CHECK(*t == 18414LL * 24 * 60 + 10 * 60 + 30);
  CHECK(parse_minute_stamp("2020-06-01 10:30") == t);
  CHECK(parse_minute_stamp("2020-06-01T10:30:59") == t);  // seconds truncated
  CHECK(!parse_minute_stamp("garbage").has_value());
  CHECK(!parse_minute_stamp("2020-13-01T00:00").has_value());
  CHECK(!parse_minute_stamp("2020-06-01T25:00").has_value());
  CHECK(format_minute_stamp(*t) == "2020-06-01T10:30:00");
}

TEST_CASE("bucket config indexing covers every bucket exactly once") {
  BucketConfig cfg{{1, 6}, 2};
  CHECK(cfg.bucket_count() == 2 * 2 * 24);
  for (int i = 0; i < cfg.bucket_count(); ++i) {
    const Bucket b = cfg.bucket_at(i);
    CHECK(cfg.index_of(b) == i);
  }
}

TEST_CASE("weekday and weekend day kinds") {
  BucketConfig two{{6}, 2};
  CHECK(two.day_kind_of_weekday(0) == 0);  // Monday
  CHECK(two.day_kind_of_weekday(4) == 0);  // Friday
  CHECK(two.day_kind_of_weekday(5) == 1);  // Saturday
  CHECK(two.day_kind_of_weekday(6) == 1);  // Sunday
  BucketConfig seven{{6}, 7};
  for (int w = 0; w < 7; ++w) CHECK(seven.day_kind_of_weekday(w) == w);
}

TEST_CASE("bucket of a timestamp") {
  BucketConfig cfg{{6}, 2};
  const MinuteStamp monday = *parse_minute_stamp("2020-06-01T10:30:00");
  const Bucket b = cfg.bucket_of(monday);
  CHECK(b.month == 6);
  CHECK(b.day_kind == 0);
  CHECK(b.hour == 10);
  const Bucket sat = cfg.bucket_of(*parse_minute_stamp("2020-06-06T23:05:00"));
  CHECK(sat.day_kind == 1);
  CHECK(sat.hour == 23);
}

TEST_CASE("advancing hours wraps at midnight") {
  BucketConfig cfg{{6}, 2};
  const Bucket b{6, 0, 22};
  const Bucket advanced = cfg.advance_hours(b, 3);
  CHECK(advanced.hour == 1);
  CHECK(advanced.month == 6);
  CHECK(cfg.advance_hours(b, 0) == b);
}

TEST_CASE("bucket key round trip") {
  const Bucket b{6, 1, 23};
  const auto parsed = parse_bucket_key(bucket_key(b));
  REQUIRE(parsed.has_value());
  CHECK(*parsed == b);
  CHECK(!parse_bucket_key("nope").has_value());
  CHECK(!parse_bucket_key("6:1").has_value());
}

TEST_CASE("seed mixing is deterministic and order sensitive") {
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  CHECK(mix_seed(0, 0) != 0);
}

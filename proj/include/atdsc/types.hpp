#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace atdsc {

using ZoneId = int;

// Thrown for bad input files, bad config values, bad CLI arguments.
// Maps to exit code 2 at the process boundary.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minutes since the Unix epoch, minute resolution.
using MinuteStamp = std::int64_t;

struct CivilDate {
  int year = 1970;
  int month = 1;
  int day = 1;
};

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d);
CivilDate civil_from_days(std::int64_t z);
// 0 = Monday ... 6 = Sunday.
int weekday_from_days(std::int64_t z);

// Parses "YYYY-MM-DD HH:MM[:SS]" or "YYYY-MM-DDTHH:MM[:SS]".
std::optional<MinuteStamp> parse_minute_stamp(const std::string& text);
std::string format_minute_stamp(MinuteStamp t);

struct Bucket {
  int month = 1;     // 1..12
  int day_kind = 0;  // 0..day_kinds-1
  int hour = 0;      // 0..23

  auto operator<=>(const Bucket&) const = default;
};

// Time bucketing: (month, day-kind, hour). day_kinds == 2 means
// weekday/weekend (0/1); day_kinds == 7 means one kind per weekday.
struct BucketConfig {
  std::vector<int> months{1};  // sorted, unique
  int day_kinds = 2;

  int bucket_count() const { return static_cast<int>(months.size()) * day_kinds * 24; }
  int month_index(int month) const;
  int index_of(const Bucket& b) const;
  Bucket bucket_at(int index) const;
  int day_kind_of_weekday(int weekday) const;  // weekday 0=Mon..6=Sun
  Bucket bucket_of(MinuteStamp t) const;
  // Advances the bucket's hour by whole hours elapsed, wrapping at 24.
  Bucket advance_hours(const Bucket& b, int hours) const;
};

std::string bucket_key(const Bucket& b);
std::optional<Bucket> parse_bucket_key(const std::string& key);

struct TripRecord {
  MinuteStamp pickup_time = 0;
  MinuteStamp dropoff_time = 0;
  ZoneId pickup_zone = 0;
  ZoneId dropoff_zone = 0;
  double trip_distance = 0.0;
  double total_payment = 0.0;
  int payment_type = 0;
  int passenger_count = 0;

  double delivery_minutes() const { return static_cast<double>(dropoff_time - pickup_time); }
};

// Splitmix64-style mixing used to derive per-query RNG seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace atdsc

#include "atdsc/types.hpp"

#include <algorithm>
#include <cstdio>

namespace atdsc {

std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int weekday_from_days(std::int64_t z) {
  // 1970-01-01 was a Thursday (weekday 3 with Monday = 0).
  return static_cast<int>(((z % 7) + 7 + 3) % 7);
}

std::optional<MinuteStamp> parse_minute_stamp(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0;
  int n = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &s);
  if (n < 6) return std::nullopt;
  if (sep != ' ' && sep != 'T') return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
  if (h < 0 || h > 23 || mi < 0 || mi > 59) return std::nullopt;
  return days_from_civil(y, mo, d) * 1440 + h * 60 + mi;
}

std::string format_minute_stamp(MinuteStamp t) {
  const std::int64_t days = t >= 0 ? t / 1440 : (t - 1439) / 1440;
  const int rem = static_cast<int>(t - days * 1440);
  const CivilDate cd = civil_from_days(days);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:00", cd.year, cd.month, cd.day,
                rem / 60, rem % 60);
  return buf;
}

int BucketConfig::month_index(int month) const {
  auto it = std::find(months.begin(), months.end(), month);
  if (it == months.end()) throw UsageError("month " + std::to_string(month) + " not in bucketing config");
  return static_cast<int>(it - months.begin());
}

int BucketConfig::index_of(const Bucket& b) const {
  return (month_index(b.month) * day_kinds + b.day_kind) * 24 + b.hour;
}

Bucket BucketConfig::bucket_at(int index) const {
  Bucket b;
  b.hour = index % 24;
  index /= 24;
  b.day_kind = index % day_kinds;
  b.month = months.at(index / day_kinds);
  return b;
}

int BucketConfig::day_kind_of_weekday(int weekday) const {
  if (day_kinds == 7) return weekday;
  if (day_kinds == 2) return weekday >= 5 ? 1 : 0;
  return weekday % day_kinds;
}

Bucket BucketConfig::bucket_of(MinuteStamp t) const {
  const std::int64_t days = t >= 0 ? t / 1440 : (t - 1439) / 1440;
  const int rem = static_cast<int>(t - days * 1440);
  Bucket b;
  b.month = civil_from_days(days).month;
  b.day_kind = day_kind_of_weekday(weekday_from_days(days));
  b.hour = rem / 60;
  return b;
}

Bucket BucketConfig::advance_hours(const Bucket& b, int hours) const {
  Bucket out = b;
  out.hour = (b.hour + hours) % 24;
  return out;
}

std::string bucket_key(const Bucket& b) {
  return std::to_string(b.month) + ":" + std::to_string(b.day_kind) + ":" + std::to_string(b.hour);
}

std::optional<Bucket> parse_bucket_key(const std::string& key) {
  Bucket b;
  if (std::sscanf(key.c_str(), "%d:%d:%d", &b.month, &b.day_kind, &b.hour) != 3) return std::nullopt;
  if (b.month < 1 || b.month > 12 || b.day_kind < 0 || b.hour < 0 || b.hour > 23) return std::nullopt;
  return b;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull + b * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace atdsc

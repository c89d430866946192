#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "atdsc/ingest.hpp"
#include "atdsc/synth.hpp"

using namespace atdsc;
namespace fs = std::filesystem;

namespace {

ZoneGraph small_graph() { return ZoneGraph({{1, {2, 4}}, {2, {1}}, {4, {1, 7}}, {7, {4, 9}}, {9, {7}}}); }

std::string with_header(const std::string& rows) {
  return std::string(kTripCsvHeader) + "\n" + rows;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("single well formed row parses") {
  const auto g = small_graph();
  std::istringstream in(
      with_header("2020-06-01T10:00:00,2020-06-01T10:15:00,4,7,2.5,19.00,1,1\n"));
  RejectionReport rep;
  const auto records = parse_trip_records(in, g, rep);
  REQUIRE(records.size() == 1);
  CHECK(rep.total() == 0);
  CHECK(records[0].pickup_zone == 4);
  CHECK(records[0].dropoff_zone == 7);
  CHECK(records[0].total_payment == doctest::Approx(19.0));
  CHECK(records[0].delivery_minutes() == doctest::Approx(15.0));
}

TEST_CASE("dropoff before pickup is rejected") {
  const auto g = small_graph();
  std::istringstream in(
      with_header("2020-06-01T10:15:00,2020-06-01T10:00:00,4,7,2.5,19.00,1,1\n"));
  RejectionReport rep;
  CHECK(parse_trip_records(in, g, rep).empty());
  CHECK(rep.nonpositive_durations == 1);
}

TEST_CASE("unknown zones and malformed rows are counted separately") {
  const auto g = small_graph();
  std::istringstream in(with_header("2020-06-01T10:00:00,2020-06-01T10:10:00,4,99,1.0,8.00,1,1\n"
                                    "not,a,row\n"
                                    "2020-06-01T10:00:00,2020-06-01T10:10:00,1,2,1.0,8.00,1,1\n"));
  RejectionReport rep;
  const auto records = parse_trip_records(in, g, rep);
  CHECK(records.size() == 1);
  CHECK(rep.unknown_zones == 1);
  CHECK(rep.malformed_rows == 1);
}

TEST_CASE("generated corpus round trips with zero rejects") {
  SynthSpec spec;
  spec.zones = 6;
  spec.seed = 11;
  const SynthCorpus corpus = generate_synthetic_corpus(spec);
  REQUIRE(corpus.records.size() >= 100);
  std::ostringstream out;
  write_trip_records(corpus.records, out);
  std::istringstream in(out.str());
  RejectionReport rep;
  const auto parsed = parse_trip_records(in, corpus.graph, rep);
  CHECK(parsed.size() == corpus.records.size());
  CHECK(rep.total() == 0);
}

TEST_CASE("minute income aggregates payment over delivery minutes") {
  const ZoneGraph g({{1, {2}}, {2, {1}}});
  std::vector<TripRecord> records;
  for (int i = 0; i < 2; ++i) {
    TripRecord r;
    r.pickup_time = *parse_minute_stamp("2020-06-01T10:00:00");
    r.dropoff_time = r.pickup_time + 10;
    r.pickup_zone = 1;
    r.dropoff_zone = 2;
    r.total_payment = 20.0;
    records.push_back(r);
  }
  const auto stats = build_area_stats(records, g, BucketConfig{{6}, 2}, {});
  const Bucket b{6, 0, 10};
  const ZoneBucketStats* cell = stats.cell(1, b);
  REQUIRE(cell != nullptr);
  CHECK(cell->pickup_count == 2);
  CHECK(cell->raw_inc() == doctest::Approx(2.0));
}

TEST_CASE("zone without trips has no income observation") {
  const ZoneGraph g({{1, {2}}, {2, {1}}});
  TripRecord r;
  r.pickup_time = *parse_minute_stamp("2020-06-01T10:00:00");
  r.dropoff_time = r.pickup_time + 10;
  r.pickup_zone = 1;
  r.dropoff_zone = 1;
  r.total_payment = 10.0;
  const auto stats = build_area_stats({r}, g, BucketConfig{{6}, 2}, {});
  const Bucket b{6, 0, 10};
  const ZoneBucketStats* cell = stats.cell(2, b);
  CHECK((cell == nullptr || cell->pickup_count == 0));
  CHECK((cell == nullptr || !cell->has_income()));
}

TEST_CASE("dropoff distribution normalizes counts") {
  const ZoneGraph g({{4, {7, 9}}, {7, {4}}, {9, {4}}});
  std::vector<TripRecord> records;
  auto add = [&](ZoneId d) {
    TripRecord r;
    r.pickup_time = *parse_minute_stamp("2020-06-01T10:00:00");
    r.dropoff_time = r.pickup_time + 12;
    r.pickup_zone = 4;
    r.dropoff_zone = d;
    r.total_payment = 15.0;
    records.push_back(r);
  };
  add(7); add(7); add(7); add(9);
  const auto stats = build_area_stats(records, g, BucketConfig{{6}, 2}, {});
  const auto dist = stats.cell(4, Bucket{6, 0, 10})->dropoff_dist();
  CHECK(dist.at(7) == doctest::Approx(0.75));
  CHECK(dist.at(9) == doctest::Approx(0.25));
}

TEST_CASE("empty record set is fatal") {
  const ZoneGraph g({{1, {2}}, {2, {1}}});
  CHECK_THROWS_AS(build_area_stats({}, g, BucketConfig{{6}, 2}, {}), UsageError);
}

TEST_CASE("pickup counts conserve the accepted record count") {
  SynthSpec spec;
  spec.zones = 7;
  spec.seed = 5;
  const SynthCorpus corpus = generate_synthetic_corpus(spec);
  const auto stats = build_area_stats(corpus.records, corpus.graph, spec.bucketing, corpus.prior);
  long total = 0;
  for (const auto& [key, cell] : stats.cells) total += cell.pickup_count;
  CHECK(total == static_cast<long>(corpus.records.size()));
  CHECK(stats.accepted_records == static_cast<long>(corpus.records.size()));
}

TEST_CASE("every dropoff distribution sums to one") {
  SynthSpec spec;
  spec.zones = 9;
  spec.seed = 3;
  const SynthCorpus corpus = generate_synthetic_corpus(spec);
  const auto stats = build_area_stats(corpus.records, corpus.graph, spec.bucketing, corpus.prior);
  for (const auto& [key, cell] : stats.cells) {
    const auto dist = cell.dropoff_dist();
    if (dist.empty()) continue;
    double sum = 0.0;
    for (const auto& [d, p] : dist) {
      sum += p;
      CHECK(p >= 0.0);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("prior counts file round trips") {
  PriorCounts prior{{{1, Bucket{6, 0, 10}}, 42}, {{2, Bucket{6, 1, 3}}, 7}};
  std::ostringstream out;
  write_prior_counts(prior, out);
  std::istringstream in(out.str());
  CHECK(parse_prior_counts(in, BucketConfig{{6}, 2}) == prior);
}

TEST_CASE("snapshot saves and reloads bit identically") {
  SynthSpec spec;
  spec.zones = 6;
  spec.seed = 21;
  const SynthCorpus corpus = generate_synthetic_corpus(spec);
  const auto stats = build_area_stats(corpus.records, corpus.graph, spec.bucketing, corpus.prior);

  const fs::path dir1 = fs::temp_directory_path() / "atdsc_snap_a";
  const fs::path dir2 = fs::temp_directory_path() / "atdsc_snap_b";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  save_stats_snapshot(stats, corpus.graph, dir1.string());
  auto [loaded, graph] = load_stats_snapshot(dir1.string());
  save_stats_snapshot(loaded, graph, dir2.string());

  for (const auto& entry : fs::directory_iterator(dir1)) {
    const auto name = entry.path().filename();
    CAPTURE(name.string());
    CHECK(read_file(entry.path()) == read_file(dir2 / name));
  }
  CHECK(loaded.accepted_records == stats.accepted_records);
  CHECK(loaded.cells.size() == stats.cells.size());
  CHECK(loaded.mu_delivery == doctest::Approx(stats.mu_delivery));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

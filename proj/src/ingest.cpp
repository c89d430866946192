#include "atdsc/ingest.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace atdsc {

namespace fs = std::filesystem;

const char* const kTripCsvHeader =
    "pickup_datetime,dropoff_datetime,pickup_zone,dropoff_zone,trip_distance,total_amount,"
    "payment_type,passenger_count";

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw UsageError("cannot write " + p.string());
  return out;
}

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  return in;
}

}  // namespace

double PairStats::stddev() const {
  if (n < 2) return 0.0;
  const double m = mean();
  const double var = std::max(0.0, sumsq / n - m * m);
  return std::sqrt(var);
}

std::map<ZoneId, double> ZoneBucketStats::dropoff_dist() const {
  std::map<ZoneId, double> dist;
  long total = 0;
  for (const auto& [z, c] : dropoff_counts) total += c;
  if (total == 0) return dist;
  for (const auto& [z, c] : dropoff_counts) dist[z] = static_cast<double>(c) / total;
  return dist;
}

std::vector<TripRecord> parse_trip_records(std::istream& in, const ZoneGraph& graph,
                                           RejectionReport& report) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("trip stream is empty or unreadable");
  std::vector<TripRecord> records;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 8) {
      ++report.malformed_rows;
      continue;
    }
    TripRecord rec;
    auto pu = parse_minute_stamp(fields[0]);
    auto dof = parse_minute_stamp(fields[1]);
    if (!pu || !dof) {
      ++report.malformed_rows;
      continue;
    }
    rec.pickup_time = *pu;
    rec.dropoff_time = *dof;
    try {
      rec.pickup_zone = std::stoi(fields[2]);
      rec.dropoff_zone = std::stoi(fields[3]);
      rec.trip_distance = std::stod(fields[4]);
      rec.total_payment = std::stod(fields[5]);
      rec.payment_type = std::stoi(fields[6]);
      rec.passenger_count = std::stoi(fields[7]);
    } catch (const std::exception&) {
      ++report.malformed_rows;
      continue;
    }
    if (rec.trip_distance < 0.0 || rec.total_payment < 0.0 || rec.passenger_count < 0 ||
        rec.pickup_zone <= 0 || rec.dropoff_zone <= 0) {
      ++report.malformed_rows;
      continue;
    }
    if (rec.dropoff_time < rec.pickup_time) {
      ++report.nonpositive_durations;
      continue;
    }
    if (!graph.has_zone(rec.pickup_zone) || !graph.has_zone(rec.dropoff_zone)) {
      ++report.unknown_zones;
      continue;
    }
    records.push_back(rec);
  }
  return records;
}

void write_trip_records(const std::vector<TripRecord>& records, std::ostream& out) {
  out << kTripCsvHeader << "\n";
  for (const TripRecord& r : records) {
    out << format_minute_stamp(r.pickup_time) << "," << format_minute_stamp(r.dropoff_time) << ","
        << r.pickup_zone << "," << r.dropoff_zone << "," << fmt_double(r.trip_distance) << ","
        << fmt_double(r.total_payment) << "," << r.payment_type << "," << r.passenger_count
        << "\n";
  }
}

const ZoneBucketStats* AreaStatsTable::cell(ZoneId z, const Bucket& b) const {
  auto it = cells.find({z, b});
  return it == cells.end() ? nullptr : &it->second;
}

long AreaStatsTable::prior_count(ZoneId z, const Bucket& b) const {
  auto it = prior.find({z, b});
  return it == prior.end() ? 0 : it->second;
}

long AreaStatsTable::month_pickups(ZoneId z, int month) const {
  long total = 0;
  for (const auto& [key, st] : cells)
    if (key.first == z && key.second.month == month) total += st.pickup_count;
  return total;
}

long AreaStatsTable::month_prior(ZoneId z, int month) const {
  long total = 0;
  for (const auto& [key, c] : prior)
    if (key.first == z && key.second.month == month) total += c;
  return total;
}

AreaStatsTable build_area_stats(const std::vector<TripRecord>& records, const ZoneGraph& graph,
                                const BucketConfig& bucketing, const PriorCounts& prior,
                                const CruiseDefaults& cruise) {
  if (records.empty()) throw UsageError("cannot build area statistics from an empty record set");
  AreaStatsTable table;
  table.bucketing = bucketing;
  table.prior = prior;
  table.mu_cruise = cruise.mu;
  table.sigma_cruise = cruise.sigma;

  PairStats global_delivery;
  for (const TripRecord& r : records) {
    const Bucket b = bucketing.bucket_of(r.pickup_time);
    auto& cell = table.cells[{r.pickup_zone, b}];
    ++cell.pickup_count;
    cell.total_payment += r.total_payment;
    const double minutes = r.delivery_minutes();
    cell.total_delivery_minutes += minutes;
    ++cell.dropoff_counts[r.dropoff_zone];
    if (minutes > 0.0) {
      table.pair_delivery[{r.pickup_zone, r.dropoff_zone, b}].add(minutes);
      global_delivery.add(minutes);
    }
  }
  table.accepted_records = static_cast<long>(records.size());
  table.mu_delivery = global_delivery.n > 0 ? global_delivery.mean() : 15.0;
  table.sigma_delivery = global_delivery.n > 1 ? global_delivery.stddev() : 3.0;
  if (table.sigma_delivery <= 0.0) table.sigma_delivery = 1.0;
  (void)graph;
  return table;
}

PriorCounts parse_prior_counts(std::istream& in, const BucketConfig& bucketing) {
  PriorCounts prior;
  std::string line;
  if (!std::getline(in, line)) throw UsageError("prior-counts stream is empty");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 3)
      throw UsageError("prior-counts line " + std::to_string(lineno) + ": expected 3 columns");
    auto bucket = parse_bucket_key(fields[1]);
    if (!bucket)
      throw UsageError("prior-counts line " + std::to_string(lineno) + ": bad bucket key");
    try {
      prior[{std::stoi(fields[0]), *bucket}] += std::stol(fields[2]);
    } catch (const std::exception&) {
      throw UsageError("prior-counts line " + std::to_string(lineno) + ": bad number");
    }
  }
  (void)bucketing;
  return prior;
}

void write_prior_counts(const PriorCounts& prior, std::ostream& out) {
  out << "zone_id,bucket_key,pickup_count\n";
  for (const auto& [key, count] : prior)
    out << key.first << "," << bucket_key(key.second) << "," << count << "\n";
}

void save_stats_snapshot(const AreaStatsTable& table, const ZoneGraph& graph,
                         const std::string& dir) {
  fs::create_directories(dir);
  const fs::path root(dir);
  {
    auto out = open_out(root / "meta.csv");
    out << "key,value\n";
    out << "format_version,1\n";
    out << "day_kinds," << table.bucketing.day_kinds << "\n";
    std::string months;
    for (int m : table.bucketing.months) months += (months.empty() ? "" : ";") + std::to_string(m);
    out << "months," << months << "\n";
    out << "mu_delivery," << fmt_double(table.mu_delivery) << "\n";
    out << "sigma_delivery," << fmt_double(table.sigma_delivery) << "\n";
    out << "mu_cruise," << fmt_double(table.mu_cruise) << "\n";
    out << "sigma_cruise," << fmt_double(table.sigma_cruise) << "\n";
    out << "accepted_records," << table.accepted_records << "\n";
  }
  {
    auto out = open_out(root / "adjacency.txt");
    write_zone_adjacency(graph, out);
  }
  {
    auto out = open_out(root / "stats.csv");
    out << "zone,bucket_key,pickup_count,total_payment,total_delivery_minutes\n";
    for (const auto& [key, st] : table.cells)
      out << key.first << "," << bucket_key(key.second) << "," << st.pickup_count << ","
          << fmt_double(st.total_payment) << "," << fmt_double(st.total_delivery_minutes) << "\n";
  }
  {
    auto out = open_out(root / "dropoffs.csv");
    out << "zone,bucket_key,dropoff_zone,count\n";
    for (const auto& [key, st] : table.cells)
      for (const auto& [d, c] : st.dropoff_counts)
        out << key.first << "," << bucket_key(key.second) << "," << d << "," << c << "\n";
  }
  {
    auto out = open_out(root / "pair_delivery.csv");
    out << "pickup_zone,dropoff_zone,bucket_key,n,sum,sumsq\n";
    for (const auto& [key, ps] : table.pair_delivery)
      out << std::get<0>(key) << "," << std::get<1>(key) << "," << bucket_key(std::get<2>(key))
          << "," << ps.n << "," << fmt_double(ps.sum) << "," << fmt_double(ps.sumsq) << "\n";
  }
  {
    auto out = open_out(root / "prior.csv");
    write_prior_counts(table.prior, out);
  }
}

std::pair<AreaStatsTable, ZoneGraph> load_stats_snapshot(const std::string& dir) {
  const fs::path root(dir);
  AreaStatsTable table;
  {
    auto in = open_in(root / "meta.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto fields = split_csv(line);
      if (fields.size() != 2) continue;
      const std::string& key = fields[0];
      const std::string& val = fields[1];
      if (key == "day_kinds") table.bucketing.day_kinds = std::stoi(val);
      else if (key == "months") {
        table.bucketing.months.clear();
        std::stringstream ss(val);
        std::string tok;
        while (std::getline(ss, tok, ';')) table.bucketing.months.push_back(std::stoi(tok));
      } else if (key == "mu_delivery") table.mu_delivery = std::stod(val);
      else if (key == "sigma_delivery") table.sigma_delivery = std::stod(val);
      else if (key == "mu_cruise") table.mu_cruise = std::stod(val);
      else if (key == "sigma_cruise") table.sigma_cruise = std::stod(val);
      else if (key == "accepted_records") table.accepted_records = std::stol(val);
    }
  }
  auto adj_in = open_in(root / "adjacency.txt");
  ZoneGraph graph = load_zone_adjacency(adj_in);
  {
    auto in = open_in(root / "stats.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto f = split_csv(line);
      if (f.size() != 5) continue;
      auto b = parse_bucket_key(f[1]);
      if (!b) throw UsageError("stats.csv: bad bucket key " + f[1]);
      auto& st = table.cells[{std::stoi(f[0]), *b}];
      st.pickup_count = std::stol(f[2]);
      st.total_payment = std::stod(f[3]);
      st.total_delivery_minutes = std::stod(f[4]);
    }
  }
  {
    auto in = open_in(root / "dropoffs.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto f = split_csv(line);
      if (f.size() != 4) continue;
      auto b = parse_bucket_key(f[1]);
      if (!b) throw UsageError("dropoffs.csv: bad bucket key " + f[1]);
      table.cells[{std::stoi(f[0]), *b}].dropoff_counts[std::stoi(f[2])] = std::stol(f[3]);
    }
  }
  {
    auto in = open_in(root / "pair_delivery.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto f = split_csv(line);
      if (f.size() != 6) continue;
      auto b = parse_bucket_key(f[2]);
      if (!b) throw UsageError("pair_delivery.csv: bad bucket key " + f[2]);
      auto& ps = table.pair_delivery[{std::stoi(f[0]), std::stoi(f[1]), *b}];
      ps.n = std::stol(f[3]);
      ps.sum = std::stod(f[4]);
      ps.sumsq = std::stod(f[5]);
    }
  }
  {
    auto in = open_in(root / "prior.csv");
    table.prior = parse_prior_counts(in, table.bucketing);
  }
  return {std::move(table), std::move(graph)};
}

}  // namespace atdsc

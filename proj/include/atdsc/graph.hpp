#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "atdsc/types.hpp"

namespace atdsc {

// Undirected zone adjacency. The neighbor relation is symmetric; listing
// B under A implies A under B even when the input omits the reverse line.
class ZoneGraph {
 public:
  ZoneGraph() = default;
  explicit ZoneGraph(std::map<ZoneId, std::set<ZoneId>> neighbors);

  bool has_zone(ZoneId z) const { return neighbors_.count(z) != 0; }
  std::size_t zone_count() const { return neighbors_.size(); }
  const std::vector<ZoneId>& zones() const { return zones_; }
  const std::set<ZoneId>& neighbors(ZoneId z) const;
  bool adjacent(ZoneId a, ZoneId b) const;
  // True when a path of adjacency edges links the two zones.
  bool connected(ZoneId a, ZoneId b) const;

  const std::map<ZoneId, std::string>& zone_names() const { return names_; }
  void set_zone_name(ZoneId z, std::string name) { names_[z] = std::move(name); }

 private:
  std::map<ZoneId, std::set<ZoneId>> neighbors_;
  std::vector<ZoneId> zones_;
  std::map<ZoneId, int> component_;
  std::map<ZoneId, std::string> names_;
};

// Line format: `zone_id: n1,n2,...`; `#` starts a comment; blank lines ok.
// Self-loops and duplicate zone lines are fatal.
ZoneGraph load_zone_adjacency(std::istream& in);

void write_zone_adjacency(const ZoneGraph& graph, std::ostream& out);

}  // namespace atdsc

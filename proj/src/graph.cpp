#include "atdsc/graph.hpp"

#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

namespace atdsc {

ZoneGraph::ZoneGraph(std::map<ZoneId, std::set<ZoneId>> neighbors)
    : neighbors_(std::move(neighbors)) {
  // Symmetry completion: every listed neighbor becomes a zone with the
  // reverse edge.
  std::vector<std::pair<ZoneId, ZoneId>> edges;
  for (const auto& [z, ns] : neighbors_)
    for (ZoneId n : ns) edges.emplace_back(z, n);
  for (const auto& [a, b] : edges) {
    if (a == b) throw UsageError("zone " + std::to_string(a) + " lists itself as a neighbor");
    neighbors_[b].insert(a);
  }
  if (neighbors_.size() < 2) throw UsageError("zone graph needs at least 2 zones");
  zones_.reserve(neighbors_.size());
  for (const auto& [z, ns] : neighbors_) zones_.push_back(z);

  int comp = 0;
  for (ZoneId root : zones_) {
    if (component_.count(root)) continue;
    std::deque<ZoneId> queue{root};
    component_[root] = comp;
    while (!queue.empty()) {
      ZoneId cur = queue.front();
      queue.pop_front();
      for (ZoneId n : neighbors_.at(cur))
        if (!component_.count(n)) {
          component_[n] = comp;
          queue.push_back(n);
        }
    }
    ++comp;
  }
}

const std::set<ZoneId>& ZoneGraph::neighbors(ZoneId z) const {
  auto it = neighbors_.find(z);
  if (it == neighbors_.end()) throw UsageError("unknown zone " + std::to_string(z));
  return it->second;
}

bool ZoneGraph::adjacent(ZoneId a, ZoneId b) const {
  auto it = neighbors_.find(a);
  return it != neighbors_.end() && it->second.count(b) != 0;
}

bool ZoneGraph::connected(ZoneId a, ZoneId b) const {
  auto ia = component_.find(a);
  auto ib = component_.find(b);
  if (ia == component_.end() || ib == component_.end()) return false;
  return ia->second == ib->second;
}

ZoneGraph load_zone_adjacency(std::istream& in) {
  std::map<ZoneId, std::set<ZoneId>> neighbors;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw UsageError("adjacency line " + std::to_string(lineno) + ": missing ':'");
    }
    ZoneId zone = 0;
    try {
      zone = std::stoi(line.substr(0, colon));
    } catch (const std::exception&) {
      throw UsageError("adjacency line " + std::to_string(lineno) + ": bad zone id");
    }
    if (neighbors.count(zone))
      throw UsageError("adjacency line " + std::to_string(lineno) + ": duplicate zone " +
                       std::to_string(zone));
    auto& ns = neighbors[zone];
    std::stringstream rest(line.substr(colon + 1));
    std::string tok;
    while (std::getline(rest, tok, ',')) {
      if (tok.find_first_not_of(" \t\r") == std::string::npos) continue;
      ZoneId n = 0;
      try {
        n = std::stoi(tok);
      } catch (const std::exception&) {
        throw UsageError("adjacency line " + std::to_string(lineno) + ": bad neighbor id");
      }
      if (n == zone)
        throw UsageError("adjacency line " + std::to_string(lineno) + ": zone " +
                         std::to_string(zone) + " references itself");
      ns.insert(n);
    }
  }
  return ZoneGraph(std::move(neighbors));
}

void write_zone_adjacency(const ZoneGraph& graph, std::ostream& out) {
  for (ZoneId z : graph.zones()) {
    out << z << ":";
    bool first = true;
    for (ZoneId n : graph.neighbors(z)) {
      out << (first ? " " : ",") << n;
      first = false;
    }
    out << "\n";
  }
}

}  // namespace atdsc

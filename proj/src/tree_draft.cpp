#include "dualcube/detail/tree_draft.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace dualcube::detail {

void TreeDraft::add_edge(Vertex a, Vertex b) {
  if (a == b) throw std::logic_error("tree draft: loop edge");
  edges_.insert(make_edge(a, b));
  vertices_.insert(a);
  vertices_.insert(b);
}

void TreeDraft::add_path(const Path& p) {
  if (p.size() == 1) vertices_.insert(p.front());
  for (std::size_t i = 1; i < p.size(); ++i) add_edge(p[i - 1], p[i]);
}

Tree TreeDraft::finalize(std::span<const Vertex> terminals) const {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const auto& [a, b] : edges_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& [v, list] : adj) std::sort(list.begin(), list.end());

  Tree tree;
  std::set<Vertex> seen{terminals.front()};
  std::deque<Vertex> queue{terminals.front()};
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : adj[u]) {
      if (seen.insert(v).second) {
        tree.push_back(make_edge(u, v));
        queue.push_back(v);
      }
    }
  }
  for (Vertex t : terminals) {
    if (!seen.count(t)) throw std::logic_error("tree draft: terminals not connected");
  }
  return prune_to_terminals(tree, terminals);
}

Tree prune_to_terminals(const Tree& t, std::span<const Vertex> terminals) {
  std::map<Vertex, std::set<Vertex>> adj;
  for (const auto& [a, b] : t) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  auto is_terminal = [&](Vertex v) { return std::find(terminals.begin(), terminals.end(), v) != terminals.end(); };
  std::deque<Vertex> leaves;
  for (auto& [v, nb] : adj) {
    if (nb.size() <= 1 && !is_terminal(v)) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    Vertex v = leaves.front();
    leaves.pop_front();
    auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (Vertex u : it->second) {
      auto& nb = adj[u];
      nb.erase(v);
      if (nb.size() <= 1 && !is_terminal(u)) leaves.push_back(u);
    }
    adj.erase(it);
  }
  Tree out;
  for (auto& [v, nb] : adj) {
    for (Vertex u : nb) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

}  // namespace dualcube::detail

#include "lebounds/graph.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>

#include "lebounds/rng.hpp"

namespace lebounds::graph {

Graph::Graph(size_t n, const std::vector<std::pair<size_t, size_t>>& edges) : adj_(n, n) {
  for (auto [i, j] : edges) add_edge(i, j);
}

Graph::Graph(gf2::BitMatrix adjacency) : adj_(std::move(adjacency)) {
  if (adj_.rows() != adj_.cols())
    throw std::invalid_argument("Graph: adjacency matrix not square");
  for (size_t i = 0; i < adj_.rows(); ++i) {
    if (adj_.get(i, i)) throw std::invalid_argument("Graph: nonzero diagonal");
    for (size_t j = i + 1; j < adj_.cols(); ++j)
      if (adj_.get(i, j) != adj_.get(j, i))
        throw std::invalid_argument("Graph: adjacency matrix not symmetric");
  }
}

void Graph::check_node(size_t i) const {
  if (i >= n()) throw std::invalid_argument("Graph: node " + std::to_string(i) + " out of range");
}

void Graph::add_edge(size_t i, size_t j) {
  check_node(i);
  check_node(j);
  if (i == j) throw std::invalid_argument("Graph: self-loop rejected");
  adj_.set(i, j, true);
  adj_.set(j, i, true);
}

void Graph::remove_edge(size_t i, size_t j) {
  check_node(i);
  check_node(j);
  adj_.set(i, j, false);
  adj_.set(j, i, false);
}

void Graph::toggle_edge(size_t i, size_t j) {
  check_node(i);
  check_node(j);
  if (i == j) throw std::invalid_argument("Graph: self-loop rejected");
  adj_.flip(i, j);
  adj_.flip(j, i);
}

std::vector<size_t> Graph::neighbors(size_t i) const {
  check_node(i);
  std::vector<size_t> out;
  for (size_t j = 0; j < n(); ++j)
    if (adj_.get(i, j)) out.push_back(j);
  return out;
}

size_t Graph::degree(size_t i) const { return neighbors(i).size(); }

std::vector<std::pair<size_t, size_t>> Graph::edges() const {
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < n(); ++i)
    for (size_t j = i + 1; j < n(); ++j)
      if (adj_.get(i, j)) out.emplace_back(i, j);
  return out;
}

size_t Graph::edge_count() const { return edges().size(); }

bool Graph::is_connected() const {
  if (n() == 0) return true;
  std::vector<bool> seen(n(), false);
  std::queue<size_t> q;
  q.push(0);
  seen[0] = true;
  size_t visited = 1;
  while (!q.empty()) {
    size_t v = q.front();
    q.pop();
    for (size_t w = 0; w < n(); ++w) {
      if (adj_.get(v, w) && !seen[w]) {
        seen[w] = true;
        ++visited;
        q.push(w);
      }
    }
  }
  return visited == n();
}

void validate_path(const Graph& g, const Path& p) {
  if (p.empty()) throw std::invalid_argument("path invalid: empty");
  std::vector<bool> used(g.n(), false);
  for (size_t node : p) {
    if (node >= g.n()) throw std::invalid_argument("path invalid: node out of range");
    if (used[node]) throw std::invalid_argument("path invalid: repeated node");
    used[node] = true;
  }
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.has_edge(p[i], p[i + 1]))
      throw std::invalid_argument("path invalid: missing link " + std::to_string(p[i]) + "-" +
                                  std::to_string(p[i + 1]));
}

PathCategory classify_path(const Graph& g, const Path& p) {
  validate_path(g, p);
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 2; j < p.size(); ++j)
      if (g.has_edge(p[i], p[j])) return PathCategory::C2;
  return PathCategory::C1;
}

Path distill_c1(const Graph& g, const Path& p) {
  validate_path(g, p);
  Path out{p.front()};
  size_t pos = 0;
  while (p[pos] != p.back()) {
    size_t best = pos + 1;
    for (size_t j = p.size(); j-- > pos + 1;) {
      if (g.has_edge(p[pos], p[j])) {
        best = j;
        break;
      }
    }
    if (!g.has_edge(p[pos], p[best]))
      throw std::invalid_argument("path invalid: missing link");
    out.push_back(p[best]);
    pos = best;
  }
  return out;
}

Graph local_complement(const Graph& g, size_t i) {
  Graph out = g;
  auto nb = g.neighbors(i);
  for (size_t x = 0; x < nb.size(); ++x)
    for (size_t y = x + 1; y < nb.size(); ++y) out.toggle_edge(nb[x], nb[y]);
  return out;
}

stab::LocalCliffordLayer lc_unitary(const Graph& g, size_t i) {
  stab::LocalCliffordLayer layer(g.n());
  layer.set(i, stab::mat2::HSH);
  for (size_t j : g.neighbors(i)) layer.set(j, stab::mat2::S);
  return layer;
}

std::pair<Graph, LcRecord> alc_create_link(const Graph& g, size_t a, size_t b, const Path& p) {
  if (!g.is_connected()) throw std::invalid_argument("graph disconnected");
  if (a >= g.n() || b >= g.n() || a == b)
    throw std::invalid_argument("path invalid: bad endpoints");
  if (g.has_edge(a, b)) throw std::invalid_argument("link already present");
  validate_path(g, p);
  if (p.front() != a || p.back() != b)
    throw std::invalid_argument("path invalid: endpoints do not match pair");

  Graph cur = g;
  LcRecord rec;
  rec.unitary = stab::LocalCliffordLayer(g.n());
  Path path = p;
  while (!cur.has_edge(a, b)) {
    path = distill_c1(cur, path);
    size_t node = path[1];
    size_t deg = cur.degree(node);
    rec.link_ops += deg * (deg - 1) / 2;
    rec.unitary = stab::compose(lc_unitary(cur, node), rec.unitary);
    rec.complemented.push_back(node);
    cur = local_complement(cur, node);
    path.erase(path.begin() + 1);
  }
  return {cur, rec};
}

Path random_simple_path(const Graph& g, size_t a, size_t b, uint64_t seed) {
  if (a >= g.n() || b >= g.n() || a == b)
    throw std::invalid_argument("path invalid: bad endpoints");
  std::mt19937_64 rng(seed);
  std::vector<bool> visited(g.n(), false);
  Path path;
  // Iterative depth-first search with per-node shuffled neighbor order.
  struct Frame {
    size_t node;
    std::vector<size_t> nb;
    size_t next = 0;
  };
  std::vector<Frame> stack;
  auto push = [&](size_t v) {
    visited[v] = true;
    path.push_back(v);
    Frame f{v, g.neighbors(v), 0};
    seeded_shuffle(f.nb, rng);
    stack.push_back(std::move(f));
  };
  push(a);
  while (!stack.empty()) {
    if (path.back() == b) return path;
    Frame& f = stack.back();
    bool advanced = false;
    while (f.next < f.nb.size()) {
      size_t w = f.nb[f.next++];
      if (!visited[w]) {
        push(w);
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      path.pop_back();
      stack.pop_back();
    }
  }
  throw std::invalid_argument("graph disconnected: no path between endpoints");
}

Path shortest_path(const Graph& g, size_t a, size_t b) {
  if (a >= g.n() || b >= g.n())
    throw std::invalid_argument("path invalid: bad endpoints");
  std::vector<size_t> parent(g.n(), g.n());
  std::vector<bool> seen(g.n(), false);
  std::queue<size_t> q;
  q.push(a);
  seen[a] = true;
  while (!q.empty()) {
    size_t v = q.front();
    q.pop();
    if (v == b) break;
    for (size_t w = 0; w < g.n(); ++w) {
      if (g.has_edge(v, w) && !seen[w]) {
        seen[w] = true;
        parent[w] = v;
        q.push(w);
      }
    }
  }
  if (!seen[b]) throw std::invalid_argument("graph disconnected: no path between endpoints");
  Path rev{b};
  while (rev.back() != a) rev.push_back(parent[rev.back()]);
  return Path(rev.rbegin(), rev.rend());
}

}  // namespace lebounds::graph

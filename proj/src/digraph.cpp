#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "splaylab/transforms.hpp"

namespace splaylab {

int TransitionDigraph::index_of(const Tree& t) const {
  auto it = index.find(t);
  if (it == index.end()) throw Error(ErrorKind::KeyMismatch, "tree is not a vertex of G_" + std::to_string(n));
  return it->second;
}

TransitionDigraph build_digraph(int n, Algo a) {
  if (n < 1 || n > kMaxDigraphN)
    throw Error(ErrorKind::GuardExceeded, "digraph size " + std::to_string(n) + " outside 1.." + std::to_string(kMaxDigraphN));
  TransitionDigraph g;
  g.n = n;
  g.algo = a;
  g.vertices = all_shapes(n);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) g.index.emplace(g.vertices[i], static_cast<int>(i));
  g.arcs.resize(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (Key x = 1; x <= n; ++x) g.arcs[i].push_back(g.index_of(access(a, g.vertices[i], x)));
  return g;
}

const TransitionDigraph& cached_digraph(int n, Algo a) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<TransitionDigraph>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, static_cast<int>(a)}];
  if (!slot) slot = std::make_unique<TransitionDigraph>(build_digraph(n, a));
  return *slot;
}

namespace {

// dist[v] from s (-1 unreachable), with predecessor arcs.
std::vector<int> bfs(const TransitionDigraph& g, int s, std::vector<std::pair<int, int>>* pred = nullptr) {
  std::vector<int> dist(g.vertices.size(), -1);
  if (pred) pred->assign(g.vertices.size(), {-1, -1});
  std::deque<int> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int j = 0; j < g.n; ++j) {
      int w = g.arcs[v][j];
      if (dist[w] >= 0) continue;
      dist[w] = dist[v] + 1;
      if (pred) (*pred)[w] = {v, j + 1};
      q.push_back(w);
    }
  }
  return dist;
}

}  // namespace

bool strongly_connected(const TransitionDigraph& g) {
  for (std::size_t s = 0; s < g.vertices.size(); ++s)
    for (int d : bfs(g, static_cast<int>(s)))
      if (d < 0) return false;
  return true;
}

int diameter(const TransitionDigraph& g) {
  int best = 0;
  for (std::size_t s = 0; s < g.vertices.size(); ++s)
    for (int d : bfs(g, static_cast<int>(s))) {
      if (d < 0) throw Error(ErrorKind::Unreachable, "G_" + std::to_string(g.n) + " is not strongly connected");
      best = std::max(best, d);
    }
  return best;
}

std::vector<Key> shortest_path(const TransitionDigraph& g, const Tree& s, const Tree& t) {
  const int si = g.index_of(s), ti = g.index_of(t);
  std::vector<std::pair<int, int>> pred;
  auto dist = bfs(g, si, &pred);
  if (dist[ti] < 0)
    throw Error(ErrorKind::Unreachable, shape_string(t) + " unreachable from " + shape_string(s) + " in G_" + std::to_string(g.n));
  std::vector<Key> keys;
  for (int v = ti; v != si; v = pred[v].first) keys.push_back(pred[v].second);
  std::reverse(keys.begin(), keys.end());
  return keys;
}

GnReport gn_report(int n, Algo a) {
  const TransitionDigraph& g = cached_digraph(n, a);
  GnReport r;
  r.n = n;
  r.algo = a;
  r.vertices = g.vertices.size();
  r.strongly_connected = true;
  int best = -1;
  for (std::size_t s = 0; s < g.vertices.size(); ++s) {
    int ecc = 0;
    for (int d : bfs(g, static_cast<int>(s))) {
      if (d < 0) r.strongly_connected = false;
      ecc = std::max(ecc, d);
    }
    if (ecc > best) {
      best = ecc;
      r.max_eccentricity_vertex = g.vertices[s];
    }
  }
  r.max_eccentricity = best;
  if (r.strongly_connected) r.diameter = best;
  return r;
}

std::string format_gn_report(const GnReport& r) {
  std::ostringstream os;
  os << "n,algorithm,vertices,strongly_connected,diameter,max_eccentricity,max_eccentricity_vertex\n"
     << r.n << "," << to_string(r.algo) << "," << r.vertices << "," << (r.strongly_connected ? "true" : "false")
     << "," << (r.diameter ? std::to_string(*r.diameter) : "inf") << "," << r.max_eccentricity << ","
     << shape_string(r.max_eccentricity_vertex) << "\n";
  return os.str();
}

}  // namespace splaylab

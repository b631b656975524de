#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qrt {

struct Arrow {
  std::string id, src, tgt;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite quiver (directed multigraph) with string ids. Immutable by
/// convention: operations return fresh values.
struct Quiver {
  std::vector<std::string> vertices;  // sorted
  std::vector<Arrow> arrows;          // sorted by id

  Quiver() = default;
  Quiver(std::vector<std::string> vs, std::vector<Arrow> as)
      : vertices(std::move(vs)), arrows(std::move(as)) {
    std::sort(vertices.begin(), vertices.end());
    std::sort(arrows.begin(), arrows.end(),
              [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    validate();
  }

  void validate() const {
    std::set<std::string> vs(vertices.begin(), vertices.end());
    if (vs.size() != vertices.size())
      throw std::invalid_argument("quiver: duplicate vertex id");
    std::set<std::string> as;
    for (const Arrow& a : arrows) {
      if (!vs.count(a.src) || !vs.count(a.tgt))
        throw std::invalid_argument("quiver: arrow endpoint not a vertex: " +
                                    a.id);
      if (!as.insert(a.id).second)
        throw std::invalid_argument("quiver: duplicate arrow id: " + a.id);
    }
  }

  bool has_vertex(const std::string& v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }

  const Arrow& arrow(const std::string& id) const {
    for (const Arrow& a : arrows)
      if (a.id == id) return a;
    throw std::out_of_range("quiver: no arrow " + id);
  }

  std::vector<const Arrow*> arrows_out(const std::string& v) const {
    std::vector<const Arrow*> r;
    for (const Arrow& a : arrows)
      if (a.src == v) r.push_back(&a);
    return r;
  }
  std::vector<const Arrow*> arrows_in(const std::string& v) const {
    std::vector<const Arrow*> r;
    for (const Arrow& a : arrows)
      if (a.tgt == v) r.push_back(&a);
    return r;
  }

  /// Neighbors in the underlying graph, sorted, without multiplicity.
  std::vector<std::string> neighbors(const std::string& v) const {
    std::set<std::string> r;
    for (const Arrow& a : arrows) {
      if (a.src == v) r.insert(a.tgt);
      if (a.tgt == v) r.insert(a.src);
    }
    return {r.begin(), r.end()};
  }

  bool is_source(const std::string& v) const { return arrows_in(v).empty(); }
  bool is_sink(const std::string& v) const { return arrows_out(v).empty(); }
};

inline bool underlying_is_connected(const Quiver& q) {
  if (q.vertices.empty()) return true;
  std::set<std::string> seen;
  std::queue<std::string> bfs;
  bfs.push(q.vertices[0]);
  seen.insert(q.vertices[0]);
  while (!bfs.empty()) {
    std::string v = bfs.front();
    bfs.pop();
    for (const std::string& w : q.neighbors(v))
      if (seen.insert(w).second) bfs.push(w);
  }
  return seen.size() == q.vertices.size();
}

inline bool underlying_is_tree(const Quiver& q) {
  return q.arrows.size() + 1 == q.vertices.size() &&
         underlying_is_connected(q);
}

/// Partition into (sources, sinks); throws if some vertex is neither.
inline std::pair<std::vector<std::string>, std::vector<std::string>>
bipartite_classes(const Quiver& q) {
  std::vector<std::string> sources, sinks;
  for (const std::string& v : q.vertices) {
    bool src = q.is_source(v), snk = q.is_sink(v);
    if (src && !snk)
      sources.push_back(v);
    else if (snk && !src)
      sinks.push_back(v);
    else if (src && snk)
      sources.push_back(v);  // isolated vertex: call it a source
    else
      throw std::invalid_argument("bipartite_classes: vertex " + v +
                                  " is neither sink nor source");
  }
  return {sources, sinks};
}

/// BFS distances from x in the underlying graph.
inline std::map<std::string, std::size_t> distances_from(const Quiver& q,
                                                         const std::string& x) {
  if (!q.has_vertex(x)) throw std::out_of_range("distance: no vertex " + x);
  std::map<std::string, std::size_t> d;
  std::queue<std::string> bfs;
  d[x] = 0;
  bfs.push(x);
  while (!bfs.empty()) {
    std::string v = bfs.front();
    bfs.pop();
    for (const std::string& w : q.neighbors(v))
      if (!d.count(w)) {
        d[w] = d[v] + 1;
        bfs.push(w);
      }
  }
  return d;
}

inline std::size_t distance(const Quiver& q, const std::string& x,
                            const std::string& y) {
  auto d = distances_from(q, x);
  auto it = d.find(y);
  if (it == d.end())
    throw std::invalid_argument("distance: " + x + " and " + y +
                                " are disconnected");
  return it->second;
}

/// Unique path x..y in the underlying tree, inclusive.
inline std::vector<std::string> tree_path(const Quiver& q,
                                          const std::string& x,
                                          const std::string& y) {
  std::map<std::string, std::string> parent;
  std::set<std::string> seen{x};
  std::queue<std::string> bfs;
  bfs.push(x);
  while (!bfs.empty() && !seen.count(y)) {
    std::string v = bfs.front();
    bfs.pop();
    for (const std::string& w : q.neighbors(v))
      if (seen.insert(w).second) {
        parent[w] = v;
        bfs.push(w);
      }
  }
  if (!seen.count(y))
    throw std::invalid_argument("tree_path: disconnected endpoints");
  std::vector<std::string> path{y};
  while (path.back() != x) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Full subquiver on a vertex set.
inline Quiver full_subquiver(const Quiver& q,
                             const std::set<std::string>& keep) {
  std::vector<std::string> vs(keep.begin(), keep.end());
  for (const std::string& v : vs)
    if (!q.has_vertex(v))
      throw std::out_of_range("full_subquiver: no vertex " + v);
  std::vector<Arrow> as;
  for (const Arrow& a : q.arrows)
    if (keep.count(a.src) && keep.count(a.tgt)) as.push_back(a);
  return Quiver(std::move(vs), std::move(as));
}

/// Full subquiver on {y : d(x,y) <= t}.
inline Quiver ball(const Quiver& q, const std::string& x, std::size_t t) {
  auto d = distances_from(q, x);
  std::set<std::string> keep;
  for (auto& [v, dv] : d)
    if (dv <= t) keep.insert(v);
  return full_subquiver(q, keep);
}

struct DeletionResult {
  Quiver rest;                                       // Q^x
  std::vector<std::vector<std::string>> components;  // sorted vertex lists
};

inline DeletionResult delete_vertex(const Quiver& q, const std::string& x) {
  if (!q.has_vertex(x)) throw std::out_of_range("delete_vertex: no " + x);
  std::set<std::string> keep(q.vertices.begin(), q.vertices.end());
  keep.erase(x);
  DeletionResult r;
  r.rest = full_subquiver(q, keep);
  std::set<std::string> unseen = keep;
  while (!unseen.empty()) {
    std::string start = *unseen.begin();
    std::set<std::string> comp{start};
    std::queue<std::string> bfs;
    bfs.push(start);
    unseen.erase(start);
    while (!bfs.empty()) {
      std::string v = bfs.front();
      bfs.pop();
      for (const std::string& w : r.rest.neighbors(v))
        if (comp.insert(w).second) {
          unseen.erase(w);
          bfs.push(w);
        }
    }
    r.components.emplace_back(comp.begin(), comp.end());
  }
  std::sort(r.components.begin(), r.components.end());
  return r;
}

/// N([x,y]): vertices off the x..y path adjacent to some path vertex.
inline std::vector<std::string> centipede(const Quiver& q,
                                          const std::string& x,
                                          const std::string& y) {
  auto path = tree_path(q, x, y);
  std::set<std::string> on(path.begin(), path.end());
  std::set<std::string> r;
  for (const std::string& v : path)
    for (const std::string& w : q.neighbors(v))
      if (!on.count(w)) r.insert(w);
  return {r.begin(), r.end()};
}

/// Ball of the n-regular tree with bipartite orientation and a proper arrow
/// coloring. Vertex ids encode the color path from the center: "c", "c.2",
/// "c.2.1". Each arrow's id is its child vertex's id; its color is the last
/// component of that id.
struct ColoredTreeBall {
  Quiver quiver;
  std::string center;
  std::map<std::string, std::size_t> color;  // arrow id -> 1..n
  std::map<std::string, std::size_t> depth;  // vertex id -> distance to center
};

enum class CenterKind { Source, Sink };

inline ColoredTreeBall regular_tree_ball(std::size_t n, CenterKind kind,
                                         std::size_t radius) {
  if (n < 2) throw std::invalid_argument("regular_tree_ball: need n >= 2");
  ColoredTreeBall out;
  out.center = "c";
  std::vector<std::string> vs{"c"};
  std::vector<Arrow> as;
  out.depth["c"] = 0;
  // frontier entries: (vertex id, incoming color or 0 for the center)
  std::vector<std::pair<std::string, std::size_t>> frontier{{"c", 0}};
  for (std::size_t t = 1; t <= radius; ++t) {
    std::vector<std::pair<std::string, std::size_t>> next;
    for (auto& [v, in_color] : frontier) {
      for (std::size_t col = 1; col <= n; ++col) {
        if (col == in_color) continue;
        std::string child = v + "." + std::to_string(col);
        vs.push_back(child);
        out.depth[child] = t;
        // edges point from the even-parity class
        bool parent_is_source =
            (kind == CenterKind::Source) == (out.depth[v] % 2 == 0);
        if (parent_is_source)
          as.push_back({child, v, child});
        else
          as.push_back({child, child, v});
        out.color[child] = col;
        next.emplace_back(child, col);
      }
    }
    frontier = std::move(next);
  }
  out.quiver = Quiver(std::move(vs), std::move(as));
  return out;
}

// --- JSON ---

inline nlohmann::json to_json(const Quiver& q) {
  nlohmann::json j;
  j["vertices"] = q.vertices;
  j["arrows"] = nlohmann::json::array();
  for (const Arrow& a : q.arrows)
    j["arrows"].push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  return j;
}

inline Quiver quiver_from_json(const nlohmann::json& j) {
  std::vector<std::string> vs = j.at("vertices").get<std::vector<std::string>>();
  std::vector<Arrow> as;
  for (const auto& a : j.at("arrows"))
    as.push_back({a.at("id").get<std::string>(), a.at("src").get<std::string>(),
                  a.at("tgt").get<std::string>()});
  return Quiver(std::move(vs), std::move(as));
}

}  // namespace qrt

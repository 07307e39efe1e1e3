#include "phasekit/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "phasekit/error.hpp"

namespace phasekit {

const char* to_string(HalfEdgeType t) {
  switch (t) {
    case HalfEdgeType::Field: return "field";
    case HalfEdgeType::Lagrange: return "lagrange";
    case HalfEdgeType::Ghost: return "ghost";
    case HalfEdgeType::Antighost: return "antighost";
  }
  return "field";
}

HalfEdgeType half_edge_type_from_string(const std::string& s) {
  if (s == "field") return HalfEdgeType::Field;
  if (s == "lagrange") return HalfEdgeType::Lagrange;
  if (s == "ghost") return HalfEdgeType::Ghost;
  if (s == "antighost") return HalfEdgeType::Antighost;
  throw Error(ErrorCode::Schema, "unknown half-edge type '" + s + "'");
}

bool admissible_pair(HalfEdgeType a, HalfEdgeType b) {
  using T = HalfEdgeType;
  if (a > b) std::swap(a, b);
  if (a == T::Field) return b == T::Field || b == T::Lagrange;
  return a == T::Ghost && b == T::Antighost;
}

void Graph::validate() const {
  std::vector<int> seen(size_t(half_edges), 0);
  auto mark = [&](int h, const char* what) {
    if (h < 0 || h >= half_edges)
      throw Error(ErrorCode::InvalidArgument, std::string(what) + " half-edge out of range");
    ++seen[size_t(h)];
  };
  for (const auto& v : vertices) {
    if (v.empty()) throw Error(ErrorCode::InvalidArgument, "empty vertex block");
    for (int h : v) mark(h, "vertex");
  }
  for (int h : seen)
    if (h != 1) throw Error(ErrorCode::InvalidArgument, "vertices do not partition the half-edges");
  std::fill(seen.begin(), seen.end(), 0);
  for (int h : leaves) mark(h, "leaf");
  for (const auto& e : edges) {
    if (e[0] == e[1]) throw Error(ErrorCode::InvalidArgument, "edge joins a half-edge to itself");
    mark(e[0], "edge");
    mark(e[1], "edge");
  }
  for (int h : seen)
    if (h != 1) throw Error(ErrorCode::InvalidArgument, "edges and leaves do not cover the half-edges exactly once");
  if (!types.empty()) {
    if (static_cast<int>(types.size()) != half_edges)
      throw Error(ErrorCode::InvalidArgument, "type map size mismatch");
    for (const auto& e : edges)
      if (!admissible_pair(types[size_t(e[0])], types[size_t(e[1])]))
        throw Error(ErrorCode::InvalidArgument, "inadmissible typed edge");
  }
}

std::vector<int> Graph::vertex_of() const {
  std::vector<int> v(size_t(half_edges), -1);
  for (int i = 0; i < num_vertices(); ++i)
    for (int h : vertices[size_t(i)]) v[size_t(h)] = i;
  return v;
}

std::vector<int> Graph::partner() const {
  std::vector<int> p(size_t(half_edges), -1);
  for (const auto& e : edges) {
    p[size_t(e[0])] = e[1];
    p[size_t(e[1])] = e[0];
  }
  return p;
}

std::vector<bool> Graph::leaf_mask() const {
  std::vector<bool> m(size_t(half_edges), false);
  for (int h : leaves) m[size_t(h)] = true;
  return m;
}

int Graph::components() const {
  int n = num_vertices();
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[size_t(x)] != x) x = parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
    return x;
  };
  auto vof = vertex_of();
  for (const auto& e : edges) {
    int a = find(vof[size_t(e[0])]);
    int b = find(vof[size_t(e[1])]);
    if (a != b) parent[size_t(a)] = b;
  }
  int c = 0;
  for (int i = 0; i < n; ++i)
    if (find(i) == i) ++c;
  return c;
}

bool Graph::has_self_loop() const {
  auto vof = vertex_of();
  for (const auto& e : edges)
    if (vof[size_t(e[0])] == vof[size_t(e[1])]) return true;
  return false;
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
  Graph g;
  g.half_edges = half_edges;
  for (const auto& v : vertices) {
    std::vector<int> b;
    for (int h : v) b.push_back(perm[size_t(h)]);
    std::sort(b.begin(), b.end());
    g.vertices.push_back(b);
  }
  for (int h : leaves) g.leaves.push_back(perm[size_t(h)]);
  std::sort(g.leaves.begin(), g.leaves.end());
  for (const auto& e : edges) g.edges.push_back({perm[size_t(e[0])], perm[size_t(e[1])]});
  if (!types.empty()) {
    g.types.assign(size_t(half_edges), HalfEdgeType::Field);
    for (int h = 0; h < half_edges; ++h) g.types[size_t(perm[size_t(h)])] = types[size_t(h)];
  }
  return g;
}

namespace {

void check_bound(const Graph& g, int bound) {
  if (g.half_edges > bound)
    throw Error(ErrorCode::TooLarge, "graph has " + std::to_string(g.half_edges) +
                                         " half-edges, brute-force bound is " + std::to_string(bound));
}

// Typed multigraph data: per-vertex signature and adjacency counts
// A[u][v][s][t] = number of edges with a type-s half-edge at u and a type-t
// half-edge at v (both orientations counted, so self-loops of equal types
// count twice).
struct Multigraph {
  int n = 0;
  std::vector<std::vector<int>> signature;
  std::vector<int> adj;  // n*n*4*4

  int& at(int u, int v, int s, int t) {
    return adj[((size_t(u) * n + v) * kNumHalfEdgeTypes + s) * kNumHalfEdgeTypes + t];
  }
  int at(int u, int v, int s, int t) const {
    return adj[((size_t(u) * n + v) * kNumHalfEdgeTypes + s) * kNumHalfEdgeTypes + t];
  }
};

Multigraph build_multigraph(const Graph& g) {
  Multigraph m;
  m.n = g.num_vertices();
  m.adj.assign(size_t(m.n) * m.n * kNumHalfEdgeTypes * kNumHalfEdgeTypes, 0);
  auto vof = g.vertex_of();
  for (const auto& e : g.edges) {
    int u = vof[size_t(e[0])];
    int v = vof[size_t(e[1])];
    int s = int(g.type(e[0]));
    int t = int(g.type(e[1]));
    m.at(u, v, s, t) += 1;
    m.at(v, u, t, s) += 1;
  }
  auto leaf = g.leaf_mask();
  for (int u = 0; u < m.n; ++u) {
    std::vector<int> sig(1 + 2 * kNumHalfEdgeTypes + kNumHalfEdgeTypes * kNumHalfEdgeTypes, 0);
    sig[0] = static_cast<int>(g.vertices[size_t(u)].size());
    for (int h : g.vertices[size_t(u)]) {
      int t = int(g.type(h));
      sig[size_t(1 + t)] += 1;
      if (leaf[size_t(h)]) sig[size_t(1 + kNumHalfEdgeTypes + t)] += 1;
    }
    for (int s = 0; s < kNumHalfEdgeTypes; ++s)
      for (int t = 0; t < kNumHalfEdgeTypes; ++t)
        sig[size_t(1 + 2 * kNumHalfEdgeTypes + s * kNumHalfEdgeTypes + t)] = m.at(u, u, s, t);
    m.signature.push_back(sig);
  }
  return m;
}

// Vertices grouped by signature, groups in increasing signature order.
std::vector<std::vector<int>> signature_groups(const Multigraph& m) {
  std::map<std::vector<int>, std::vector<int>> by_sig;
  for (int u = 0; u < m.n; ++u) by_sig[m.signature[size_t(u)]].push_back(u);
  std::vector<std::vector<int>> groups;
  for (auto& [sig, vs] : by_sig) groups.push_back(vs);
  return groups;
}

// Calls visit(order) for every vertex ordering that keeps signature groups
// contiguous and in increasing signature order.
void for_each_grouped_order(std::vector<std::vector<int>> groups,
                            const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> order;
  std::function<void(size_t)> rec = [&](size_t gi) {
    if (gi == groups.size()) {
      visit(order);
      return;
    }
    auto& grp = groups[gi];
    std::sort(grp.begin(), grp.end());
    do {
      size_t base = order.size();
      order.insert(order.end(), grp.begin(), grp.end());
      rec(gi + 1);
      order.resize(base);
    } while (std::next_permutation(grp.begin(), grp.end()));
  };
  rec(0);
}

std::vector<int> encode_adjacency(const Multigraph& m, const std::vector<int>& order) {
  std::vector<int> code;
  code.reserve(size_t(m.n) * m.n * kNumHalfEdgeTypes * kNumHalfEdgeTypes / 2);
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      for (int s = 0; s < kNumHalfEdgeTypes; ++s)
        for (int t = 0; t < kNumHalfEdgeTypes; ++t) code.push_back(m.at(order[size_t(i)], order[size_t(j)], s, t));
  return code;
}

}  // namespace

std::string canonical_key(const Graph& g, int bound) {
  check_bound(g, bound);
  if (g.half_edges == 0 && g.vertices.empty()) return "";
  Multigraph m = build_multigraph(g);
  auto groups = signature_groups(m);
  std::vector<int> best;
  bool have = false;
  for_each_grouped_order(groups, [&](const std::vector<int>& order) {
    auto code = encode_adjacency(m, order);
    if (!have || code < best) {
      best = std::move(code);
      have = true;
    }
  });
  std::ostringstream os;
  os << "v" << m.n;
  for (const auto& grp : groups) {
    const auto& sig = m.signature[size_t(grp.front())];
    os << "|" << grp.size() << "x";
    for (size_t k = 0; k < sig.size(); ++k) os << (k ? "." : "") << sig[k];
  }
  os << "|a";
  for (int c : best) os << c;
  return os.str();
}

long long aut_order_multigraph(const Graph& g, int bound) {
  check_bound(g, bound);
  Multigraph m = build_multigraph(g);
  auto groups = signature_groups(m);
  std::vector<int> reference;
  for (const auto& grp : groups)
    for (int u : grp) reference.push_back(u);
  auto ref_code = encode_adjacency(m, reference);
  long long vertex_perms = 0;
  for_each_grouped_order(groups, [&](const std::vector<int>& order) {
    if (encode_adjacency(m, order) == ref_code) ++vertex_perms;
  });
  auto fact = [](int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  long long lifts = 1;
  for (int u = 0; u < m.n; ++u) {
    for (int v = u + 1; v < m.n; ++v)
      for (int s = 0; s < kNumHalfEdgeTypes; ++s)
        for (int t = 0; t < kNumHalfEdgeTypes; ++t) lifts *= fact(m.at(u, v, s, t));
    for (int s = 0; s < kNumHalfEdgeTypes; ++s) {
      int k = m.at(u, u, s, s) / 2;
      lifts *= fact(k) * (1LL << k);
      for (int t = s + 1; t < kNumHalfEdgeTypes; ++t) lifts *= fact(m.at(u, u, s, t));
    }
  }
  auto leaf = g.leaf_mask();
  for (const auto& v : g.vertices) {
    std::vector<int> per_type(kNumHalfEdgeTypes, 0);
    for (int h : v)
      if (leaf[size_t(h)]) ++per_type[size_t(g.type(h))];
    for (int c : per_type) lifts *= fact(c);
  }
  return vertex_perms * lifts;
}

long long aut_order(const Graph& g, int bound) {
  check_bound(g, bound);
  g.validate();
  int H = g.half_edges;
  if (H == 0) return 1;
  auto vof = g.vertex_of();
  auto partner = g.partner();
  auto leaf = g.leaf_mask();
  Multigraph m = build_multigraph(g);
  // Cheap vertex signature: degree, per-type counts, per-type leaf counts.
  auto vsig = [&](int v) {
    std::vector<int> s(m.signature[size_t(v)].begin(), m.signature[size_t(v)].begin() + 1 + 2 * kNumHalfEdgeTypes);
    return s;
  };
  // Visit vertices breadth-first so that most half-edges have an already
  // mapped partner and their image is forced.
  std::vector<int> order;
  std::vector<bool> vseen(size_t(g.num_vertices()), false);
  for (int start = 0; start < g.num_vertices(); ++start) {
    if (vseen[size_t(start)]) continue;
    std::vector<int> queue{start};
    vseen[size_t(start)] = true;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int h : g.vertices[size_t(v)]) {
        order.push_back(h);
        int p = partner[size_t(h)];
        if (p >= 0 && !vseen[size_t(vof[size_t(p)])]) {
          vseen[size_t(vof[size_t(p)])] = true;
          queue.push_back(vof[size_t(p)]);
        }
      }
    }
  }
  std::vector<int> img(size_t(H), -1);
  std::vector<bool> used(size_t(H), false);
  std::vector<int> vimg(size_t(g.num_vertices()), -1);
  std::vector<bool> vused(size_t(g.num_vertices()), false);
  long long count = 0;
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == order.size()) {
      ++count;
      return;
    }
    int h = order[pos];
    int v = vof[size_t(h)];
    auto try_candidate = [&](int c) {
      if (used[size_t(c)] || g.type(c) != g.type(h) || leaf[size_t(c)] != leaf[size_t(h)]) return;
      int p = partner[size_t(h)];
      if (p >= 0 && img[size_t(p)] >= 0 && partner[size_t(img[size_t(p)])] != c) return;
      img[size_t(h)] = c;
      used[size_t(c)] = true;
      rec(pos + 1);
      used[size_t(c)] = false;
      img[size_t(h)] = -1;
    };
    int p = partner[size_t(h)];
    if (vimg[size_t(v)] >= 0) {
      if (p >= 0 && img[size_t(p)] >= 0) {
        int forced = partner[size_t(img[size_t(p)])];
        if (vof[size_t(forced)] == vimg[size_t(v)]) try_candidate(forced);
        return;
      }
      for (int c : g.vertices[size_t(vimg[size_t(v)])]) try_candidate(c);
      return;
    }
    auto sig = vsig(v);
    for (int w = 0; w < g.num_vertices(); ++w) {
      if (vused[size_t(w)] || vsig(w) != sig) continue;
      vimg[size_t(v)] = w;
      vused[size_t(w)] = true;
      if (p >= 0 && img[size_t(p)] >= 0) {
        int forced = partner[size_t(img[size_t(p)])];
        if (vof[size_t(forced)] == w) try_candidate(forced);
      } else {
        for (int c : g.vertices[size_t(w)]) try_candidate(c);
      }
      vused[size_t(w)] = false;
      vimg[size_t(v)] = -1;
    }
  };
  rec(0);
  return count;
}

Graph theta_graph() {
  Graph g;
  g.half_edges = 6;
  g.vertices = {{0, 1, 2}, {3, 4, 5}};
  g.edges = {{0, 3}, {1, 4}, {2, 5}};
  return g;
}

Graph dumbbell_graph() {
  Graph g;
  g.half_edges = 6;
  g.vertices = {{0, 1, 2}, {3, 4, 5}};
  g.edges = {{0, 1}, {2, 3}, {4, 5}};
  return g;
}

Graph figure_eight_graph() {
  Graph g;
  g.half_edges = 4;
  g.vertices = {{0, 1, 2, 3}};
  g.edges = {{0, 1}, {2, 3}};
  return g;
}

Graph gamma2_graph() {
  Graph g;
  g.half_edges = 6;
  g.vertices = {{0, 1, 2}, {3, 4, 5}};
  g.leaves = {2, 5};
  g.edges = {{0, 3}, {1, 4}};
  return g;
}

}  // namespace phasekit

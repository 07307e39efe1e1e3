#include <algorithm>
#include <functional>
#include <map>

#include "phasekit/error.hpp"
#include "phasekit/graph.hpp"

namespace phasekit {

namespace {

// One vertex of a layout: the ordered half-edge types, the last `leaves`
// of which (all field-typed) are external legs.
struct VertexSpec {
  std::vector<HalfEdgeType> types;
  int leaves = 0;

  bool operator<(const VertexSpec& o) const {
    if (types != o.types) return types < o.types;
    return leaves < o.leaves;
  }
  bool operator==(const VertexSpec& o) const { return types == o.types && leaves == o.leaves; }
};

std::vector<VertexSpec> vertex_specs(const EnumerateOptions& opt) {
  using T = HalfEdgeType;
  std::vector<std::vector<HalfEdgeType>> shapes;
  if (opt.typed) {
    for (int s : opt.typed->field_degrees) shapes.push_back(std::vector<T>(size_t(s), T::Field));
    for (int l : opt.typed->lagrange_degrees) {
      std::vector<T> t{T::Lagrange};
      t.insert(t.end(), size_t(l), T::Field);
      shapes.push_back(t);
    }
    for (int m : opt.typed->ghost_degrees) {
      std::vector<T> t{T::Ghost, T::Antighost};
      t.insert(t.end(), size_t(m), T::Field);
      shapes.push_back(t);
    }
  } else {
    for (int d : opt.degrees) shapes.push_back(std::vector<T>(size_t(d), T::Field));
  }
  std::vector<VertexSpec> specs;
  for (const auto& t : shapes) {
    if (t.size() < 3)
      throw Error(ErrorCode::InvalidArgument, "vertex valences must be at least 3");
    int fields = static_cast<int>(std::count(t.begin(), t.end(), T::Field));
    int max_l = opt.allow_leaves ? std::min(fields, opt.max_leaves) : 0;
    for (int l = 0; l <= max_l; ++l) specs.push_back(VertexSpec{t, l});
  }
  std::sort(specs.begin(), specs.end());
  specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
  return specs;
}

// Calls visit(layout) for each multiset of vertex specs (as nondecreasing
// index sequences) compatible with the excess and leaf bounds.
void for_each_layout(const EnumerateOptions& opt, const std::vector<VertexSpec>& specs,
                     const std::function<void(const std::vector<VertexSpec>&)>& visit) {
  int max_leaves = opt.allow_leaves ? opt.max_leaves : 0;
  int max_vertices = 2 * opt.max_excess + max_leaves;
  std::vector<int> chosen;
  std::function<void(size_t, int, int)> rec = [&](size_t from, int half_edges, int leaves) {
    if (!chosen.empty()) {
      int V = static_cast<int>(chosen.size());
      int internal = half_edges - leaves;
      if (internal % 2 == 0 && internal / 2 - V <= opt.max_excess) {
        std::vector<VertexSpec> layout;
        for (int i : chosen) layout.push_back(specs[size_t(i)]);
        visit(layout);
      }
    }
    if (static_cast<int>(chosen.size()) >= max_vertices) return;
    for (size_t i = from; i < specs.size(); ++i) {
      int h = half_edges + static_cast<int>(specs[i].types.size());
      int l = leaves + specs[i].leaves;
      if (l > max_leaves) continue;
      chosen.push_back(static_cast<int>(i));
      rec(i, h, l);
      chosen.pop_back();
    }
  };
  rec(0, 0, 0);
}

long long factorial_ll(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

long long layout_group_order(const std::vector<VertexSpec>& layout) {
  long long order = 1;
  for (const auto& v : layout) {
    int counts[kNumHalfEdgeTypes] = {0, 0, 0, 0};
    for (auto t : v.types) ++counts[int(t)];
    counts[int(HalfEdgeType::Field)] -= v.leaves;
    for (int c : counts) order *= factorial_ll(c);
    order *= factorial_ll(v.leaves);
  }
  for (size_t i = 0; i < layout.size();) {
    size_t j = i;
    while (j < layout.size() && layout[j] == layout[i]) ++j;
    order *= factorial_ll(static_cast<int>(j - i));
    i = j;
  }
  return order;
}

// Lay out half-edges vertex by vertex; leaves are the trailing field
// half-edges of each vertex.
Graph skeleton(const std::vector<VertexSpec>& layout, bool typed) {
  Graph g;
  for (const auto& v : layout) {
    std::vector<int> block;
    int n = static_cast<int>(v.types.size());
    for (int k = 0; k < n; ++k) {
      int h = g.half_edges++;
      block.push_back(h);
      if (typed) g.types.push_back(v.types[size_t(k)]);
      if (k >= n - v.leaves) g.leaves.push_back(h);
    }
    g.vertices.push_back(block);
  }
  return g;
}

bool accept(const Graph& g, const EnumerateOptions& opt) {
  if (!opt.allow_tadpoles && g.has_self_loop()) return false;
  if (opt.connected_only && !g.connected()) return false;
  return true;
}

std::vector<GraphClass> sorted_classes(std::map<std::string, GraphClass>& found) {
  std::vector<GraphClass> out;
  for (auto& [key, cls] : found) out.push_back(std::move(cls));
  std::stable_sort(out.begin(), out.end(), [](const GraphClass& a, const GraphClass& b) {
    if (a.excess != b.excess) return a.excess < b.excess;
    return a.canonical_key < b.canonical_key;
  });
  return out;
}

}  // namespace

std::vector<GraphClass> enumerate_graphs(const EnumerateOptions& opt) {
  if (opt.max_excess < 0 && !opt.allow_leaves) return {};
  bool typed = opt.typed.has_value();
  auto specs = vertex_specs(opt);
  std::map<std::string, GraphClass> found;
  for_each_layout(opt, specs, [&](const std::vector<VertexSpec>& layout) {
    Graph base = skeleton(layout, typed);
    if (base.half_edges > opt.bound)
      throw Error(ErrorCode::TooLarge, "layout with " + std::to_string(base.half_edges) +
                                           " half-edges exceeds the brute-force bound");
    auto vof = base.vertex_of();
    auto leaf = base.leaf_mask();
    long long group = layout_group_order(layout);
    std::vector<int> mate(size_t(base.half_edges), -1);
    std::function<void()> rec = [&]() {
      int first = -1;
      for (int h = 0; h < base.half_edges; ++h)
        if (!leaf[size_t(h)] && mate[size_t(h)] < 0) {
          first = h;
          break;
        }
      if (first < 0) {
        Graph g = base;
        for (int h = 0; h < base.half_edges; ++h)
          if (mate[size_t(h)] > h) g.edges.push_back({h, mate[size_t(h)]});
        if (!accept(g, opt)) return;
        std::string key = canonical_key(g, opt.bound);
        auto it = found.find(key);
        if (it == found.end()) {
          GraphClass cls;
          cls.canonical_key = key;
          cls.representative = g;
          cls.aut_order = aut_order(g, opt.bound);
          cls.excess = g.excess();
          cls.loop_count = g.loop_count();
          cls.layout_group_order = group;
          it = found.emplace(key, std::move(cls)).first;
        }
        it->second.labeled_count += 1;
        return;
      }
      for (int h = first + 1; h < base.half_edges; ++h) {
        if (leaf[size_t(h)] || mate[size_t(h)] >= 0) continue;
        if (!opt.allow_tadpoles && vof[size_t(h)] == vof[size_t(first)]) continue;
        if (!admissible_pair(base.type(first), base.type(h))) continue;
        mate[size_t(first)] = h;
        mate[size_t(h)] = first;
        rec();
        mate[size_t(first)] = -1;
        mate[size_t(h)] = -1;
      }
    };
    rec();
  });
  return sorted_classes(found);
}

std::vector<GraphClass> enumerate_graphs_multigraph(const EnumerateOptions& opt) {
  if (opt.typed) throw Error(ErrorCode::InvalidArgument, "multigraph strategy is untyped only");
  auto specs = vertex_specs(opt);
  std::map<std::string, GraphClass> found;
  for_each_layout(opt, specs, [&](const std::vector<VertexSpec>& layout) {
    int V = static_cast<int>(layout.size());
    std::vector<int> residual;
    for (const auto& v : layout) residual.push_back(static_cast<int>(v.types.size()) - v.leaves);
    // multiplicity matrix, filled pair by pair in row-major upper-triangular order
    std::vector<std::vector<int>> mult(size_t(V), std::vector<int>(size_t(V), 0));
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < V; ++u)
      for (int v = u; v < V; ++v) pairs.emplace_back(u, v);
    std::function<void(size_t)> rec = [&](size_t pi) {
      if (pi == pairs.size()) {
        for (int r : residual)
          if (r != 0) return;
        Graph g;
        std::vector<std::vector<int>> free_slots(static_cast<size_t>(V));
        for (int u = 0; u < V; ++u) {
          std::vector<int> block;
          int n = static_cast<int>(layout[size_t(u)].types.size());
          for (int k = 0; k < n; ++k) {
            int h = g.half_edges++;
            block.push_back(h);
            if (k >= n - layout[size_t(u)].leaves) g.leaves.push_back(h);
            else free_slots[size_t(u)].push_back(h);
          }
          g.vertices.push_back(block);
        }
        std::vector<size_t> next(size_t(V), 0);
        auto take = [&](int u) { return free_slots[size_t(u)][next[size_t(u)]++]; };
        for (int u = 0; u < V; ++u)
          for (int v = u; v < V; ++v)
            for (int k = 0; k < mult[size_t(u)][size_t(v)]; ++k) {
              int a = take(u);
              int b = take(v);
              g.edges.push_back({a, b});
            }
        if (!accept(g, opt)) return;
        std::string key = canonical_key(g, opt.bound);
        if (found.count(key)) return;
        GraphClass cls;
        cls.canonical_key = key;
        cls.representative = g;
        cls.aut_order = aut_order(g, opt.bound);
        cls.excess = g.excess();
        cls.loop_count = g.loop_count();
        found.emplace(key, std::move(cls));
        return;
      }
      auto [u, v] = pairs[pi];
      // the last pair touching u must exhaust u's residual
      int cap = u == v ? residual[size_t(u)] / 2 : std::min(residual[size_t(u)], residual[size_t(v)]);
      if (u == v && !opt.allow_tadpoles) cap = 0;
      for (int k = 0; k <= cap; ++k) {
        mult[size_t(u)][size_t(v)] = k;
        residual[size_t(u)] -= u == v ? 2 * k : k;
        if (u != v) residual[size_t(v)] -= k;
        bool row_done = (v == V - 1);
        if (!row_done || residual[size_t(u)] == 0) rec(pi + 1);
        residual[size_t(u)] += u == v ? 2 * k : k;
        if (u != v) residual[size_t(v)] += k;
      }
      mult[size_t(u)][size_t(v)] = 0;
    };
    rec(0);
  });
  return sorted_classes(found);
}

}  // namespace phasekit

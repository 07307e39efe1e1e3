#ifndef PHASEKIT_GRAPH_HPP
#define PHASEKIT_GRAPH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace phasekit {

enum class HalfEdgeType : std::uint8_t { Field = 0, Lagrange = 1, Ghost = 2, Antighost = 3 };
constexpr int kNumHalfEdgeTypes = 4;

const char* to_string(HalfEdgeType t);
HalfEdgeType half_edge_type_from_string(const std::string& s);
/// Whether two half-edge types may be joined by an edge in typed graphs.
bool admissible_pair(HalfEdgeType a, HalfEdgeType b);

/// Feynman graph on half-edges 0..H-1: a vertex partition, a leaf subset and a
/// perfect matching on the remaining half-edges. Types are optional.
struct Graph {
  int half_edges = 0;
  std::vector<std::vector<int>> vertices;
  std::vector<int> leaves;
  std::vector<std::array<int, 2>> edges;
  std::vector<HalfEdgeType> types;  // empty: untyped

  bool typed() const { return !types.empty(); }
  HalfEdgeType type(int h) const { return types.empty() ? HalfEdgeType::Field : types[size_t(h)]; }

  /// Throws InvalidArgument if the partition/matching structure is broken.
  void validate() const;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_leaves() const { return static_cast<int>(leaves.size()); }
  int excess() const { return num_edges() - num_vertices(); }
  int components() const;
  int loop_count() const { return excess() + components(); }
  bool connected() const { return components() <= 1; }
  bool has_self_loop() const;

  /// vertex index of each half-edge
  std::vector<int> vertex_of() const;
  /// matched partner of each half-edge, -1 for leaves
  std::vector<int> partner() const;
  std::vector<bool> leaf_mask() const;

  /// Apply a half-edge relabeling h -> perm[h].
  Graph relabeled(const std::vector<int>& perm) const;
};

/// Default brute-force bound on |H| for automorphisms and canonical keys.
constexpr int kDefaultHalfEdgeBound = 16;

/// Order of the group of half-edge permutations preserving vertices, edges,
/// leaves and types, by exhaustive pruned search.
long long aut_order(const Graph& g, int bound = kDefaultHalfEdgeBound);

/// Independent closed form for |Aut|: vertex permutations preserving the
/// typed multigraph, times multiplicities of parallel edges, self-loop flips
/// and leaf permutations. Used as an oracle for aut_order.
long long aut_order_multigraph(const Graph& g, int bound = kDefaultHalfEdgeBound);

/// Minimal encoding of the typed multigraph over all vertex orderings; equal
/// iff isomorphic. The empty graph has the empty key.
std::string canonical_key(const Graph& g, int bound = kDefaultHalfEdgeBound);

struct GraphClass {
  std::string canonical_key;
  Graph representative;
  long long aut_order = 1;
  int excess = 0;
  int loop_count = 0;
  /// Number of labeled matchings on the standard half-edge layout that fall
  /// in this class (only filled by the matching strategy).
  long long labeled_count = 0;
  /// Order of the group of half-edge permutations preserving the standard
  /// layout (vertex blocks, leaves, types).
  long long layout_group_order = 0;
};

/// Typed vertex kinds for gauge-fixed expansions:
///  field vertex: s >= 3 field half-edges (s in field_degrees)
///  lagrange vertex: one lagrange + l field half-edges (l in lagrange_degrees)
///  ghost vertex: one ghost + one antighost + m field half-edges (m in ghost_degrees)
struct TypeSystem {
  std::set<int> field_degrees;
  std::set<int> lagrange_degrees;
  std::set<int> ghost_degrees;
};

struct EnumerateOptions {
  int max_excess = 0;
  std::set<int> degrees;  // untyped valences (leaves count towards valence)
  bool allow_leaves = false;
  int max_leaves = 0;
  bool allow_tadpoles = true;
  std::optional<TypeSystem> typed;
  bool connected_only = false;
  int bound = kDefaultHalfEdgeBound;
};

/// All isomorphism classes of nonempty graphs allowed by the options, by
/// enumerating perfect matchings on every admissible vertex layout and
/// deduplicating by canonical key. Sorted by (excess, key).
std::vector<GraphClass> enumerate_graphs(const EnumerateOptions& opt);

/// Same classes generated directly as symmetric multiplicity matrices
/// (untyped only). An independent strategy used to cross-check the former.
std::vector<GraphClass> enumerate_graphs_multigraph(const EnumerateOptions& opt);

/// Named small graphs used throughout tests and examples.
Graph theta_graph();
Graph dumbbell_graph();
Graph figure_eight_graph();
/// Two trivalent vertices, two parallel edges, one leaf per vertex.
Graph gamma2_graph();

}  // namespace phasekit

#endif  // PHASEKIT_GRAPH_HPP

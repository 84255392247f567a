// Planar rooted trees indexing moduli strata, their collapse order, and
// metric ribbon trees with boundary widths and distance embeddings.
//
// Conventions:
//  - A leafed tree with d leaves is a planar rooted tree with one root edge
//    and d leaf edges (all semi-infinite); the planar embedding is encoded
//    by the order of children at each vertex. Vertices are indexed in
//    depth-first preorder; vertex 0 carries the root edge.
//  - Interior edges are identified with their upper (child) vertex, so the
//    edge ids are 1 .. num_vertices() - 1.
//  - Edge ids for flags: 0 = root edge, 1..d = leaf edges in planar order,
//    d + v = interior edge below vertex v.
//  - The complement of the tree in the plane has d + 1 regions, labeled
//    0..d anticlockwise with the root edge adjacent to regions 0 and d;
//    region k separates leaf k from leaf k + 1 (leaf 0 and leaf d + 1 both
//    meaning the root edge).
//  - A metric ribbon tree stores its boundary vertices first (indices
//    0..boundary-1, in the fixed total order with basepoint 0), interior
//    vertices after, and positive edge lengths. Epsilon-closeness uses the
//    Euclidean norm on the pairwise-distance vector.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "plk/ainfty.hpp"

namespace plk {

struct LeafedTree {
  // children[v]: child slots of vertex v in planar (anticlockwise) order;
  // entry >= 0 is a child vertex (interior edge), entry -1 is a leaf.
  std::vector<std::vector<int>> children;

  int num_vertices() const { return (int)children.size(); }
  int num_leaves() const;
  int valence(int v) const { return (int)children[v].size() + 1; }
  bool stable() const;  // every valence >= 3
  // canonical nested-parentheses encoding; equality and order go through it
  std::string encode() const;
  bool operator==(const LeafedTree& o) const { return encode() == o.encode(); }
  bool operator!=(const LeafedTree& o) const { return !(*this == o); }
  bool operator<(const LeafedTree& o) const { return encode() < o.encode(); }
};

// the tree with a single vertex and no interior edges (final in the order)
LeafedTree corolla(int d);

// All stable d-leafed trees, duplicate-free, sorted by encoding. Throws
// std::invalid_argument for d < 2.
std::vector<LeafedTree> enumerate_stable(int d);

// interior edge ids (the non-root vertices), ascending
std::vector<int> interior_edges(const LeafedTree& t);

// Collapse a set of interior edges into vertices. Throws
// std::invalid_argument if an id is not an interior edge.
LeafedTree collapse(const LeafedTree& t, const std::set<int>& edges);

// true iff hi is obtained from lo by collapsing some (possibly no) edges
bool leq(const LeafedTree& lo, const LeafedTree& hi);

struct Flag {
  int vertex = 0;
  int edge = 0;  // edge id as described above
  bool operator<(const Flag& o) const {
    return std::tie(vertex, edge) < std::tie(o.vertex, o.edge);
  }
  bool operator==(const Flag& o) const {
    return vertex == o.vertex && edge == o.edge;
  }
};

// all flags (vertex, adjacent edge), grouped by vertex in anticlockwise
// order starting with the downward edge
std::vector<Flag> flags(const LeafedTree& t);

// the pair (j, k), j < k, of plane regions adjacent to the given edge
std::pair<int, int> edge_regions(const LeafedTree& t, int edge);

struct MetricRibbonTree {
  struct Edge {
    int u = 0, v = 0;
    double len = 0.0;
  };
  int boundary = 0;  // exterior vertices are 0 .. boundary - 1, in order
  int interior = 0;  // interior vertices are boundary .. boundary+interior-1
  std::vector<Edge> edges;

  int num_vertices() const { return boundary + interior; }
};

// Structural checks: positive lengths, connected and acyclic, boundary
// valences exactly 1, interior valences >= 3, and the four-point condition
// on boundary distances.
Report validate_ribbon(const MetricRibbonTree& m);

// distance between two vertices along the unique path
double tree_distance(const MetricRibbonTree& m, int a, int b);

// one interior vertex, n legs of length pi/2
MetricRibbonTree star_tree(int n);

// Interior vertices v_1..v_n on a common geodesic at distances sep[k-1]
// from v_1 (ascending, sep.size() == groups.size() - 1), with groups[k]
// legs of length pi/2 at v_k; boundary labeled group by group. Zero-length
// interior edges are contracted, so all separations zero gives the star.
MetricRibbonTree chain_tree(const std::vector<int>& groups,
                            const std::vector<double>& sep);

// the vector (d(o_j, o_k))_{j < k} over boundary pairs, lexicographic order
std::vector<double> metric_embed(const MetricRibbonTree& m);

// Euclidean distance of the embeddings < eps (requires equal boundary size)
bool eps_close(const MetricRibbonTree& a, const MetricRibbonTree& b,
               double eps);

// Convex hull of the boundary subset A with the induced metric; its
// boundary is exactly A, relabeled in increasing order. Throws
// std::invalid_argument if |A| < 2 or A has an invalid label.
MetricRibbonTree subtree(const MetricRibbonTree& m, const std::set<int>& A);

// Width of every flag of t against the metric ribbon tree m with
// d + 1 boundary points: distance between the flag's two adjacent plane
// regions, divided by pi. Throws std::invalid_argument on arity mismatch.
std::map<Flag, double> boundary_widths(const LeafedTree& t,
                                       const MetricRibbonTree& m);

}  // namespace plk

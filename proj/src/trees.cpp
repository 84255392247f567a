#include "plk/trees.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace plk {

namespace {

void encode_rec(const LeafedTree& t, int v, std::string& out) {
  out += '(';
  for (int c : t.children[v]) {
    if (c < 0)
      out += 'o';
    else
      encode_rec(t, c, out);
  }
  out += ')';
}

// recursive build buffer used by enumeration and collapse
struct PT {
  std::vector<PT> kids;  // empty kids never occurs for interior nodes
  bool leaf = false;
};

void flatten(const PT& n, LeafedTree& t, int v) {
  for (const PT& k : n.kids) {
    if (k.leaf) {
      t.children[v].push_back(-1);
    } else {
      int w = t.num_vertices();
      t.children[v].push_back(w);
      t.children.emplace_back();
      flatten(k, t, w);
    }
  }
}

LeafedTree from_pt(const PT& root) {
  LeafedTree t;
  t.children.emplace_back();
  flatten(root, t, 0);
  return t;
}

// all planar subtrees with n leaves whose interior vertices have >= 2
// children (valence >= 3 once the parent edge is counted)
std::vector<PT> gen_subtrees(int n) {
  if (n == 1) {
    PT leaf;
    leaf.leaf = true;
    return {leaf};
  }
  std::vector<PT> out;
  // split n leaves into k >= 2 ordered parts
  std::vector<int> parts;
  std::function<void(int, std::vector<PT>&)> rec = [&](int rest,
                                                       std::vector<PT>& acc) {
    if (rest == 0) {
      if (acc.size() >= 2) {
        PT node;
        node.kids = acc;
        out.push_back(node);
      }
      return;
    }
    for (int first = 1; first <= rest; ++first) {
      if (first == rest && acc.empty()) continue;  // need >= 2 parts
      for (const PT& sub : gen_subtrees(first)) {
        acc.push_back(sub);
        rec(rest - first, acc);
        acc.pop_back();
      }
    }
  };
  std::vector<PT> acc;
  rec(n, acc);
  return out;
}

PT collapse_rec(const LeafedTree& t, int v, const std::set<int>& edges) {
  PT node;
  for (int c : t.children[v]) {
    if (c < 0) {
      PT leaf;
      leaf.leaf = true;
      node.kids.push_back(leaf);
    } else {
      PT sub = collapse_rec(t, c, edges);
      if (edges.count(c))
        node.kids.insert(node.kids.end(), sub.kids.begin(), sub.kids.end());
      else
        node.kids.push_back(sub);
    }
  }
  return node;
}

// leaf interval [lo, hi] (1-based planar order) of the subtree above each
// vertex; fills iv[v]
void leaf_intervals(const LeafedTree& t, int v, int& next,
                    std::vector<std::pair<int, int>>& iv) {
  int lo = next + 1, hi = next;
  for (int c : t.children[v]) {
    if (c < 0) {
      ++next;
      hi = next;
    } else {
      leaf_intervals(t, c, next, iv);
      hi = iv[c].second;
    }
  }
  iv[v] = {lo, hi};
}

std::vector<std::vector<std::pair<int, double>>> adjacency(
    const MetricRibbonTree& m) {
  std::vector<std::vector<std::pair<int, double>>> adj(m.num_vertices());
  for (const auto& e : m.edges) {
    adj[e.u].push_back({e.v, e.len});
    adj[e.v].push_back({e.u, e.len});
  }
  return adj;
}

}  // namespace

int LeafedTree::num_leaves() const {
  int n = 0;
  for (const auto& ch : children)
    for (int c : ch) n += (c < 0);
  return n;
}

bool LeafedTree::stable() const {
  for (int v = 0; v < num_vertices(); ++v)
    if (valence(v) < 3) return false;
  return true;
}

std::string LeafedTree::encode() const {
  std::string out;
  encode_rec(*this, 0, out);
  return out;
}

LeafedTree corolla(int d) {
  if (d < 2) throw std::invalid_argument("corolla: need at least two leaves");
  LeafedTree t;
  t.children.push_back(std::vector<int>(d, -1));
  return t;
}

std::vector<LeafedTree> enumerate_stable(int d) {
  if (d < 2)
    throw std::invalid_argument("enumerate_stable: need at least two leaves");
  std::vector<LeafedTree> out;
  for (const PT& root : gen_subtrees(d)) out.push_back(from_pt(root));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> interior_edges(const LeafedTree& t) {
  std::vector<int> out;
  for (int v = 1; v < t.num_vertices(); ++v) out.push_back(v);
  return out;
}

LeafedTree collapse(const LeafedTree& t, const std::set<int>& edges) {
  for (int e : edges)
    if (e < 1 || e >= t.num_vertices())
      throw std::invalid_argument("collapse: not an interior edge");
  return from_pt(collapse_rec(t, 0, edges));
}

bool leq(const LeafedTree& lo, const LeafedTree& hi) {
  std::vector<int> es = interior_edges(lo);
  std::string target = hi.encode();
  for (unsigned long mask = 0; mask < (1ul << es.size()); ++mask) {
    std::set<int> sel;
    for (size_t i = 0; i < es.size(); ++i)
      if (mask & (1ul << i)) sel.insert(es[i]);
    if (collapse(lo, sel).encode() == target) return true;
  }
  return false;
}

std::vector<Flag> flags(const LeafedTree& t) {
  int d = t.num_leaves();
  std::vector<Flag> out;
  int next_leaf = 0;
  // leaf ids must follow planar (preorder) order, so walk the tree once to
  // assign them, then emit flags per vertex
  std::vector<std::vector<int>> eid(t.num_vertices());
  std::function<void(int)> walk = [&](int v) {
    for (int c : t.children[v]) {
      if (c < 0) {
        eid[v].push_back(++next_leaf);
      } else {
        eid[v].push_back(d + c);
        walk(c);
      }
    }
  };
  walk(0);
  for (int v = 0; v < t.num_vertices(); ++v) {
    out.push_back({v, v == 0 ? 0 : d + v});  // downward flag first
    for (int e : eid[v]) out.push_back({v, e});
  }
  return out;
}

std::pair<int, int> edge_regions(const LeafedTree& t, int edge) {
  int d = t.num_leaves();
  if (edge == 0) return {0, d};
  if (edge >= 1 && edge <= d) return {edge - 1, edge};
  int v = edge - d;
  if (v < 1 || v >= t.num_vertices())
    throw std::invalid_argument("edge_regions: invalid edge id");
  std::vector<std::pair<int, int>> iv(t.num_vertices());
  int next = 0;
  leaf_intervals(t, 0, next, iv);
  return {iv[v].first - 1, iv[v].second};
}

Report validate_ribbon(const MetricRibbonTree& m) {
  Report r;
  int n = m.num_vertices();
  if (m.boundary < 2) r.violations.push_back({0, "fewer than two boundary vertices"});
  for (const auto& e : m.edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
      r.violations.push_back({0, "edge endpoints out of range"});
    if (!(e.len > 0.0)) r.violations.push_back({0, "non-positive edge length"});
  }
  if (!r.ok()) return r;
  if ((int)m.edges.size() != n - 1)
    r.violations.push_back({0, "edge count does not match a tree"});
  auto adj = adjacency(m);
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto& [w, len] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) {
      r.violations.push_back({0, "tree is not connected"});
      return r;
    }
  for (int v = 0; v < n; ++v) {
    int deg = (int)adj[v].size();
    if (v < m.boundary && deg != 1)
      r.violations.push_back({0, "boundary vertex with valence != 1"});
    if (v >= m.boundary && deg < 3)
      r.violations.push_back({0, "interior vertex with valence < 3"});
  }
  // four-point condition on boundary distances
  int b = m.boundary;
  std::vector<std::vector<double>> dist(b);
  for (int j = 0; j < b; ++j) {
    dist[j].resize(b);
    for (int k = 0; k < b; ++k) dist[j][k] = tree_distance(m, j, k);
  }
  double tol = 1e-9;
  for (int i = 0; i < b; ++i)
    for (int j = i + 1; j < b; ++j)
      for (int k = j + 1; k < b; ++k)
        for (int l = k + 1; l < b; ++l) {
          double s1 = dist[i][j] + dist[k][l];
          double s2 = dist[i][k] + dist[j][l];
          double s3 = dist[i][l] + dist[j][k];
          double mx = std::max({s1, s2, s3});
          int at_max = (mx - s1 < tol) + (mx - s2 < tol) + (mx - s3 < tol);
          if (at_max < 2)
            r.violations.push_back({0, "four-point condition fails"});
        }
  return r;
}

double tree_distance(const MetricRibbonTree& m, int a, int b) {
  if (a == b) return 0.0;
  auto adj = adjacency(m);
  std::vector<double> dist(m.num_vertices(), -1.0);
  dist[a] = 0.0;
  std::vector<int> stack = {a};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto& [w, len] : adj[v])
      if (dist[w] < 0.0) {
        dist[w] = dist[v] + len;
        if (w == b) return dist[w];
        stack.push_back(w);
      }
  }
  throw std::invalid_argument("tree_distance: vertices not connected");
}

MetricRibbonTree star_tree(int n) {
  if (n < 3) throw std::invalid_argument("star_tree: need >= 3 legs");
  MetricRibbonTree m;
  m.boundary = n;
  m.interior = 1;
  const double half_pi = std::numbers::pi / 2.0;
  for (int k = 0; k < n; ++k) m.edges.push_back({k, n, half_pi});
  return m;
}

MetricRibbonTree chain_tree(const std::vector<int>& groups,
                            const std::vector<double>& sep) {
  int n = (int)groups.size();
  if (n < 1 || sep.size() + 1 != groups.size())
    throw std::invalid_argument("chain_tree: shape mismatch");
  for (size_t k = 0; k + 1 < sep.size(); ++k)
    if (sep[k] > sep[k + 1])
      throw std::invalid_argument("chain_tree: separations must ascend");
  if (!sep.empty() && sep.front() < 0.0)
    throw std::invalid_argument("chain_tree: negative separation");
  // merge interior vertices at equal separation (zero-length edges collapse)
  std::vector<double> pos = {0.0};
  std::vector<int> legs = {groups[0]};
  for (int k = 1; k < n; ++k) {
    if (sep[k - 1] > pos.back()) {
      pos.push_back(sep[k - 1]);
      legs.push_back(groups[k]);
    } else {
      legs.back() += groups[k];
    }
  }
  int ni = (int)pos.size();
  int nb = 0;
  for (int g : legs) nb += g;
  MetricRibbonTree m;
  m.boundary = nb;
  m.interior = ni;
  const double half_pi = std::numbers::pi / 2.0;
  int next_b = 0;
  for (int k = 0; k < ni; ++k) {
    for (int j = 0; j < legs[k]; ++j) m.edges.push_back({next_b++, nb + k, half_pi});
    if (k + 1 < ni) m.edges.push_back({nb + k, nb + k + 1, pos[k + 1] - pos[k]});
  }
  Report r = validate_ribbon(m);
  if (!r.ok()) throw std::invalid_argument("chain_tree: " + r.summary());
  return m;
}

std::vector<double> metric_embed(const MetricRibbonTree& m) {
  std::vector<double> out;
  for (int j = 0; j < m.boundary; ++j)
    for (int k = j + 1; k < m.boundary; ++k)
      out.push_back(tree_distance(m, j, k));
  return out;
}

bool eps_close(const MetricRibbonTree& a, const MetricRibbonTree& b,
               double eps) {
  if (a.boundary != b.boundary)
    throw std::invalid_argument("eps_close: boundary sizes differ");
  std::vector<double> va = metric_embed(a), vb = metric_embed(b);
  double s = 0.0;
  for (size_t i = 0; i < va.size(); ++i) s += (va[i] - vb[i]) * (va[i] - vb[i]);
  return std::sqrt(s) < eps;
}

MetricRibbonTree subtree(const MetricRibbonTree& m, const std::set<int>& A) {
  if (A.size() < 2) throw std::invalid_argument("subtree: need |A| >= 2");
  for (int a : A)
    if (a < 0 || a >= m.boundary)
      throw std::invalid_argument("subtree: invalid boundary label");
  auto adj = adjacency(m);
  int n = m.num_vertices();
  int a0 = *A.begin();
  // parents along a DFS from a0, then mark hull edges via root paths
  std::vector<int> parent(n, -1);
  std::vector<double> plen(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {a0};
  seen[a0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto& [w, len] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        plen[w] = len;
        stack.push_back(w);
      }
  }
  std::vector<char> in_hull(n, 0);
  in_hull[a0] = 1;
  for (int a : A)
    for (int v = a; !in_hull[v]; v = parent[v]) in_hull[v] = 1;
  // hull adjacency and kept vertices (A plus branch points)
  std::vector<std::vector<std::pair<int, double>>> hadj(n);
  for (int v = 0; v < n; ++v)
    if (in_hull[v] && parent[v] >= 0 && in_hull[parent[v]]) {
      // parent links of hull vertices stay inside the hull by construction
      hadj[v].push_back({parent[v], plen[v]});
      hadj[parent[v]].push_back({v, plen[v]});
    }
  std::vector<int> kept;
  std::map<int, int> new_id;
  for (int a : A) {
    new_id[a] = (int)new_id.size();
    kept.push_back(a);
  }
  int nb = (int)A.size();
  for (int v = 0; v < n; ++v)
    if (in_hull[v] && !A.count(v) && hadj[v].size() >= 3) {
      new_id[v] = (int)new_id.size();
      kept.push_back(v);
    }
  MetricRibbonTree out;
  out.boundary = nb;
  out.interior = (int)kept.size() - nb;
  // walk from each kept vertex through suppressed degree-2 chains
  std::set<std::pair<int, int>> done;
  for (int v : kept) {
    for (auto& [w0, len0] : hadj[v]) {
      int prev = v, cur = w0;
      double acc = len0;
      while (!new_id.count(cur)) {
        for (auto& [w, len] : hadj[cur])
          if (w != prev) {
            prev = cur;
            cur = w;
            acc += len;
            break;
          }
      }
      int a = std::min(new_id[v], new_id[cur]);
      int b = std::max(new_id[v], new_id[cur]);
      if (done.insert({a, b}).second) out.edges.push_back({a, b, acc});
    }
  }
  return out;
}

std::map<Flag, double> boundary_widths(const LeafedTree& t,
                                       const MetricRibbonTree& m) {
  int d = t.num_leaves();
  if (m.boundary != d + 1)
    throw std::invalid_argument("boundary_widths: arity mismatch");
  std::map<Flag, double> out;
  for (const Flag& f : flags(t)) {
    auto [j, k] = edge_regions(t, f.edge);
    out[f] = tree_distance(m, j, k) / std::numbers::pi;
  }
  return out;
}

}  // namespace plk

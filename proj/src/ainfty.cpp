#include "plk/ainfty.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "plk/gf2.hpp"

namespace plk {

bool Category::composable(const Chain& c) const {
  for (size_t i = 0; i + 1 < c.size(); ++i)
    if (mors[c[i]].dst != mors[c[i + 1]].src) return false;
  return !c.empty();
}

std::set<int> Category::mu(const Chain& c) const {
  auto dit = ops.find((int)c.size());
  if (dit == ops.end()) return {};
  auto it = dit->second.find(c);
  return it == dit->second.end() ? std::set<int>{} : it->second;
}

std::vector<int> Category::hom_basis(int x, int y) const {
  std::vector<int> out;
  for (size_t i = 0; i < mors.size(); ++i)
    if (mors[i].src == x && mors[i].dst == y) out.push_back((int)i);
  return out;
}

std::vector<Chain> Category::all_chains(int maxlen) const {
  std::vector<Chain> out, frontier;
  for (size_t i = 0; i < mors.size(); ++i) frontier.push_back({(int)i});
  for (int len = 1; len <= maxlen && !frontier.empty(); ++len) {
    std::vector<Chain> next;
    for (auto& c : frontier) {
      out.push_back(c);
      for (size_t i = 0; i < mors.size(); ++i)
        if (mors[c.back()].dst == mors[i].src) {
          Chain e = c;
          e.push_back((int)i);
          next.push_back(std::move(e));
        }
    }
    frontier = std::move(next);
  }
  return out;
}

std::string Report::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  os << violations.size() << " violation(s); first: [d=" << violations[0].d
     << "] " << violations[0].what;
  return os.str();
}

namespace {

std::string chain_str(const Category& c, const Chain& ch) {
  std::string s;
  for (size_t i = 0; i < ch.size(); ++i) {
    if (i) s += "|";
    s += c.mors[ch[i]].label;
  }
  return s;
}

std::string set_str(const Category& c, const std::set<int>& s) {
  std::string out;
  for (int i : s) {
    if (!out.empty()) out += "+";
    out += c.mors[i].label;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::set<int> relation_residual(const Category& c, const Chain& chain) {
  const int d = (int)chain.size();
  std::set<int> acc;
  for (int m = 1; m <= d; ++m) {
    for (int n = 0; n + m <= d; ++n) {
      std::set<int> inner = c.mu(Chain(chain.begin() + n, chain.begin() + n + m));
      for (int o : inner) {
        Chain outer(chain.begin(), chain.begin() + n);
        outer.push_back(o);
        outer.insert(outer.end(), chain.begin() + n + m, chain.end());
        f2_add(acc, c.mu(outer));
      }
    }
  }
  return acc;
}

Report validate_category(const Category& c, bool allow_endos) {
  Report rep;
  auto bad = [&](int d, std::string w) { rep.violations.push_back({d, std::move(w)}); };

  if (c.objects.empty()) bad(0, "no objects");
  {
    std::set<std::string> seen(c.objects.begin(), c.objects.end());
    if ((int)seen.size() != c.num_objects()) bad(0, "duplicate object labels");
  }
  std::set<std::string> mlabels;
  for (auto& m : c.mors) {
    if (!mlabels.insert(m.label).second) bad(0, "duplicate morphism label " + m.label);
    if (m.src < 0 || m.src >= c.num_objects() || m.dst < 0 || m.dst >= c.num_objects())
      bad(0, "morphism " + m.label + " has out-of-range endpoints");
    else if (!allow_endos && m.src >= m.dst)
      bad(0, "directedness violated by " + m.label);
  }
  if (!rep.ok()) return rep;

  // Tensor well-formedness: composability, endpoint and degree laws.
  for (auto& [d, table] : c.ops) {
    if (d < 1) bad(d, "operation arity < 1");
    for (auto& [ch, outs] : table) {
      if ((int)ch.size() != d || !c.composable(ch)) {
        bad(d, "non-composable or wrong-length chain " + chain_str(c, ch));
        continue;
      }
      int degsum = 0;
      for (int i : ch) degsum += c.mors[i].deg;
      for (int o : outs) {
        if (c.mors[o].src != c.mors[ch.front()].src ||
            c.mors[o].dst != c.mors[ch.back()].dst)
          bad(d, "output endpoints mismatch on " + chain_str(c, ch));
        if (c.mors[o].deg != degsum + 2 - d)
          bad(d, "degree law violated on " + chain_str(c, ch) + " -> " +
                     c.mors[o].label);
      }
    }
  }
  if (!rep.ok()) return rep;

  // Associativity relations. Terms need both arities <= max stored arity,
  // so instances longer than 2*max_arity - 1 hold automatically; directed
  // categories additionally cap composable chains at #objects - 1.
  int cap = std::max(2 * c.max_arity() - 1, 1);
  if (!allow_endos) cap = std::min(cap, std::max(c.num_objects() - 1, 1));
  for (auto& ch : c.all_chains(cap)) {
    auto res = relation_residual(c, ch);
    if (!res.empty())
      bad((int)ch.size(),
          "relation fails on " + chain_str(c, ch) + " residual " + set_str(c, res));
  }
  return rep;
}

std::set<int> Functor::apply(const Chain& c) const {
  auto dit = comp.find((int)c.size());
  if (dit == comp.end()) return {};
  auto it = dit->second.find(c);
  return it == dit->second.end() ? std::set<int>{} : it->second;
}

Functor identity_functor(const Category& c) {
  Functor f;
  f.src = f.dst = &c;
  f.obj_map.resize(c.num_objects());
  for (int i = 0; i < c.num_objects(); ++i) f.obj_map[i] = i;
  for (size_t i = 0; i < c.mors.size(); ++i) f.comp[1][{(int)i}] = {(int)i};
  return f;
}

namespace {

// All compositions of d into ordered positive parts.
void compositions(int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  for (int s = 1; s <= d; ++s) {
    cur.push_back(s);
    compositions(d - s, cur, out);
    cur.pop_back();
  }
}

// mu_B^r summed over all choices of representatives from the given blocks.
std::set<int> mu_multilinear(const Category& B, const std::vector<std::set<int>>& blocks) {
  std::set<int> acc;
  Chain pick(blocks.size());
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == blocks.size()) {
      f2_add(acc, B.mu(pick));
      return;
    }
    for (int o : blocks[i]) {
      pick[i] = o;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return acc;
}

}  // namespace

Report check_functor(const Functor& f) {
  Report rep;
  const Category& A = *f.src;
  const Category& B = *f.dst;
  auto bad = [&](int d, std::string w) { rep.violations.push_back({d, std::move(w)}); };

  if ((int)f.obj_map.size() != A.num_objects()) {
    bad(0, "object map has wrong size");
    return rep;
  }
  for (int x : f.obj_map)
    if (x < 0 || x >= B.num_objects()) {
      bad(0, "object map out of range");
      return rep;
    }
  // Component well-formedness: endpoints and degree shift 1 - d.
  for (auto& [d, table] : f.comp) {
    for (auto& [ch, outs] : table) {
      if ((int)ch.size() != d || !A.composable(ch)) {
        bad(d, "bad component chain " + chain_str(A, ch));
        continue;
      }
      int degsum = 0;
      for (int i : ch) degsum += A.mors[i].deg;
      for (int o : outs) {
        if (B.mors[o].src != f.obj_map[A.mors[ch.front()].src] ||
            B.mors[o].dst != f.obj_map[A.mors[ch.back()].dst])
          bad(d, "component endpoints mismatch on " + chain_str(A, ch));
        if (B.mors[o].deg != degsum + 1 - d)
          bad(d, "component degree law violated on " + chain_str(A, ch));
      }
    }
  }
  if (!rep.ok()) return rep;

  int maxF = f.comp.empty() ? 0 : f.comp.rbegin()->first;
  int cap = std::max({2 * A.max_arity() - 1, 2 * maxF, 1});
  cap = std::min(cap, std::max(A.num_objects() - 1, 1));
  for (auto& ch : A.all_chains(cap)) {
    const int d = (int)ch.size();
    std::set<int> lhs;
    // F^{d-m+1} with one source operation inserted.
    for (int m = 1; m <= d; ++m)
      for (int n = 0; n + m <= d; ++n) {
        std::set<int> inner = A.mu(Chain(ch.begin() + n, ch.begin() + n + m));
        for (int o : inner) {
          Chain outer(ch.begin(), ch.begin() + n);
          outer.push_back(o);
          outer.insert(outer.end(), ch.begin() + n + m, ch.end());
          f2_add(lhs, f.apply(outer));
        }
      }
    // mu_B^r over all block decompositions.
    std::set<int> rhs;
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    compositions(d, cur, parts);
    for (auto& p : parts) {
      std::vector<std::set<int>> blocks;
      int at = 0;
      bool dead = false;
      for (int s : p) {
        blocks.push_back(f.apply(Chain(ch.begin() + at, ch.begin() + at + s)));
        if (blocks.back().empty()) dead = true;
        at += s;
      }
      if (dead) continue;
      if (p.size() == 1) {
        for (int o : blocks[0]) f2_add(rhs, B.mu({o}));
      } else {
        f2_add(rhs, mu_multilinear(B, blocks));
      }
    }
    if (lhs != rhs)
      bad(d, "functor equation fails on " + chain_str(A, ch) + ": lhs " +
                 set_str(B, lhs) + " rhs " + set_str(B, rhs));
  }
  return rep;
}

ChainComplex hom_chain_complex(const Category& c, int x, int y) {
  ChainComplex out;
  std::map<std::pair<int, int>, int> pos;  // (deg, morphism) -> coordinate
  for (int i : c.hom_basis(x, y)) {
    int deg = c.mors[i].deg;
    pos[{deg, i}] = (int)out.space.labels[deg].size();
    out.space.labels[deg].push_back(c.mors[i].label);
  }
  for (auto& [deg, labs] : out.space.labels) {
    GF2Matrix d(out.space.dim(deg + 1), (int)labs.size());
    int col = 0;
    for (int i : c.hom_basis(x, y)) {
      if (c.mors[i].deg != deg) continue;
      for (int o : c.mu({i})) d.set(pos.at({deg + 1, o}), col);
      ++col;
    }
    out.diff[deg] = d;
  }
  return out;
}

std::map<int, int> HCategory::hom_dims(int x, int y) const {
  std::map<int, int> out;
  for (auto& c : classes)
    if (c.src == x && c.dst == y) ++out[c.deg];
  return out;
}

namespace {

// Basis positions of hom(x,y) in a fixed degree.
struct DegSlot {
  std::vector<int> mors;           // category morphism indices
  std::map<int, int> pos;          // morphism index -> coordinate
};

DegSlot slot(const Category& c, int x, int y, int deg) {
  DegSlot s;
  for (int i : c.hom_basis(x, y))
    if (c.mors[i].deg == deg) {
      s.pos[i] = (int)s.mors.size();
      s.mors.push_back(i);
    }
  return s;
}

GF2Vec to_vec(const DegSlot& s, const std::set<int>& combo) {
  GF2Vec v((int)s.mors.size());
  for (int i : combo) {
    auto it = s.pos.find(i);
    if (it == s.pos.end()) throw std::logic_error("combination leaves the slot");
    v.flip(it->second);
  }
  return v;
}

}  // namespace

HCategory cohomological_category(const Category& c) {
  HCategory h;
  h.objects = c.objects;

  // Choose representatives per (x, y, degree): kernel of mu^1 modulo image.
  for (int x = 0; x < c.num_objects(); ++x) {
    for (int y = 0; y < c.num_objects(); ++y) {
      std::set<int> degs;
      for (int i : c.hom_basis(x, y)) degs.insert(c.mors[i].deg);
      for (int deg : degs) {
        DegSlot s = slot(c, x, y, deg);
        DegSlot s_up = slot(c, x, y, deg + 1);
        DegSlot s_dn = slot(c, x, y, deg - 1);
        GF2Matrix d((int)s_up.mors.size(), (int)s.mors.size());
        for (size_t j = 0; j < s.mors.size(); ++j)
          for (int o : c.mu({s.mors[j]})) d.set(s_up.pos.at(o), (int)j);
        GF2Matrix d_in((int)s.mors.size(), (int)s_dn.mors.size());
        for (size_t j = 0; j < s_dn.mors.size(); ++j)
          for (int o : c.mu({s_dn.mors[j]})) d_in.set(s.pos.at(o), (int)j);
        Subspace bdry = Subspace::span((int)s.mors.size(), d_in.image_basis());
        Subspace seen = bdry;
        for (auto& k : d.kernel_basis()) {
          if (seen.contains(k)) continue;
          seen.insert(k);
          std::set<int> rep;
          for (size_t i = 0; i < s.mors.size(); ++i)
            if (k.get((int)i)) rep.insert(s.mors[i]);
          h.classes.push_back({x, y, deg, rep});
        }
      }
    }
  }

  // Composition in terms of the chosen representatives.
  auto express = [&](int x, int y, int deg, const std::set<int>& cocycle) {
    // Solve cocycle = sum of class reps + coboundary, return the class part.
    DegSlot s = slot(c, x, y, deg);
    DegSlot s_dn = slot(c, x, y, deg - 1);
    std::vector<int> cls;
    for (size_t i = 0; i < h.classes.size(); ++i)
      if (h.classes[i].src == x && h.classes[i].dst == y && h.classes[i].deg == deg)
        cls.push_back((int)i);
    GF2Matrix A((int)s.mors.size(), (int)cls.size() + (int)s_dn.mors.size());
    for (size_t j = 0; j < cls.size(); ++j)
      for (int m : h.classes[cls[j]].rep) A.set(s.pos.at(m), (int)j);
    for (size_t j = 0; j < s_dn.mors.size(); ++j)
      for (int o : c.mu({s_dn.mors[j]}))
        A.set(s.pos.at(o), (int)(cls.size() + j));
    GF2Vec b = to_vec(s, cocycle), sol;
    if (!A.solve(b, sol))
      throw std::logic_error("cocycle not expressible in class basis");
    std::set<int> out;
    for (size_t j = 0; j < cls.size(); ++j)
      if (sol.get((int)j)) out.insert(cls[j]);
    return out;
  };

  for (size_t ia = 0; ia < h.classes.size(); ++ia) {
    for (size_t ib = 0; ib < h.classes.size(); ++ib) {
      const auto& A = h.classes[ia];
      const auto& B = h.classes[ib];
      if (A.dst != B.src) continue;
      std::set<int> prod;
      for (int a : A.rep)
        for (int b : B.rep) f2_add(prod, c.mu({a, b}));
      auto cls = express(A.src, B.dst, A.deg + B.deg, prod);
      if (!cls.empty()) h.compose[{(int)ia, (int)ib}] = cls;
    }
  }

  // Associativity of the induced composition on all composable triples.
  auto comp = [&](int ia, int ib) -> std::set<int> {
    auto it = h.compose.find({ia, ib});
    return it == h.compose.end() ? std::set<int>{} : it->second;
  };
  for (size_t ia = 0; ia < h.classes.size(); ++ia)
    for (size_t ib = 0; ib < h.classes.size(); ++ib)
      for (size_t ic = 0; ic < h.classes.size(); ++ic) {
        if (h.classes[ia].dst != h.classes[ib].src) continue;
        if (h.classes[ib].dst != h.classes[ic].src) continue;
        std::set<int> l, r;
        for (int ab : comp((int)ia, (int)ib)) f2_add(l, comp(ab, (int)ic));
        for (int bc : comp((int)ib, (int)ic)) f2_add(r, comp((int)ia, bc));
        if (l != r) throw std::logic_error("induced composition not associative");
      }
  return h;
}

}  // namespace plk

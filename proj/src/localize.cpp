#include "plk/localize.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace plk {

bool DgCat::is_unit(int g) const {
  int o = gens[g].src;
  return gens[g].dst == o && o < (int)unit_of.size() && unit_of[o] == g;
}

std::set<int> DgCat::diff(const std::set<int>& v) const {
  std::set<int> out;
  for (int g : v) {
    auto it = d1.find(g);
    if (it != d1.end()) f2_add(out, it->second);
  }
  return out;
}

std::set<int> DgCat::compose(const std::set<int>& second,
                             const std::set<int>& first) const {
  std::set<int> out;
  for (int f : first)
    for (int g : second) {
      auto it = m2.find({f, g});
      if (it != m2.end()) f2_add(out, it->second);
    }
  return out;
}

std::vector<int> DgCat::hom_gens(int x, int y) const {
  std::vector<int> out;
  for (int g = 0; g < (int)gens.size(); ++g)
    if (gens[g].src == x && gens[g].dst == y) out.push_back(g);
  return out;
}

ChainComplex DgCat::hom_cx(int x, int y) const {
  ChainComplex out;
  std::map<int, int> pos;  // gen -> position within its degree
  for (int g : hom_gens(x, y)) {
    pos[g] = out.space.dim(gens[g].deg);
    out.space.labels[gens[g].deg].push_back(gens[g].label);
  }
  for (auto& [deg, labs] : out.space.labels) {
    GF2Matrix d(out.space.dim(deg + 1), (int)labs.size());
    for (auto& [g, p] : pos) {
      if (gens[g].deg != deg) continue;
      auto it = d1.find(g);
      if (it == d1.end()) continue;
      for (int h : it->second) d.set(pos.at(h), p);
    }
    out.diff[deg] = d;
  }
  return out;
}

Report validate_dg(const DgCat& c) {
  Report rep;
  auto bad = [&](int d, std::string w) {
    rep.violations.push_back({d, std::move(w)});
  };

  if ((int)c.unit_of.size() != c.num_objects()) {
    bad(0, "unit table size mismatch");
    return rep;
  }
  for (int o = 0; o < c.num_objects(); ++o) {
    int u = c.unit_of[o];
    if (u < 0) continue;
    const DgGen& g = c.gens[u];
    if (g.src != o || g.dst != o || g.deg != 0)
      bad(0, "unit of " + c.objects[o] + " has wrong shape");
    if (!c.diff({u}).empty()) bad(1, "unit of " + c.objects[o] + " not closed");
  }
  for (auto& [g, v] : c.d1) {
    for (int h : v)
      if (c.gens[h].src != c.gens[g].src || c.gens[h].dst != c.gens[g].dst ||
          c.gens[h].deg != c.gens[g].deg + 1)
        bad(1, "differential of " + c.gens[g].label + " leaves its degree");
    if (!c.diff(v).empty())
      bad(1, "differential does not square to zero on " + c.gens[g].label);
  }
  for (auto& [key, v] : c.m2) {
    auto& [f, g] = key;
    if (c.gens[f].dst != c.gens[g].src) {
      bad(2, "composition entry on non-composable generators");
      continue;
    }
    for (int h : v)
      if (c.gens[h].src != c.gens[f].src || c.gens[h].dst != c.gens[g].dst ||
          c.gens[h].deg != c.gens[f].deg + c.gens[g].deg)
        bad(2, "composition " + c.gens[g].label + "." + c.gens[f].label +
                   " has wrong shape");
  }
  // unit laws, Leibniz rule and associativity
  for (int f = 0; f < (int)c.gens.size(); ++f) {
    int es = c.unit_of[c.gens[f].src], ed = c.unit_of[c.gens[f].dst];
    if (ed >= 0 && c.compose({ed}, {f}) != std::set<int>{f})
      bad(2, "right unit law fails on " + c.gens[f].label);
    if (es >= 0 && c.compose({f}, {es}) != std::set<int>{f})
      bad(2, "left unit law fails on " + c.gens[f].label);
  }
  for (int f = 0; f < (int)c.gens.size(); ++f) {
    for (int g = 0; g < (int)c.gens.size(); ++g) {
      if (c.gens[f].dst != c.gens[g].src) continue;
      std::set<int> gf = c.compose({g}, {f});
      std::set<int> lhs = c.diff(gf);
      f2_add(lhs, c.compose({g}, c.diff({f})));
      f2_add(lhs, c.compose(c.diff({g}), {f}));
      if (!lhs.empty())
        bad(2, "Leibniz rule fails on (" + c.gens[g].label + ", " +
                   c.gens[f].label + ")");
      for (int h = 0; h < (int)c.gens.size(); ++h) {
        if (c.gens[g].dst != c.gens[h].src) continue;
        if (c.compose({h}, gf) != c.compose(c.compose({h}, {g}), {f}))
          bad(3, "associativity fails on (" + c.gens[h].label + ", " +
                     c.gens[g].label + ", " + c.gens[f].label + ")");
      }
    }
  }
  return rep;
}

DgCat dg_from_category(const Category& c) {
  if (c.max_arity() > 2)
    throw std::invalid_argument("dg_from_category: operations of arity > 2");
  DgCat out;
  out.objects = c.objects;
  for (auto& m : c.mors) out.gens.push_back({m.src, m.dst, m.deg, m.label});
  for (int o = 0; o < c.num_objects(); ++o) {
    out.unit_of.push_back((int)out.gens.size());
    out.gens.push_back({o, o, 0, "e_" + c.objects[o]});
  }
  const int nm = (int)c.mors.size();
  for (int i = 0; i < nm; ++i) {
    std::set<int> d = c.mu({i});
    if (!d.empty()) out.d1[i] = d;
  }
  for (int i = 0; i < nm; ++i)
    for (int j = 0; j < nm; ++j) {
      if (c.mors[i].dst != c.mors[j].src) continue;
      std::set<int> v = c.mu({i, j});
      if (!v.empty()) out.m2[{i, j}] = v;
    }
  for (int i = 0; i < nm; ++i) {
    out.m2[{i, out.unit_of[c.mors[i].dst]}] = {i};
    out.m2[{out.unit_of[c.mors[i].src], i}] = {i};
  }
  for (int o = 0; o < c.num_objects(); ++o)
    out.m2[{out.unit_of[o], out.unit_of[o]}] = {out.unit_of[o]};
  return out;
}

std::set<int> DgModel::express(int i, int j, const PreHom& t) const {
  const PairData& pd = pairs.at({i, j});
  std::set<int> entries;
  std::map<int, std::vector<int>> entry_at;  // deg -> pos -> entry
  for (size_t k = 0; k < pd.basis.entries.size(); ++k)
    entry_at[pd.basis.degree[k]].push_back((int)k);
  for (auto& [deg, v] : pd.basis.to_vectors(t, pd.space))
    for (int p = 0; p < v.n; ++p)
      if (v.get(p)) entries.insert(entry_at.at(deg)[p]);
  std::set<int> out;
  if (pd.pivot >= 0 && entries.count(pd.pivot)) {
    f2_add(entries, pd.unit_entries);
    out.insert(cat.unit_of[i]);
  }
  for (int k : entries) out.insert(pd.entry_gen[k]);
  return out;
}

DgModel dg_from_modules(const std::vector<Module>& mods) {
  DgModel md;
  md.mods = mods;
  md.cat.objects.resize(mods.size());
  for (size_t i = 0; i < mods.size(); ++i)
    md.cat.objects[i] = "M" + std::to_string(i);
  md.cat.unit_of.assign(mods.size(), -1);

  const int n = (int)mods.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      DgModel::PairData pd;
      ChainComplex q = hom_complex(mods[i], mods[j], &pd.basis);
      pd.space = q.space;
      pd.entry_gen.assign(pd.basis.entries.size(), -1);
      if (i == j && !mods[i].elems.empty()) {
        for (size_t x = 0; x < mods[i].elems.size(); ++x)
          pd.unit_entries.insert(pd.basis.find((int)x, {}, (int)x));
        pd.pivot = *pd.unit_entries.begin();
      }
      // label lookup: replay the per-degree emission order of hom_complex
      std::vector<std::string> lab(pd.basis.entries.size());
      {
        std::map<int, int> counter;
        for (size_t k = 0; k < pd.basis.entries.size(); ++k) {
          int deg = pd.basis.degree[k];
          lab[k] = pd.space.labels.at(deg)[counter[deg]++];
        }
      }
      for (size_t k = 0; k < pd.basis.entries.size(); ++k) {
        if ((int)k == pd.pivot) {
          pd.entry_gen[k] = -1;  // replaced by the unit generator
          md.cat.unit_of[i] = (int)md.cat.gens.size();
          md.cat.gens.push_back({i, i, 0, "e_M" + std::to_string(i)});
          md.gen_ph.push_back(identity_prehom(mods[i]));
        } else {
          pd.entry_gen[k] = (int)md.cat.gens.size();
          md.cat.gens.push_back(
              {i, j, pd.basis.degree[k],
               "M" + std::to_string(i) + ">" + std::to_string(j) + ":" + lab[k]});
          md.gen_ph.push_back(pd.basis.basis_prehom(k));
        }
      }
      // the unit generator replaces the pivot in the lookup table
      if (pd.pivot >= 0) pd.entry_gen[pd.pivot] = md.cat.unit_of[i];
      md.pairs[{i, j}] = std::move(pd);
    }
  }

  for (int g = 0; g < (int)md.cat.gens.size(); ++g) {
    const DgGen& gg = md.cat.gens[g];
    PreHom dg = q_diff(mods[gg.src], mods[gg.dst], md.gen_ph[g]);
    if (!dg.is_zero()) {
      std::set<int> v = md.express(gg.src, gg.dst, dg);
      if (!v.empty()) md.cat.d1[g] = v;
    }
  }
  for (int f = 0; f < (int)md.cat.gens.size(); ++f) {
    for (int g = 0; g < (int)md.cat.gens.size(); ++g) {
      const DgGen& gf = md.cat.gens[f];
      const DgGen& gg = md.cat.gens[g];
      if (gf.dst != gg.src) continue;
      PreHom c = q_compose(mods[gf.dst], md.gen_ph[g], md.gen_ph[f]);
      if (c.is_zero()) continue;
      std::set<int> v = md.express(gf.src, gg.dst, c);
      if (!v.empty()) md.cat.m2[{f, g}] = v;
    }
  }
  return md;
}

std::set<int> QuotientCat::objects_of(const BarChain& c) const {
  return {b.gens[c.front()].src, b.gens[c.back()].dst};
}

int QuotientCat::chain_deg(const BarChain& c) const {
  int d = 1 - (int)c.size();
  for (int g : c) d += b.gens[g].deg;
  return d;
}

namespace {

// a unit generator may occupy only the first or the last slot
bool reduced_ok(const DgCat& b, const BarChain& c) {
  for (size_t i = 1; i + 1 < c.size(); ++i)
    if (b.is_unit(c[i])) return false;
  return true;
}

}  // namespace

BarSum QuotientCat::d1(const BarSum& v) const {
  BarSum out;
  for (const BarChain& c : v) {
    const int len = (int)c.size();
    for (int n = 0; n < len; ++n) {
      auto it = b.d1.find(c[n]);
      if (it == b.d1.end()) continue;
      for (int g : it->second) {
        BarChain t = c;
        t[n] = g;
        if (reduced_ok(b, t)) f2_toggle(out, t);
      }
    }
    for (int n = 0; n + 1 < len; ++n) {
      auto it = b.m2.find({c[n], c[n + 1]});
      if (it == b.m2.end()) continue;
      for (int g : it->second) {
        BarChain t(c.begin(), c.begin() + n);
        t.push_back(g);
        t.insert(t.end(), c.begin() + n + 2, c.end());
        if (reduced_ok(b, t)) f2_toggle(out, t);
      }
    }
  }
  return out;
}

BarSum QuotientCat::m2(const BarSum& second, const BarSum& first) const {
  BarSum out;
  for (const BarChain& cf : first) {
    for (const BarChain& cs : second) {
      if (b.gens[cf.back()].dst != b.gens[cs.front()].src)
        throw std::invalid_argument("m2: chains not composable");
      if ((int)(cf.size() + cs.size()) - 1 > cap)
        throw std::logic_error("m2: length cap exceeded");
      auto it = b.m2.find({cf.back(), cs.front()});
      if (it == b.m2.end()) continue;
      for (int g : it->second) {
        BarChain t(cf.begin(), cf.end() - 1);
        t.push_back(g);
        t.insert(t.end(), cs.begin() + 1, cs.end());
        if (reduced_ok(b, t)) f2_toggle(out, t);
      }
    }
  }
  return out;
}

BarSum QuotientCat::pi1(const std::set<int>& gens) const {
  BarSum out;
  for (int g : gens) out.insert({g});
  return out;
}

std::vector<BarChain> QuotientCat::hom_basis(int y0, int y1, int len_cap,
                                             int dmin, int dmax) const {
  std::map<int, std::vector<int>> by_src;
  for (int g = 0; g < (int)b.gens.size(); ++g)
    by_src[b.gens[g].src].push_back(g);
  // degree increments per appended generator, for window pruning
  long long step_lo = 0, step_hi = 0;
  const bool windowed = dmin != INT_MIN || dmax != INT_MAX;
  if (windowed)
    for (auto& g : b.gens) {
      step_lo = std::min(step_lo, (long long)g.deg - 1);
      step_hi = std::max(step_hi, (long long)g.deg - 1);
    }
  std::vector<BarChain> out;
  BarChain cur;
  long long cdeg = 1;  // chain degree of cur (valid once non-empty)
  std::function<void()> dfs = [&]() {
    if (!cur.empty() && b.gens[cur.back()].dst == y1 && cdeg >= dmin &&
        cdeg <= dmax)
      out.push_back(cur);
    if ((int)cur.size() == len_cap) return;
    int at = cur.empty() ? y0 : b.gens[cur.back()].dst;
    if (!cur.empty() && !sub.count(at)) return;
    if (cur.size() >= 2 && b.is_unit(cur.back())) return;
    if (windowed && !cur.empty()) {
      long long k = len_cap - (long long)cur.size();
      if (cdeg + k * std::min(step_lo, 0LL) > dmax ||
          cdeg + k * std::max(step_hi, 0LL) < dmin)
        return;
    }
    auto it = by_src.find(at);
    if (it == by_src.end()) return;
    for (int g : it->second) {
      cur.push_back(g);
      cdeg += b.gens[g].deg - 1;
      dfs();
      cdeg -= b.gens[g].deg - 1;
      cur.pop_back();
    }
  };
  dfs();
  return out;
}

ChainComplex QuotientCat::hom_cx(int y0, int y1, int len_cap,
                                 std::map<BarChain, std::pair<int, int>>* pos_out,
                                 int dmin, int dmax) const {
  std::vector<BarChain> chains = hom_basis(y0, y1, len_cap, dmin, dmax);
  ChainComplex out;
  std::map<BarChain, std::pair<int, int>> pos;
  for (const BarChain& c : chains) {
    int deg = chain_deg(c);
    pos[c] = {deg, out.space.dim(deg)};
    std::string lab;
    for (int g : c) lab += (lab.empty() ? "" : "|") + b.gens[g].label;
    out.space.labels[deg].push_back(lab);
  }
  for (auto& [deg, labs] : out.space.labels) {
    if (deg >= dmax) continue;  // differential would leave the window
    GF2Matrix d(out.space.dim(deg + 1), (int)labs.size());
    for (auto& [c, dp] : pos) {
      if (dp.first != deg) continue;
      for (const BarChain& t : d1({c})) d.set(pos.at(t).second, dp.second);
    }
    out.diff[deg] = d;
  }
  if (pos_out) *pos_out = pos;
  return out;
}

bool QuotientCat::stable_at(int y0, int y1, int deg) const {
  auto dimh = [&](int len_cap) {
    auto h = hom_cx(y0, y1, len_cap, nullptr, deg - 1, deg + 1).cohomology_dims();
    auto it = h.find(deg);
    return it == h.end() ? 0 : it->second;
  };
  return dimh(cap) == dimh(cap + 1);
}

QuotientCat dg_quotient(const DgCat& b, const std::set<int>& sub, int cap,
                        bool check_stability, bool verify) {
  QuotientCat q;
  q.b = b;
  q.sub = sub;
  q.cap = cap < 0 ? b.num_objects() + 2 : cap;
  for (int o : sub)
    if (o < 0 || o >= b.num_objects())
      throw std::invalid_argument("dg_quotient: bad subcategory object");
  if (!verify) return q;
  for (int x = 0; x < b.num_objects(); ++x) {
    for (int y = 0; y < b.num_objects(); ++y) {
      ChainComplex cl = q.hom_cx(x, y, q.cap);
      if (!cl.square_zero())
        throw std::logic_error("quotient differential does not square to zero");
      if (!check_stability) continue;
      auto hl = cl.cohomology_dims();
      auto hl1 = q.hom_cx(x, y, q.cap + 1).cohomology_dims();
      for (auto& [deg, labs] : cl.space.labels) {
        auto it0 = hl.find(deg);
        auto it1 = hl1.find(deg);
        int d0 = it0 == hl.end() ? 0 : it0->second;
        int d1v = it1 == hl1.end() ? 0 : it1->second;
        if (d0 != d1v) q.stable = false;
      }
    }
  }
  return q;
}

Orthogonality orthogonality(const DgCat& b, int y, const std::set<int>& sub) {
  Orthogonality o;
  o.left = o.right = true;
  for (int x : sub) {
    if (!b.hom_cx(x, y).cohomology_dims().empty()) o.right = false;
    if (!b.hom_cx(y, x).cohomology_dims().empty()) o.left = false;
  }
  return o;
}

InversionCertificate invert_quasi_unit(const Category& e, int t_mor, int cap) {
  if (t_mor < 0 || t_mor >= (int)e.mors.size())
    throw std::invalid_argument("invert_quasi_unit: bad morphism index");
  const Mor& tm = e.mors[t_mor];
  if (tm.deg != 0)
    throw std::invalid_argument("invert_quasi_unit: morphism must have degree 0");
  if (!e.mu({t_mor}).empty())
    throw std::invalid_argument("invert_quasi_unit: morphism is not closed");

  Module m0 = yoneda(e, tm.src), m1 = yoneda(e, tm.dst);
  // position of t among the elements of yoneda(dst)
  int telem = 0;
  for (int i = 0; i < t_mor; ++i)
    if (e.mors[i].dst == tm.dst) ++telem;
  // morphisms behind the non-unit elements of yoneda(src)
  std::vector<int> back;
  for (size_t i = 0; i < e.mors.size(); ++i)
    if (e.mors[i].dst == tm.src) back.push_back((int)i);
  const int unit0 = (int)m0.elems.size() - 1;

  PreHom th;
  th.deg = 0;
  for (auto& key : prehom_domain(m0)) {
    auto& [v, c] = key;
    std::set<int> outs;
    if (v == unit0)
      outs = c.empty() ? std::set<int>{telem} : m1.act(telem, c);
    else {
      Chain full = c;
      full.push_back(back[v]);
      outs = m1.act(telem, full);
    }
    if (!outs.empty()) th.comp[key] = outs;
  }
  if (!q_diff(m0, m1, th).is_zero())
    throw std::logic_error("yoneda image of a closed morphism is not closed");

  ConeData cd = cone_of(m0, m1, th);
  DgModel md = dg_from_modules({m0, m1, cd.cone});

  InversionCertificate cert;
  cert.q = dg_quotient(md.cat, {2}, cap, /*check_stability=*/false,
                       /*verify=*/false);
  const QuotientCat& q = cert.q;

  auto gi1 = md.express(1, 2, cd.incl1);
  auto gi0 = md.express(0, 2, cd.incl0);
  auto gp0 = md.express(2, 0, cd.proj0);
  auto gp1 = md.express(2, 1, cd.proj1);
  auto gt = md.express(0, 1, th);

  for (int g1 : gi1)
    for (int g2 : gp0) cert.a.insert({g1, g2});

  BarSum pt = q.pi1(gt);
  BarSum eY0 = q.pi1({md.cat.unit_of[0]});
  BarSum eY1 = q.pi1({md.cat.unit_of[1]});

  if (!q.d1(cert.a).empty()) {
    cert.why = "candidate inverse is not closed";
    return cert;
  }
  // mu2(t, a) + e_{Y1} = d(proj1 (x) incl1), exactly
  {
    BarSum lhs = q.m2(pt, cert.a);
    f2_add(lhs, eY1);
    BarSum prim;
    for (int g1 : gi1)
      for (int g2 : gp1) prim.insert({g1, g2});
    f2_add(lhs, q.d1(prim));
    if (!lhs.empty()) {
      cert.why = "right inverse identity fails";
      return cert;
    }
  }
  // mu2(a, t) + e_{Y0} = d(proj0 (x) incl0), exactly
  {
    BarSum lhs = q.m2(cert.a, pt);
    f2_add(lhs, eY0);
    BarSum prim;
    for (int g1 : gi0)
      for (int g2 : gp0) prim.insert({g1, g2});
    f2_add(lhs, q.d1(prim));
    if (!lhs.empty()) {
      cert.why = "left inverse identity fails";
      return cert;
    }
  }
  // nondegeneracy: the units must survive in the capped quotient cohomology
  for (int j : {0, 1}) {
    std::map<BarChain, std::pair<int, int>> pos;
    ChainComplex cx = q.hom_cx(j, j, q.cap, &pos, -1, 0);
    Subspace bdry(cx.space.dim(0));
    const GF2Matrix& d = cx.d(-1);
    for (int col = 0; col < d.cols; ++col) {
      GF2Vec v(d.rows);
      for (int r = 0; r < d.rows; ++r)
        if (d.get(r, col)) v.set(r);
      bdry.insert(v);
    }
    GF2Vec ev(cx.space.dim(0));
    ev.set(pos.at({md.cat.unit_of[j]}).second);
    if (bdry.contains(ev)) {
      cert.why = "unit of Y" + std::to_string(j) +
                 " is exact in the quotient (not invertible)";
      return cert;
    }
  }
  cert.stable = q.stable_at(0, 0, 0) && q.stable_at(1, 1, 0);
  cert.ok = true;
  return cert;
}

}  // namespace plk

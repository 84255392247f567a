#include "plk/koszul.hpp"

#include <sstream>
#include <stdexcept>

namespace plk {

Module simple_module(const Category& b, int obj) {
  Module m;
  m.base = b;
  m.elems.push_back({obj, 0, "s" + std::to_string(obj)});
  return m;
}

std::vector<Module> simple_modules(const Category& b) {
  std::vector<Module> out;
  for (int i = 0; i < b.num_objects(); ++i) out.push_back(simple_module(b, i));
  return out;
}

namespace {

// Per-pair quasi-iso check for the first-order component of the
// module-valued functor of a bimodule.
void functor_pairs_quasi_iso(const Bimodule& n, Report& rep,
                             std::map<std::pair<int, int>, std::map<int, int>>* hs) {
  const Category& A = n.acat;
  for (int p = 0; p < A.num_objects(); ++p) {
    for (int q = p + 1; q < A.num_objects(); ++q) {
      ChainComplex src = hom_chain_complex(A, p, q);
      Module sp = bimodule_module(n, p);
      Module sq = bimodule_module(n, q);
      HomBasis basis;
      ChainComplex tgt = hom_complex(sp, sq, &basis);
      if (hs) (*hs)[{p, q}] = tgt.cohomology_dims();
      std::map<int, GF2Matrix> f;
      std::map<int, int> col;
      for (int mi : A.hom_basis(p, q)) {
        int deg = A.mors[mi].deg;
        int j = col[deg]++;
        auto it =
            f.try_emplace(deg, GF2Matrix(tgt.space.dim(deg), src.space.dim(deg)))
                .first;
        PreHom t = functor_component(n, {mi});
        for (auto& [vdeg, v] : basis.to_vectors(t, tgt.space)) {
          if (vdeg != deg)
            throw std::logic_error("functor component not degree-homogeneous");
          for (int r = 0; r < v.n; ++r)
            if (v.get(r)) it->second.set(r, j);
        }
      }
      std::string why;
      if (!is_quasi_iso(src, tgt, f, &why))
        rep.violations.push_back(
            {1, "first-order functor map on pair (" + A.objects[p] + "," +
                    A.objects[q] + ") is not a quasi-isomorphism: " + why});
    }
  }
}

}  // namespace

KoszulWitness koszul_verify(const Bimodule& delta) {
  KoszulWitness w;
  auto bad = [&](std::string s) { w.report.violations.push_back({0, std::move(s)}); };

  const int ma = delta.acat.num_objects();
  const int mb = delta.bcat.num_objects();
  if (ma != mb) {
    bad("object counts differ");
    return w;
  }
  // Rank-one diagonal dimension law, paired in reversed list order.
  for (int p = 0; p < ma; ++p) {
    for (int q = 0; q < mb; ++q) {
      int count = 0, deg = 0;
      for (auto& e : delta.elems)
        if (e.xobj == p && e.yobj == q) {
          ++count;
          deg = e.deg;
        }
      int want = (q == ma - 1 - p) ? 1 : 0;
      if (count != want)
        bad("dim at (" + delta.bcat.objects[q] + "," + delta.acat.objects[p] +
            ") is " + std::to_string(count) + ", expected " + std::to_string(want));
      else if (want == 1 && deg != 0)
        bad("diagonal element at " + delta.acat.objects[p] + " not in degree 0");
    }
  }
  if (!w.report.ok()) return w;

  auto vb = validate_bimodule(delta);
  if (!vb.ok()) {
    bad("bimodule invalid: " + vb.summary());
    return w;
  }
  auto mf = check_module_functor(delta);
  if (!mf.ok()) {
    bad("module-valued functor equations fail: " + mf.summary());
    return w;
  }
  functor_pairs_quasi_iso(delta, w.report, &w.pair_h);
  return w;
}

Report dual_koszul_check(const Bimodule& delta, int shift_n) {
  Report rep;
  Bimodule d = dualize_bimodule(delta, shift_n);
  auto vb = validate_bimodule(d);
  if (!vb.ok()) {
    rep.violations.push_back({0, "dual bimodule invalid: " + vb.summary()});
    return rep;
  }
  auto mf = check_module_functor(d);
  if (!mf.ok()) {
    rep.violations.push_back({0, "dual functor equations fail: " + mf.summary()});
    return rep;
  }
  functor_pairs_quasi_iso(d, rep, nullptr);
  return rep;
}

Module truncate(const Module& m, int k) {
  const int nobj = m.base.num_objects();
  const int keep_max = nobj - 1 - k;  // highest surviving object index
  Module out;
  out.left = m.left;
  out.base = m.base;
  std::map<int, int> remap;
  for (size_t i = 0; i < m.elems.size(); ++i)
    if (m.elems[i].obj <= keep_max) {
      remap[(int)i] = (int)out.elems.size();
      out.elems.push_back(m.elems[i]);
    }
  for (auto& [key, outs] : m.action) {
    if (!remap.count(key.first)) continue;
    std::set<int> oo;
    for (int z : outs) oo.insert(remap.at(z));
    if (!oo.empty()) out.action[{remap.at(key.first), key.second}] = oo;
  }
  return out;
}

PreHom truncation_counit(const Module& m, int k) {
  const int nobj = m.base.num_objects();
  const int keep_max = nobj - 1 - k;
  PreHom t;
  t.deg = 0;
  int at = 0;
  for (size_t i = 0; i < m.elems.size(); ++i)
    if (m.elems[i].obj <= keep_max) t.comp[{at++, {}}] = {(int)i};
  return t;
}

bool adjunction_check(const Module& n, const Module& m, int k, std::string* why) {
  const int nobj = m.base.num_objects();
  for (int obj = nobj - k; obj < nobj; ++obj) {
    if (!n.value_complex(obj).cohomology_dims().empty()) {
      if (why) *why = "test module is not acyclic at " + m.base.objects[obj];
      return false;
    }
  }
  Module fm = truncate(m, k);
  auto h0 = hom_complex(n, fm).cohomology_dims();
  auto h1 = hom_complex(n, m).cohomology_dims();
  if (h0 != h1) {
    if (why) *why = "cohomology of hom into the truncation differs";
    return false;
  }
  return true;
}

TwistData twist(const Module& m, int k) {
  const Category& base = m.base;
  const int nobj = base.num_objects();
  if (k < 0 || k > nobj) throw std::invalid_argument("twist: bad step count");

  TwistData td;
  td.twisted = m;
  td.nu = identity_prehom(m);
  for (int j = 1; j <= k; ++j) {
    const int obj = nobj - j;
    const Module& N = td.twisted;
    Module yx = yoneda(base, obj);
    const int unit = (int)yx.elems.size() - 1;
    std::vector<int> back(yx.elems.size() - 1, -1);
    {
      int at = 0;
      for (size_t i = 0; i < base.mors.size(); ++i)
        if (base.mors[i].dst == obj) back[at++] = (int)i;
    }
    auto vel = N.elems_at(obj);

    Module g;
    g.base = base;
    std::map<std::pair<int, int>, int> gid;  // (value elem, yoneda elem)
    for (int v : vel)
      for (size_t y = 0; y < yx.elems.size(); ++y) {
        gid[{v, (int)y}] = (int)g.elems.size();
        g.elems.push_back({yx.elems[y].obj, N.elems[v].deg + yx.elems[y].deg,
                           N.elems[v].label + "&" + yx.elems[y].label});
      }
    for (int v : vel) {
      for (size_t y = 0; y < yx.elems.size(); ++y) {
        // internal differential: both tensor factors
        std::set<int> d0;
        for (int v2 : N.act(v, {})) f2_toggle(d0, gid.at({v2, (int)y}));
        for (int y2 : yx.act((int)y, {})) f2_toggle(d0, gid.at({v, y2}));
        if (!d0.empty()) g.action[{gid.at({v, (int)y}), {}}] = d0;
        // module action through the second factor only
        for (auto& [key, outs] : yx.action) {
          if (key.first != (int)y || key.second.empty()) continue;
          std::set<int> oo;
          for (int y2 : outs) f2_toggle(oo, gid.at({v, y2}));
          if (!oo.empty()) g.action[{gid.at({v, (int)y}), key.second}] = oo;
        }
      }
    }

    // evaluation: t(v & y, chain) = action of N on (v, chain + y)
    PreHom t;
    t.deg = 0;
    for (int v : vel) {
      t.comp[{gid.at({v, unit}), {}}] = {v};
      for (auto& key : prehom_domain(g)) {
        auto& [ge, c] = key;
        // find the (v, y) behind ge; only handle this v's non-unit part
        for (size_t y = 0; y + 1 < yx.elems.size(); ++y) {
          if (gid.at({v, (int)y}) != ge) continue;
          Chain full = c;
          full.push_back(back[y]);
          auto outs = N.act(v, full);
          if (!outs.empty()) t.comp[key] = outs;
        }
      }
    }
    ConeData cd = cone_of(g, N, t);
    td.nu = q_compose(N, cd.incl1, td.nu);
    td.twisted = cd.cone;
  }
  return td;
}

SpectralPages algebraic_ss(const Module& m, const Module& n,
                           FilteredComplex* filt_out) {
  HomBasis basis;
  ChainComplex q = hom_complex(m, n, &basis);
  const int nobj = m.base.num_objects();

  // recover the label of each basis entry from the complex ordering
  std::vector<std::string> label(basis.entries.size());
  {
    std::map<int, int> counter;
    for (size_t i = 0; i < basis.entries.size(); ++i) {
      int deg = basis.degree[i];
      label[i] = q.space.labels.at(deg)[counter[deg]++];
    }
  }
  auto out_obj = [&](size_t i) {
    return n.elems[std::get<2>(basis.entries[i])].obj;
  };

  std::vector<std::vector<std::string>> steps;
  for (int p = 1; p <= nobj; ++p) {
    std::vector<std::string> keep;
    for (size_t i = 0; i < basis.entries.size(); ++i)
      if (out_obj(i) <= nobj - 1 - p) keep.push_back(label[i]);
    steps.push_back(keep);
  }
  FilteredComplex f = FilteredComplex::from_label_steps(q, steps);
  if (filt_out) *filt_out = f;
  SpectralPages pages = spectral_sequence(f);

  // First page must match the tensor-product formula degreewise.
  std::map<std::pair<int, int>, int> expect;
  for (int p = 0; p < nobj; ++p) {
    int obj = nobj - 1 - p;
    auto ha = hom_complex(m, simple_module(m.base, obj)).cohomology_dims();
    auto hb = n.value_complex(obj).cohomology_dims();
    for (auto& [a, da] : ha)
      for (auto& [b, db] : hb) expect[{p, a + b - p}] += da * db;
  }
  for (auto it = expect.begin(); it != expect.end();)
    it = it->second == 0 ? expect.erase(it) : std::next(it);
  if (pages.pages.empty() || pages.pages[0].dims != expect)
    throw std::logic_error("first page disagrees with the tensor formula");
  return pages;
}

}  // namespace plk

#include "plk/jsonio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace plk {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument("schema violation at \"" + field + "\": " + what);
}

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) fail(key, "missing field");
  return j.at(key);
}

int object_index(const std::vector<std::string>& objects,
                 const std::string& name, const std::string& field) {
  for (size_t k = 0; k < objects.size(); ++k)
    if (objects[k] == name) return (int)k;
  fail(field, "unknown object \"" + name + "\"");
}

// label -> morphism index map with uniqueness enforcement
std::map<std::string, int> label_index(const std::vector<Mor>& mors) {
  std::map<std::string, int> idx;
  for (size_t k = 0; k < mors.size(); ++k)
    if (!idx.emplace(mors[k].label, (int)k).second)
      fail("homs", "duplicate morphism label \"" + mors[k].label + "\"");
  return idx;
}

// a chain given top-down (a_d, ..., a_1) -> bottom-up storage
Chain chain_from_json(const json& arr, const std::map<std::string, int>& idx,
                      const std::string& field) {
  if (!arr.is_array()) fail(field, "expected an array of labels");
  Chain c;
  for (auto it = arr.rbegin(); it != arr.rend(); ++it) {
    if (!it->is_string()) fail(field, "expected a label string");
    auto f = idx.find(it->get<std::string>());
    if (f == idx.end())
      fail(field, "unknown morphism label \"" + it->get<std::string>() + "\"");
    c.push_back(f->second);
  }
  return c;
}

json chain_to_json(const Chain& c, const std::vector<Mor>& mors) {
  json arr = json::array();
  for (size_t k = c.size(); k-- > 0;) arr.push_back(mors[c[k]].label);
  return arr;
}

std::set<int> combo_from_json(const json& out,
                              const std::map<std::string, int>& idx,
                              const std::string& field) {
  std::set<int> v;
  auto add = [&](const json& e) {
    if (!e.is_string()) fail(field, "expected a label string");
    auto f = idx.find(e.get<std::string>());
    if (f == idx.end())
      fail(field, "unknown label \"" + e.get<std::string>() + "\"");
    f2_toggle(v, f->second);
  };
  if (out.is_array())
    for (const auto& e : out) add(e);
  else
    add(out);
  return v;
}

}  // namespace

Category category_from_json(const json& j) {
  if (!j.is_object()) fail("", "category descriptor must be an object");
  Category c;
  for (const auto& o : need(j, "objects")) {
    if (!o.is_string()) fail("objects", "expected a name string");
    c.objects.push_back(o.get<std::string>());
  }
  if (j.contains("units_implicit") && !j.at("units_implicit").get<bool>())
    fail("units_implicit", "only implicit (strict) units are supported");
  c.shift_n = j.value("shift_n", 1);
  for (const auto& [key, basis] : need(j, "homs").items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos)
      fail("homs", "key \"" + key + "\" is not of the form \"X,Y\"");
    int src = object_index(c.objects, key.substr(0, comma), "homs");
    int dst = object_index(c.objects, key.substr(comma + 1), "homs");
    if (!basis.is_array()) fail("homs", "expected an array of generators");
    for (const auto& g : basis) {
      Mor m;
      m.src = src;
      m.dst = dst;
      m.deg = need(g, "deg").get<int>();
      m.label = need(g, "label").get<std::string>();
      c.mors.push_back(m);
    }
  }
  auto idx = label_index(c.mors);
  if (j.contains("mu")) {
    for (const auto& [dstr, entries] : j.at("mu").items()) {
      int d = 0;
      auto res = std::from_chars(dstr.data(), dstr.data() + dstr.size(), d);
      if (res.ec != std::errc() || d < 1)
        fail("mu", "arity key \"" + dstr + "\" is not a positive integer");
      if (!entries.is_array()) fail("mu", "expected an array of entries");
      for (const auto& e : entries) {
        Chain in = chain_from_json(need(e, "inputs"), idx, "mu.inputs");
        if ((int)in.size() != d)
          fail("mu.inputs", "chain length does not match the arity key");
        std::set<int> out = combo_from_json(need(e, "output"), idx, "mu.output");
        f2_add(c.ops[d][in], out);
      }
    }
  }
  return c;
}

json category_to_json(const Category& c) {
  json j;
  j["objects"] = c.objects;
  json homs = json::object();
  for (size_t k = 0; k < c.mors.size(); ++k) {
    const Mor& m = c.mors[k];
    std::string key = c.objects[m.src] + "," + c.objects[m.dst];
    homs[key].push_back({{"label", m.label}, {"deg", m.deg}});
  }
  j["homs"] = homs;
  json mu = json::object();
  for (const auto& [d, table] : c.ops) {
    json entries = json::array();
    for (const auto& [in, out] : table) {
      if (out.empty()) continue;
      json labels = json::array();
      for (int g : out) labels.push_back(c.mors[g].label);
      entries.push_back(
          {{"inputs", chain_to_json(in, c.mors)}, {"output", labels}});
    }
    if (!entries.empty()) mu[std::to_string(d)] = entries;
  }
  j["mu"] = mu;
  j["units_implicit"] = true;
  j["shift_n"] = c.shift_n;
  return j;
}

namespace {

std::map<std::string, int> elem_index(const std::vector<ModElem>& elems) {
  std::map<std::string, int> idx;
  for (size_t k = 0; k < elems.size(); ++k)
    if (!idx.emplace(elems[k].label, (int)k).second)
      fail("elems", "duplicate element label \"" + elems[k].label + "\"");
  return idx;
}

}  // namespace

Module module_from_json(const json& j) {
  Module m;
  m.base = category_from_json(need(j, "base"));
  m.left = j.value("left", false);
  for (const auto& e : need(j, "elems")) {
    ModElem x;
    x.label = need(e, "label").get<std::string>();
    x.obj = object_index(m.base.objects, need(e, "obj").get<std::string>(),
                         "elems.obj");
    x.deg = need(e, "deg").get<int>();
    m.elems.push_back(x);
  }
  auto eidx = elem_index(m.elems);
  auto midx = label_index(m.base.mors);
  if (j.contains("action")) {
    for (const auto& a : j.at("action")) {
      std::string lab = need(a, "elem").get<std::string>();
      auto f = eidx.find(lab);
      if (f == eidx.end()) fail("action.elem", "unknown element \"" + lab + "\"");
      Chain c = chain_from_json(need(a, "chain"), midx, "action.chain");
      std::set<int> out;
      auto g = need(a, "output");
      auto add = [&](const json& e2) {
        auto h = eidx.find(e2.get<std::string>());
        if (h == eidx.end())
          fail("action.output", "unknown element \"" + e2.get<std::string>() + "\"");
        f2_toggle(out, h->second);
      };
      if (g.is_array())
        for (const auto& e2 : g) add(e2);
      else
        add(g);
      f2_add(m.action[{f->second, c}], out);
    }
  }
  return m;
}

json module_to_json(const Module& m) {
  json j;
  j["base"] = category_to_json(m.base);
  j["left"] = m.left;
  json elems = json::array();
  for (const auto& e : m.elems)
    elems.push_back({{"label", e.label},
                     {"obj", m.base.objects[e.obj]},
                     {"deg", e.deg}});
  j["elems"] = elems;
  json action = json::array();
  for (const auto& [key, out] : m.action) {
    if (out.empty()) continue;
    json labels = json::array();
    for (int z : out) labels.push_back(m.elems[z].label);
    action.push_back({{"elem", m.elems[key.first].label},
                      {"chain", chain_to_json(key.second, m.base.mors)},
                      {"output", labels}});
  }
  j["action"] = action;
  return j;
}

Bimodule bimodule_from_json(const json& j) {
  Bimodule b;
  b.acat = category_from_json(need(j, "acat"));
  b.bcat = category_from_json(need(j, "bcat"));
  std::map<std::string, int> eidx;
  for (const auto& e : need(j, "elems")) {
    BimElem x;
    x.label = need(e, "label").get<std::string>();
    x.xobj = object_index(b.acat.objects, need(e, "xobj").get<std::string>(),
                          "elems.xobj");
    x.yobj = object_index(b.bcat.objects, need(e, "yobj").get<std::string>(),
                          "elems.yobj");
    x.deg = need(e, "deg").get<int>();
    if (!eidx.emplace(x.label, (int)b.elems.size()).second)
      fail("elems", "duplicate element label \"" + x.label + "\"");
    b.elems.push_back(x);
  }
  auto aidx = label_index(b.acat.mors);
  auto bidx = label_index(b.bcat.mors);
  if (j.contains("action")) {
    for (const auto& a : j.at("action")) {
      Chain r = chain_from_json(need(a, "achain"), aidx, "action.achain");
      Chain s = chain_from_json(need(a, "bchain"), bidx, "action.bchain");
      std::string lab = need(a, "elem").get<std::string>();
      auto f = eidx.find(lab);
      if (f == eidx.end()) fail("action.elem", "unknown element \"" + lab + "\"");
      std::set<int> out;
      for (const auto& e2 : need(a, "output")) {
        auto h = eidx.find(e2.get<std::string>());
        if (h == eidx.end())
          fail("action.output", "unknown element \"" + e2.get<std::string>() + "\"");
        f2_toggle(out, h->second);
      }
      f2_add(b.action[{r, f->second, s}], out);
    }
  }
  return b;
}

json bimodule_to_json(const Bimodule& b) {
  json j;
  j["acat"] = category_to_json(b.acat);
  j["bcat"] = category_to_json(b.bcat);
  json elems = json::array();
  for (const auto& e : b.elems)
    elems.push_back({{"label", e.label},
                     {"xobj", b.acat.objects[e.xobj]},
                     {"yobj", b.bcat.objects[e.yobj]},
                     {"deg", e.deg}});
  j["elems"] = elems;
  json action = json::array();
  for (const auto& [key, out] : b.action) {
    if (out.empty()) continue;
    json labels = json::array();
    for (int z : out) labels.push_back(b.elems[z].label);
    action.push_back({{"achain", chain_to_json(std::get<0>(key), b.acat.mors)},
                      {"elem", b.elems[std::get<1>(key)].label},
                      {"bchain", chain_to_json(std::get<2>(key), b.bcat.mors)},
                      {"output", labels}});
  }
  j["action"] = action;
  return j;
}

LGModel model_from_json(const json& j) {
  LGModel m;
  const json& w = need(j, "W");
  if (!w.is_array() || w.empty()) fail("W", "expected a coefficient array");
  for (const auto& c : w) {
    if (!c.is_array() || c.size() != 2)
      fail("W", "each coefficient must be a [re, im] pair");
    m.coeffs.push_back(cplx(c[0].get<double>(), c[1].get<double>()));
  }
  std::string prim = j.value("primitive", "half-symplectic");
  if (prim != "half-symplectic")
    fail("primitive", "only \"half-symplectic\" is supported");
  return m;
}

json model_to_json(const LGModel& m) {
  json w = json::array();
  for (cplx c : m.coeffs) w.push_back({c.real(), c.imag()});
  return {{"W", w}, {"primitive", "half-symplectic"}};
}

FloerDatum datum_from_json(const json& j) {
  FloerDatum d;
  d.R = need(j, "R").get<double>();
  d.beta = need(j, "beta").get<double>();
  d.eps01 = need(j, "eps01").get<double>();
  const json& a = need(j, "alpha");
  d.alpha.values = need(a, "values").get<std::vector<double>>();
  d.alpha.ramp_lo = need(a, "ramp_lo").get<std::vector<double>>();
  d.alpha.ramp_hi = need(a, "ramp_hi").get<std::vector<double>>();
  if (d.alpha.values.size() != d.alpha.ramp_lo.size() + 1 ||
      d.alpha.ramp_lo.size() != d.alpha.ramp_hi.size())
    fail("alpha", "values/ramp shape mismatch");
  d.dH_l1 = j.value("dh_l1", 0.0);
  d.dH_l2 = j.value("dh_l2", 0.0);
  return d;
}

json datum_to_json(const FloerDatum& d) {
  return {{"R", d.R},
          {"beta", d.beta},
          {"eps01", d.eps01},
          {"alpha",
           {{"values", d.alpha.values},
            {"ramp_lo", d.alpha.ramp_lo},
            {"ramp_hi", d.alpha.ramp_hi}}},
          {"dh_l1", d.dH_l1},
          {"dh_l2", d.dH_l2}};
}

namespace {

std::string pq_key(const std::pair<int, int>& pq) {
  return "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")";
}

}  // namespace

json pages_to_json(const SpectralPages& p) {
  json pages = json::array();
  for (const auto& pg : p.pages) {
    json dims = json::object(), rank = json::object();
    for (const auto& [pq, d] : pg.dims)
      if (d) dims[pq_key(pq)] = d;
    for (const auto& [pq, r] : pg.d_rank)
      if (r) rank[pq_key(pq)] = r;
    pages.push_back({{"r", pg.r}, {"dims", dims}, {"d_rank", rank}});
  }
  json einf = json::object();
  for (const auto& [pq, d] : p.einf)
    if (d) einf[pq_key(pq)] = d;
  return {{"pages", pages}, {"stable_index", p.stable_index}, {"einf", einf}};
}

json tree_to_json(const LeafedTree& t) {
  std::function<json(int)> rec = [&](int v) {
    json arr = json::array();
    for (int c : t.children[v])
      arr.push_back(c < 0 ? json("leaf") : rec(c));
    return arr;
  };
  return t.children.empty() ? json::array() : rec(0);
}

json bar_sum_to_json(const QuotientCat& q, const std::vector<BarChain>& v) {
  json arr = json::array();
  for (const auto& c : v) {
    json chain = json::array();
    for (int g : c) chain.push_back(q.b.gens[g].label);
    arr.push_back(chain);
  }
  return arr;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t k = 0; k < cells.size(); ++k) {
      if (k) f << ',';
      f << csv_field(cells[k]);
    }
    f << "\r\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::string csv_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // prefer the shortest representation that round-trips
  for (int prec = 6; prec < 17; ++prec) {
    char s[64];
    std::snprintf(s, sizeof s, "%.*g", prec, x);
    if (std::stod(s) == x) return s;
  }
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << "\n";
}

}  // namespace plk

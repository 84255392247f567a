// JSON descriptors and RFC-4180 CSV emission for the library types.
//
// Schemas (all field names lowercase):
//  - category: {"objects": [names...],
//               "homs": {"X,Y": [{"label": "a", "deg": 0}, ...], ...},
//               "mu": {"2": [{"inputs": ["b","a"], "output": ["c"]}], ...},
//               "units_implicit": true, "shift_n": 1}
//    "inputs" lists a chain top-down (last applied first, the (a_d,...,a_1)
//    order); "output" is a label or list of labels (an F2 combination).
//    Morphism labels must be globally unique.  Only units_implicit = true is
//    supported: identities are symbolic and never listed.
//  - module:   {"base": <category>, "left": false,
//               "elems": [{"label": "m", "obj": "X", "deg": 0}, ...],
//               "action": [{"elem": "m", "chain": ["b","a"],
//                           "output": ["m2"]}, ...]}
//    "chain" is top-down like "inputs"; an empty chain is the internal
//    differential.
//  - bimodule: {"acat": <category>, "bcat": <category>,
//               "elems": [{"label": "D", "xobj": "X", "yobj": "Y",
//                          "deg": 0}, ...],
//               "action": [{"achain": [...], "elem": "D", "bchain": [...],
//                           "output": ["D2"]}, ...]}
//  - model:    {"W": [[re,im], ...ascending coefficients...],
//               "primitive": "half-symplectic"}
//  - datum:    {"R": r, "beta": b, "eps01": e,
//               "alpha": {"values": [...], "ramp_lo": [...],
//                         "ramp_hi": [...]},
//               "dh_l1": 0.0, "dh_l2": 0.0}
//  - spectral pages: {"pages": [{"r": 1, "dims": {"(p,j)": d, ...},
//               "d_rank": {...}}, ...], "stable_index": s,
//               "einf": {"(p,j)": d, ...}}
//
// All parsers throw std::invalid_argument naming the offending field.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "plk/ainfty.hpp"
#include "plk/amod.hpp"
#include "plk/chain.hpp"
#include "plk/lgflow.hpp"
#include "plk/localize.hpp"
#include "plk/quaddiff.hpp"
#include "plk/trees.hpp"

namespace plk {

using json = nlohmann::json;

Category category_from_json(const json& j);
json category_to_json(const Category& c);

Module module_from_json(const json& j);
json module_to_json(const Module& m);

Bimodule bimodule_from_json(const json& j);
json bimodule_to_json(const Bimodule& b);

LGModel model_from_json(const json& j);
json model_to_json(const LGModel& m);

FloerDatum datum_from_json(const json& j);
json datum_to_json(const FloerDatum& d);

json pages_to_json(const SpectralPages& p);

// nested-list encoding: a vertex is the list of its child slots, a leaf
// slot is the string "leaf"
json tree_to_json(const LeafedTree& t);

// a bar chain as the list of its generator labels, bottom-up
json bar_sum_to_json(const QuotientCat& q, const std::vector<BarChain>& v);

// RFC-4180: CRLF row terminators, fields quoted when they contain a comma,
// a quote, or a line break
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// shortest round-trip formatting for CSV numeric fields
std::string csv_num(double x);

json load_json_file(const std::string& path);  // throws on missing/bad file
void write_json_file(const std::string& path, const json& j);

}  // namespace plk

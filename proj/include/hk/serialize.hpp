#pragma once

#include <json.hpp>

#include "hk/kclass.hpp"

namespace hk {

using Json = nlohmann::json;

/// Thrown for documents that are not well-formed instances of the schema
/// (wrong types, missing keys, inconsistent shapes).
class ParseError : public Error {
 public:
  using Error::Error;
};

// ring:      "Z" | "Q" | {"Zmod": m}
// scalar:    decimal string "n" or "p/q" (JSON integers are accepted on input)
// matrix:    {"rows": r, "cols": c, "data": [[scalar, ...], ...]}
// complex:   {"ring", "min_degree", "ranks": [...], "diffs": [matrix, ...]},
//            diffs[i] = d(min_degree + i)
// map:       {"shift", "lo", "mats": [matrix, ...]}, mats[i] at source degree lo + i
// structure: {"complex", "scalars": [...], "ops": [map, ...]}

Json to_json(const Ring& r);
Ring ring_from_json(const Json& j);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const Ring& ring);

Json to_json(const ChainComplex& x);
ChainComplex complex_from_json(const Json& j);

Json to_json(const ChainMap& f);
ChainMap map_from_json(const Json& j, const ChainComplex& source, const ChainComplex& target);

Json to_json(const HomotopyStructure& m);
HomotopyStructure structure_from_json(const Json& j);

Json to_json(const Slot& s);
Json to_json(const KClassExpr& e);
Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json to_json(const CheckResult& r);
Json to_json(const HomologyReport& h);

/// Parses text, converting every library or JSON error into ParseError.
Json parse_document(const std::string& text);

}  // namespace hk

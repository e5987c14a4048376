#include "hk/serialize.hpp"

namespace hk {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
  return v;
}

Scalar scalar_from(const Json& j, const Ring& ring) {
  try {
    if (j.is_number_integer()) return ring.normalize(Scalar(j.get<long>()));
    if (j.is_string()) return ring.parse(j.get<std::string>());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  throw ParseError("a scalar must be a decimal string or an integer");
}

std::vector<Scalar> scalars_from(const Json& j, const Ring& ring) {
  if (!j.is_array()) throw ParseError("scalars must be an array");
  std::vector<Scalar> out;
  for (const auto& x : j) out.push_back(scalar_from(x, ring));
  return out;
}

Json scalars_to(const std::vector<Scalar>& s, const Ring& ring) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(ring.format(x));
  return out;
}

Json witness_to(const Witness& w) {
  Json mats = Json::array();
  for (const auto& m : w.mats) mats.push_back(to_json(m));
  return {{"lo", w.lo}, {"mats", mats}};
}

Witness witness_from(const Json& j, const Ring& ring) {
  Witness w;
  w.lo = int_field(j, "lo");
  for (const auto& m : array_field(j, "mats")) w.mats.push_back(matrix_from_json(m, ring));
  return w;
}

Json slot_scalars(const std::vector<Scalar>& s) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(x.get_str());
  return out;
}

Slot slot_from(const Json& j) {
  Slot s;
  s.scalars = scalars_from(field(j, "scalars"), Ring::rationals());
  s.n = int_field(j, "n");
  return s;
}

KClassExpr expr_from(const Json& j) {
  KClassExpr e;
  e.slot = slot_from(field(j, "slot"));
  for (const auto& t : array_field(j, "terms")) {
    const Json& c = field(t, "coeff");
    if (!c.is_number_integer()) throw ParseError("term coefficients must be integers");
    e.terms.emplace_back(c.get<long>(), string_field(t, "id"));
  }
  return e;
}

long coeff_from(const Json& j) {
  auto it = j.find("coeff");
  if (it == j.end()) return 1;
  if (!it->is_number_integer()) throw ParseError("'coeff' must be an integer");
  return it->get<long>();
}

struct StepWriter {
  Json& out;
  void operator()(const SesStep& s) {
    out.update({{"a", s.a}, {"b", s.b}, {"c", s.c}, {"f", witness_to(s.f)}, {"g", witness_to(s.g)}});
  }
  void operator()(const AcyclicStep& s) { out.update({{"module", s.module}, {"h", witness_to(s.h)}}); }
  void operator()(const IsoStep& s) { out.update({{"from", s.from}, {"to", s.to}, {"phi", witness_to(s.phi)}}); }
  void operator()(const SuspendStep& s) { out.update({{"module", s.module}, {"suspended", s.suspended}}); }
  void operator()(const RestrictStep& s) {
    Json images = Json::array();
    for (const auto& [a, b] : s.images) images.push_back({{"from", a}, {"to", b}});
    out.update({{"factors", slot_scalars(s.factors)}, {"images", images}});
  }
  void operator()(const WidenStep&) {}
  void operator()(const ApplyWStep& s) {
    Json images = Json::array();
    for (const auto& im : s.images) images.push_back({{"source", im.source}, {"gamma", im.gamma}, {"koszul", im.koszul}});
    out["images"] = images;
  }
  void operator()(const GammaStep& s) {
    out.update({{"source", s.source}, {"n", s.n}, {"gamma", s.gamma}, {"koszul", s.koszul}});
  }
};

Step step_from(const Json& j, const Ring& ring) {
  std::string kind = string_field(j, "kind");
  Step st;
  st.coeff = coeff_from(j);
  if (kind == "SES") {
    st.body = SesStep{string_field(j, "a"), string_field(j, "b"), string_field(j, "c"), witness_from(field(j, "f"), ring),
                      witness_from(field(j, "g"), ring)};
  } else if (kind == "ACYCLIC") {
    st.body = AcyclicStep{string_field(j, "module"), witness_from(field(j, "h"), ring)};
  } else if (kind == "ISO") {
    st.body = IsoStep{string_field(j, "from"), string_field(j, "to"), witness_from(field(j, "phi"), ring)};
  } else if (kind == "SUSPEND") {
    st.body = SuspendStep{string_field(j, "module"), string_field(j, "suspended")};
  } else if (kind == "RESTRICT") {
    RestrictStep r;
    r.factors = scalars_from(field(j, "factors"), Ring::rationals());
    for (const auto& im : array_field(j, "images")) r.images.emplace_back(string_field(im, "from"), string_field(im, "to"));
    st.body = r;
  } else if (kind == "WIDEN") {
    st.body = WidenStep{};
  } else if (kind == "APPLY_W") {
    ApplyWStep w;
    for (const auto& im : array_field(j, "images"))
      w.images.push_back({string_field(im, "source"), string_field(im, "gamma"), string_field(im, "koszul")});
    st.body = w;
  } else if (kind == "GAMMA") {
    st.body = GammaStep{string_field(j, "source"), int_field(j, "n"), string_field(j, "gamma"), string_field(j, "koszul")};
  } else {
    throw ParseError("unknown step kind '" + kind + "'");
  }
  return st;
}

}  // namespace

Json to_json(const Ring& r) {
  switch (r.kind()) {
    case Ring::Kind::Integer: return "Z";
    case Ring::Kind::Rational: return "Q";
    case Ring::Kind::Modular: return {{"Zmod", r.modulus().get_str()}};
  }
  return nullptr;
}

Ring ring_from_json(const Json& j) {
  if (j == "Z") return Ring::integers();
  if (j == "Q") return Ring::rationals();
  if (j.is_object() && j.contains("Zmod")) {
    const Json& m = j.at("Zmod");
    mpz_class mod;
    if (m.is_number_integer()) {
      mod = m.get<long>();
    } else if (!m.is_string() || mod.set_str(m.get<std::string>(), 10) != 0) {
      throw ParseError("Zmod modulus must be an integer");
    }
    if (mod < 2) throw ParseError("Zmod modulus must be at least 2");
    return Ring::modular(mod);
  }
  throw ParseError("ring must be \"Z\", \"Q\" or {\"Zmod\": m}");
}

Json to_json(const Matrix& m) {
  Json data = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.ring().format(m(i, j)));
    data.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const Json& j, const Ring& ring) {
  int rows = int_field(j, "rows"), cols = int_field(j, "cols");
  if (rows < 0 || cols < 0) throw ParseError("matrix dimensions must be non-negative");
  const Json& data = array_field(j, "data");
  if (data.size() != static_cast<std::size_t>(rows)) throw ParseError("matrix data has the wrong number of rows");
  Matrix m(ring, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data[i].is_array() || data[i].size() != static_cast<std::size_t>(cols))
      throw ParseError("matrix row " + std::to_string(i) + " has the wrong length");
    for (std::size_t c = 0; c < data[i].size(); ++c) m.set(i, c, scalar_from(data[i][c], ring));
  }
  return m;
}

Json to_json(const ChainComplex& x) {
  Json diffs = Json::array();
  for (int k = x.lo(); k <= x.hi(); ++k) diffs.push_back(to_json(x.d(k)));
  return {{"ring", to_json(x.ring())}, {"min_degree", x.lo()}, {"ranks", x.ranks()}, {"diffs", diffs}};
}

ChainComplex complex_from_json(const Json& j) {
  Ring ring = ring_from_json(field(j, "ring"));
  int lo = int_field(j, "min_degree");
  std::vector<std::size_t> ranks;
  for (const auto& r : array_field(j, "ranks")) {
    if (!r.is_number_integer() || r.get<long>() < 0) throw ParseError("ranks must be non-negative integers");
    ranks.push_back(r.get<std::size_t>());
  }
  std::vector<Matrix> diffs;
  for (const auto& d : array_field(j, "diffs")) diffs.push_back(matrix_from_json(d, ring));
  try {
    return ChainComplex(ring, lo, ranks, diffs);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const ChainMap& f) {
  Json mats = Json::array();
  for (const auto& m : f.components()) mats.push_back(to_json(m));
  return {{"shift", f.shift()}, {"lo", f.source().lo()}, {"mats", mats}};
}

ChainMap map_from_json(const Json& j, const ChainComplex& source, const ChainComplex& target) {
  int shift = int_field(j, "shift");
  int lo = int_field(j, "lo");
  ChainMap f(source, target, shift);
  const Json& mats = array_field(j, "mats");
  for (std::size_t i = 0; i < mats.size(); ++i) {
    Matrix m = matrix_from_json(mats[i], source.ring());
    int deg = lo + static_cast<int>(i);
    if (deg < source.lo() || deg > source.hi()) {
      if (!m.is_zero()) throw ParseError("map component outside the source window");
      continue;
    }
    try {
      f.set(deg, m);
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  return f;
}

Json to_json(const HomotopyStructure& m) {
  Json ops = Json::array();
  for (const auto& e : m.ops()) ops.push_back(to_json(e));
  return {{"complex", to_json(m.base())}, {"scalars", scalars_to(m.scalars(), m.ring())}, {"ops", ops}};
}

HomotopyStructure structure_from_json(const Json& j) {
  ChainComplex x = complex_from_json(field(j, "complex"));
  auto scalars = scalars_from(field(j, "scalars"), x.ring());
  std::vector<ChainMap> ops;
  for (const auto& e : array_field(j, "ops")) ops.push_back(map_from_json(e, x, x));
  try {
    return HomotopyStructure(x, scalars, ops);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const Slot& s) { return {{"scalars", slot_scalars(s.scalars)}, {"n", s.n}}; }

Json to_json(const KClassExpr& e) {
  Json terms = Json::array();
  for (const auto& [c, id] : e.terms) terms.push_back({{"coeff", c}, {"id", id}});
  return {{"slot", to_json(e.slot)}, {"terms", terms}};
}

Json to_json(const Certificate& c) {
  Json modules = Json::object();
  for (const auto& [id, m] : c.modules) modules[id] = to_json(m);
  Json steps = Json::array();
  for (const auto& st : c.steps) {
    Json s = {{"kind", step_kind(st.body)}, {"coeff", st.coeff}};
    std::visit(StepWriter{s}, st.body);
    steps.push_back(s);
  }
  Ring ring = c.modules.empty() ? Ring::integers() : c.modules.begin()->second.ring();
  return {{"type", "certificate"}, {"ring", to_json(ring)}, {"modules", modules}, {"start", to_json(c.start)},
          {"claim", to_json(c.claim)}, {"steps", steps}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  Ring ring = ring_from_json(field(j, "ring"));
  const Json& modules = field(j, "modules");
  if (!modules.is_object()) throw ParseError("'modules' must be an object");
  for (const auto& [id, m] : modules.items()) {
    auto s = structure_from_json(m);
    if (!(s.ring() == ring)) throw ParseError("module '" + id + "' is over a different ring");
    c.modules.emplace(id, std::move(s));
  }
  c.start = slot_from(field(j, "start"));
  c.claim = expr_from(field(j, "claim"));
  for (const auto& st : array_field(j, "steps")) c.steps.push_back(step_from(st, ring));
  return c;
}

Json to_json(const CheckResult& r) {
  Json out = {{"accepted", r.accepted}, {"derived", to_json(r.derived)}};
  out["failed_step"] = r.failed_step ? Json(*r.failed_step) : Json(nullptr);
  out["reason"] = r.reason;
  return out;
}

Json to_json(const HomologyReport& h) {
  Json out = Json::array();
  for (const auto& d : h.degrees) {
    Json torsion = Json::array();
    for (const auto& t : d.torsion) torsion.push_back(t.get_str());
    out.push_back({{"degree", d.degree}, {"free_rank", d.free_rank}, {"torsion", torsion}});
  }
  return out;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace hk

#include "hk/kclass.hpp"

#include <set>

#include "hk/koszul.hpp"

namespace hk {

Witness Witness::of(const ChainMap& f) { return Witness{f.source().lo(), f.components()}; }

std::string step_kind(const StepBody& b) {
  static const char* names[] = {"SES", "ACYCLIC", "ISO", "SUSPEND", "RESTRICT", "WIDEN", "APPLY_W", "GAMMA"};
  return names[b.index()];
}

namespace {

struct Reject {
  std::string reason;
};

std::string scalars_text(const std::vector<Scalar>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i].get_str();
  return out + ")";
}

// canonical[id] = least id whose structure is identical
std::map<std::string, std::string> canonical_ids(const Registry& r) {
  std::map<std::string, std::string> out;
  std::vector<const std::pair<const std::string, HomotopyStructure>*> reps;
  for (const auto& entry : r) {
    const std::string* hit = nullptr;
    for (const auto* rep : reps)
      if (rep->second == entry.second) {
        hit = &rep->first;
        break;
      }
    if (hit) {
      out[entry.first] = *hit;
    } else {
      out[entry.first] = entry.first;
      reps.push_back(&entry);
    }
  }
  return out;
}

std::map<std::string, long> normalize_terms(const std::map<std::string, long>& terms,
                                            const std::map<std::string, std::string>& canon) {
  std::map<std::string, long> out;
  for (const auto& [id, c] : terms) {
    auto it = canon.find(id);
    if (it == canon.end()) throw Error("unknown module id '" + id + "'");
    out[it->second] += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::string expr_text(const std::map<std::string, long>& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [id, c] : p) out += (c < 0 ? " - " : " + ") + std::to_string(std::labs(c)) + "[" + id + "]";
  return out.substr(1);
}

class Kernel {
 public:
  explicit Kernel(const Certificate& c) : c_(c), slot_(c.start) {}

  void run(const Step& s) {
    std::visit([&](const auto& body) { apply(body, s.coeff); }, s.body);
  }
  const Slot& slot() const { return slot_; }
  const std::map<std::string, long>& proven() const { return p_; }

 private:
  const HomotopyStructure& get(const std::string& id) {
    auto it = c_.modules.find(id);
    if (it == c_.modules.end()) throw Reject{"unknown module id '" + id + "'"};
    if (!checked_.count(id)) {
      auto problems = check_structure(it->second);
      if (!problems.empty()) throw Reject{"module '" + id + "' is invalid: " + problems.front()};
      checked_.insert(id);
    }
    return it->second;
  }

  const HomotopyStructure& in_slot(const std::string& id) {
    const auto& m = get(id);
    bool same = m.arity() == slot_.scalars.size();
    for (std::size_t i = 0; same && i < m.arity(); ++i)
      same = m.ring().normalize(slot_.scalars[i]) == m.scalars()[i];
    if (!same)
      throw Reject{"slot mismatch: module '" + id + "' has scalars " + scalars_text(m.scalars()) +
                   ", slot has " + scalars_text(slot_.scalars)};
    if (!m.base().within(0, slot_.n))
      throw Reject{"slot mismatch: module '" + id + "' leaves the window [0, " + std::to_string(slot_.n) + "]"};
    return m;
  }

  ChainMap bind(const Witness& w, const ChainComplex& src, const ChainComplex& tgt, int shift) {
    ChainMap f(src, tgt, shift);
    for (std::size_t i = 0; i < w.mats.size(); ++i) {
      if (!(w.mats[i].ring() == src.ring())) throw Reject{"witness matrix over the wrong ring"};
      int deg = w.lo + static_cast<int>(i);
      if (deg < src.lo() || deg > src.hi()) {
        if (!w.mats[i].is_zero() || w.mats[i].rows() != tgt.rank(deg + shift) || w.mats[i].cols() != src.rank(deg))
          throw Reject{"witness component outside the source window"};
        continue;
      }
      f.set(deg, w.mats[i]);
    }
    return f;
  }

  void add(const std::string& id, long c) { p_[id] += c; }

  void apply(const SesStep& s, long c) {
    const auto &a = in_slot(s.a), &b = in_slot(s.b), &cc = in_slot(s.c);
    ChainMap f = bind(s.f, a.base(), b.base(), 0), g = bind(s.g, b.base(), cc.base(), 0);
    auto rep = check_ses(f, g);
    if (!rep.ok) throw Reject{"not a short exact sequence: " + rep.problems.front()};
    if (!is_equivariant(f, a, b)) throw Reject{"first arrow is not equivariant"};
    if (!is_equivariant(g, b, cc)) throw Reject{"second arrow is not equivariant"};
    add(s.b, c);
    add(s.a, -c);
    add(s.c, -c);
  }

  void apply(const AcyclicStep& s, long c) {
    const auto& m = in_slot(s.module);
    const auto& x = m.base();
    ChainMap h = bind(s.h, x, x, 1);
    if (!is_null_homotopy(x, h, 1)) throw Reject{"d·h + h·d is not the identity"};
    if (!(compose(h, h) == ChainMap(x, x, 2))) throw Reject{"h·h is not zero"};
    add(s.module, c);
  }

  void apply(const IsoStep& s, long c) {
    const auto &a = in_slot(s.from), &b = in_slot(s.to);
    ChainMap phi = bind(s.phi, a.base(), b.base(), 0);
    if (auto bad = validate_chain_map(phi); !bad.empty()) throw Reject{"not a chain map: " + bad.front()};
    if (!is_equivariant(phi, a, b)) throw Reject{"isomorphism is not equivariant"};
    if (!inverse(phi)) throw Reject{"map is not invertible over the ring"};
    add(s.from, c);
    add(s.to, -c);
  }

  void apply(const SuspendStep& s, long c) {
    const auto &m = in_slot(s.module), &sm = in_slot(s.suspended);
    if (!(sm == suspend(m))) throw Reject{"'" + s.suspended + "' is not the suspension of '" + s.module + "'"};
    // 0 -> M -> C(id) -> ΣM -> 0 with C(id) contractible
    auto cr = cone_same(ChainMap::identity(m.base()), m, m);
    if (!cr.cone.base().within(0, slot_.n)) throw Reject{"cone of the identity leaves the window"};
    if (!check_ses(cr.inclusion, cr.projection).ok || !is_equivariant(cr.inclusion, m, cr.cone) ||
        !is_equivariant(cr.projection, cr.cone, sm))
      throw Reject{"cone sequence of the identity failed to verify"};
    if (!find_contraction(cr.cone.base())) throw Reject{"cone of the identity is not contractible"};
    add(s.suspended, c);
    add(s.module, c);
  }

  void apply(const RestrictStep& s, long) {
    if (s.factors.size() != slot_.scalars.size()) throw Reject{"restriction factor count differs from arity"};
    for (const auto& [from, to] : s.images) {
      const auto& a = in_slot(from);
      if (!(get(to) == restrict(a, s.factors))) throw Reject{"'" + to + "' is not the restriction of '" + from + "'"};
    }
    std::map<std::string, long> next;
    for (const auto& [id, k] : p_) {
      if (k == 0) continue;
      const auto& m = get(id);
      const std::string* image = nullptr;
      for (const auto& pr : s.images)
        if (pr.first == id || get(pr.first) == m) {
          image = &pr.second;
          break;
        }
      if (!image) throw Reject{"no restriction image for '" + id + "'"};
      next[*image] += k;
    }
    for (std::size_t i = 0; i < s.factors.size(); ++i) slot_.scalars[i] *= s.factors[i];
    p_ = std::move(next);
    for (const auto& pr : s.images) in_slot(pr.second);
  }

  void apply(const WidenStep&, long) { slot_.n += 1; }

  void apply(const ApplyWStep& s, long) {
    std::map<std::string, long> next;
    for (const auto& im : s.images) check_gamma(im.source, slot_.n, im.gamma, im.koszul, true);
    for (const auto& [id, k] : p_) {
      if (k == 0) continue;
      const auto& m = get(id);
      const WImage* image = nullptr;
      for (const auto& im : s.images)
        if (im.source == id || get(im.source) == m) {
          image = &im;
          break;
        }
      if (!image) throw Reject{"no W image for '" + id + "'"};
      next[image->gamma] += k;
      next[image->koszul] -= k;
    }
    for (auto& x : slot_.scalars) x *= x;
    slot_.n -= 1;
    p_ = std::move(next);
    for (const auto& im : s.images) {
      in_slot(im.gamma);
      in_slot(im.koszul);
    }
  }

  void apply(const GammaStep& s, long) { check_gamma(s.source, s.n, s.gamma, s.koszul, false); }

  void check_gamma(const std::string& source, int n, const std::string& gamma, const std::string& koszul,
                   bool source_in_slot) {
    const auto& m = source_in_slot ? in_slot(source) : get(source);
    if (static_cast<int>(m.arity()) + 1 > n) throw Reject{"W needs n >= d+1"};
    if (!m.base().within(0, n)) throw Reject{"'" + source + "' leaves the window [0, " + std::to_string(n) + "]"};
    auto r = gamma_general(m, n);
    if (!(get(gamma) == r.gamma)) throw Reject{"'" + gamma + "' is not Γ('" + source + "')"};
    if (!(get(koszul) == r.koszul)) throw Reject{"'" + koszul + "' is not the Koszul term of '" + source + "'"};
  }

  const Certificate& c_;
  Slot slot_;
  std::map<std::string, long> p_;
  std::set<std::string> checked_;
};

Slot slot_of(const HomotopyStructure& m, int n) { return Slot{m.scalars(), n}; }

Step step(long c, StepBody b) { return Step{c, std::move(b)}; }

}  // namespace

std::map<std::string, long> normalize(const KClassExpr& e, const Registry& r) {
  std::map<std::string, long> terms;
  for (const auto& [c, id] : e.terms) terms[id] += c;
  return normalize_terms(terms, canonical_ids(r));
}

CheckResult check_certificate(const Certificate& c) {
  CheckResult out;
  Kernel k(c);
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    try {
      k.run(c.steps[i]);
    } catch (const Reject& r) {
      out.failed_step = i;
      out.reason = step_kind(c.steps[i].body) + ": " + r.reason;
      return out;
    } catch (const Error& e) {
      out.failed_step = i;
      out.reason = step_kind(c.steps[i].body) + ": " + e.what();
      return out;
    }
  }
  out.derived.slot = k.slot();
  for (const auto& [id, v] : k.proven())
    if (v != 0) out.derived.terms.emplace_back(v, id);
  auto canon = canonical_ids(c.modules);
  std::map<std::string, long> want, got;
  try {
    want = normalize(c.claim, c.modules);
    got = normalize_terms(k.proven(), canon);
  } catch (const Error& e) {
    out.reason = std::string("claim: ") + e.what();
    return out;
  }
  bool slot_ok = c.claim.slot.n == k.slot().n && c.claim.slot.scalars.size() == k.slot().scalars.size();
  if (slot_ok && !c.modules.empty()) {
    const Ring& ring = c.modules.begin()->second.ring();
    for (std::size_t i = 0; i < k.slot().scalars.size(); ++i)
      slot_ok = slot_ok && ring.normalize(c.claim.slot.scalars[i]) == ring.normalize(k.slot().scalars[i]);
  } else if (slot_ok) {
    slot_ok = c.claim.slot.scalars == k.slot().scalars;
  }
  if (!slot_ok) {
    out.reason = "claim slot differs from the slot reached by the steps";
    return out;
  }
  if (want != got) {
    out.reason = "steps prove " + expr_text(got) + " = 0, claim is " + expr_text(want);
    return out;
  }
  out.accepted = true;
  return out;
}

// ---------------------------------------------------------------------------

Certificate additivity_certificate(const ModuleSes& ses, int n) {
  Certificate c;
  c.modules = {{"A", ses.a}, {"B", ses.b}, {"C", ses.c}};
  c.start = slot_of(ses.b, n);
  c.claim = {c.start, {{1, "B"}, {-1, "A"}, {-1, "C"}}};
  c.steps.push_back(step(1, SesStep{"A", "B", "C", Witness::of(ses.f), Witness::of(ses.g)}));
  return c;
}

Certificate colim1_certificate(const HomotopyStructure& m1, const HomotopyStructure& m2, int n) {
  if (!(m1.base() == m2.base())) throw Error("colim1: structures live on different complexes");
  if (m1.scalars() != m2.scalars()) throw Error("colim1: structures have different scalars");
  if (!m1.base().within(0, n)) throw Error("colim1: complex leaves the window [0, n]");
  const Ring& ring = m1.ring();
  const auto& s = m1.scalars();
  auto s3 = multiply(ring, multiply(ring, s, s), s);
  Certificate c;
  if (m1 == m2) {
    auto r = restrict(m1, s3);
    c.modules = {{"M1s3", r}, {"M2s3", r}};
    c.start = Slot{multiply(ring, s3, s), n};
    c.claim = {c.start, {{1, "M1s3"}, {-1, "M2s3"}}};
    return c;
  }
  auto cr = cone_same(ChainMap::identity(m1.base()), m1, m1);
  HomotopyStructure glued = glue_extension(cr.inclusion, cr.projection, m1, suspend(m2));
  auto h = find_contraction(glued.base());
  if (!h) throw Error("colim1: cone of the identity is not contractible");
  auto jm1 = restrict(m1, s), jm2 = restrict(m2, s);
  auto w1 = gamma_general(jm1, n + 1), w2 = gamma_general(jm2, n + 1);
  c.modules = {{"jM1", jm1},       {"jM2", jm2},        {"SjM2", suspend(jm2)}, {"glued", glued},
               {"M1s3", w1.gamma}, {"M2s3", w2.gamma}, {"K1", w1.koszul},      {"K2", w2.koszul}};
  c.start = slot_of(glued, n + 1);
  c.steps.push_back(step(-1, SesStep{"jM1", "glued", "SjM2", Witness::of(cr.inclusion), Witness::of(cr.projection)}));
  c.steps.push_back(step(1, AcyclicStep{"glued", Witness::of(*h)}));
  c.steps.push_back(step(-1, SuspendStep{"jM2", "SjM2"}));
  c.steps.push_back(step(1, ApplyWStep{{{"jM1", "M1s3", "K1"}, {"jM2", "M2s3", "K2"}}}));
  c.claim = {Slot{multiply(ring, s3, s), n}, {{1, "M1s3"}, {-1, "M2s3"}}};
  return c;
}

WClass w_class(const HomotopyStructure& m, int n) {
  auto r = gamma_general(m, n);
  WClass w;
  w.modules = {{"gamma", r.gamma}, {"koszul", r.koszul}};
  w.expr = {Slot{multiply(m.ring(), m.scalars(), m.scalars()), n - 1}, {{1, "gamma"}, {-1, "koszul"}}};
  return w;
}

std::pair<Certificate, Certificate> wij_certificates(const HomotopyStructure& m, int n) {
  if (!m.base().within(0, n)) throw Error("wij: module leaves the window [0, n]");
  const Ring& ring = m.ring();
  auto s2 = multiply(ring, m.scalars(), m.scalars());
  auto jm = restrict(m, m.scalars());

  Certificate wi;
  auto wide = gamma_general(m, n + 1);
  wi.modules = {{"X", m}, {"jX", jm}, {"gamma", wide.gamma}, {"koszul", wide.koszul}};
  wi.start = Slot{s2, n};
  wi.claim = {wi.start, {{1, "gamma"}, {-1, "koszul"}, {-1, "jX"}}};
  wi.steps.push_back(step(1, GammaStep{"X", n + 1, "gamma", "koszul"}));
  auto hz = find_contraction(wide.koszul.base());
  if (!hz) throw Error("wij: Koszul term of a module in a smaller window is not zero");
  wi.steps.push_back(step(-1, AcyclicStep{"koszul", Witness::of(*hz)}));

  Certificate iw;
  auto r = gamma_general(m, n);
  auto hd = find_contraction(r.disk_sequence.a.base());
  if (!hd) throw Error("wij: disk is not contractible");
  iw.modules = {{"X", m},           {"jX", jm},         {"gamma", r.gamma}, {"koszul", r.koszul},
                {"cone", r.counit_sequence.b}, {"disk", r.disk_sequence.a}};
  iw.start = Slot{s2, n};
  iw.claim = {iw.start, {{1, "gamma"}, {-1, "koszul"}, {-1, "jX"}}};
  iw.steps.push_back(step(1, GammaStep{"X", n, "gamma", "koszul"}));
  iw.steps.push_back(step(1, SesStep{"koszul", "cone", "jX", Witness::of(r.counit_sequence.f),
                                     Witness::of(r.counit_sequence.g)}));
  iw.steps.push_back(step(-1, SesStep{"disk", "cone", "gamma", Witness::of(r.disk_sequence.f),
                                      Witness::of(r.disk_sequence.g)}));
  iw.steps.push_back(step(-1, AcyclicStep{"disk", Witness::of(*hd)}));
  return {std::move(wi), std::move(iw)};
}

Certificate fold_identity_certificate(const HomotopyStructure& m, int n) {
  if (m.arity() != 1) throw Error("the fold identity needs one generator");
  auto c = wij_certificates(m, n).second;
  for (auto& st : c.steps) st.coeff = -st.coeff;
  const Ring& ring = m.ring();
  const auto& s = m.scalars();
  std::size_t rn = m.base().rank(n);
  auto kx = restrict(tensor_module(koszul(ring, s), rn), s);
  auto z = restrict(module_tensor(rn, omega(ring, s)), s);
  int top = n - 2;
  c.modules.emplace("KX", kx);
  for (int j = 0; j <= top; ++j) c.modules.emplace("Z" + std::to_string(j), suspend(z, j));
  for (int j = 0; j < top; ++j) {
    long cj = (top - 1 - j) % 2 == 0 ? 1 : -1;
    c.steps.push_back(step(-cj, SuspendStep{"Z" + std::to_string(j), "Z" + std::to_string(j + 1)}));
  }
  long sign_top = top % 2 == 0 ? 1 : -1;
  c.steps.push_back(step(sign_top, IsoStep{"KX", "Z0", Witness::of(koszul_tensor_iso(ring, s, rn))}));
  // [jX] - [ΓX] + (-1)^n [KX]
  c.claim.terms = {{1, "jX"}, {-1, "gamma"}, {sign_top, "KX"}};
  return c;
}

Certificate peel_certificate(const HomotopyStructure& m, int n) {
  auto steps = peel_all(m, n, 0);
  Certificate c;
  c.start = slot_of(m, n);
  c.claim.slot = c.start;
  c.modules.emplace("X", m);
  c.claim.terms.emplace_back(1, "X");
  std::string cur = "X";
  for (const auto& p : steps) {
    int top = n - static_cast<int>(&p - steps.data());
    std::string d = "D" + std::to_string(top), q = "X" + std::to_string(top - 1);
    c.modules.emplace(d, p.disk);
    c.modules.emplace(q, p.quotient);
    c.steps.push_back(step(1, SesStep{d, cur, q, Witness::of(p.inclusion), Witness::of(p.quotient_map)}));
    c.claim.terms.emplace_back(-1, d);
    cur = q;
  }
  auto h = find_contraction(c.modules.at(cur).base());
  if (!h) throw Error("peel: remainder is not contractible");
  c.steps.push_back(step(1, AcyclicStep{cur, Witness::of(*h)}));
  return c;
}

}  // namespace hk

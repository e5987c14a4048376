#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hk/gamma.hpp"

namespace hk {

/// A stage G(T_ŝ, n): scalars ŝ and the window bound n.
struct Slot {
  std::vector<Scalar> scalars;
  int n = 0;
  bool operator==(const Slot&) const = default;
};

/// Formal integer combination of registered modules in one slot.
struct KClassExpr {
  Slot slot;
  std::vector<std::pair<long, std::string>> terms;
};

using Registry = std::map<std::string, HomotopyStructure>;

/// Raw matrices of a map, bound to complexes by the kernel. mats[i] is the
/// component at source degree lo + i.
struct Witness {
  int lo = 0;
  std::vector<Matrix> mats;
  static Witness of(const ChainMap& f);
};

// relation [b] - [a] - [c]
struct SesStep {
  std::string a, b, c;
  Witness f, g;
};
// relation [module]; h is a contraction with h·h = 0
struct AcyclicStep {
  std::string module;
  Witness h;
};
// relation [from] - [to]
struct IsoStep {
  std::string from, to;
  Witness phi;
};
// relation [suspended] + [module]; the witness is rebuilt by the kernel
struct SuspendStep {
  std::string module, suspended;
};
// the map j: every term [from] becomes [to] = [restrict(from, factors)]
struct RestrictStep {
  std::vector<Scalar> factors;
  std::vector<std::pair<std::string, std::string>> images;
};
// the map i: n -> n+1
struct WidenStep {};
// the map W: every term [source] becomes [gamma] - [koszul], slot (ŝ², n-1)
struct WImage {
  std::string source, gamma, koszul;
};
struct ApplyWStep {
  std::vector<WImage> images;
};
// binds ids to Γ(source) and its Koszul term at window n; no relation
struct GammaStep {
  std::string source;
  int n = 0;
  std::string gamma, koszul;
};

using StepBody =
    std::variant<SesStep, AcyclicStep, IsoStep, SuspendStep, RestrictStep, WidenStep, ApplyWStep, GammaStep>;

struct Step {
  long coeff = 1;
  StepBody body;
};

std::string step_kind(const StepBody& b);

/// Steps are replayed from `start` with the proven relation P = 0; relation
/// steps add coeff·relation to P, RESTRICT / WIDEN / APPLY_W transport P.
/// The certificate proves `claim` = 0 when the final slot is the claim's slot
/// and P equals the claim after normalization.
struct Certificate {
  Registry modules;
  Slot start;
  KClassExpr claim;
  std::vector<Step> steps;
};

struct CheckResult {
  bool accepted = false;
  std::optional<std::size_t> failed_step;  // 0-based; none for claim mismatch or acceptance
  std::string reason;
  KClassExpr derived;
};

CheckResult check_certificate(const Certificate& c);

/// Merges coefficients, drops zeros, and replaces each id by the least id
/// whose registered structure is identical. Throws on unknown ids.
std::map<std::string, long> normalize(const KClassExpr& e, const Registry& r);

/// W_n(M) = [ΓM] - [koszul term] in slot (ŝ², n-1); the two modules are
/// registered as "gamma" and "koszul".
struct WClass {
  KClassExpr expr;
  Registry modules;
};
WClass w_class(const HomotopyStructure& m, int n);

/// [B] - [A] - [C] = 0 from one SES with equivariant arrows, in slot (B's scalars, n).
Certificate additivity_certificate(const ModuleSes& ses, int n);

/// Two structures on the same base in window [0, n]:
/// [restrict(M1, s³)] - [restrict(M2, s³)] = 0 in slot (s⁴, n).
Certificate colim1_certificate(const HomotopyStructure& m1, const HomotopyStructure& m2, int n);

/// For M in window [0, n]: first W_{n+1}(iM) = jM, then iW_n(M) = jM, both
/// as claims [ΓX] - [koszul term] - [jM] = 0 in slot (ŝ², n).
std::pair<Certificate, Certificate> wij_certificates(const HomotopyStructure& m, int n);

/// One generator: [jX] - [ΓX] - (-1)^{n-1}[restrict(K(s) ⊗ X_n, s)] = 0 in slot (s², n).
Certificate fold_identity_certificate(const HomotopyStructure& m, int n);

/// Contractible M in [0, n]: [M] - Σ [disks] = 0 from peeling, in slot (ŝ, n).
Certificate peel_certificate(const HomotopyStructure& m, int n);

}  // namespace hk

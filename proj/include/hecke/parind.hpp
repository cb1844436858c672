#pragma once

#include <array>
#include <optional>

#include "hecke/heckemod.hpp"

namespace hecke {

/// Configuration of one of the appendix's eight inductions
/// Mod(H(M_J)) -> Mod(H(M_K)):
///   tensor:  V (x)_{H(M^eps), theta^eta} H(M_K)
///   hom:     Hom_{H(M^eps), theta^eta}(H(M_K), V)
/// eta is the plain T-basis (star = false) or the T*-basis (star = true).
struct InductionKind {
  bool hom = false;
  int eps = +1;
  bool star = false;
};

/// Parabolic induction Ind_P^{H(M_K)} = (tensor, +, theta).
HModule induce(Subset J, const HModule& V, Subset K);
/// Coinduction carrier Hom_{H(M^+), theta*}(H(M_K), V); isomorphic to
/// induce(J, V, K) but built independently (the isomorphism is a
/// cross-check).
HModule coinduce(Subset J, const HModule& V, Subset K);
/// Any of the eight variants.
HModule induce_variant(Subset J, const HModule& V, Subset K, InductionKind kind);

/// The carrier decomposition of an induced module: which basis slot holds
/// the canonical copy of V (always slot 0, the identity lift), and the
/// chosen lifts.
std::vector<AffWeylElt> induction_basis_lifts(const RootDatum* rd, Subset J,
                                              Subset K, const Field* f,
                                              InductionKind kind);

/// Left and right adjoints of induce (eq:RL): localization at a deep
/// central translation (Fitting decomposition).
HModule adjoint_L(Subset J, const HModule& X, Subset K);
HModule adjoint_R(Subset J, const HModule& X, Subset K);

/// Module functors used by the appendix comparisons.
HModule twist_module(const HModule& V, Subset K);   // over H(M_{J^op})
HModule iota_module(const HModule& V, Subset K);    // precompose iota^M_{l-l_M}

/// Delta_V: simple roots of ambient orthogonal to J on whose coroot
/// translations T* acts trivially; P(V) = J union Delta_V.
Subset delta_V(const HModule& V, Subset ambient);
Subset P_of_V(const HModule& V, Subset ambient);

/// Extension e_T(V) of V to H(M_T), J <= T <= P(V).
HModule extend_e(const HModule& V, Subset T, Subset ambient);

/// Generalized Steinberg module St_Q^{H(M_K)}(V), K = P(V) by default.
/// Computed as the cokernel of the sum of the natural embeddings and
/// cross-checked against the diagonal tensor construction.
HModule steinberg(const HModule& V, Subset Q, Subset K, Subset ambient);

struct Triple {
  Subset P = 0;
  Subset Q = 0;
  Subset PV = 0;       // P(V)
  Subset deltaV = 0;
  std::optional<HModule> V, eV, St, I;
};
Triple triple_module(Subset P, const HModule& V, Subset Q);

/// Natural injection Ind_{Q1}(e_{Q1}(V)) -> Ind_Q(e_Q(V)) within ambient K.
Mat steinberg_embedding(const HModule& V, Subset Q, Subset Q1, Subset K,
                        Subset ambient);

struct EightReport {
  std::array<HModule*, 8> modules{};  // owned below
  std::vector<HModule> storage;
  std::vector<std::string> labels;
  // named equation checks
  struct Check {
    std::string tag;
    std::string detail;
    bool pass = false;
  };
  std::vector<Check> checks;
  std::vector<std::vector<bool>> isoMatrix;  // 8 x 8
  bool allPass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Builds all eight inductions of V and verifies the appendix isomorphisms
/// (eq:twist2', eq:twist3', eq:inv1, eq:inv2e, eq:inv3e, eq:nothing,
/// eq:dual1, eq:dual2) by explicit invertible intertwiners.
EightReport eight_inductions(Subset J, const HModule& V, Subset K);

}  // namespace hecke

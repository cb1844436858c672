#pragma once

#include <map>
#include <vector>

#include "hecke/affweyl.hpp"
#include "hecke/ffield.hpp"

namespace hecke {

/// Finitely supported element of H(M_J)_F in the natural T-basis.
/// The ambient algebra is infinite dimensional; elements are not.
struct HeckeElt {
  const RootDatum* rd = nullptr;
  Subset levi = 0;
  const Field* f = nullptr;
  std::map<AffWeylElt, Field::Elem> coeffs;

  bool isZero() const { return coeffs.empty(); }
  void addTerm(const AffWeylElt& x, Field::Elem c);
  bool operator==(const HeckeElt& o) const {
    return rd == o.rd && levi == o.levi && f == o.f && coeffs == o.coeffs;
  }
};

class HeckeAlg {
 public:
  HeckeAlg(const RootDatum* rd, Subset levi, const Field* f);

  const RootDatum* datum() const { return rd_; }
  Subset levi() const { return J_; }
  const Field* field() const { return f_; }
  const LeviContext* ctx() const { return ctx_; }
  Field::Elem cs() const { return cs_; }  // quadratic coefficient as a scalar

  HeckeElt zero() const;
  HeckeElt unit() const;
  HeckeElt basisT(const AffWeylElt& x) const;
  /// T*(x), expanded in the T-basis.
  HeckeElt basisTstar(const AffWeylElt& x) const;

  HeckeElt add(const HeckeElt& a, const HeckeElt& b) const;
  HeckeElt sub(const HeckeElt& a, const HeckeElt& b) const;
  HeckeElt scale(const HeckeElt& a, Field::Elem c) const;
  HeckeElt multiply(const HeckeElt& a, const HeckeElt& b) const;

  /// Decompose a into the T*-basis: a = sum over x of out[x] * T*(x).
  std::map<AffWeylElt, Field::Elem> toTstar(const HeckeElt& a) const;

  /// zeta(T(x)) = T(x^{-1}); linear anti-involution.
  HeckeElt zeta(const HeckeElt& a) const;

  /// iota^M: T(x) -> (-1)^{l_M(x)} T*(x)        (ring automorphism)
  HeckeElt iotaM(const HeckeElt& a) const;
  /// iota_{l-l_M}: T(x) -> (-1)^{l(x)-l_M(x)} T(x), l taken in ambient K.
  HeckeElt iotaEll(const HeckeElt& a, Subset ambient) const;
  /// Composite iota^M_{l-l_M}: T(x) -> (-1)^{l(x)} T*(x).
  HeckeElt iotaFull(const HeckeElt& a, Subset ambient) const;

  std::string to_string(const HeckeElt& a) const;

 private:
  const RootDatum* rd_;
  Subset J_;
  const Field* f_;
  const LeviContext* ctx_;
  Field::Elem cs_;
  mutable std::map<AffWeylElt, HeckeElt> tstarCache_;

  void rightMultSimple(HeckeElt& a, size_t s) const;
  void rightMultElt(HeckeElt& a, const AffWeylElt& y) const;  // T(.)T(y)
};

/// Shared cached algebras (one per (datum, levi, field)).
const HeckeAlg* hecke_alg(const RootDatum* rd, Subset levi, const Field* f);

/// theta_{J}^{K}: H(M_J) -> H(M_K) on the T-basis (linear; multiplicative on
/// M_J^+ supported elements).
HeckeElt theta(const HeckeElt& a, Subset K);
/// theta*_{J}^{K}: matches the T*-bases.
HeckeElt theta_star(const HeckeElt& a, Subset K);

/// Opposition of J inside K.
Subset opposition_in(const RootDatum* rd, Subset J, Subset K);

/// Twist by n_{w_K w_J}: ring isomorphism H(M_J) -> H(M_{J^op}), conjugating
/// supports; sends T to T and T* to T*.
HeckeElt twist(const HeckeElt& a, Subset K);

struct CentralElement {
  Subset levi = 0;         // the proper sub-Levi J the element is attached to
  Subset ambient = 0;      // the algebra H(M_K) it lives in
  HeckeElt elt;
  bool verified = false;
};

/// Mixed-basis integral Bernstein element at lambda: T(t_{l+}) T*(t_{l-})
/// for a dominant/antidominant splitting (well-definedness asserted).
HeckeElt bernstein_elt(const HeckeAlg* alg, const std::vector<int>& lambda);

/// The central element attached to the proper Levi J of M_K: the orbit sum
/// of bernstein_elt over W_{0,K} * seed, verified central by exhaustive
/// commutation with every generator. Throws if verification fails.
CentralElement find_central(const RootDatum* rd, Subset J, Subset K,
                            const Field* f, const std::vector<int>& seed,
                            int supportSlack = 1);

/// Basis of the space of solutions of c T(g) = T(g) c supported on the
/// default search window for the given seed (spec's search formulation;
/// used to cross-check find_central).
std::vector<HeckeElt> central_solution_space(const RootDatum* rd, Subset J,
                                             Subset K, const Field* f,
                                             const std::vector<int>& seed,
                                             int supportSlack = 1);

}  // namespace hecke

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hecke/rootdata.hpp"

namespace hecke {

/// Element of the extended affine Weyl group W = Lambda x| W0,
/// written x = t_lambda * w.
struct AffWeylElt {
  std::vector<int> lambda;
  int w = 0;

  bool operator==(const AffWeylElt& o) const {
    return w == o.w && lambda == o.lambda;
  }
  bool operator<(const AffWeylElt& o) const {
    if (lambda != o.lambda) return lambda < o.lambda;
    return w < o.w;
  }
};

/// One generator of a Levi Hecke algebra: an affine simple reflection of the
/// Levi's affine Weyl group, or a generator of its length-zero group Omega_M
/// (or the formal inverse of one).
struct LeviGen {
  enum Kind { Simple, Omega, OmegaInv } kind;
  size_t index;  // simple index or omega-generator index
};

/// Combinatorics of the Levi M_J inside an ambient Levi M_K (K = full set of
/// simple roots for the group itself). All lengths, descents and reduced
/// words below are relative to the root subsystem Phi_K when an ambient is
/// given; the Levi's own structure (its affine simple reflections, Omega_M)
/// is intrinsic to J.
class LeviContext {
 public:
  LeviContext(const RootDatum* rd, Subset J);

  const RootDatum* datum() const { return rd_; }
  Subset subset() const { return J_; }

  // Affine simple reflections of W_{M_J}: the finite simples of J followed
  // by one affine reflection per irreducible component of Phi_J.
  struct AffSimple {
    AffWeylElt elt;
    std::string label;
    bool affine;       // true for the t_{theta^} s_theta generators
    size_t finRoot;    // simple-root index when !affine
  };
  const std::vector<AffSimple>& simples() const { return simples_; }

  // Generators of Omega_{M_J} (free abelian for the shipped presets).
  const std::vector<AffWeylElt>& omegaGens() const { return omega_; }
  /// Exponents of a length-zero element in the Omega generators.
  std::vector<int> omegaExponents(const AffWeylElt& u) const;
  /// Conjugate s_i by omega gen g (or inverse): returns simple index.
  size_t conjSimple(size_t omegaIdx, bool inv, size_t simpleIdx) const;

  /// Iwahori-Matsumoto length of x in W_{M_J} (x must have w-part in W_{0,J}
  /// when J is proper; lengths use Phi_J+ only).
  int length(const AffWeylElt& x) const;

  /// Canonical reduced word: x = s_{i1} ... s_{il} * u with u length zero,
  /// picking the lexicographically least left descent at each step.
  struct Word {
    std::vector<size_t> letters;  // indices into simples()
    AffWeylElt omegaPart;
  };
  const Word& reducedWord(const AffWeylElt& x) const;

  /// Braid order of s_i s_j in W, or 0 if infinite.
  int braidOrder(size_t i, size_t j) const;

  bool inLevi(const AffWeylElt& x) const;

  // Group operations (lattice + finite part; independent of J).
  AffWeylElt mult(const AffWeylElt& a, const AffWeylElt& b) const;
  AffWeylElt inverse(const AffWeylElt& a) const;
  AffWeylElt identity() const;
  AffWeylElt translation(const std::vector<int>& lambda) const;
  AffWeylElt finite(int w0idx) const;

  std::string elt_to_string(const AffWeylElt& x) const;

 private:
  const RootDatum* rd_;
  Subset J_;
  std::vector<size_t> posJ_;  // positive roots of Phi_J
  std::vector<AffSimple> simples_;
  std::vector<AffWeylElt> omega_;
  std::vector<std::vector<int>> omegaConj_;  // [omega][simple] -> simple
  std::vector<std::vector<int>> snfU_;       // unimodular transform rows
  size_t snfRankC_ = 0;                      // rank of the J-coroot lattice
  mutable std::map<AffWeylElt, Word> wordCache_;

  void buildSimples();
  void buildOmega();
};

/// Shared, cached contexts.
const LeviContext* levi_context(const RootDatum* rd, Subset J);

/// Minimal-length representatives of W_{0,J} \ W_{0,K}; reps are finite
/// elements (translation part zero), ordered by (length, word).
std::vector<AffWeylElt> min_coset_reps(const RootDatum* rd, Subset J, Subset K);

/// Longest element of W_{0,J}, as an affine Weyl element.
AffWeylElt longest_element(const RootDatum* rd, Subset J);

/// M-positivity of x in W_{M_J} relative to the ambient subset K: the
/// translation part pairs >= 0 with every root of Phi_K+ \ Phi_J+.
/// Throws if the finite part of x is not in W_{0,J}.
bool is_M_positive(const RootDatum* rd, Subset J, Subset K, const AffWeylElt& x);
bool is_M_negative(const RootDatum* rd, Subset J, Subset K, const AffWeylElt& x);

/// A translation central in M_J and deep in the epsilon-positive direction
/// relative to K: <a, gamma> = 0 on Phi_J, epsilon<a, gamma> >= depth outside.
AffWeylElt deep_central_translation(const RootDatum* rd, Subset J, Subset K,
                                    int epsilon, int depth);

}  // namespace hecke

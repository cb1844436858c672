#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hecke/gfmat.hpp"
#include "hecke/heckealg.hpp"

namespace hecke {

/// Finite dimensional right module over H(M_J)_F, given by one matrix per
/// algebra generator (affine simple reflections of the Levi, then Omega
/// generators). Vectors are rows and act on the right: v . gamma = v * mat.
class HModule {
 public:
  HModule(const RootDatum* rd, Subset levi, const Field* f,
          std::vector<Mat> simpleAct, std::vector<Mat> omegaAct,
          bool check = true);

  const RootDatum* datum() const { return rd_; }
  Subset levi() const { return levi_; }
  const Field* field() const { return f_; }
  const LeviContext* ctx() const { return ctx_; }
  size_t dim() const { return dim_; }
  const std::vector<Mat>& simpleAct() const { return simpleAct_; }
  const std::vector<Mat>& omegaAct() const { return omegaAct_; }

  /// Action of the T-basis element of x (reduced word product).
  Mat actT(const AffWeylElt& x) const;
  /// Action of a general algebra element.
  Mat evaluate(const HeckeElt& a) const;
  /// Action of T*(x) of this Levi.
  Mat actTstar(const AffWeylElt& x) const;

  std::string to_string() const;

 private:
  const RootDatum* rd_;
  Subset levi_;
  const Field* f_;
  const LeviContext* ctx_;
  size_t dim_;
  std::vector<Mat> simpleAct_, omegaAct_, omegaInv_;
  mutable std::map<AffWeylElt, Mat> actCache_;
};

struct RelationReport {
  bool pass = true;
  std::vector<std::string> failures;
};

/// Exact verification of the defining presentation on generator matrices:
/// quadratic, braid, Omega invertibility/commutation, Omega conjugation.
RelationReport check_relations(const RootDatum* rd, Subset levi,
                               const Field* f,
                               const std::vector<Mat>& simpleAct,
                               const std::vector<Mat>& omegaAct);
RelationReport check_relations(const HModule& m);

/// 1-dimensional module from scalar generator values.
HModule character_module(const RootDatum* rd, Subset levi, const Field* f,
                         const std::vector<Field::Elem>& simpleValues,
                         const std::vector<Field::Elem>& omegaValues);
/// trivial character: T(s) -> 0, T(u) -> 1.
HModule trivial_character(const RootDatum* rd, Subset levi, const Field* f);
/// sign (Steinberg) character: T(s) -> c_s, T(u) -> 1.
HModule sign_character(const RootDatum* rd, Subset levi, const Field* f);

HModule direct_sum(const HModule& a, const HModule& b);

/// Basis of intertwiners f with f(v . g) = f(v) . g (as matrices F with
/// rho_a(g) F = F rho_b(g)).
std::vector<Mat> hom_space(const HModule& a, const HModule& b);

/// Invertible intertwiner search (deterministic, seeded); empty if none
/// found. A returned matrix is certified invertible.
std::optional<Mat> find_isomorphism(const HModule& a, const HModule& b,
                                    uint64_t seed = 1);
bool isomorphic(const HModule& a, const HModule& b, uint64_t seed = 1);

/// Smallest invariant subspace containing the row space of seed.
Mat spin(const HModule& m, const Mat& seed);

/// Submodule / quotient module on an invariant row space.
HModule submodule_on(const HModule& m, const Mat& basis);
HModule quotient_by(const HModule& m, const Mat& basis);

/// Irreducibility: spin from every standard basis vector plus the Norton
/// singular-element criterion over the enveloping algebra. Deterministic
/// for a fixed seed.
bool is_simple(const HModule& m, uint64_t seed = 1);

/// Any proper nonzero invariant subspace, if one exists.
std::optional<Mat> find_proper_submodule(const HModule& m, uint64_t seed = 1);

/// Jordan-Hoelder factors, quotients first (top-down).
std::vector<HModule> composition_series(const HModule& m, uint64_t seed = 1);

struct CommutantReport {
  size_t commutantDim = 0;
  size_t centerDegree = 0;
  bool isField = false;
};
CommutantReport commutant(const HModule& m);

/// Matrices reinterpreted over the larger field F_{p^{k'}}.
HModule scalar_extend(const HModule& m, uint32_t kPrime);

/// The same module seen over the subfield F_{p^{k}}, k' = k * e: dimension
/// multiplies by e.
HModule restrict_scalars(const HModule& m, const Field* small);

/// Entry-wise Frobenius^j twist.
HModule frobenius_twist(const HModule& m, uint32_t j);

struct DecompositionReport {
  std::vector<HModule> factors;
  size_t centerDegree = 0;
  bool tooSmall = false;            // factor count below [E:R]
  bool frobeniusTransitive = false;
  bool factorsAbsolutelySimple = false;
  bool pairwiseNonIsomorphic = false;
};

/// Decompose the scalar extension of a simple module; throws
/// extension-too-small unless allowPartial.
DecompositionReport decompose_extension(const HModule& m, uint32_t kPrime,
                                        bool allowPartial = false,
                                        uint64_t seed = 1);

/// Smallest subfield model: returns the model and its degree over F_p.
std::pair<HModule, uint32_t> descend(const HModule& m, uint64_t seed = 1);

struct SubmoduleLattice {
  std::vector<Mat> nodes;              // RREF bases, sorted by (dim, key)
  std::vector<std::vector<bool>> leq;  // containment
  std::vector<std::vector<size_t>> join, meet;
};
SubmoduleLattice submodule_lattice(const HModule& m, uint64_t seed = 1);

/// T_M-nilpotence for every supplied central element (which must cover all
/// proper Levis of m's ambient and be verified).
bool is_supersingular(const HModule& m, const std::vector<CentralElement>& cs);

/// Dual module: gamma acts by transpose of zeta(T(gamma)).
HModule dual(const HModule& m);

/// Serialization (text, stable ordering).
std::string module_to_text(const HModule& m);
HModule module_from_text(const std::string& text);

}  // namespace hecke

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke {

struct HeckeError : std::runtime_error {
  explicit HeckeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Exact arithmetic in F_{p^k}.
///
/// Elements are indices in [0, p^k): the base-p digits of an index are the
/// coefficients of the residue class against the fixed defining polynomial,
/// lowest degree first. The defining polynomial is the lexicographically
/// smallest monic irreducible of degree k over F_p, coefficient tuples
/// compared from the highest degree down (equivalently: smallest base-p
/// encoding), so serialized values are stable across runs.
class Field {
 public:
  using Elem = uint32_t;

  static constexpr uint64_t kMaxOrder = 1u << 20;

  Field(uint32_t p, uint32_t k);

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint64_t order() const { return q_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// Residue class of x, the canonical generator (only useful for k > 1).
  Elem gen() const { return k_ > 1 ? p_ : 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, int64_t e) const;
  /// x -> x^p, the arithmetic Frobenius.
  Elem frobenius(Elem a) const { return pow(a, p_); }
  Elem frobenius_iter(Elem a, uint32_t j) const;

  Elem from_int(int64_t n) const;  // image of n under Z -> F_p -> F_{p^k}
  /// Element from coefficient digits (low degree first, values mod p).
  Elem from_digits(const std::vector<uint32_t>& digits) const;
  std::vector<uint32_t> digits(Elem a) const;

  /// True iff a lies in the subfield F_{p^d} (requires d | k).
  bool in_subfield(Elem a, uint32_t d) const;

  std::string to_string(Elem a) const;
  Elem parse(const std::string& s) const;

  /// Multiplication-by-a matrix over F_{p^{k/e}}... provided by FieldTower.

 private:
  uint32_t p_, k_;
  uint64_t q_;
  std::vector<uint32_t> modulus_;  // monic, degree k, coefficients mod p
  // For q <= kTableLimit we store full tables; otherwise log/exp only.
  static constexpr uint64_t kTableLimit = 1u << 12;
  std::vector<Elem> mul_table_;
  std::vector<Elem> add_table_;
  std::vector<Elem> inv_table_;
  std::vector<uint32_t> log_;   // discrete log base a fixed primitive element
  std::vector<Elem> exp_;       // inverse of log_
  Elem primitive_ = 0;

  Elem add_slow(Elem a, Elem b) const;
  Elem mul_slow(Elem a, Elem b) const;
  void build_tables();
};

/// Registry of instantiated fields F_{p^k} together with canonical
/// embeddings between them. Fields are owned here and referenced by pointer;
/// the same (p, k) always yields the same Field object.
class FieldTower {
 public:
  static FieldTower& instance();

  const Field* field(uint32_t p, uint32_t k);

  /// Canonical embedding F_{p^k} -> F_{p^k'}, k | k'. Determined by mapping
  /// the generator to a fixed root of the small modulus in the big field
  /// (smallest root consistent with previously chosen embeddings).
  Field::Elem embed(const Field* from, const Field* to, Field::Elem a);

  /// Largest d | k with all of S inside F_{p^d}; d = 1 for empty S.
  uint32_t minimal_subfield(const Field* f, const std::vector<Field::Elem>& xs);

  /// Frobenius orbit {x, x^p, ...} without duplicates.
  std::vector<Field::Elem> frobenius_orbit(const Field* f, Field::Elem x);

  /// Matrix of multiplication by a on F_{p^{k}} viewed as a vector space
  /// over F_{p^d} (d | k) with basis 1, g, ..., g^{k/d-1} for g the image of
  /// the canonical generator power basis. Row-major, size (k/d) x (k/d):
  /// row i = coordinates of basis_i * a.
  std::vector<Field::Elem> mult_matrix(const Field* big, const Field* small,
                                       Field::Elem a);

  /// Coordinates of a in the power basis of big over small.
  std::vector<Field::Elem> coords(const Field* big, const Field* small,
                                  Field::Elem a);
  Field::Elem from_coords(const Field* big, const Field* small,
                          const std::vector<Field::Elem>& c);

 private:
  FieldTower() = default;
  std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<Field>> fields_;
  // (from, to) -> image of from->gen()
  std::map<std::pair<const Field*, const Field*>, Field::Elem> gen_images_;
  Field::Elem embed_gen(const Field* from, const Field* to);
};

}  // namespace hecke

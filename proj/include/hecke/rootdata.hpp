#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hecke/ffield.hpp"

namespace hecke {

/// Subset of the simple roots, as a bitmask in preset root order.
using Subset = uint32_t;

/// Raw preset data as read from a preset file (or the built-in table).
struct PresetData {
  std::string name;
  uint32_t p = 2;
  uint32_t k0 = 1;
  size_t rank = 0;                                // rank of the lattice
  std::vector<std::string> rootLabels;            // simple roots, ordered
  std::vector<std::vector<int>> simpleCoroots;    // [root][rank]
  std::vector<std::vector<int>> pairing;          // pairing[i][j] = <e_i, a_j>
  struct OmegaGen {
    std::vector<int> lambda;
    std::vector<int> word;  // finite simple reflection indices
  };
  std::vector<OmegaGen> omegaGens;                // generators of Omega(G)
  std::map<Subset, std::vector<int>> centralSeeds;  // proper Levi -> seed
  int cs = -1;                                    // quadratic coefficient c_s
};

/// A finite Weyl group element, identified by its index in the enumeration.
struct FinWeyl {
  int idx = 0;
};

/// Based root datum with the finite Weyl group fully enumerated and
/// per-subset (Levi) combinatorics. Immutable after construction.
class RootDatum {
 public:
  explicit RootDatum(PresetData data);

  const PresetData& data() const { return data_; }
  const std::string& name() const { return data_.name; }
  size_t rank() const { return data_.rank; }
  size_t nroots() const { return data_.rootLabels.size(); }
  Subset full() const { return (Subset(1) << nroots()) - 1; }
  int cs() const { return data_.cs; }

  // Positive roots. Coefficients are over the simple roots; the pairing
  // vector gives <lambda, root> = sum_i lambda_i pairvec[i].
  struct Root {
    std::vector<int> coeff;
    std::vector<int> coroot;   // as a lattice vector
    std::vector<int> pairvec;  // [rank]
    int height;
  };
  const std::vector<Root>& posRoots() const { return pos_; }
  int pairing(const std::vector<int>& lambda, size_t rootIdx) const;

  // Finite Weyl group.
  size_t w0Order() const { return w0_.size(); }
  int w0Identity() const { return 0; }
  int w0Mult(int a, int b) const { return w0mult_[a * w0_.size() + b]; }
  int w0Inv(int a) const { return w0inv_[a]; }
  int w0Simple(size_t rootIdx) const { return w0simple_[rootIdx]; }
  int w0Length(int a) const { return (int)w0_[a].word.size(); }
  const std::vector<int>& w0Word(int a) const { return w0_[a].word; }
  /// Action on the lattice.
  std::vector<int> w0Apply(int a, const std::vector<int>& lambda) const;
  /// Signed image of positive root r: returns (index, positive?).
  std::pair<size_t, bool> w0ApplyRoot(int a, size_t r) const;
  /// Longest element of the subgroup generated by J.
  int longestOf(Subset J) const;

  // Subset combinatorics.
  std::vector<int> subgroupOf(Subset J) const;  // W_{0,J} element indices
  bool rootInSubset(size_t rootIdx, Subset J) const;
  std::vector<size_t> posRootsOf(Subset J) const;
  std::vector<std::vector<size_t>> componentsOf(Subset J) const;
  /// Highest root of a component (indices into posRoots).
  size_t highestRoot(const std::vector<size_t>& component) const;
  /// Opposition involution J -> w_G(-J).
  Subset opposition(Subset J) const;
  /// True iff simple root a is orthogonal to every root of J.
  bool orthogonalTo(size_t rootIdx, Subset J) const;

  std::string subsetName(Subset J) const;
  Subset parseSubset(const std::string& s) const;

 private:
  PresetData data_;
  std::vector<Root> pos_;
  struct W0Elt {
    std::vector<int> mat;   // rank x rank, row-major: (w l)_i = sum mat[i][j] l_j
    std::vector<int> word;  // reduced word (BFS)
    std::vector<int> rootImg;  // signed image per positive root: +-(idx+1)
  };
  std::vector<W0Elt> w0_;
  std::vector<int> w0mult_, w0inv_, w0simple_;
  void buildRoots();
  void buildW0();
};

/// Lattice of upper sets of the powerset of a ground set X (|X| <= 4).
/// Each upper set is encoded as a bitset over subset-masks of X.
struct UpperSetLattice {
  size_t groundSize = 0;
  std::vector<uint32_t> elements;  // sorted; bit m set <=> subset-mask m in it
};

UpperSetLattice upper_sets(size_t groundSize);
bool upper_contains(uint32_t upper, uint32_t subsetMask);

/// Preset registry: the three shipped presets plus file loading.
const RootDatum* load_preset(const std::string& name);
const RootDatum* load_preset_file(const std::string& path);
PresetData parse_preset_text(const std::string& text);
std::vector<std::string> preset_names();
/// The raw file content of the named built-in preset.
const std::string& preset_text(const std::string& name);

}  // namespace hecke

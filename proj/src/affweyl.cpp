#include "hecke/affweyl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hecke {

namespace {

// Smith-style reduction: returns unimodular U (rows) with U*C lower-staircase,
// used to read off a basis of Lambda / im(C). Presets have torsion-free
// quotients; this is asserted by the caller.
struct SnfResult {
  std::vector<std::vector<int>> U;  // rank x rank
  size_t rankC;
  std::vector<int> diag;
};

SnfResult integer_rowreduce(std::vector<std::vector<int>> C, size_t rank) {
  size_t cols = C.empty() ? 0 : C[0].size();
  std::vector<std::vector<int>> U(rank, std::vector<int>(rank, 0));
  for (size_t i = 0; i < rank; ++i) U[i][i] = 1;
  size_t row = 0;
  std::vector<int> diag;
  for (size_t col = 0; col < cols && row < rank; ++col) {
    // euclidean elimination on rows >= row in this column
    while (true) {
      size_t piv = SIZE_MAX;
      int best = 0;
      for (size_t r = row; r < rank; ++r)
        if (C[r][col] != 0 &&
            (piv == SIZE_MAX || std::abs(C[r][col]) < std::abs(best))) {
          piv = r;
          best = C[r][col];
        }
      if (piv == SIZE_MAX) break;
      std::swap(C[piv], C[row]);
      std::swap(U[piv], U[row]);
      bool clean = true;
      for (size_t r = row + 1; r < rank; ++r) {
        if (C[r][col] == 0) continue;
        int q = C[r][col] / C[row][col];
        for (size_t j = 0; j < cols; ++j) C[r][j] -= q * C[row][j];
        for (size_t j = 0; j < rank; ++j) U[r][j] -= q * U[row][j];
        if (C[r][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (C[row][col] != 0) {
      if (C[row][col] < 0) {
        for (size_t j = 0; j < cols; ++j) C[row][j] = -C[row][j];
        for (size_t j = 0; j < rank; ++j) U[row][j] = -U[row][j];
      }
      diag.push_back(C[row][col]);
      ++row;
    }
  }
  return {U, row, diag};
}

}  // namespace

LeviContext::LeviContext(const RootDatum* rd, Subset J) : rd_(rd), J_(J) {
  posJ_ = rd_->posRootsOf(J_);
  buildSimples();
  buildOmega();
}

AffWeylElt LeviContext::identity() const {
  return {std::vector<int>(rd_->rank(), 0), 0};
}

AffWeylElt LeviContext::translation(const std::vector<int>& lambda) const {
  return {lambda, 0};
}

AffWeylElt LeviContext::finite(int w0idx) const {
  return {std::vector<int>(rd_->rank(), 0), w0idx};
}

AffWeylElt LeviContext::mult(const AffWeylElt& a, const AffWeylElt& b) const {
  // (l1, w1)(l2, w2) = (l1 + w1 l2, w1 w2)
  std::vector<int> l = rd_->w0Apply(a.w, b.lambda);
  for (size_t i = 0; i < l.size(); ++i) l[i] += a.lambda[i];
  return {l, rd_->w0Mult(a.w, b.w)};
}

AffWeylElt LeviContext::inverse(const AffWeylElt& a) const {
  int wi = rd_->w0Inv(a.w);
  std::vector<int> l = rd_->w0Apply(wi, a.lambda);
  for (auto& v : l) v = -v;
  return {l, wi};
}

int LeviContext::length(const AffWeylElt& x) const {
  int wi = rd_->w0Inv(x.w);
  int len = 0;
  for (size_t r : posJ_) {
    int pair = rd_->pairing(x.lambda, r);
    auto [img, positive] = rd_->w0ApplyRoot(wi, r);
    (void)img;
    len += positive ? std::abs(pair) : std::abs(pair - 1);
  }
  return len;
}

void LeviContext::buildSimples() {
  for (size_t j = 0; j < rd_->nroots(); ++j) {
    if (!(J_ >> j & 1)) continue;
    AffSimple s;
    s.elt = finite(rd_->w0Simple(j));
    s.label = rd_->data().rootLabels[j];
    s.affine = false;
    s.finRoot = j;
    simples_.push_back(s);
  }
  auto comps = rd_->componentsOf(J_);
  for (size_t c = 0; c < comps.size(); ++c) {
    size_t hr = rd_->highestRoot(comps[c]);
    const auto& root = rd_->posRoots()[hr];
    // s_theta as a finite Weyl element: reflect the lattice
    // s_theta(l) = l - <l, theta> theta^; find it in W_{0,J}.
    int stheta = -1;
    for (int e : rd_->subgroupOf(J_)) {
      bool ok = true;
      for (size_t i = 0; i < rd_->rank() && ok; ++i) {
        std::vector<int> unit(rd_->rank(), 0);
        unit[i] = 1;
        auto img = rd_->w0Apply(e, unit);
        int pair = root.pairvec[i];
        for (size_t t = 0; t < rd_->rank(); ++t) {
          int expect = unit[t] - pair * root.coroot[t];
          if (img[t] != expect) ok = false;
        }
      }
      if (ok) stheta = e;
    }
    if (stheta < 0) throw HeckeError("levi: reflection of highest root missing");
    AffSimple s;
    s.elt = {root.coroot, stheta};
    s.label = "aff" + std::to_string(c);
    s.affine = true;
    s.finRoot = hr;
    simples_.push_back(s);
    if (length(s.elt) != 1)
      throw HeckeError("levi: affine simple has length != 1");
  }
}

void LeviContext::buildOmega() {
  size_t rank = rd_->rank();
  // Columns: coroots of the J-simples.
  std::vector<std::vector<int>> C(rank);
  std::vector<std::vector<int>> cor;
  for (size_t j = 0; j < rd_->nroots(); ++j)
    if (J_ >> j & 1) cor.push_back(rd_->data().simpleCoroots[j]);
  for (size_t i = 0; i < rank; ++i) {
    C[i].resize(cor.size());
    for (size_t j = 0; j < cor.size(); ++j) C[i][j] = cor[j][i];
  }
  auto snf = integer_rowreduce(C, rank);
  for (int d : snf.diag)
    if (d != 1)
      throw HeckeError("levi: Omega_M has torsion; preset out of scope");
  snfU_ = snf.U;
  snfRankC_ = snf.rankC;
  // Free-part class representatives: rows of U^{-1}?? We work in U
  // coordinates: class of lambda is (U lambda)_{i}, i >= rankC. A basis of
  // the quotient is given by vectors b_i with U b_i = e_{rankC + i}.
  // Solve with integer elimination (U unimodular).
  size_t nfree = rank - snf.rankC;
  auto solveU = [&](const std::vector<int>& rhs) {
    // solve U x = rhs by Gaussian elimination over rationals; U unimodular
    size_t n = rank;
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) m[i][j] = snfU_[i][j];
      m[i][n] = rhs[i];
    }
    for (size_t c = 0, r = 0; c < n && r < n; ++c) {
      size_t piv = r;
      for (size_t i = r; i < n; ++i)
        if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
      if (std::abs(m[piv][c]) < 1e-9) continue;
      std::swap(m[piv], m[r]);
      for (size_t i = 0; i < n; ++i) {
        if (i == r) continue;
        double f = m[i][c] / m[r][c];
        for (size_t j = c; j <= n; ++j) m[i][j] -= f * m[r][j];
      }
      ++r;
    }
    std::vector<int> x(n, 0);
    for (size_t i = 0; i < n; ++i) {
      size_t lead = n;
      for (size_t j = 0; j < n; ++j)
        if (std::abs(m[i][j]) > 1e-9) {
          lead = j;
          break;
        }
      if (lead == n) continue;
      double v = m[i][n] / m[i][lead];
      x[lead] = (int)llround(v);
    }
    return x;
  };
  for (size_t i = 0; i < nfree; ++i) {
    std::vector<int> e(rank, 0);
    e[snf.rankC + i] = 1;
    std::vector<int> lambda0 = solveU(e);
    // find the length-zero representative of the class of lambda0
    AffWeylElt found;
    bool ok = false;
    std::vector<int> qcoef(cor.size(), -3);
    auto subgroup = rd_->subgroupOf(J_);
    while (true) {
      std::vector<int> lam = lambda0;
      for (size_t j = 0; j < cor.size(); ++j)
        for (size_t t = 0; t < rank; ++t) lam[t] += qcoef[j] * cor[j][t];
      for (int v : subgroup) {
        AffWeylElt cand{lam, v};
        if (length(cand) == 0) {
          found = cand;
          ok = true;
          break;
        }
      }
      if (ok) break;
      // advance coefficient counter
      size_t j = 0;
      while (j < qcoef.size() && qcoef[j] == 3) qcoef[j++] = -3;
      if (j == qcoef.size()) break;
      ++qcoef[j];
    }
    if (!ok && cor.empty()) {
      // no coroots: lambda0 with some finite part? pure translation works
      AffWeylElt cand{lambda0, 0};
      if (length(cand) == 0) {
        found = cand;
        ok = true;
      }
    }
    if (!ok) throw HeckeError("levi: no length-zero representative found");
    omega_.push_back(found);
  }
  // Omega must be abelian here (trivial Z_k); verify pairwise.
  for (size_t a = 0; a < omega_.size(); ++a)
    for (size_t b = a + 1; b < omega_.size(); ++b) {
      if (!(mult(omega_[a], omega_[b]) == mult(omega_[b], omega_[a])))
        throw HeckeError("levi: Omega_M not abelian");
    }
  // conjugation action on the affine simples
  omegaConj_.assign(omega_.size(), std::vector<int>(simples_.size(), -1));
  for (size_t g = 0; g < omega_.size(); ++g) {
    for (size_t s = 0; s < simples_.size(); ++s) {
      AffWeylElt c =
          mult(mult(omega_[g], simples_[s].elt), inverse(omega_[g]));
      int hit = -1;
      for (size_t t = 0; t < simples_.size(); ++t)
        if (simples_[t].elt == c) hit = (int)t;
      if (hit < 0)
        throw HeckeError("levi: Omega does not permute affine simples");
      omegaConj_[g][s] = hit;
    }
  }
}

std::vector<int> LeviContext::omegaExponents(const AffWeylElt& u) const {
  size_t rank = rd_->rank();
  std::vector<int> Ulam(rank, 0);
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < rank; ++j) Ulam[i] += snfU_[i][j] * u.lambda[j];
  std::vector<int> e(omega_.size());
  for (size_t i = 0; i < omega_.size(); ++i) e[i] = Ulam[snfRankC_ + i];
  // verify exactly: u == prod g_i^{e_i}
  AffWeylElt prod = identity();
  for (size_t i = 0; i < omega_.size(); ++i) {
    AffWeylElt g = e[i] >= 0 ? omega_[i] : inverse(omega_[i]);
    for (int t = 0; t < std::abs(e[i]); ++t) prod = mult(prod, g);
  }
  if (!(prod == u))
    throw HeckeError("levi: length-zero element not in Omega span");
  return e;
}

size_t LeviContext::conjSimple(size_t omegaIdx, bool inv,
                               size_t simpleIdx) const {
  if (!inv) return (size_t)omegaConj_[omegaIdx][simpleIdx];
  for (size_t t = 0; t < simples_.size(); ++t)
    if ((size_t)omegaConj_[omegaIdx][t] == simpleIdx) return t;
  throw HeckeError("levi: conjugation table broken");
}

const LeviContext::Word& LeviContext::reducedWord(const AffWeylElt& x) const {
  auto it = wordCache_.find(x);
  if (it != wordCache_.end()) return it->second;
  Word w;
  AffWeylElt cur = x;
  int len = length(cur);
  while (len > 0) {
    bool moved = false;
    for (size_t s = 0; s < simples_.size(); ++s) {
      AffWeylElt nxt = mult(simples_[s].elt, cur);
      int nl = length(nxt);
      if (nl == len - 1) {
        w.letters.push_back(s);
        cur = nxt;
        len = nl;
        moved = true;
        break;
      }
    }
    if (!moved) throw HeckeError("levi: no descent found");
  }
  w.omegaPart = cur;
  auto [pos, _] = wordCache_.emplace(x, std::move(w));
  return pos->second;
}

int LeviContext::braidOrder(size_t i, size_t j) const {
  AffWeylElt st = mult(simples_[i].elt, simples_[j].elt);
  AffWeylElt cur = st;
  for (int order = 1; order <= 12; ++order) {
    if (cur == identity()) return order;
    cur = mult(cur, st);
  }
  return 0;
}

bool LeviContext::inLevi(const AffWeylElt& x) const {
  auto sub = rd_->subgroupOf(J_);
  return std::binary_search(sub.begin(), sub.end(), x.w);
}

std::string LeviContext::elt_to_string(const AffWeylElt& x) const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.lambda.size(); ++i) {
    if (i) os << ",";
    os << x.lambda[i];
  }
  os << "|";
  const auto& word = rd_->w0Word(x.w);
  if (word.empty())
    os << "e";
  else
    for (size_t i = 0; i < word.size(); ++i) {
      if (i) os << ".";
      os << rd_->data().rootLabels[word[i]];
    }
  os << ")";
  return os.str();
}

const LeviContext* levi_context(const RootDatum* rd, Subset J) {
  static std::map<std::pair<const RootDatum*, Subset>,
                  std::unique_ptr<LeviContext>>
      cache;
  auto key = std::make_pair(rd, J);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();
  auto ctx = std::make_unique<LeviContext>(rd, J);
  const LeviContext* ptr = ctx.get();
  cache.emplace(key, std::move(ctx));
  return ptr;
}

std::vector<AffWeylElt> min_coset_reps(const RootDatum* rd, Subset J,
                                       Subset K) {
  auto withinK = rd->subgroupOf(K);
  auto withinJ = rd->subgroupOf(J);
  const LeviContext* ctx = levi_context(rd, K);
  std::vector<bool> used(rd->w0Order(), false);
  std::vector<AffWeylElt> reps;
  // scan by increasing length for minimality
  std::vector<int> byLen = withinK;
  std::sort(byLen.begin(), byLen.end(), [&](int a, int b) {
    if (rd->w0Length(a) != rd->w0Length(b))
      return rd->w0Length(a) < rd->w0Length(b);
    return rd->w0Word(a) < rd->w0Word(b);
  });
  for (int d : byLen) {
    if (used[d]) continue;
    reps.push_back(ctx->finite(d));
    for (int u : withinJ) used[rd->w0Mult(u, d)] = true;
  }
  // each rep is the unique minimum: check the descent property
  for (const auto& rep : reps) {
    for (size_t j = 0; j < rd->nroots(); ++j) {
      if (!(J >> j & 1)) continue;
      int sd = rd->w0Mult(rd->w0Simple(j), rep.w);
      if (rd->w0Length(sd) != rd->w0Length(rep.w) + 1)
        throw HeckeError("coset rep not minimal");
    }
  }
  return reps;
}

AffWeylElt longest_element(const RootDatum* rd, Subset J) {
  const LeviContext* ctx = levi_context(rd, rd->full());
  return ctx->finite(rd->longestOf(J));
}

bool is_M_positive(const RootDatum* rd, Subset J, Subset K,
                   const AffWeylElt& x) {
  auto sub = rd->subgroupOf(J);
  if (!std::binary_search(sub.begin(), sub.end(), x.w))
    throw HeckeError("is_M_positive: element not in Levi");
  for (size_t r : rd->posRootsOf(K)) {
    if (rd->rootInSubset(r, J)) continue;
    if (rd->pairing(x.lambda, r) < 0) return false;
  }
  return true;
}

bool is_M_negative(const RootDatum* rd, Subset J, Subset K,
                   const AffWeylElt& x) {
  auto sub = rd->subgroupOf(J);
  if (!std::binary_search(sub.begin(), sub.end(), x.w))
    throw HeckeError("is_M_negative: element not in Levi");
  for (size_t r : rd->posRootsOf(K)) {
    if (rd->rootInSubset(r, J)) continue;
    if (rd->pairing(x.lambda, r) > 0) return false;
  }
  return true;
}

AffWeylElt deep_central_translation(const RootDatum* rd, Subset J, Subset K,
                                    int epsilon, int depth) {
  size_t rank = rd->rank();
  auto outside = [&](const std::vector<int>& a) {
    int minpair = INT32_MAX;
    for (size_t r : rd->posRootsOf(K)) {
      if (rd->rootInSubset(r, J)) {
        if (rd->pairing(a, r) != 0) return -1;  // not central in M
        continue;
      }
      minpair = std::min(minpair, epsilon * rd->pairing(a, r));
    }
    if (minpair == INT32_MAX) return 1;  // no outside roots: anything central
    return minpair;
  };
  // search a small box for a base vector with positive clearance
  std::vector<int> best;
  int bestClear = 0;
  std::vector<int> a(rank, -2);
  while (true) {
    int c = outside(a);
    if (c > bestClear) {
      bestClear = c;
      best = a;
    }
    size_t i = 0;
    while (i < rank && a[i] == 2) a[i++] = -2;
    if (i == rank) break;
    ++a[i];
  }
  if (best.empty())
    throw HeckeError("no central translation direction found");
  int scale = (depth + bestClear - 1) / bestClear;
  for (auto& v : best) v *= scale;
  return {best, 0};
}

}  // namespace hecke

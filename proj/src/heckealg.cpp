#include "hecke/heckealg.hpp"

#include <algorithm>
#include <sstream>

#include "hecke/gfmat.hpp"

namespace hecke {

void HeckeElt::addTerm(const AffWeylElt& x, Field::Elem c) {
  if (c == 0) return;
  auto it = coeffs.find(x);
  if (it == coeffs.end()) {
    coeffs.emplace(x, c);
  } else {
    it->second = f->add(it->second, c);
    if (it->second == 0) coeffs.erase(it);
  }
}

HeckeAlg::HeckeAlg(const RootDatum* rd, Subset levi, const Field* f)
    : rd_(rd), J_(levi), f_(f), ctx_(levi_context(rd, levi)) {
  int c = rd_->cs();
  cs_ = f_->from_int(c);
}

HeckeElt HeckeAlg::zero() const { return {rd_, J_, f_, {}}; }

HeckeElt HeckeAlg::unit() const {
  HeckeElt e = zero();
  e.addTerm(ctx_->identity(), f_->one());
  return e;
}

HeckeElt HeckeAlg::basisT(const AffWeylElt& x) const {
  HeckeElt e = zero();
  e.addTerm(x, f_->one());
  return e;
}

void HeckeAlg::rightMultSimple(HeckeElt& a, size_t s) const {
  HeckeElt out = zero();
  const AffWeylElt& se = ctx_->simples()[s].elt;
  for (const auto& [z, c] : a.coeffs) {
    AffWeylElt zs = ctx_->mult(z, se);
    if (ctx_->length(zs) == ctx_->length(z) + 1)
      out.addTerm(zs, c);
    else
      out.addTerm(z, f_->mul(c, cs_));
  }
  a = std::move(out);
}

void HeckeAlg::rightMultElt(HeckeElt& a, const AffWeylElt& y) const {
  const auto& word = ctx_->reducedWord(y);
  for (size_t s : word.letters) rightMultSimple(a, s);
  if (!(word.omegaPart == ctx_->identity())) {
    HeckeElt out = zero();
    for (const auto& [z, c] : a.coeffs)
      out.addTerm(ctx_->mult(z, word.omegaPart), c);
    a = std::move(out);
  }
}

HeckeElt HeckeAlg::add(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt out = a;
  for (const auto& [x, c] : b.coeffs) out.addTerm(x, c);
  return out;
}

HeckeElt HeckeAlg::sub(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt out = a;
  for (const auto& [x, c] : b.coeffs) out.addTerm(x, f_->neg(c));
  return out;
}

HeckeElt HeckeAlg::scale(const HeckeElt& a, Field::Elem c) const {
  HeckeElt out = zero();
  for (const auto& [x, v] : a.coeffs) out.addTerm(x, f_->mul(v, c));
  return out;
}

HeckeElt HeckeAlg::multiply(const HeckeElt& a, const HeckeElt& b) const {
  if (a.levi != J_ || b.levi != J_)
    throw HeckeError("hecke: context mismatch in multiply");
  HeckeElt out = zero();
  for (const auto& [y, cy] : b.coeffs) {
    HeckeElt part = a;
    rightMultElt(part, y);
    for (const auto& [z, c] : part.coeffs) out.addTerm(z, f_->mul(c, cy));
  }
  return out;
}

HeckeElt HeckeAlg::basisTstar(const AffWeylElt& x) const {
  auto it = tstarCache_.find(x);
  if (it != tstarCache_.end()) return it->second;
  const auto& word = ctx_->reducedWord(x);
  HeckeElt e = unit();
  for (size_t s : word.letters) {
    HeckeElt shifted = e;
    rightMultSimple(shifted, s);
    // e * (T(s) - c_s)
    e = sub(shifted, scale(e, cs_));
  }
  if (!(word.omegaPart == ctx_->identity())) {
    HeckeElt out = zero();
    for (const auto& [z, c] : e.coeffs)
      out.addTerm(ctx_->mult(z, word.omegaPart), c);
    e = std::move(out);
  }
  tstarCache_.emplace(x, e);
  return e;
}

std::map<AffWeylElt, Field::Elem> HeckeAlg::toTstar(const HeckeElt& a) const {
  std::map<AffWeylElt, Field::Elem> out;
  HeckeElt cur = a;
  while (!cur.coeffs.empty()) {
    // take a support element of maximal length
    auto best = cur.coeffs.begin();
    int bestLen = ctx_->length(best->first);
    for (auto it = cur.coeffs.begin(); it != cur.coeffs.end(); ++it) {
      int l = ctx_->length(it->first);
      if (l > bestLen) {
        best = it;
        bestLen = l;
      }
    }
    AffWeylElt x = best->first;
    Field::Elem d = best->second;
    out[x] = d;
    cur = sub(cur, scale(basisTstar(x), d));
    if (cur.coeffs.count(x))
      throw HeckeError("hecke: T* conversion failed to eliminate");
  }
  return out;
}

HeckeElt HeckeAlg::zeta(const HeckeElt& a) const {
  HeckeElt out = zero();
  for (const auto& [x, c] : a.coeffs) out.addTerm(ctx_->inverse(x), c);
  return out;
}

HeckeElt HeckeAlg::iotaM(const HeckeElt& a) const {
  HeckeElt out = zero();
  for (const auto& [x, c] : a.coeffs) {
    Field::Elem s = (ctx_->length(x) % 2) ? f_->neg(f_->one()) : f_->one();
    HeckeElt t = scale(basisTstar(x), f_->mul(c, s));
    out = add(out, t);
  }
  return out;
}

HeckeElt HeckeAlg::iotaEll(const HeckeElt& a, Subset ambient) const {
  const LeviContext* amb = levi_context(rd_, ambient);
  HeckeElt out = zero();
  for (const auto& [x, c] : a.coeffs) {
    int diff = amb->length(x) - ctx_->length(x);
    Field::Elem s = (diff % 2) ? f_->neg(f_->one()) : f_->one();
    out.addTerm(x, f_->mul(c, s));
  }
  return out;
}

HeckeElt HeckeAlg::iotaFull(const HeckeElt& a, Subset ambient) const {
  return iotaM(iotaEll(a, ambient));
}

std::string HeckeAlg::to_string(const HeckeElt& a) const {
  if (a.coeffs.empty()) return "0";
  // canonical order: (length, lexicographic reduced word)
  std::vector<const AffWeylElt*> keys;
  for (const auto& [x, c] : a.coeffs) keys.push_back(&x);
  std::sort(keys.begin(), keys.end(),
            [&](const AffWeylElt* a1, const AffWeylElt* b1) {
              int la = ctx_->length(*a1), lb = ctx_->length(*b1);
              if (la != lb) return la < lb;
              const auto& wa = ctx_->reducedWord(*a1);
              const auto& wb = ctx_->reducedWord(*b1);
              if (wa.letters != wb.letters) return wa.letters < wb.letters;
              return *a1 < *b1;
            });
  std::ostringstream os;
  bool first = true;
  for (const auto* x : keys) {
    if (!first) os << " + ";
    first = false;
    os << f_->to_string(a.coeffs.at(*x)) << "*T" << ctx_->elt_to_string(*x);
  }
  return os.str();
}

const HeckeAlg* hecke_alg(const RootDatum* rd, Subset levi, const Field* f) {
  static std::map<std::tuple<const RootDatum*, Subset, const Field*>,
                  std::unique_ptr<HeckeAlg>>
      cache;
  auto key = std::make_tuple(rd, levi, f);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();
  auto alg = std::make_unique<HeckeAlg>(rd, levi, f);
  const HeckeAlg* ptr = alg.get();
  cache.emplace(key, std::move(alg));
  return ptr;
}

HeckeElt theta(const HeckeElt& a, Subset K) {
  HeckeElt out = a;
  out.levi = K;
  return out;
}

HeckeElt theta_star(const HeckeElt& a, Subset K) {
  const HeckeAlg* sub = hecke_alg(a.rd, a.levi, a.f);
  const HeckeAlg* amb = hecke_alg(a.rd, K, a.f);
  auto star = sub->toTstar(a);
  HeckeElt out = amb->zero();
  for (const auto& [x, c] : star)
    out = amb->add(out, amb->scale(amb->basisTstar(x), c));
  return out;
}

Subset opposition_in(const RootDatum* rd, Subset J, Subset K) {
  if (K == rd->full()) return rd->opposition(J);
  int wk = rd->longestOf(K);
  Subset out = 0;
  for (size_t j = 0; j < rd->nroots(); ++j) {
    if (!(J >> j & 1)) continue;
    auto [img, pos] = rd->w0ApplyRoot(wk, j);
    if (pos) throw HeckeError("opposition: expected sign flip");
    bool matched = false;
    for (size_t t = 0; t < rd->nroots(); ++t) {
      std::vector<int> unit(rd->nroots(), 0);
      unit[t] = 1;
      if (rd->posRoots()[img].coeff == unit) {
        out |= Subset(1) << t;
        matched = true;
      }
    }
    if (!matched) throw HeckeError("opposition: image not simple in K");
  }
  return out;
}

HeckeElt twist(const HeckeElt& a, Subset K) {
  const RootDatum* rd = a.rd;
  Subset Jop = opposition_in(rd, a.levi, K);
  const LeviContext* ctx = levi_context(rd, rd->full());
  int sigma = rd->w0Mult(rd->longestOf(K), rd->longestOf(a.levi));
  AffWeylElt sig = ctx->finite(sigma);
  AffWeylElt sigInv = ctx->inverse(sig);
  HeckeElt out;
  out.rd = rd;
  out.levi = Jop;
  out.f = a.f;
  for (const auto& [x, c] : a.coeffs) {
    AffWeylElt y = ctx->mult(ctx->mult(sig, x), sigInv);
    out.addTerm(y, c);
  }
  return out;
}

HeckeElt bernstein_elt(const HeckeAlg* alg, const std::vector<int>& lambda) {
  // Integral Bernstein element at q = 0, by an alcove walk along the
  // canonical reduced word of t_lambda: each letter contributes T(s) when
  // the walk crosses its wall in the increasing direction of the wall's
  // positive root (toward the dominant chamber at infinity) and T*(s) when
  // it crosses decreasingly. For dominant lambda this yields T(t_lambda),
  // for antidominant T*(t_lambda).
  const RootDatum* rd = alg->datum();
  const LeviContext* ctx = alg->ctx();
  auto posK = rd->posRootsOf(alg->levi());
  size_t rank = rd->rank();
  // interior sample point of the base alcove: v/D with 0 < <v,g> < D
  std::vector<int> v(rank, 0);
  int D = 0;
  {
    std::vector<int> cand(rank, -3);
    while (true) {
      int minp = INT32_MAX, maxp = INT32_MIN;
      for (size_t r : posK) {
        int pr = rd->pairing(cand, r);
        minp = std::min(minp, pr);
        maxp = std::max(maxp, pr);
      }
      if (posK.empty() || minp >= 1) {
        v = cand;
        D = posK.empty() ? 2 : 2 * maxp;
        break;
      }
      size_t i = 0;
      while (i < rank && cand[i] == 3) cand[i++] = -3;
      if (i == rank) throw HeckeError("bernstein: no interior point");
      ++cand[i];
    }
  }
  AffWeylElt t = ctx->translation(lambda);
  const auto& word = ctx->reducedWord(t);
  auto sample = [&](const AffWeylElt& x) {
    // D * (x . v/D) = w(v) + D*lambda
    std::vector<int> p = rd->w0Apply(x.w, v);
    for (size_t i = 0; i < rank; ++i) p[i] += D * x.lambda[i];
    return p;
  };
  HeckeElt e = alg->unit();
  AffWeylElt cur = ctx->identity();
  std::vector<int> pcur = sample(cur);
  for (size_t letter : word.letters) {
    const auto& s = ctx->simples()[letter];
    AffWeylElt nxt = ctx->mult(cur, s.elt);
    std::vector<int> pnxt = sample(nxt);
    // wall direction: the (finite) root of the reflection, pushed through
    // the finite part of cur; pairing against the positive representative
    // already normalizes the direction
    auto [rootIdx, positive] = rd->w0ApplyRoot(cur.w, s.finRoot);
    (void)positive;
    int diff = rd->pairing(pnxt, rootIdx) - rd->pairing(pcur, rootIdx);
    if (diff == 0) throw HeckeError("bernstein: degenerate crossing");
    HeckeElt step = diff > 0 ? alg->basisT(s.elt) : alg->basisTstar(s.elt);
    e = alg->multiply(e, step);
    cur = nxt;
    pcur = pnxt;
  }
  if (!(word.omegaPart == ctx->identity()))
    e = alg->multiply(e, alg->basisT(word.omegaPart));
  return e;
}

namespace {

// All generators of H(M_K): affine simples and Omega generators (plus
// inverses of the latter; commuting with those follows, but keep the check
// exhaustive and cheap).
std::vector<AffWeylElt> generator_elts(const LeviContext* ctx) {
  std::vector<AffWeylElt> gens;
  for (const auto& s : ctx->simples()) gens.push_back(s.elt);
  for (const auto& u : ctx->omegaGens()) {
    gens.push_back(u);
    gens.push_back(ctx->inverse(u));
  }
  return gens;
}

}  // namespace

CentralElement find_central(const RootDatum* rd, Subset J, Subset K,
                            const Field* f, const std::vector<int>& seed,
                            int supportSlack) {
  if (J == K) throw HeckeError("find_central: J must be proper in K");
  const HeckeAlg* alg = hecke_alg(rd, K, f);
  const LeviContext* ctx = alg->ctx();
  // W_{0,K}-orbit of the seed
  std::vector<std::vector<int>> orbit;
  for (int w : rd->subgroupOf(K)) {
    auto v = rd->w0Apply(w, seed);
    if (std::find(orbit.begin(), orbit.end(), v) == orbit.end())
      orbit.push_back(v);
  }
  std::sort(orbit.begin(), orbit.end());
  HeckeElt c = alg->zero();
  for (const auto& mu : orbit) c = alg->add(c, bernstein_elt(alg, mu));
  // exhaustive commutation check: this is the definition of `verified`
  for (const auto& g : generator_elts(ctx)) {
    HeckeElt tg = alg->basisT(g);
    if (!(alg->multiply(c, tg) == alg->multiply(tg, c)))
      throw HeckeError("find_central: orbit sum not central");
  }
  // support constraint: the element lies in H(K') (derived-group span)
  const LeviContext* ctxK = levi_context(rd, K);
  for (const auto& [x, coeff] : c.coeffs) {
    (void)coeff;
    AffWeylElt u{x.lambda, 0};
    // class of lambda in Lambda / Q^_K must be the class of 0
    auto word = ctxK->reducedWord(ctxK->translation(x.lambda));
    auto exps = ctxK->omegaExponents(word.omegaPart);
    for (int e : exps)
      if (e != 0) throw HeckeError("find_central: support leaves H(K')");
    (void)u;
  }
  // normalization sanity: trivial character takes value 1
  Field::Elem tv = f->zero();
  for (const auto& [x, coeff] : c.coeffs)
    if (ctx->length(x) == 0) tv = f->add(tv, coeff);
  if (tv != f->one())
    throw HeckeError("find_central: trivial-character normalization != 1");
  (void)supportSlack;
  CentralElement out;
  out.levi = J;
  out.ambient = K;
  out.elt = c;
  out.verified = true;
  return out;
}

std::vector<HeckeElt> central_solution_space(const RootDatum* rd, Subset J,
                                             Subset K, const Field* f,
                                             const std::vector<int>& seed,
                                             int supportSlack) {
  (void)J;
  const HeckeAlg* alg = hecke_alg(rd, K, f);
  const LeviContext* ctx = alg->ctx();
  size_t rank = rd->rank();
  std::vector<std::vector<int>> orbit;
  for (int w : rd->subgroupOf(K)) {
    auto v = rd->w0Apply(w, seed);
    if (std::find(orbit.begin(), orbit.end(), v) == orbit.end())
      orbit.push_back(v);
  }
  // bounding box of the orbit plus the origin, padded by supportSlack
  std::vector<int> lo(rank, 0), hi(rank, 0);
  for (const auto& v : orbit)
    for (size_t i = 0; i < rank; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  for (size_t i = 0; i < rank; ++i) {
    lo[i] -= supportSlack;
    hi[i] += supportSlack;
  }
  int maxLen = 0;
  for (const auto& v : orbit)
    maxLen = std::max(maxLen, ctx->length(ctx->translation(v)));
  // enumerate window elements: class-0 translations in the box, any finite
  // part in W_{0,K}, length bounded by the orbit translations
  std::vector<AffWeylElt> window;
  std::vector<int> cur = lo;
  while (true) {
    AffWeylElt t = ctx->translation(cur);
    // class check: length-zero part of t must be trivial in Omega
    bool classZero = true;
    {
      auto word = ctx->reducedWord(t);
      auto exps = ctx->omegaExponents(word.omegaPart);
      for (int e : exps)
        if (e != 0) classZero = false;
    }
    if (classZero) {
      for (int w : rd->subgroupOf(K)) {
        AffWeylElt x{cur, w};
        if (ctx->length(x) <= maxLen) window.push_back(x);
      }
    }
    size_t i = 0;
    while (i < rank && cur[i] == hi[i]) cur[i] = lo[i], ++i;
    if (i == rank) break;
    ++cur[i];
  }
  std::sort(window.begin(), window.end());
  // linear system over the field: rows indexed by (generator, support elt)
  auto gens = generator_elts(ctx);
  std::map<std::pair<size_t, AffWeylElt>, size_t> rowIndex;
  std::vector<std::vector<Field::Elem>> cols;
  for (size_t wi = 0; wi < window.size(); ++wi) {
    HeckeElt e = alg->basisT(window[wi]);
    std::vector<std::pair<std::pair<size_t, AffWeylElt>, Field::Elem>> entries;
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      HeckeElt tg = alg->basisT(gens[gi]);
      HeckeElt comm = alg->sub(alg->multiply(e, tg), alg->multiply(tg, e));
      for (const auto& [x, cc] : comm.coeffs)
        entries.push_back({{gi, x}, cc});
    }
    for (auto& [key, cc] : entries) {
      (void)cc;
      if (!rowIndex.count(key)) {
        size_t id = rowIndex.size();
        rowIndex[key] = id;
      }
    }
    cols.push_back({});
    cols.back().assign(rowIndex.size(), 0);
    for (auto& [key, cc] : entries) {
      size_t r = rowIndex[key];
      if (cols.back().size() <= r) cols.back().resize(rowIndex.size(), 0);
      cols.back()[r] = f->add(cols.back()[r], cc);
    }
  }
  size_t nrows = rowIndex.size();
  Mat m(f, window.size(), nrows);
  for (size_t c2 = 0; c2 < cols.size(); ++c2)
    for (size_t r = 0; r < cols[c2].size(); ++r) m.at(c2, r) = cols[c2][r];
  Mat null = m.left_nullspace();
  std::vector<HeckeElt> out;
  for (size_t i = 0; i < null.rows(); ++i) {
    HeckeElt e = alg->zero();
    for (size_t j = 0; j < window.size(); ++j)
      e.addTerm(window[j], null.at(i, j));
    out.push_back(e);
  }
  return out;
}

}  // namespace hecke

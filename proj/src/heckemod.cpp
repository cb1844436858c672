#include "hecke/heckemod.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace hecke {

namespace {

std::vector<Field::Elem> flatten(const Mat& m) { return m.data(); }

Mat random_combination(const std::vector<Mat>& basis, std::mt19937_64& rng) {
  const Field* f = basis.front().field();
  Mat out(f, basis.front().rows(), basis.front().cols());
  std::uniform_int_distribution<uint64_t> coef(0, f->order() - 1);
  for (const auto& b : basis) {
    Field::Elem c = (Field::Elem)coef(rng);
    if (c == 0) continue;
    out = out + b.scaled(c);
  }
  return out;
}

}  // namespace

HModule::HModule(const RootDatum* rd, Subset levi, const Field* f,
                 std::vector<Mat> simpleAct, std::vector<Mat> omegaAct,
                 bool check)
    : rd_(rd),
      levi_(levi),
      f_(f),
      ctx_(levi_context(rd, levi)),
      simpleAct_(std::move(simpleAct)),
      omegaAct_(std::move(omegaAct)) {
  dim_ = 0;
  if (!simpleAct_.empty())
    dim_ = simpleAct_.front().rows();
  else if (!omegaAct_.empty())
    dim_ = omegaAct_.front().rows();
  if (dim_ == 0) throw HeckeError("module: zero module rejected");
  if (simpleAct_.size() != ctx_->simples().size() ||
      omegaAct_.size() != ctx_->omegaGens().size())
    throw HeckeError("module: generator count mismatch");
  for (const auto& u : omegaAct_) omegaInv_.push_back(u.inverse());
  if (check) {
    RelationReport rep = check_relations(*this);
    if (!rep.pass) {
      std::string msg = "module: defining relations violated:";
      for (const auto& s : rep.failures) msg += " [" + s + "]";
      throw HeckeError(msg);
    }
  }
}

Mat HModule::actT(const AffWeylElt& x) const {
  auto it = actCache_.find(x);
  if (it != actCache_.end()) return it->second;
  const auto& word = ctx_->reducedWord(x);
  Mat m = Mat::identity(f_, dim_);
  for (size_t s : word.letters) m = m * simpleAct_[s];
  if (!(word.omegaPart == ctx_->identity())) {
    auto exps = ctx_->omegaExponents(word.omegaPart);
    for (size_t i = 0; i < exps.size(); ++i) {
      const Mat& g = exps[i] >= 0 ? omegaAct_[i] : omegaInv_[i];
      for (int t = 0; t < std::abs(exps[i]); ++t) m = m * g;
    }
  }
  actCache_.emplace(x, m);
  return m;
}

Mat HModule::evaluate(const HeckeElt& a) const {
  if (a.levi != levi_ || a.f != f_)
    throw HeckeError("module: evaluate context mismatch");
  Mat out(f_, dim_, dim_);
  for (const auto& [x, c] : a.coeffs) out = out + actT(x).scaled(c);
  return out;
}

Mat HModule::actTstar(const AffWeylElt& x) const {
  const HeckeAlg* alg = hecke_alg(rd_, levi_, f_);
  return evaluate(alg->basisTstar(x));
}

std::string HModule::to_string() const {
  std::ostringstream os;
  os << "H(" << rd_->subsetName(levi_) << ")-module dim " << dim_ << " over F_"
     << f_->order();
  return os.str();
}

RelationReport check_relations(const RootDatum* rd, Subset levi,
                               const Field* f,
                               const std::vector<Mat>& simpleAct,
                               const std::vector<Mat>& omegaAct) {
  const LeviContext* ctx = levi_context(rd, levi);
  RelationReport rep;
  auto fail = [&](const std::string& s) {
    rep.pass = false;
    rep.failures.push_back(s);
  };
  Field::Elem cs = f->from_int(rd->cs());
  for (size_t i = 0; i < simpleAct.size(); ++i) {
    const Mat& A = simpleAct[i];
    if (A * A != A.scaled(cs))
      fail("quadratic at " + ctx->simples()[i].label);
  }
  for (size_t i = 0; i < simpleAct.size(); ++i)
    for (size_t j = i + 1; j < simpleAct.size(); ++j) {
      int m = ctx->braidOrder(i, j);
      if (m == 0) continue;
      Mat lhs = Mat::identity(f, simpleAct[i].rows());
      Mat rhs = lhs;
      for (int t = 0; t < m; ++t) {
        lhs = lhs * (t % 2 == 0 ? simpleAct[i] : simpleAct[j]);
        rhs = rhs * (t % 2 == 0 ? simpleAct[j] : simpleAct[i]);
      }
      if (lhs != rhs)
        fail("braid at (" + ctx->simples()[i].label + "," +
             ctx->simples()[j].label + ")");
    }
  for (size_t g = 0; g < omegaAct.size(); ++g) {
    if (!omegaAct[g].invertible()) {
      fail("omega generator " + std::to_string(g) + " not invertible");
      continue;
    }
    for (size_t h = g + 1; h < omegaAct.size(); ++h)
      if (omegaAct[g] * omegaAct[h] != omegaAct[h] * omegaAct[g])
        fail("omega generators " + std::to_string(g) + "," +
             std::to_string(h) + " do not commute");
    // T(u) T(u^{-1} s u) = T(s) T(u)
    for (size_t s = 0; s < simpleAct.size(); ++s) {
      size_t sp = ctx->conjSimple(g, true, s);  // u^{-1} s u
      if (omegaAct[g] * simpleAct[sp] != simpleAct[s] * omegaAct[g])
        fail("omega conjugation at (" + std::to_string(g) + "," +
             ctx->simples()[s].label + ")");
    }
  }
  return rep;
}

RelationReport check_relations(const HModule& m) {
  return check_relations(m.datum(), m.levi(), m.field(), m.simpleAct(),
                         m.omegaAct());
}

HModule character_module(const RootDatum* rd, Subset levi, const Field* f,
                         const std::vector<Field::Elem>& simpleValues,
                         const std::vector<Field::Elem>& omegaValues) {
  std::vector<Mat> sa, oa;
  for (auto v : simpleValues) {
    Mat m(f, 1, 1);
    m.at(0, 0) = v;
    sa.push_back(m);
  }
  for (auto v : omegaValues) {
    Mat m(f, 1, 1);
    m.at(0, 0) = v;
    oa.push_back(m);
  }
  return HModule(rd, levi, f, sa, oa);
}

HModule trivial_character(const RootDatum* rd, Subset levi, const Field* f) {
  const LeviContext* ctx = levi_context(rd, levi);
  return character_module(
      rd, levi, f,
      std::vector<Field::Elem>(ctx->simples().size(), f->zero()),
      std::vector<Field::Elem>(ctx->omegaGens().size(), f->one()));
}

HModule sign_character(const RootDatum* rd, Subset levi, const Field* f) {
  const LeviContext* ctx = levi_context(rd, levi);
  return character_module(
      rd, levi, f,
      std::vector<Field::Elem>(ctx->simples().size(), f->from_int(rd->cs())),
      std::vector<Field::Elem>(ctx->omegaGens().size(), f->one()));
}

HModule direct_sum(const HModule& a, const HModule& b) {
  if (a.datum() != b.datum() || a.levi() != b.levi() || a.field() != b.field())
    throw HeckeError("direct_sum: context mismatch");
  const Field* f = a.field();
  auto block = [&](const Mat& x, const Mat& y) {
    Mat m(f, x.rows() + y.rows(), x.cols() + y.cols());
    for (size_t i = 0; i < x.rows(); ++i)
      for (size_t j = 0; j < x.cols(); ++j) m.at(i, j) = x.at(i, j);
    for (size_t i = 0; i < y.rows(); ++i)
      for (size_t j = 0; j < y.cols(); ++j)
        m.at(x.rows() + i, x.cols() + j) = y.at(i, j);
    return m;
  };
  std::vector<Mat> sa, oa;
  for (size_t i = 0; i < a.simpleAct().size(); ++i)
    sa.push_back(block(a.simpleAct()[i], b.simpleAct()[i]));
  for (size_t i = 0; i < a.omegaAct().size(); ++i)
    oa.push_back(block(a.omegaAct()[i], b.omegaAct()[i]));
  return HModule(a.datum(), a.levi(), f, sa, oa);
}

std::vector<Mat> hom_space(const HModule& a, const HModule& b) {
  if (a.datum() != b.datum() || a.levi() != b.levi() || a.field() != b.field())
    throw HeckeError("hom_space: context mismatch");
  const Field* f = a.field();
  size_t na = a.dim(), nb = b.dim();
  std::vector<Mat> gensA = a.simpleAct(), gensB = b.simpleAct();
  for (const auto& m : a.omegaAct()) gensA.push_back(m);
  for (const auto& m : b.omegaAct()) gensB.push_back(m);
  size_t ncons = gensA.size() * na * nb;
  Mat sys(f, na * nb, ncons);
  for (size_t g = 0; g < gensA.size(); ++g) {
    const Mat& A = gensA[g];
    const Mat& B = gensB[g];
    // constraint (g,i,j): sum_k A(i,k) F(k,j) - sum_l F(i,l) B(l,j) = 0
    for (size_t i = 0; i < na; ++i)
      for (size_t j = 0; j < nb; ++j) {
        size_t c = (g * na + i) * nb + j;
        for (size_t k = 0; k < na; ++k)
          sys.at(k * nb + j, c) = f->add(sys.at(k * nb + j, c), A.at(i, k));
        for (size_t l = 0; l < nb; ++l)
          sys.at(i * nb + l, c) =
              f->sub(sys.at(i * nb + l, c), B.at(l, j));
      }
  }
  Mat null = sys.left_nullspace();
  std::vector<Mat> out;
  for (size_t r = 0; r < null.rows(); ++r) {
    Mat F(f, na, nb);
    for (size_t i = 0; i < na; ++i)
      for (size_t j = 0; j < nb; ++j) F.at(i, j) = null.at(r, i * nb + j);
    out.push_back(F);
  }
  return out;
}

std::optional<Mat> find_isomorphism(const HModule& a, const HModule& b,
                                    uint64_t seed) {
  if (a.dim() != b.dim()) return std::nullopt;
  auto homs = hom_space(a, b);
  if (homs.empty()) return std::nullopt;
  for (const auto& h : homs)
    if (h.invertible()) return h;
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
  for (int t = 0; t < 200; ++t) {
    Mat h = random_combination(homs, rng);
    if (h.invertible()) return h;
  }
  return std::nullopt;
}

bool isomorphic(const HModule& a, const HModule& b, uint64_t seed) {
  return find_isomorphism(a, b, seed).has_value();
}

Mat spin(const HModule& m, const Mat& seed) {
  Mat basis = seed.row_basis();
  std::vector<Mat> gens = m.simpleAct();
  for (const auto& g : m.omegaAct()) gens.push_back(g);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& g : gens) {
      Mat img = basis * g;
      Mat sum = space_sum(basis, img);
      if (sum.rows() > basis.rows()) {
        basis = sum;
        grew = true;
      }
    }
  }
  return basis;
}

HModule submodule_on(const HModule& m, const Mat& basis) {
  Mat B = basis.row_basis();
  size_t k = B.rows();
  const Field* f = m.field();
  auto restrict_mat = [&](const Mat& g) {
    Mat img = B * g;
    Mat out(f, k, k);
    for (size_t r = 0; r < k; ++r) {
      std::vector<Field::Elem> row(img.cols());
      for (size_t j = 0; j < img.cols(); ++j) row[j] = img.at(r, j);
      std::vector<Field::Elem> x;
      if (!B.solve_left(row, x))
        throw HeckeError("submodule: space not invariant");
      for (size_t j = 0; j < k; ++j) out.at(r, j) = x[j];
    }
    return out;
  };
  std::vector<Mat> sa, oa;
  for (const auto& g : m.simpleAct()) sa.push_back(restrict_mat(g));
  for (const auto& g : m.omegaAct()) oa.push_back(restrict_mat(g));
  return HModule(m.datum(), m.levi(), f, sa, oa);
}

HModule quotient_by(const HModule& m, const Mat& basis) {
  Mat B = basis.row_basis();
  const Field* f = m.field();
  size_t n = m.dim(), k = B.rows();
  if (k >= n) throw HeckeError("quotient: nothing left");
  // full basis P = [B; C], C = standard vectors at non-pivot columns
  std::vector<size_t> pivots;
  for (size_t r = 0; r < k; ++r)
    for (size_t j = 0; j < n; ++j)
      if (B.at(r, j) != 0) {
        pivots.push_back(j);
        break;
      }
  std::vector<bool> isPivot(n, false);
  for (size_t p : pivots) isPivot[p] = true;
  Mat P(f, n, n);
  for (size_t r = 0; r < k; ++r)
    for (size_t j = 0; j < n; ++j) P.at(r, j) = B.at(r, j);
  size_t row = k;
  for (size_t j = 0; j < n; ++j)
    if (!isPivot[j]) P.at(row++, j) = f->one();
  Mat Pinv = P.inverse();
  auto quot = [&](const Mat& g) {
    Mat conj = P * g * Pinv;
    Mat out(f, n - k, n - k);
    for (size_t i = 0; i < n - k; ++i)
      for (size_t j = 0; j < n - k; ++j) out.at(i, j) = conj.at(k + i, k + j);
    return out;
  };
  std::vector<Mat> sa, oa;
  for (const auto& g : m.simpleAct()) sa.push_back(quot(g));
  for (const auto& g : m.omegaAct()) oa.push_back(quot(g));
  return HModule(m.datum(), m.levi(), f, sa, oa);
}

namespace {

// basis of the enveloping algebra (image of H in End(V))
std::vector<Mat> algebra_basis(const HModule& m, size_t cap = 0) {
  const Field* f = m.field();
  size_t n = m.dim();
  if (cap == 0) cap = n * n;
  std::vector<Mat> gens = m.simpleAct();
  for (const auto& g : m.omegaAct()) gens.push_back(g);
  for (const auto& g : m.omegaAct()) gens.push_back(g.inverse());
  std::vector<Mat> basis;
  Mat span(f, 0, n * n);
  auto tryAdd = [&](const Mat& x) {
    Mat row(f, 1, n * n);
    auto flat = flatten(x);
    for (size_t j = 0; j < flat.size(); ++j) row.at(0, j) = flat[j];
    Mat sum = space_sum(span, row);
    if (sum.rows() > span.rows()) {
      span = sum;
      basis.push_back(x);
      return true;
    }
    return false;
  };
  tryAdd(Mat::identity(f, n));
  size_t head = 0;
  while (head < basis.size() && basis.size() < cap) {
    Mat cur = basis[head++];
    for (const auto& g : gens) {
      if (basis.size() >= cap) break;
      tryAdd(cur * g);
    }
  }
  return basis;
}

// all vectors of F^n enumerable? guard
bool enumerable(const Field* f, size_t n, uint64_t cap = 1 << 16) {
  double total = 1;
  for (size_t i = 0; i < n; ++i) {
    total *= (double)f->order();
    if (total > (double)cap) return false;
  }
  return true;
}

template <typename Fn>
void for_each_vector(const Field* f, size_t n, Fn&& fn) {
  std::vector<Field::Elem> v(n, 0);
  while (true) {
    fn(v);
    size_t i = 0;
    while (i < n && v[i] == f->order() - 1) v[i++] = 0;
    if (i == n) break;
    ++v[i];
  }
}

std::optional<Mat> proper_from_kernel(const HModule& m, const Mat& theta) {
  // spin every kernel vector; return a proper invariant subspace if found
  Mat ker = theta.left_nullspace();
  if (ker.rows() == 0 || ker.rows() == m.dim()) return std::nullopt;
  const Field* f = m.field();
  if (enumerable(f, ker.rows())) {
    std::optional<Mat> found;
    for_each_vector(f, ker.rows(), [&](const std::vector<Field::Elem>& c) {
      if (found) return;
      bool zero = true;
      for (auto x : c)
        if (x) zero = false;
      if (zero) return;
      Mat v(f, 1, m.dim());
      for (size_t r = 0; r < ker.rows(); ++r)
        if (c[r])
          for (size_t j = 0; j < m.dim(); ++j)
            v.at(0, j) = f->add(v.at(0, j), f->mul(c[r], ker.at(r, j)));
      Mat sp = spin(m, v);
      if (sp.rows() < m.dim()) found = sp;
    });
    return found;
  }
  // kernel too large to enumerate: try its basis vectors only
  for (size_t r = 0; r < ker.rows(); ++r) {
    Mat v(f, 1, m.dim());
    for (size_t j = 0; j < m.dim(); ++j) v.at(0, j) = ker.at(r, j);
    Mat sp = spin(m, v);
    if (sp.rows() < m.dim()) return sp;
  }
  return std::nullopt;
}

// true = all kernel vectors of theta spin to the whole space
bool kernel_spins_full(const HModule& m, const Mat& theta) {
  Mat ker = theta.left_nullspace();
  const Field* f = m.field();
  bool full = true;
  if (!enumerable(f, ker.rows()))
    throw HeckeError("is_simple: kernel too large to certify");
  for_each_vector(f, ker.rows(), [&](const std::vector<Field::Elem>& c) {
    if (!full) return;
    bool zero = true;
    for (auto x : c)
      if (x) zero = false;
    if (zero) return;
    Mat v(f, 1, m.dim());
    for (size_t r = 0; r < ker.rows(); ++r)
      if (c[r])
        for (size_t j = 0; j < m.dim(); ++j)
          v.at(0, j) = f->add(v.at(0, j), f->mul(c[r], ker.at(r, j)));
    if (spin(m, v).rows() < m.dim()) full = false;
  });
  return full;
}

}  // namespace

std::optional<Mat> find_proper_submodule(const HModule& m, uint64_t seed) {
  if (m.dim() == 1) return std::nullopt;
  const Field* f = m.field();
  // spins of standard basis vectors
  for (size_t i = 0; i < m.dim(); ++i) {
    Mat v(f, 1, m.dim());
    v.at(0, i) = f->one();
    Mat sp = spin(m, v);
    if (sp.rows() < m.dim()) return sp;
  }
  auto basis = algebra_basis(m);
  HModule d = dual(m);
  auto tryTheta = [&](const Mat& theta) -> std::optional<Mat> {
    if (theta.is_zero()) return std::nullopt;
    if (theta.rank() == m.dim()) return std::nullopt;
    if (auto sub = proper_from_kernel(m, theta)) return sub;
    // dual side: a proper invariant subspace of the dual gives one here as
    // its annihilator {v : dsub . v^T = 0}
    if (auto dsub = proper_from_kernel(d, theta.transpose())) {
      Mat ann = dsub->transpose().left_nullspace();
      Mat sp = spin(m, ann);
      if (sp.rows() < m.dim()) return sp;
    }
    return std::nullopt;
  };
  for (const auto& theta : basis)
    if (auto sub = tryTheta(theta)) return sub;
  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dull + 99);
  for (int t = 0; t < 150; ++t) {
    Mat theta = random_combination(basis, rng);
    if (auto sub = tryTheta(theta)) return sub;
  }
  return std::nullopt;
}

bool is_simple(const HModule& m, uint64_t seed) {
  if (m.dim() == 1) return true;
  const Field* f = m.field();
  // quick reject: any basis vector with a proper spin
  for (size_t i = 0; i < m.dim(); ++i) {
    Mat v(f, 1, m.dim());
    v.at(0, i) = f->one();
    if (spin(m, v).rows() < m.dim()) return false;
  }
  auto basis = algebra_basis(m);
  HModule d = dual(m);
  // Norton criterion on a singular algebra element
  auto norton = [&](const Mat& theta) -> std::optional<bool> {
    if (theta.is_zero() || theta.rank() == m.dim()) return std::nullopt;
    if (!kernel_spins_full(m, theta)) return false;
    if (!kernel_spins_full(d, theta.transpose())) return false;
    return true;
  };
  for (const auto& theta : basis)
    if (auto r = norton(theta)) return *r;
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 7);
  for (int t = 0; t < 300; ++t) {
    Mat theta = random_combination(basis, rng);
    if (auto r = norton(theta)) return *r;
  }
  // no singular element found: the enveloping algebra acts by invertible
  // maps only, so it is a finite division ring, hence a field (Wedderburn);
  // the module is simple iff its dimension equals the algebra's.
  if (enumerable(f, basis.size())) {
    bool allInvertible = true;
    for_each_vector(f, basis.size(), [&](const std::vector<Field::Elem>& c) {
      if (!allInvertible) return;
      bool zero = true;
      for (auto x : c)
        if (x) zero = false;
      if (zero) return;
      Mat t(f, m.dim(), m.dim());
      for (size_t i = 0; i < basis.size(); ++i)
        if (c[i]) t = t + basis[i].scaled(c[i]);
      if (!t.invertible()) allInvertible = false;
    });
    if (allInvertible) return basis.size() == m.dim();
  }
  throw HeckeError("is_simple: inconclusive");
}

std::vector<HModule> composition_series(const HModule& m, uint64_t seed) {
  auto sub = find_proper_submodule(m, seed);
  if (!sub) {
    if (!is_simple(m, seed))
      throw HeckeError("composition_series: submodule search failed");
    return {m};
  }
  HModule lower = submodule_on(m, *sub);
  HModule upper = quotient_by(m, *sub);
  std::vector<HModule> out = composition_series(upper, seed);
  auto rest = composition_series(lower, seed);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

CommutantReport commutant(const HModule& m) {
  auto homs = hom_space(m, m);
  CommutantReport rep;
  rep.commutantDim = homs.size();
  const Field* f = m.field();
  // field <=> every nonzero element invertible
  bool isField = true;
  if (!enumerable(f, homs.size(), 1 << 18))
    throw HeckeError("commutant: too large to probe");
  for_each_vector(f, homs.size(), [&](const std::vector<Field::Elem>& c) {
    if (!isField) return;
    bool zero = true;
    for (auto x : c)
      if (x) zero = false;
    if (zero) return;
    Mat t(f, m.dim(), m.dim());
    for (size_t i = 0; i < homs.size(); ++i)
      if (c[i]) t = t + homs[i].scaled(c[i]);
    if (!t.invertible()) isField = false;
  });
  rep.isField = isField;
  if (isField) {
    // degree of the field = dimension; cross-check with a primitive
    // endomorphism's minimal polynomial
    size_t best = 0;
    for (const auto& h : homs) best = std::max(best, h.minpoly_degree());
    if (best < rep.commutantDim) {
      std::mt19937_64 rng(4242);
      for (int t = 0; t < 64 && best < rep.commutantDim; ++t)
        best = std::max(best, random_combination(homs, rng).minpoly_degree());
    }
    rep.centerDegree = best;
    if (rep.centerDegree != rep.commutantDim)
      throw HeckeError("commutant: primitive element not found");
  } else {
    rep.centerDegree = 0;
  }
  return rep;
}

HModule scalar_extend(const HModule& m, uint32_t kPrime) {
  auto& tower = FieldTower::instance();
  const Field* big = tower.field(m.field()->p(), kPrime);
  const Field* small = m.field();
  auto up = [&](const Mat& g) {
    return g.map(big, [&](Field::Elem x) { return tower.embed(small, big, x); });
  };
  std::vector<Mat> sa, oa;
  for (const auto& g : m.simpleAct()) sa.push_back(up(g));
  for (const auto& g : m.omegaAct()) oa.push_back(up(g));
  return HModule(m.datum(), m.levi(), big, sa, oa);
}

HModule restrict_scalars(const HModule& m, const Field* small) {
  auto& tower = FieldTower::instance();
  const Field* big = m.field();
  if (big->p() != small->p() || big->k() % small->k() != 0)
    throw HeckeError("restrict_scalars: not a subfield");
  uint32_t e = big->k() / small->k();
  auto down = [&](const Mat& g) {
    Mat out(small, g.rows() * e, g.cols() * e);
    for (size_t i = 0; i < g.rows(); ++i)
      for (size_t j = 0; j < g.cols(); ++j) {
        auto block = tower.mult_matrix(big, small, g.at(i, j));
        for (uint32_t t = 0; t < e; ++t)
          for (uint32_t s = 0; s < e; ++s)
            out.at(i * e + t, j * e + s) = block[t * e + s];
      }
    return out;
  };
  std::vector<Mat> sa, oa;
  for (const auto& g : m.simpleAct()) sa.push_back(down(g));
  for (const auto& g : m.omegaAct()) oa.push_back(down(g));
  return HModule(m.datum(), m.levi(), small, sa, oa);
}

HModule frobenius_twist(const HModule& m, uint32_t j) {
  const Field* f = m.field();
  auto tw = [&](const Mat& g) {
    return g.map(f, [&](Field::Elem x) { return f->frobenius_iter(x, j); });
  };
  std::vector<Mat> sa, oa;
  for (const auto& g : m.simpleAct()) sa.push_back(tw(g));
  for (const auto& g : m.omegaAct()) oa.push_back(tw(g));
  return HModule(m.datum(), m.levi(), f, sa, oa);
}

DecompositionReport decompose_extension(const HModule& m, uint32_t kPrime,
                                        bool allowPartial, uint64_t seed) {
  CommutantReport crep = commutant(m);
  if (!crep.isField)
    throw HeckeError("decompose_extension: module not simple (commutant)");
  DecompositionReport rep;
  rep.centerDegree = crep.centerDegree;
  HModule big = scalar_extend(m, kPrime);
  rep.factors = composition_series(big, seed);
  rep.tooSmall = rep.factors.size() < crep.centerDegree;
  if (rep.tooSmall && !allowPartial)
    throw HeckeError("decompose_extension: extension too small");
  rep.factorsAbsolutelySimple = true;
  for (const auto& fac : rep.factors) {
    auto c = commutant(fac);
    if (!(c.isField && c.commutantDim == 1)) rep.factorsAbsolutelySimple = false;
  }
  rep.pairwiseNonIsomorphic = true;
  for (size_t i = 0; i < rep.factors.size(); ++i)
    for (size_t j = i + 1; j < rep.factors.size(); ++j)
      if (isomorphic(rep.factors[i], rep.factors[j], seed))
        rep.pairwiseNonIsomorphic = false;
  // Frobenius permutes the factor classes transitively
  if (!rep.factors.empty()) {
    rep.frobeniusTransitive = true;
    std::vector<bool> hit(rep.factors.size(), false);
    const Field* bigF = rep.factors.front().field();
    for (uint32_t j = 0; j < bigF->k(); ++j) {
      HModule tw = frobenius_twist(rep.factors.front(), j);
      for (size_t t = 0; t < rep.factors.size(); ++t)
        if (!hit[t] && isomorphic(tw, rep.factors[t], seed)) hit[t] = true;
    }
    for (bool h : hit)
      if (!h) rep.frobeniusTransitive = false;
  }
  return rep;
}

std::pair<HModule, uint32_t> descend(const HModule& m, uint64_t seed) {
  const Field* f = m.field();
  auto& tower = FieldTower::instance();
  uint32_t k = f->k();
  auto entries_in = [&](const HModule& mod, uint32_t d) {
    for (const auto& g : mod.simpleAct())
      for (auto x : g.data())
        if (!mod.field()->in_subfield(x, d)) return false;
    for (const auto& g : mod.omegaAct())
      for (auto x : g.data())
        if (!mod.field()->in_subfield(x, d)) return false;
    return true;
  };
  auto project_down = [&](const HModule& mod, uint32_t d) {
    const Field* small = tower.field(f->p(), d);
    // rewrite entries through the canonical embedding (solve per entry)
    auto down = [&](const Mat& g) {
      Mat out(small, g.rows(), g.cols());
      for (size_t i = 0; i < g.rows(); ++i)
        for (size_t j = 0; j < g.cols(); ++j) {
          Field::Elem target = g.at(i, j);
          bool found = false;
          for (uint64_t x = 0; x < small->order() && !found; ++x)
            if (tower.embed(small, f, (Field::Elem)x) == target) {
              out.at(i, j) = (Field::Elem)x;
              found = true;
            }
          if (!found) throw HeckeError("descend: entry not in subfield image");
        }
      return out;
    };
    std::vector<Mat> sa, oa;
    for (const auto& g : mod.simpleAct()) sa.push_back(down(g));
    for (const auto& g : mod.omegaAct()) oa.push_back(down(g));
    return HModule(mod.datum(), mod.levi(), small, sa, oa);
  };
  for (uint32_t d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    if (entries_in(m, d)) return {project_down(m, d), d};
    // Galois descent: an intertwiner F with rho^sigma = F rho F^{-1}
    // (sigma = Frob^d entrywise) yields a subfield model by conjugating
    // with any invertible solution of the semilinear equation P^sigma = F P;
    // that equation is F_p-linear in the entries of P, so solve it exactly.
    HModule tw = frobenius_twist(m, d);
    auto Fopt = find_isomorphism(tw, m, seed);
    if (!Fopt) continue;
    const Mat& Fm = *Fopt;
    size_t n = m.dim();
    size_t nunk = n * n * k;  // F_p-coordinates of P
    // column c enumerates the F_p-equation for each (i,j,digit)
    Mat sys(tower.field(f->p(), 1), nunk, nunk);
    const Field* fp = tower.field(f->p(), 1);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (uint32_t t = 0; t < k; ++t) {
          // basis matrix E with entry x_t (the t-th power of the generator)
          // at (i, j)
          std::vector<uint32_t> digs(k, 0);
          digs[t] = 1;
          Field::Elem xt = f->from_digits(digs);
          // image entry (i', j') of E^sigma - F E:
          //   E^sigma: only (i, j) entry = xt^sigma
          //   (F E)(i', j') = F(i', i) * xt for j' = j
          for (size_t i2 = 0; i2 < n; ++i2) {
            Field::Elem v = 0;
            if (i2 == i) v = f->frobenius_iter(xt, d);
            v = f->sub(v, f->mul(Fm.at(i2, i), xt));
            auto vd = f->digits(v);
            for (uint32_t t2 = 0; t2 < k; ++t2) {
              size_t row = (i * n + j) * k + t;
              size_t col = (i2 * n + j) * k + t2;
              sys.at(row, col) = fp->add(sys.at(row, col), vd[t2]);
            }
          }
        }
    Mat null = sys.left_nullspace();
    // assemble solutions and look for an invertible one (deterministically
    // seeded combinations)
    auto assemble = [&](const std::vector<Field::Elem>& c) {
      Mat P(f, n, n);
      for (size_t u = 0; u < null.rows(); ++u) {
        if (c[u] == 0) continue;
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) {
            std::vector<uint32_t> digs(k, 0);
            for (uint32_t t = 0; t < k; ++t)
              digs[t] = null.at(u, (i * n + j) * k + t);
            // c[u] in F_p scales the digit vector
            Field::Elem add = f->from_digits(digs);
            for (uint32_t rep = 0; rep < c[u]; ++rep)
              P.at(i, j) = f->add(P.at(i, j), add);
          }
      }
      return P;
    };
    std::mt19937_64 rng(seed * 0x853c49e6748fea9bull + 3);
    std::uniform_int_distribution<uint64_t> coef(0, f->p() - 1);
    Mat P(f, 0, 0);
    bool found = false;
    for (int attempt = 0; attempt < 400 && !found; ++attempt) {
      std::vector<Field::Elem> c(null.rows());
      if (attempt < (int)null.rows()) {
        c[attempt] = 1;
      } else {
        for (auto& x : c) x = (Field::Elem)coef(rng);
      }
      Mat cand = assemble(c);
      if (cand.rows() && cand.invertible()) {
        P = cand;
        found = true;
      }
    }
    if (!found) continue;
    Mat Pinv = P.inverse();
    std::vector<Mat> sa, oa;
    bool ok = true;
    auto conj = [&](const Mat& g) { return Pinv * g * P; };
    for (const auto& g : m.simpleAct()) {
      Mat h = conj(g);
      for (auto x : h.data())
        if (!f->in_subfield(x, d)) ok = false;
      sa.push_back(h);
    }
    for (const auto& g : m.omegaAct()) {
      Mat h = conj(g);
      for (auto x : h.data())
        if (!f->in_subfield(x, d)) ok = false;
      oa.push_back(h);
    }
    if (!ok) continue;
    HModule model(m.datum(), m.levi(), f, sa, oa);
    return {project_down(model, d), d};
  }
  return {m, k};
}

SubmoduleLattice submodule_lattice(const HModule& m, uint64_t seed) {
  if (m.dim() > 64) throw HeckeError("submodule_lattice: dim > 64");
  // multiplicity-free precondition
  auto factors = composition_series(m, seed);
  for (size_t i = 0; i < factors.size(); ++i)
    for (size_t j = i + 1; j < factors.size(); ++j)
      if (isomorphic(factors[i], factors[j], seed))
        throw HeckeError("submodule_lattice: module not multiplicity-free");
  const Field* f = m.field();
  if (!enumerable(f, m.dim(), 1 << 20))
    throw HeckeError("submodule_lattice: space too large to enumerate");
  // all cyclic submodules
  std::map<std::vector<Field::Elem>, Mat> seen;
  for_each_vector(f, m.dim(), [&](const std::vector<Field::Elem>& c) {
    Mat v(f, 1, m.dim());
    for (size_t j = 0; j < m.dim(); ++j) v.at(0, j) = c[j];
    Mat sp = spin(m, v);
    seen.emplace(space_key(sp), sp);
  });
  // close under sums
  std::vector<Mat> nodes;
  for (auto& [k, v] : seen) {
    (void)k;
    nodes.push_back(v);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    size_t n = nodes.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        Mat s = space_sum(nodes[i], nodes[j]);
        auto key = space_key(s);
        if (!seen.count(key)) {
          seen.emplace(key, s);
          nodes.push_back(s);
          grew = true;
        }
      }
  }
  std::sort(nodes.begin(), nodes.end(), [](const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) return a.rows() < b.rows();
    return a.data() < b.data();
  });
  SubmoduleLattice lat;
  lat.nodes = nodes;
  size_t n = nodes.size();
  lat.leq.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      lat.leq[i][j] = space_contains(nodes[j], nodes[i]);
  auto indexOf = [&](const Mat& s) {
    auto key = space_key(s);
    for (size_t i = 0; i < n; ++i)
      if (space_key(lat.nodes[i]) == key) return i;
    throw HeckeError("submodule_lattice: not closed");
  };
  lat.join.assign(n, std::vector<size_t>(n, 0));
  lat.meet.assign(n, std::vector<size_t>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      lat.join[i][j] = indexOf(space_sum(nodes[i], nodes[j]));
      lat.meet[i][j] = indexOf(space_intersect(nodes[i], nodes[j]));
    }
  return lat;
}

bool is_supersingular(const HModule& m,
                      const std::vector<CentralElement>& cs) {
  // every proper Levi of the ambient subset must be covered by a verified
  // central element living in H(m.levi())
  const RootDatum* rd = m.datum();
  Subset K = m.levi();
  for (Subset J = 0; J < K; ++J) {
    if ((J & K) != J || J == K) continue;
    // only standard Levis J of M_K correspond to subsets of K
    bool covered = false;
    for (const auto& c : cs)
      if (c.levi == J && c.ambient == K) {
        if (!c.verified) throw HeckeError("is_supersingular: unverified T_M");
        covered = true;
      }
    if (!covered) throw HeckeError("is_supersingular: missing Levi " +
                                   rd->subsetName(J));
  }
  for (const auto& c : cs) {
    if (c.ambient != K) continue;
    Mat t = m.evaluate(c.elt);
    if (!t.pow(m.dim()).is_zero()) return false;
  }
  return true;
}

HModule dual(const HModule& m) {
  // gamma acts by transpose of zeta(T(gamma)); zeta fixes the simples and
  // inverts the Omega generators
  std::vector<Mat> sa, oa;
  for (const auto& g : m.simpleAct()) sa.push_back(g.transpose());
  for (const auto& g : m.omegaAct()) oa.push_back(g.inverse().transpose());
  return HModule(m.datum(), m.levi(), m.field(), sa, oa);
}

std::string module_to_text(const HModule& m) {
  std::ostringstream os;
  os << "module\n";
  os << "preset " << m.datum()->name() << "\n";
  os << "levi " << m.datum()->subsetName(m.levi()) << "\n";
  os << "field " << m.field()->p() << " " << m.field()->k() << "\n";
  os << "dim " << m.dim() << "\n";
  const LeviContext* ctx = m.ctx();
  for (size_t s = 0; s < m.simpleAct().size(); ++s) {
    os << "gen " << ctx->simples()[s].label << "\n";
    for (size_t i = 0; i < m.dim(); ++i) {
      for (size_t j = 0; j < m.dim(); ++j) {
        if (j) os << " ";
        os << m.field()->to_string(m.simpleAct()[s].at(i, j));
      }
      os << "\n";
    }
  }
  for (size_t g = 0; g < m.omegaAct().size(); ++g) {
    os << "gen omega" << g << "\n";
    for (size_t i = 0; i < m.dim(); ++i) {
      for (size_t j = 0; j < m.dim(); ++j) {
        if (j) os << " ";
        os << m.field()->to_string(m.omegaAct()[g].at(i, j));
      }
      os << "\n";
    }
  }
  os << "end\n";
  return os.str();
}

HModule module_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line, key;
  std::string presetName, leviName;
  uint32_t p = 0, k = 0;
  size_t dim = 0;
  const RootDatum* rd = nullptr;
  const Field* f = nullptr;
  std::vector<Mat> sa, oa;
  const LeviContext* ctx = nullptr;
  Subset levi = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ls >> key;
    if (key == "module") continue;
    if (key == "end") break;
    if (key == "preset") {
      ls >> presetName;
      rd = load_preset(presetName);
    } else if (key == "levi") {
      ls >> leviName;
    } else if (key == "field") {
      ls >> p >> k;
      f = FieldTower::instance().field(p, k);
    } else if (key == "dim") {
      ls >> dim;
    } else if (key == "gen") {
      if (!rd || !f || dim == 0) throw HeckeError("module text: bad header");
      levi = rd->parseSubset(leviName);
      ctx = levi_context(rd, levi);
      std::string label;
      ls >> label;
      Mat g(f, dim, dim);
      for (size_t i = 0; i < dim; ++i) {
        if (!std::getline(in, line)) throw HeckeError("module text: truncated");
        std::istringstream rs(line);
        for (size_t j = 0; j < dim; ++j) {
          std::string tok;
          rs >> tok;
          g.at(i, j) = f->parse(tok);
        }
      }
      if (label.rfind("omega", 0) == 0)
        oa.push_back(g);
      else
        sa.push_back(g);
    } else {
      throw HeckeError("module text: unknown key '" + key + "'");
    }
  }
  if (!rd || !f) throw HeckeError("module text: missing header");
  (void)ctx;
  return HModule(rd, levi, f, sa, oa);
}

}  // namespace hecke

#include "hecke/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace hecke {

namespace {

std::vector<int> mat_apply(const std::vector<int>& mat, size_t n,
                           const std::vector<int>& v) {
  std::vector<int> r(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r[i] += mat[i * n + j] * v[j];
  return r;
}

std::vector<int> mat_mul(const std::vector<int>& a, const std::vector<int>& b,
                         size_t n) {
  std::vector<int> r(n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) r[i * n + j] += a[i * n + k] * b[k * n + j];
  return r;
}

}  // namespace

RootDatum::RootDatum(PresetData data) : data_(std::move(data)) {
  if (data_.rank == 0 || data_.rootLabels.empty())
    throw HeckeError("preset: empty datum");
  buildRoots();
  buildW0();
  // sanity: Cartan matrix has 2 on the diagonal, nonpositive off-diagonal
  for (size_t i = 0; i < nroots(); ++i)
    for (size_t j = 0; j < nroots(); ++j) {
      int c = pairing(data_.simpleCoroots[i], j);
      if (i == j && c != 2) throw HeckeError("preset: <a_i^, a_i> != 2");
      if (i != j && c > 0) throw HeckeError("preset: positive off-diagonal");
    }
}

int RootDatum::pairing(const std::vector<int>& lambda, size_t rootIdx) const {
  const auto& pv = pos_[rootIdx].pairvec;
  int s = 0;
  for (size_t i = 0; i < data_.rank; ++i) s += lambda[i] * pv[i];
  return s;
}

void RootDatum::buildRoots() {
  size_t n = nroots();
  // seed with simple roots
  for (size_t j = 0; j < n; ++j) {
    Root r;
    r.coeff.assign(n, 0);
    r.coeff[j] = 1;
    r.coroot = data_.simpleCoroots[j];
    r.pairvec.resize(data_.rank);
    for (size_t i = 0; i < data_.rank; ++i) r.pairvec[i] = data_.pairing[i][j];
    r.height = 1;
    pos_.push_back(r);
  }
  // close under simple reflections, keeping positives
  bool grew = true;
  while (grew) {
    grew = false;
    size_t cur = pos_.size();
    for (size_t r = 0; r < cur; ++r) {
      for (size_t i = 0; i < n; ++i) {
        // s_i(root) = root - <a_i^, root> a_i
        int c = 0;
        for (size_t j = 0; j < n; ++j) {
          int cart = 0;
          for (size_t t = 0; t < data_.rank; ++t)
            cart += data_.simpleCoroots[i][t] * data_.pairing[t][j];
          c += cart * pos_[r].coeff[j];
        }
        std::vector<int> nc = pos_[r].coeff;
        nc[i] -= c;
        bool positive = true, negative = true;
        for (int v : nc) {
          if (v > 0) negative = false;
          if (v < 0) positive = false;
        }
        if (!positive || negative) continue;
        bool known = false;
        for (const auto& q : pos_)
          if (q.coeff == nc) {
            known = true;
            break;
          }
        if (known) continue;
        Root q;
        q.coeff = nc;
        // coroot transforms by s_i as well: s_i(g^) = g^ - <g^, a_i> a_i^
        int pc = 0;
        for (size_t t = 0; t < data_.rank; ++t)
          pc += pos_[r].coroot[t] * data_.pairing[t][i];
        q.coroot = pos_[r].coroot;
        for (size_t t = 0; t < data_.rank; ++t)
          q.coroot[t] -= pc * data_.simpleCoroots[i][t];
        q.pairvec.resize(data_.rank);
        for (size_t t = 0; t < data_.rank; ++t) {
          int s = 0;
          for (size_t j = 0; j < n; ++j) s += nc[j] * data_.pairing[t][j];
          q.pairvec[t] = s;
        }
        q.height = std::accumulate(nc.begin(), nc.end(), 0);
        pos_.push_back(q);
        grew = true;
      }
    }
  }
  // order: the simple roots first in label order (so root index j is the
  // j-th simple for j < nroots), then by height
  std::sort(pos_.begin(), pos_.end(), [](const Root& a, const Root& b) {
    if (a.height != b.height) return a.height < b.height;
    auto lead = [](const Root& r) {
      for (size_t i = 0; i < r.coeff.size(); ++i)
        if (r.coeff[i] != 0) return i;
      return r.coeff.size();
    };
    if (lead(a) != lead(b)) return lead(a) < lead(b);
    return a.coeff < b.coeff;
  });
}

void RootDatum::buildW0() {
  size_t n = data_.rank;
  size_t nr = nroots();
  // simple reflection matrices on the lattice: s_j(l) = l - <l, a_j> a_j^
  std::vector<std::vector<int>> refl(nr);
  for (size_t j = 0; j < nr; ++j) {
    std::vector<int> m(n * n, 0);
    for (size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    for (size_t i = 0; i < n; ++i)       // column i: image of e_i
      for (size_t t = 0; t < n; ++t)     // row t
        m[t * n + i] -= data_.pairing[i][j] * data_.simpleCoroots[j][t];
    refl[j] = m;
  }
  std::vector<int> id(n * n, 0);
  for (size_t i = 0; i < n; ++i) id[i * n + i] = 1;
  std::map<std::vector<int>, int> index;
  w0_.push_back({id, {}, {}});
  index[id] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (size_t j = 0; j < nr; ++j) {
      // right multiplication: (w s_j) acts by mat(w) * mat(s_j)
      std::vector<int> m = mat_mul(w0_[cur].mat, refl[j], n);
      auto it = index.find(m);
      if (it == index.end()) {
        W0Elt e;
        e.mat = m;
        e.word = w0_[cur].word;
        e.word.push_back((int)j);
        int ni = (int)w0_.size();
        index[m] = ni;
        w0_.push_back(e);
        queue.push_back(ni);
      }
    }
    if (w0_.size() > 5000) throw HeckeError("preset: W0 too large");
  }
  size_t N = w0_.size();
  w0mult_.assign(N * N, 0);
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b)
      w0mult_[a * N + b] = index.at(mat_mul(w0_[a].mat, w0_[b].mat, n));
  w0inv_.assign(N, 0);
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b)
      if (w0mult_[a * N + b] == 0) w0inv_[a] = (int)b;
  w0simple_.assign(nr, 0);
  for (size_t j = 0; j < nr; ++j) w0simple_[j] = index.at(refl[j]);
  // root images
  for (auto& e : w0_) {
    e.rootImg.assign(pos_.size(), 0);
    for (size_t r = 0; r < pos_.size(); ++r) {
      // apply the word to the root coefficient vector
      std::vector<int> c = pos_[r].coeff;
      for (auto it = e.word.rbegin(); it != e.word.rend(); ++it) {
        size_t j = (size_t)*it;
        int pair = 0;
        for (size_t t = 0; t < nroots(); ++t) {
          int cart = 0;
          for (size_t u = 0; u < n; ++u)
            cart += data_.simpleCoroots[j][u] * data_.pairing[u][t];
          pair += cart * c[t];
        }
        c[j] -= pair;
      }
      bool positive = true;
      for (int v : c)
        if (v < 0) positive = false;
      std::vector<int> abs = c;
      if (!positive)
        for (auto& v : abs) v = -v;
      int found = -1;
      for (size_t q = 0; q < pos_.size(); ++q)
        if (pos_[q].coeff == abs) found = (int)q;
      if (found < 0) throw HeckeError("rootdatum: root image missing");
      e.rootImg[r] = positive ? (found + 1) : -(found + 1);
    }
  }
}

std::vector<int> RootDatum::w0Apply(int a, const std::vector<int>& lambda) const {
  return mat_apply(w0_[a].mat, data_.rank, lambda);
}

std::pair<size_t, bool> RootDatum::w0ApplyRoot(int a, size_t r) const {
  int img = w0_[a].rootImg[r];
  return {(size_t)(std::abs(img) - 1), img > 0};
}

std::vector<int> RootDatum::subgroupOf(Subset J) const {
  std::vector<int> elems{0};
  std::vector<bool> seen(w0_.size(), false);
  seen[0] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (size_t j = 0; j < nroots(); ++j) {
      if (!(J >> j & 1)) continue;
      int nxt = w0Mult(cur, w0simple_[j]);
      if (!seen[nxt]) {
        seen[nxt] = true;
        elems.push_back(nxt);
        queue.push_back(nxt);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool RootDatum::rootInSubset(size_t rootIdx, Subset J) const {
  for (size_t j = 0; j < nroots(); ++j)
    if (pos_[rootIdx].coeff[j] != 0 && !(J >> j & 1)) return false;
  return true;
}

std::vector<size_t> RootDatum::posRootsOf(Subset J) const {
  std::vector<size_t> out;
  for (size_t r = 0; r < pos_.size(); ++r)
    if (rootInSubset(r, J)) out.push_back(r);
  return out;
}

std::vector<std::vector<size_t>> RootDatum::componentsOf(Subset J) const {
  // connectivity of simple roots in J through non-orthogonality
  std::vector<size_t> simples;
  for (size_t j = 0; j < nroots(); ++j)
    if (J >> j & 1) simples.push_back(j);
  std::vector<int> comp(simples.size(), -1);
  int ncomp = 0;
  for (size_t i = 0; i < simples.size(); ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = ncomp;
    std::deque<size_t> queue{i};
    while (!queue.empty()) {
      size_t cur = queue.front();
      queue.pop_front();
      for (size_t k = 0; k < simples.size(); ++k) {
        if (comp[k] >= 0) continue;
        int c = pairing(data_.simpleCoroots[simples[cur]], simples[k]);
        if (c != 0) {
          comp[k] = ncomp;
          queue.push_back(k);
        }
      }
    }
    ++ncomp;
  }
  std::vector<std::vector<size_t>> out(ncomp);
  for (size_t i = 0; i < simples.size(); ++i)
    out[comp[i]].push_back(simples[i]);
  return out;
}

size_t RootDatum::highestRoot(const std::vector<size_t>& component) const {
  Subset mask = 0;
  for (size_t j : component) mask |= Subset(1) << j;
  size_t best = SIZE_MAX;
  int besth = -1;
  for (size_t r = 0; r < pos_.size(); ++r) {
    if (!rootInSubset(r, mask)) continue;
    // support must meet the component (it does: subset of it, nonzero)
    if (pos_[r].height > besth) {
      besth = pos_[r].height;
      best = r;
    }
  }
  if (best == SIZE_MAX) throw HeckeError("rootdatum: empty component");
  return best;
}

int RootDatum::longestOf(Subset J) const {
  auto elems = subgroupOf(J);
  int best = 0, bestLen = -1;
  for (int e : elems) {
    if (w0Length(e) > bestLen) {
      bestLen = w0Length(e);
      best = e;
    }
  }
  return best;
}

Subset RootDatum::opposition(Subset J) const {
  int wg = longestOf(full());
  Subset out = 0;
  for (size_t j = 0; j < nroots(); ++j) {
    if (!(J >> j & 1)) continue;
    auto [img, pos] = w0ApplyRoot(wg, j);
    if (pos) throw HeckeError("rootdatum: w_G fixes a positive root");
    // -w_G(a_j) is a simple root
    bool simple = false;
    for (size_t t = 0; t < nroots(); ++t) {
      std::vector<int> unit(nroots(), 0);
      unit[t] = 1;
      if (pos_[img].coeff == unit) {
        out |= Subset(1) << t;
        simple = true;
      }
    }
    if (!simple) throw HeckeError("rootdatum: opposition image not simple");
  }
  return out;
}

bool RootDatum::orthogonalTo(size_t rootIdx, Subset J) const {
  for (size_t j = 0; j < nroots(); ++j) {
    if (!(J >> j & 1)) continue;
    if (pairing(pos_[rootIdx].coroot, j) != 0) return false;
    if (pairing(data_.simpleCoroots[j], rootIdx) != 0) return false;
  }
  return true;
}

std::string RootDatum::subsetName(Subset J) const {
  if (J == 0) return "0";
  std::string s;
  for (size_t j = 0; j < nroots(); ++j)
    if (J >> j & 1) {
      if (!s.empty()) s += "+";
      s += data_.rootLabels[j];
    }
  return s;
}

Subset RootDatum::parseSubset(const std::string& s) const {
  if (s == "0" || s == "B" || s.empty()) return 0;
  if (s == "G" || s == "full") return full();
  Subset J = 0;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    bool found = false;
    for (size_t j = 0; j < nroots(); ++j)
      if (data_.rootLabels[j] == cur) {
        J |= Subset(1) << j;
        found = true;
      }
    if (!found) throw HeckeError("unknown simple root label '" + cur + "'");
    cur.clear();
  };
  for (char c : s) {
    if (c == '+' || c == ',' || c == ' ')
      flush();
    else
      cur += c;
  }
  flush();
  return J;
}

UpperSetLattice upper_sets(size_t groundSize) {
  if (groundSize > 4) throw HeckeError("upper_sets: |X| > 4");
  UpperSetLattice lat;
  lat.groundSize = groundSize;
  uint32_t nmasks = 1u << groundSize;          // subsets of X
  uint64_t total = 1ull << nmasks;             // families of subsets
  for (uint64_t fam = 0; fam < total; ++fam) {
    bool upper = true;
    for (uint32_t m = 0; m < nmasks && upper; ++m) {
      if (!(fam >> m & 1)) continue;
      for (size_t i = 0; i < groundSize && upper; ++i) {
        uint32_t m2 = m | (1u << i);
        if (!(fam >> m2 & 1)) upper = false;
      }
    }
    if (upper) lat.elements.push_back((uint32_t)fam);
  }
  return lat;
}

bool upper_contains(uint32_t upper, uint32_t subsetMask) {
  return (upper >> subsetMask) & 1;
}

namespace {

const char* kSL2 = R"(name SL2_Q2
p 2
k0 1
rank 1
roots alpha
coroot alpha 1
pairing alpha 2
cs -1
central 0 : 1
)";

const char* kGL2 = R"(name GL2_Q2
p 2
k0 1
rank 2
roots alpha
coroot alpha 1 -1
pairing alpha 1 -1
cs -1
omega 1 0 : alpha
central 0 : 1 -1
)";

const char* kGL3 = R"(name GL3_Q2
p 2
k0 1
rank 3
roots alpha beta
coroot alpha 1 -1 0
coroot beta 0 1 -1
pairing alpha 1 -1 0
pairing beta 0 1 -1
cs -1
omega 1 0 0 : alpha beta
central 0 : 1 0 -1
central alpha : 1 1 -2
central beta : 2 -1 -1
)";

}  // namespace

PresetData parse_preset_text(const std::string& text) {
  PresetData d;
  std::istringstream in(text);
  std::string line;
  auto rootIndex = [&](const std::string& lbl) -> size_t {
    for (size_t j = 0; j < d.rootLabels.size(); ++j)
      if (d.rootLabels[j] == lbl) return j;
    throw HeckeError("preset: unknown root label '" + lbl + "'");
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "name") {
      ls >> d.name;
    } else if (key == "p") {
      ls >> d.p;
    } else if (key == "k0") {
      ls >> d.k0;
    } else if (key == "rank") {
      ls >> d.rank;
    } else if (key == "roots") {
      std::string lbl;
      while (ls >> lbl) d.rootLabels.push_back(lbl);
    } else if (key == "coroot") {
      std::string lbl;
      ls >> lbl;
      size_t j = rootIndex(lbl);
      std::vector<int> v(d.rank);
      for (auto& x : v) ls >> x;
      if (d.simpleCoroots.size() <= j) d.simpleCoroots.resize(d.rootLabels.size());
      d.simpleCoroots[j] = v;
    } else if (key == "pairing") {
      std::string lbl;
      ls >> lbl;
      size_t j = rootIndex(lbl);
      if (d.pairing.empty())
        d.pairing.assign(d.rank, std::vector<int>(d.rootLabels.size(), 0));
      for (size_t i = 0; i < d.rank; ++i) ls >> d.pairing[i][j];
    } else if (key == "cs") {
      ls >> d.cs;
    } else if (key == "omega") {
      PresetData::OmegaGen g;
      g.lambda.resize(d.rank);
      for (auto& x : g.lambda) ls >> x;
      std::string sep, lbl;
      ls >> sep;  // ':'
      while (ls >> lbl) g.word.push_back((int)rootIndex(lbl));
      d.omegaGens.push_back(g);
    } else if (key == "central") {
      std::string sub, sep;
      ls >> sub >> sep;
      std::vector<int> seed(d.rank);
      for (auto& x : seed) ls >> x;
      // subset parsed after labels are known: store by label string for now
      Subset J = 0;
      if (sub != "0") {
        std::string cur;
        for (char c : sub + "+") {
          if (c == '+') {
            J |= Subset(1) << rootIndex(cur);
            cur.clear();
          } else
            cur += c;
        }
      }
      d.centralSeeds[J] = seed;
    } else {
      throw HeckeError("preset: unknown key '" + key + "'");
    }
  }
  if (d.name.empty()) throw HeckeError("preset: missing name");
  return d;
}

const std::string& preset_text(const std::string& name) {
  static const std::map<std::string, std::string> table = {
      {"SL2_Q2", kSL2}, {"GL2_Q2", kGL2}, {"GL3_Q2", kGL3}};
  auto it = table.find(name);
  if (it == table.end()) throw HeckeError("unknown preset '" + name + "'");
  return it->second;
}

std::vector<std::string> preset_names() { return {"SL2_Q2", "GL2_Q2", "GL3_Q2"}; }

const RootDatum* load_preset(const std::string& name) {
  static std::map<std::string, std::unique_ptr<RootDatum>> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second.get();
  auto rd = std::make_unique<RootDatum>(parse_preset_text(preset_text(name)));
  const RootDatum* ptr = rd.get();
  cache.emplace(name, std::move(rd));
  return ptr;
}

const RootDatum* load_preset_file(const std::string& path) {
  static std::map<std::string, std::unique_ptr<RootDatum>> cache;
  auto it = cache.find(path);
  if (it != cache.end()) return it->second.get();
  FILE* f = fopen(path.c_str(), "rb");
  if (!f) throw HeckeError("cannot open preset file '" + path + "'");
  std::string text;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
  fclose(f);
  auto rd = std::make_unique<RootDatum>(parse_preset_text(text));
  const RootDatum* ptr = rd.get();
  cache.emplace(path, std::move(rd));
  return ptr;
}

}  // namespace hecke

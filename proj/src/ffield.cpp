#include "hecke/ffield.hpp"

#include <algorithm>
#include <sstream>

namespace hecke {

namespace {

// Polynomial helpers over F_p, coefficients low degree first, no trailing
// zeros except for the zero polynomial (empty vector).

void trim(std::vector<uint32_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<uint32_t> poly_mod(std::vector<uint32_t> a,
                               const std::vector<uint32_t>& m, uint32_t p) {
  // m is monic
  while (a.size() >= m.size()) {
    uint32_t c = a.back();
    size_t shift = a.size() - m.size();
    if (c != 0) {
      for (size_t i = 0; i < m.size(); ++i) {
        uint64_t t = a[shift + i] + (uint64_t)(p - 1) * c % p * m[i];
        a[shift + i] = (uint32_t)(t % p);
      }
    }
    a.pop_back();
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

std::vector<uint32_t> poly_mulmod(const std::vector<uint32_t>& a,
                                  const std::vector<uint32_t>& b,
                                  const std::vector<uint32_t>& m, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (uint32_t)((c[i + j] + (uint64_t)a[i] * b[j]) % p);
  trim(c);
  return poly_mod(std::move(c), m, p);
}

std::vector<uint32_t> poly_powmod(std::vector<uint32_t> a, uint64_t e,
                                  const std::vector<uint32_t>& m, uint32_t p) {
  std::vector<uint32_t> r{1};
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, m, p);
    a = poly_mulmod(a, a, m, p);
    e >>= 1;
  }
  return r;
}

std::vector<uint32_t> poly_gcd(std::vector<uint32_t> a,
                               std::vector<uint32_t> b, uint32_t p) {
  auto inv_mod_p = [p](uint32_t x) {
    uint32_t r = 1;
    for (uint32_t e = p - 2; e; e >>= 1) {
      if (e & 1) r = (uint32_t)((uint64_t)r * x % p);
      x = (uint32_t)((uint64_t)x * x % p);
    }
    return r;
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, reduce a mod b
    uint32_t lead = b.back();
    if (lead != 1) {
      uint32_t li = inv_mod_p(lead);
      for (auto& c : b) c = (uint32_t)((uint64_t)c * li % p);
    }
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Irreducibility over F_p by the x^{p^d} criterion.
bool is_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
  uint32_t k = (uint32_t)f.size() - 1;
  if (k == 0) return false;
  std::vector<uint32_t> x{0, 1};
  // x^{p^k} == x mod f
  std::vector<uint32_t> xp = x;
  for (uint32_t i = 0; i < k; ++i) xp = poly_powmod(xp, p, f, p);
  std::vector<uint32_t> diff = xp;
  // diff -= x
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = (uint32_t)((diff[1] + p - 1) % p);
  trim(diff);
  if (!diff.empty()) return false;
  // gcd(x^{p^{k/r}} - x, f) trivial for prime divisors r of k
  for (uint32_t r = 2; r <= k; ++r) {
    if (k % r != 0) continue;
    bool prime = true;
    for (uint32_t d = 2; d * d <= r; ++d)
      if (r % d == 0) prime = false;
    if (!prime) continue;
    std::vector<uint32_t> xe = x;
    for (uint32_t i = 0; i < k / r; ++i) xe = poly_powmod(xe, p, f, p);
    std::vector<uint32_t> diff2 = xe;
    diff2.resize(std::max<size_t>(diff2.size(), 2), 0);
    diff2[1] = (uint32_t)((diff2[1] + p - 1) % p);
    trim(diff2);
    auto g = poly_gcd(diff2, f, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace

Field::Field(uint32_t p, uint32_t k) : p_(p), k_(k) {
  if (p < 2 || k < 1) throw HeckeError("field: bad (p, k)");
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw HeckeError("field: p not prime");
  q_ = 1;
  for (uint32_t i = 0; i < k; ++i) {
    q_ *= p;
    if (q_ > kMaxOrder) throw HeckeError("field: p^k exceeds size bound 2^20");
  }
  if (k_ == 1) {
    modulus_ = {0, 1};  // unused
  } else {
    // lexicographically smallest monic irreducible of degree k:
    // scan constant..x^{k-1} coefficient tuples in lex order, low digit first.
    uint64_t count = 1;
    for (uint32_t i = 0; i < k; ++i) count *= p;
    bool found = false;
    for (uint64_t code = 0; code < count && !found; ++code) {
      std::vector<uint32_t> f(k + 1, 0);
      uint64_t c = code;
      for (uint32_t i = 0; i < k; ++i) {
        f[i] = (uint32_t)(c % p);
        c /= p;
      }
      f[k] = 1;
      if (is_irreducible(f, p_)) {
        modulus_ = f;
        found = true;
      }
    }
    if (!found) throw HeckeError("field: no irreducible found");
  }
  build_tables();
}

void Field::build_tables() {
  if (q_ <= kTableLimit) {
    add_table_.resize(q_ * q_);
    mul_table_.resize(q_ * q_);
    for (uint64_t a = 0; a < q_; ++a)
      for (uint64_t b = 0; b < q_; ++b) {
        add_table_[a * q_ + b] = add_slow((Elem)a, (Elem)b);
        mul_table_[a * q_ + b] = mul_slow((Elem)a, (Elem)b);
      }
    inv_table_.assign(q_, 0);
    for (uint64_t a = 1; a < q_; ++a)
      for (uint64_t b = 1; b < q_; ++b)
        if (mul_table_[a * q_ + b] == 1) {
          inv_table_[a] = (Elem)b;
          break;
        }
  }
  // log/exp tables for all sizes: find a primitive element
  log_.assign(q_, 0);
  exp_.clear();
  for (Elem g = 1; g < q_; ++g) {
    std::vector<Elem> seen;
    seen.reserve(q_);
    Elem x = 1;
    bool full = true;
    for (uint64_t i = 0; i + 1 < q_; ++i) {
      seen.push_back(x);
      x = q_ <= kTableLimit ? mul_table_[(uint64_t)x * q_ + g] : mul_slow(x, g);
      if (x == 1 && i + 2 < q_) {
        full = false;
        break;
      }
    }
    if (full) {
      primitive_ = g;
      exp_ = seen;
      for (uint64_t i = 0; i < exp_.size(); ++i) log_[exp_[i]] = (uint32_t)i;
      break;
    }
  }
  if (exp_.empty()) throw HeckeError("field: no primitive element");
}

Field::Elem Field::add_slow(Elem a, Elem b) const {
  Elem r = 0, mult = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    uint32_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    r += ((da + db) % p_) * mult;
    mult *= p_;
  }
  return r;
}

Field::Elem Field::mul_slow(Elem a, Elem b) const {
  std::vector<uint32_t> pa, pb;
  for (uint32_t i = 0, x = a; i < k_; ++i, x /= p_) pa.push_back(x % p_);
  for (uint32_t i = 0, x = b; i < k_; ++i, x /= p_) pb.push_back(x % p_);
  trim(pa);
  trim(pb);
  auto pc = poly_mulmod(pa, pb, modulus_, p_);
  Elem r = 0, mult = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    r += (i < pc.size() ? pc[i] : 0) * mult;
    mult *= p_;
  }
  return r;
}

Field::Elem Field::add(Elem a, Elem b) const {
  if (q_ <= kTableLimit) return add_table_[(uint64_t)a * q_ + b];
  return add_slow(a, b);
}

Field::Elem Field::neg(Elem a) const {
  Elem r = 0, mult = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    uint32_t d = a % p_;
    a /= p_;
    r += ((p_ - d) % p_) * mult;
    mult *= p_;
  }
  return r;
}

Field::Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Field::Elem Field::mul(Elem a, Elem b) const {
  if (q_ <= kTableLimit) return mul_table_[(uint64_t)a * q_ + b];
  if (a == 0 || b == 0) return 0;
  uint64_t e = (uint64_t)log_[a] + log_[b];
  return exp_[e % (q_ - 1)];
}

Field::Elem Field::inv(Elem a) const {
  if (a == 0) throw HeckeError("field: division by zero");
  if (q_ <= kTableLimit) return inv_table_[a];
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Field::Elem Field::pow(Elem a, int64_t e) const {
  if (a == 0) {
    if (e < 0) throw HeckeError("field: 0^negative");
    return e == 0 ? 1 : 0;
  }
  int64_t m = (int64_t)(q_ - 1);
  int64_t r = e % m;
  if (r < 0) r += m;
  uint64_t le = ((uint64_t)log_[a] * (uint64_t)r) % (q_ - 1);
  return exp_[le];
}

Field::Elem Field::frobenius_iter(Elem a, uint32_t j) const {
  Elem r = a;
  for (uint32_t i = 0; i < j; ++i) r = frobenius(r);
  return r;
}

Field::Elem Field::from_int(int64_t n) const {
  int64_t r = n % (int64_t)p_;
  if (r < 0) r += p_;
  return (Elem)r;
}

Field::Elem Field::from_digits(const std::vector<uint32_t>& digits) const {
  if (digits.size() > k_) throw HeckeError("field: too many digits");
  Elem r = 0, mult = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    r += (i < digits.size() ? digits[i] % p_ : 0) * mult;
    mult *= p_;
  }
  return r;
}

std::vector<uint32_t> Field::digits(Elem a) const {
  std::vector<uint32_t> d(k_);
  for (uint32_t i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

bool Field::in_subfield(Elem a, uint32_t d) const {
  if (k_ % d != 0) throw HeckeError("field: d does not divide k");
  // a in F_{p^d} iff a^{p^d} = a
  return frobenius_iter(a, d) == a;
}

std::string Field::to_string(Elem a) const {
  auto d = digits(a);
  std::ostringstream os;
  for (uint32_t i = 0; i < k_; ++i) {
    if (i) os << ',';
    os << d[i];
  }
  return os.str();
}

Field::Elem Field::parse(const std::string& s) const {
  std::vector<uint32_t> d;
  uint32_t cur = 0;
  bool have = false;
  for (char c : s) {
    if (c == ',') {
      d.push_back(cur);
      cur = 0;
      have = false;
    } else if (c >= '0' && c <= '9') {
      cur = cur * 10 + (uint32_t)(c - '0');
      have = true;
    } else if (c != ' ') {
      throw HeckeError("field: bad element literal '" + s + "'");
    }
  }
  if (have || !d.empty()) d.push_back(cur);
  return from_digits(d);
}

FieldTower& FieldTower::instance() {
  static FieldTower t;
  return t;
}

const Field* FieldTower::field(uint32_t p, uint32_t k) {
  auto key = std::make_pair(p, k);
  auto it = fields_.find(key);
  if (it != fields_.end()) return it->second.get();
  auto f = std::make_unique<Field>(p, k);
  const Field* ptr = f.get();
  fields_.emplace(key, std::move(f));
  return ptr;
}

Field::Elem FieldTower::embed_gen(const Field* from, const Field* to) {
  auto key = std::make_pair(from, to);
  auto it = gen_images_.find(key);
  if (it != gen_images_.end()) return it->second;
  if (from->p() != to->p() || to->k() % from->k() != 0)
    throw HeckeError("field: no embedding");
  // roots of the small modulus in the big field
  std::vector<Field::Elem> roots;
  for (uint64_t x = 0; x < to->order(); ++x) {
    Field::Elem v = 0;
    Field::Elem xp = 1;
    for (uint32_t i = 0; i < from->modulus().size(); ++i) {
      Field::Elem c = to->from_int((int64_t)from->modulus()[i]);
      v = to->add(v, to->mul(c, xp));
      xp = to->mul(xp, (Field::Elem)x);
    }
    if (v == 0) roots.push_back((Field::Elem)x);
  }
  if (from->k() == 1) roots.assign(1, to->one());
  if (roots.empty()) throw HeckeError("field: modulus has no root upstairs");
  // Pick the smallest root that is compatible with every embedding already
  // fixed through an intermediate field: from -> mid -> to must equal
  // from -> to whenever both legs exist.
  for (Field::Elem r : roots) {
    bool ok = true;
    for (auto& [pk, fptr] : fields_) {
      const Field* mid = fptr.get();
      if (mid == from || mid == to) continue;
      if (mid->p() != from->p()) continue;
      if (mid->k() % from->k() != 0 || to->k() % mid->k() != 0) continue;
      auto a = gen_images_.find(std::make_pair(from, mid));
      auto b = gen_images_.find(std::make_pair(mid, to));
      if (a == gen_images_.end() || b == gen_images_.end()) continue;
      // image of from->gen() through mid
      Field::Elem via = 0, xp = to->one();
      auto digitsMid = mid->digits(a->second);
      for (uint32_t i = 0; i < digitsMid.size(); ++i) {
        // digits of a->second as poly in mid gen -> evaluate at b image
        Field::Elem c = to->from_int((int64_t)digitsMid[i]);
        via = to->add(via, to->mul(c, xp));
        xp = to->mul(xp, b->second);
      }
      if (via != r) ok = false;
      if (!ok) break;
    }
    if (ok) {
      gen_images_[key] = r;
      return r;
    }
  }
  // fall back to the smallest root
  gen_images_[key] = roots.front();
  return roots.front();
}

Field::Elem FieldTower::embed(const Field* from, const Field* to,
                              Field::Elem a) {
  if (from == to) return a;
  Field::Elem g = embed_gen(from, to);
  auto d = from->digits(a);
  Field::Elem v = 0, xp = to->one();
  for (uint32_t i = 0; i < d.size(); ++i) {
    v = to->add(v, to->mul(to->from_int((int64_t)d[i]), xp));
    xp = to->mul(xp, g);
  }
  return v;
}

uint32_t FieldTower::minimal_subfield(const Field* f,
                                      const std::vector<Field::Elem>& xs) {
  for (uint32_t d = 1; d <= f->k(); ++d) {
    if (f->k() % d != 0) continue;
    bool all = true;
    for (auto x : xs)
      if (!f->in_subfield(x, d)) {
        all = false;
        break;
      }
    if (all) return d;
  }
  return f->k();
}

std::vector<Field::Elem> FieldTower::frobenius_orbit(const Field* f,
                                                     Field::Elem x) {
  std::vector<Field::Elem> orbit;
  Field::Elem y = x;
  do {
    orbit.push_back(y);
    y = f->frobenius(y);
  } while (y != x);
  return orbit;
}

std::vector<Field::Elem> FieldTower::coords(const Field* big,
                                            const Field* small,
                                            Field::Elem a) {
  if (big == small) return {a};
  uint32_t e = big->k() / small->k();
  if (small->k() * e != big->k()) throw HeckeError("field: not a subfield");
  // Solve a = sum c_i * G^i with c_i in the embedded small field.
  // Basis of big over small: G^0..G^{e-1} with G = big->gen().
  // We enumerate by linear algebra over F_p: big as F_p-space of dim k,
  // small-embedded coefficients c_i have d = small->k() F_p-degrees each.
  uint32_t d = small->k(), kk = big->k();
  Field::Elem sg = embed(small, big, small->gen());
  // Column j = (i, t): G^i * sg^t, i < e, t < d, expressed in F_p digits.
  std::vector<std::vector<uint32_t>> cols;
  for (uint32_t i = 0; i < e; ++i)
    for (uint32_t t = 0; t < d; ++t) {
      Field::Elem v = big->mul(big->pow(big->gen(), i), big->pow(sg, t));
      cols.push_back(big->digits(v));
    }
  // Gaussian solve over F_p for target digits(a).
  uint32_t n = kk;
  std::vector<std::vector<uint32_t>> m(n, std::vector<uint32_t>(n + 1, 0));
  for (uint32_t j = 0; j < n; ++j)
    for (uint32_t r = 0; r < n; ++r) m[r][j] = cols[j][r];
  auto ad = big->digits(a);
  for (uint32_t r = 0; r < n; ++r) m[r][n] = ad[r];
  uint32_t p = big->p();
  auto invp = [p](uint32_t x) {
    uint32_t r = 1;
    for (uint32_t epow = p - 2; epow; epow >>= 1) {
      if (epow & 1) r = (uint32_t)((uint64_t)r * x % p);
      x = (uint32_t)((uint64_t)x * x % p);
    }
    return r;
  };
  std::vector<int> pivot(n, -1);
  uint32_t row = 0;
  for (uint32_t col = 0; col < n && row < n; ++col) {
    uint32_t sel = row;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(m[sel], m[row]);
    uint32_t li = invp(m[row][col]);
    for (uint32_t j = col; j <= n; ++j)
      m[row][j] = (uint32_t)((uint64_t)m[row][j] * li % p);
    for (uint32_t r2 = 0; r2 < n; ++r2) {
      if (r2 == row || m[r2][col] == 0) continue;
      uint32_t f2 = m[r2][col];
      for (uint32_t j = col; j <= n; ++j)
        m[r2][j] =
            (uint32_t)((m[r2][j] + (uint64_t)(p - f2) * m[row][j]) % p);
    }
    pivot[col] = (int)row;
    ++row;
  }
  std::vector<uint32_t> sol(n, 0);
  for (uint32_t col = 0; col < n; ++col)
    if (pivot[col] >= 0) sol[col] = m[pivot[col]][n];
  std::vector<Field::Elem> out(e);
  for (uint32_t i = 0; i < e; ++i) {
    std::vector<uint32_t> digs(d);
    for (uint32_t t = 0; t < d; ++t) digs[t] = sol[i * d + t];
    out[i] = small->from_digits(digs);
  }
  // verify
  Field::Elem check = 0;
  for (uint32_t i = 0; i < e; ++i) {
    Field::Elem c = embed(small, big, out[i]);
    check = big->add(check, big->mul(c, big->pow(big->gen(), i)));
  }
  if (check != a) throw HeckeError("field: coordinate solve failed");
  return out;
}

Field::Elem FieldTower::from_coords(const Field* big, const Field* small,
                                    const std::vector<Field::Elem>& c) {
  Field::Elem v = 0;
  for (uint32_t i = 0; i < c.size(); ++i)
    v = big->add(v, big->mul(embed(small, big, c[i]), big->pow(big->gen(), i)));
  return v;
}

std::vector<Field::Elem> FieldTower::mult_matrix(const Field* big,
                                                 const Field* small,
                                                 Field::Elem a) {
  uint32_t e = big->k() / small->k();
  std::vector<Field::Elem> mat(e * e, 0);
  for (uint32_t i = 0; i < e; ++i) {
    Field::Elem bi = big->mul(big->pow(big->gen(), i), a);
    auto c = coords(big, small, bi);
    for (uint32_t j = 0; j < e; ++j) mat[i * e + j] = c[j];
  }
  return mat;
}

}  // namespace hecke

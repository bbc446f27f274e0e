#include "bbcpt/gf.hpp"

#include <map>
#include <mutex>
#include <random>
#include <utility>

namespace bbcpt {

namespace {

using Poly = std::vector<unsigned>;

void trim(Poly &a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a mod b over GF(p), b monic
Poly poly_mod(Poly a, const Poly &b, unsigned p) {
  trim(a);
  size_t db = b.size() - 1;
  while (a.size() > db) {
    unsigned c = a.back();
    size_t shift = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i)
      a[shift + i] = (a[shift + i] + (p - c) * b[i]) % p;
    trim(a);
  }
  return a;
}

unsigned ipow(unsigned b, unsigned e) {
  unsigned r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(unsigned p, const Poly &poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  unsigned k = f.size() - 1;
  if (f.back() != 1) return false;
  // trial division by every monic polynomial of degree 1..k/2
  for (unsigned d = 1; 2 * d <= k; ++d) {
    unsigned cnt = ipow(p, d);
    for (unsigned code = 0; code < cnt; ++code) {
      Poly g(d + 1);
      unsigned c = code;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldParams field_params(unsigned p, unsigned k, std::uint64_t seed) {
  if (p % 2 == 0 || !is_prime_u64(p)) throw FieldError("p must be an odd prime");
  if (k == 0) throw FieldError("k must be positive");
  unsigned q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > 1024) throw FieldError("field too large for table arithmetic");
  }
  FieldParams fp;
  fp.p = p;
  fp.k = k;
  fp.q = q;
  static const std::map<std::pair<unsigned, unsigned>, Poly> table = {
      {{3, 2}, {1, 0, 1}},       {{5, 2}, {2, 4, 1}},    {{7, 2}, {3, 6, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}}, {{11, 2}, {2, 7, 1}},   {{5, 3}, {3, 3, 0, 1}},
  };
  if (k == 1) {
    fp.modulus = {0, 1};
    return fp;
  }
  auto it = table.find({p, k});
  if (it != table.end()) {
    fp.modulus = it->second;
    return fp;
  }
  std::mt19937_64 rng(seed ^ (std::uint64_t(p) << 32 | k));
  for (;;) {
    Poly f(k + 1);
    for (unsigned i = 0; i < k; ++i) f[i] = rng() % p;
    f[k] = 1;
    if (f[0] != 0 && is_irreducible(p, f)) {
      fp.modulus = f;
      return fp;
    }
  }
}

Field::Field(FieldParams params) : par_(std::move(params)) {
  const unsigned p = par_.p, k = par_.k, q = par_.q;
  if (par_.modulus.size() != k + 1 || !is_irreducible(p, par_.modulus))
    throw FieldError("modulus is not irreducible of degree k");
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);

  std::vector<Poly> dig(q);
  for (unsigned a = 0; a < q; ++a) dig[a] = digits(fe(a));
  for (unsigned a = 0; a < q; ++a) {
    Poly n(k);
    for (unsigned i = 0; i < k; ++i) n[i] = (p - dig[a][i]) % p;
    neg_[a] = from_digits(n);
    for (unsigned b = 0; b < q; ++b) {
      Poly s(k);
      for (unsigned i = 0; i < k; ++i) s[i] = (dig[a][i] + dig[b][i]) % p;
      add_[a * q + b] = from_digits(s);
    }
  }
  // multiplication through a primitive element's log table
  std::vector<fe> xmul(q);
  for (unsigned a = 0; a < q; ++a) {
    Poly t(k + 1, 0);
    for (unsigned i = 0; i < k; ++i) t[i + 1] = dig[a][i];
    t = poly_mod(t, par_.modulus, p);
    t.resize(k, 0);
    xmul[a] = from_digits(t);
  }
  auto slow_mul = [&](fe a, fe b) {
    // shift-and-add using multiplication by x
    fe r = 0, cur = a;
    for (unsigned i = 0; i < k; ++i) {
      for (unsigned c = 0; c < dig[b][i]; ++c) r = add_[r * q + cur];
      cur = xmul[cur];
    }
    return r;
  };
  std::vector<fe> expt(q - 1);
  std::vector<int> logt(q, -1);
  for (unsigned g = 2; g < q; ++g) {
    fe cand = fe(g);
    std::fill(logt.begin(), logt.end(), -1);
    fe cur = 1;
    unsigned ord = 0;
    do {
      if (ord < q - 1) expt[ord] = cur;
      logt[cur] = ord;
      cur = slow_mul(cur, cand);
      ++ord;
    } while (cur != 1 && ord < q);
    if (ord == q - 1) {
      prim_ = cand;
      break;
    }
  }
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      mul_[a * q + b] =
          (a == 0 || b == 0) ? 0 : expt[(logt[a] + logt[b]) % (q - 1)];
  for (unsigned a = 1; a < q; ++a) inv_[a] = expt[(q - 1 - logt[a]) % (q - 1)];
}

std::shared_ptr<const Field> Field::get(unsigned p, unsigned k) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto &slot = cache[{p, k}];
  if (!slot) slot = std::make_shared<const Field>(field_params(p, k));
  return slot;
}

fe Field::inv(fe a) const {
  if (a == 0) throw FieldError("division by zero");
  return inv_[a];
}

fe Field::pow(fe a, std::uint64_t e) const {
  fe r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

fe Field::frob_power(fe a, unsigned r) const {
  std::uint64_t e = 1;
  for (unsigned i = 0; i < r % par_.k; ++i) e *= par_.p;
  return pow(a, e);
}

fe Field::frobenius(fe a) const {
  if (par_.k % 2) throw FieldError("frobenius needs even degree");
  return frob_power(a, par_.k / 2);
}

bool Field::is_square(fe a) const {
  return a == 0 || pow(a, (par_.q - 1) / 2) == 1;
}

fe Field::sqrt(fe a) const {
  for (unsigned b = 0; b < par_.q; ++b)
    if (mul(fe(b), fe(b)) == a) return fe(b);
  throw FieldError("not a square");
}

fe Field::from_int(long long v) const {
  long long m = v % (long long)par_.p;
  if (m < 0) m += par_.p;
  return fe(m);
}

std::uint64_t Field::mult_order(fe a) const {
  if (a == 0) throw FieldError("zero has no multiplicative order");
  std::uint64_t n = 1;
  fe c = a;
  while (c != 1) {
    c = mul(c, a);
    ++n;
  }
  return n;
}

std::vector<unsigned> Field::digits(fe a) const {
  std::vector<unsigned> d(par_.k);
  unsigned c = a;
  for (unsigned i = 0; i < par_.k; ++i) {
    d[i] = c % par_.p;
    c /= par_.p;
  }
  return d;
}

fe Field::from_digits(const std::vector<unsigned> &d) const {
  unsigned c = 0;
  for (size_t i = d.size(); i-- > 0;) c = c * par_.p + d[i] % par_.p;
  return fe(c);
}

FieldElement to_element(const Field &F, fe a) { return {F.digits(a)}; }

fe from_element(const Field &F, const FieldElement &x) {
  if (x.coeffs.size() != F.k()) throw FieldError("element has wrong length");
  for (unsigned c : x.coeffs)
    if (c >= F.p()) throw FieldError("coefficient not reduced");
  return F.from_digits(x.coeffs);
}

FieldElement field_arith(const Field &F, const FieldElement &a,
                         const FieldElement &b, FieldOp op) {
  fe x = from_element(F, a), y = from_element(F, b);
  fe r = 0;
  switch (op) {
    case FieldOp::add: r = F.add(x, y); break;
    case FieldOp::sub: r = F.sub(x, y); break;
    case FieldOp::mul: r = F.mul(x, y); break;
    case FieldOp::div: r = F.div(x, y); break;
  }
  return to_element(F, r);
}

}  // namespace bbcpt

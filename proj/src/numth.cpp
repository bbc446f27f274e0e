#include "bbcpt/numth.hpp"

#include <mutex>
#include <numeric>
#include <stdexcept>

namespace bbcpt {

namespace {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::map<u64, unsigned> &out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  for (u64 p : {2, 3, 5, 7, 11, 13}) {
    if (n % p == 0) {
      while (n % p == 0) {
        ++out[p];
        n /= p;
      }
      factor_into(n, out);
      return;
    }
  }
  u64 d = rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_probable_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // deterministic base set for 64-bit inputs
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::map<u64, unsigned> factor(u64 n) {
  std::map<u64, unsigned> out;
  if (n == 0) throw std::invalid_argument("factor(0)");
  factor_into(n, out);
  return out;
}

std::map<u64, unsigned> factor_big(const big &n0) {
  if (n0 <= 0) throw std::invalid_argument("factor_big needs n > 0");
  big n = n0;
  std::map<u64, unsigned> out;
  for (u64 p = 2; p < 100000 && n > big(u64(-1)); p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > big(u64(-1))) throw std::overflow_error("cofactor too large to factor");
  for (auto [p, e] : factor(n.convert_to<u64>())) out[p] += e;
  return out;
}

big ipow(const big &b, unsigned e) {
  big r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

big cyclotomic_value(u64 q, unsigned a) {
  big v = ipow(big(q), a) - 1;
  for (unsigned d = 1; d < a; ++d)
    if (a % d == 0) v /= cyclotomic_value(q, d);
  return v;
}

const std::vector<u64> &ppd_primes(u64 q, unsigned a) {
  static std::mutex mu;
  static std::map<std::pair<u64, unsigned>, std::vector<u64>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find({q, a});
  if (it != cache.end()) return it->second;
  std::vector<u64> res;
  for (auto [r, e] : factor_big(cyclotomic_value(q, a))) {
    // r is primitive iff q has multiplicative order exactly a mod r
    u64 qr = q % r, x = 1;
    unsigned ord = 0;
    do {
      x = u64(u128(x) * qr % r);
      ++ord;
    } while (x != 1 && ord <= a);
    if (qr != 0 && ord == a) res.push_back(r);
  }
  return cache[{q, a}] = res;
}

unsigned valuation(big n, u64 r) {
  if (n == 0) return 0;
  unsigned v = 0;
  while (n % r == 0) {
    n /= r;
    ++v;
  }
  return v;
}

big lcm(const big &a, const big &b) {
  if (a == 0 || b == 0) return 0;
  return a / boost::multiprecision::gcd(a, b) * b;
}

void split2(const big &n, unsigned &a, big &m) {
  a = 0;
  m = n;
  while (m != 0 && (m & 1) == 0) {
    m >>= 1;
    ++a;
  }
}

std::vector<u64> prime_divisors(const big &n) {
  std::vector<u64> out;
  for (auto [p, e] : factor_big(n)) out.push_back(p);
  return out;
}

}  // namespace bbcpt

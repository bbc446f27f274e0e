#include "bbcpt/bbox.hpp"

#include <algorithm>

namespace bbcpt {

unsigned g_retry_cap = 1u << 14;

PRState::PRState(std::shared_ptr<const Oracle> oracle,
                 std::shared_ptr<OracleCounters> cnt,
                 const std::vector<Elem> &gens, u64 seed)
    : oracle_(std::move(oracle)), cnt_(std::move(cnt)), rng_(seed) {
  std::vector<Elem> g;
  for (const auto &x : gens)
    if (!oracle_->is_identity(x)) g.push_back(x);
  acc_ = oracle_->identity();
  if (g.empty()) {
    trivial_ = true;
    return;
  }
  // every generator gets a slot, with at least R slots
  size_t n = std::max<size_t>(R, g.size());
  for (size_t i = 0; i < n; ++i) slots_.push_back(g[i % g.size()]);
  for (size_t i = 0; i < std::max<size_t>(burn_in, 5 * n); ++i) next();
}

Elem PRState::mul(const Elem &x, const Elem &y) {
  ++cnt_->mul;
  return oracle_->mul(x, y);
}

Elem PRState::next() {
  if (trivial_) return acc_;
  unsigned n = slots_.size();
  unsigned s = rng_.below(n), t = rng_.below(n - 1);
  if (t >= s) ++t;
  Elem y = slots_[t];
  if (rng_.next() & 1) {
    ++cnt_->inv;
    y = oracle_->inv(y);
  }
  if (rng_.next() & 1)
    slots_[s] = mul(slots_[s], y);
  else
    slots_[s] = mul(y, slots_[s]);
  acc_ = mul(acc_, slots_[s]);
  return acc_;
}

BlackBoxGroup::BlackBoxGroup(std::shared_ptr<const Oracle> oracle,
                             std::vector<Elem> gens, big exponent, unsigned p)
    : oracle_(std::move(oracle)), cnt_(std::make_shared<OracleCounters>()),
      gens_(std::move(gens)), E_(std::move(exponent)), p_(p) {
  split2(E_, a_, m_);
}

BlackBoxGroup BlackBoxGroup::sub(std::vector<Elem> gens) const {
  return sub(std::move(gens), E_);
}

BlackBoxGroup BlackBoxGroup::sub(std::vector<Elem> gens, const big &exponent) const {
  BlackBoxGroup H(*this);
  H.gens_ = std::move(gens);
  H.E_ = exponent;
  split2(H.E_, H.a_, H.m_);
  H.pr_.reset();
  H.label.clear();
  return H;
}

BlackBoxGroup BlackBoxGroup::fresh() const {
  BlackBoxGroup H(*this);
  H.cnt_ = std::make_shared<OracleCounters>();
  H.pr_.reset();
  return H;
}

Elem BlackBoxGroup::mul(const Elem &x, const Elem &y) const {
  ++cnt_->mul;
  return oracle_->mul(x, y);
}

Elem BlackBoxGroup::inv(const Elem &x) const {
  ++cnt_->inv;
  return oracle_->inv(x);
}

bool BlackBoxGroup::is_identity(const Elem &x) const {
  ++cnt_->ident;
  return oracle_->is_identity(x);
}

bool BlackBoxGroup::eq(const Elem &x, const Elem &y) const {
  return is_identity(mul(x, inv(y)));
}

Elem BlackBoxGroup::conj(const Elem &x, const Elem &g) const {
  return mul(inv(g), mul(x, g));
}

Elem BlackBoxGroup::comm(const Elem &x, const Elem &y) const {
  return mul(inv(mul(y, x)), mul(x, y));
}

bool BlackBoxGroup::commute(const Elem &x, const Elem &y) const {
  return eq(mul(x, y), mul(y, x));
}

bool BlackBoxGroup::centralizes(const Elem &x) const {
  for (const auto &g : gens_)
    if (!commute(x, g)) return false;
  return true;
}

bool BlackBoxGroup::commutes_with(const BlackBoxGroup &H) const {
  for (const auto &h : H.gens())
    if (!centralizes(h)) return false;
  return true;
}

Elem BlackBoxGroup::power(const Elem &x, const big &M) const {
  if (M == 0) return one();
  if (M < 0) return power(inv(x), -M);
  // 4-bit fixed window
  unsigned nbits = msb(M) + 1;
  std::vector<Elem> tab(16);
  tab[1] = x;
  unsigned top = 1;
  if (nbits > 8) {
    tab[2] = mul(x, x);
    for (unsigned i = 3; i < 16; ++i) tab[i] = mul(tab[i - 1], x);
    top = 15;
  }
  if (top == 1) {
    Elem r = x;
    for (int b = int(nbits) - 2; b >= 0; --b) {
      r = mul(r, r);
      if (bit_test(M, b)) r = mul(r, x);
    }
    return r;
  }
  int nwin = (nbits + 3) / 4;
  Elem r;
  bool started = false;
  for (int w = nwin - 1; w >= 0; --w) {
    unsigned d = 0;
    for (int b = 3; b >= 0; --b) d = d * 2 + (bit_test(M, 4 * w + b) ? 1 : 0);
    if (started)
      for (int s = 0; s < 4; ++s) r = mul(r, r);
    if (d) {
      r = started ? mul(r, tab[d]) : tab[d];
      started = true;
    }
  }
  return r;
}

bool BlackBoxGroup::order_divides(const Elem &x, const big &M) const {
  return is_identity(power(x, M));
}

bool BlackBoxGroup::has_order(const Elem &x, const big &N) const {
  if (!order_divides(x, N)) return false;
  for (u64 r : prime_divisors(N))
    if (order_divides(x, N / r)) return false;
  return true;
}

Elem BlackBoxGroup::random(Rng &rng) const {
  if (!pr_) pr_ = std::make_shared<PRState>(oracle_, cnt_, gens_, rng.fork());
  return pr_->next();
}

Elem BlackBoxGroup::random_word(Rng &rng, unsigned len) const {
  Elem r = one();
  if (gens_.empty()) return r;
  for (unsigned i = 0; i < len; ++i) {
    const Elem &g = gens_[rng.below(gens_.size())];
    r = mul(r, rng.next() & 1 ? g : inv(g));
  }
  return r;
}

}  // namespace bbcpt

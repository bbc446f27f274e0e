#include "bbcpt/invol.hpp"

#include <cassert>

namespace bbcpt {

std::optional<Elem> involution_of(const BlackBoxGroup &G, const Elem &x) {
  Elem y = G.power(x, G.odd_part());
  if (G.is_identity(y)) return std::nullopt;
  for (unsigned s = 0; s < G.two_power(); ++s) {
    Elem z = G.mul(y, y);
    if (G.is_identity(z)) return y;
    y = z;
  }
  // the exponent was wrong for this element
  throw std::logic_error("element order exceeds the exponent");
}

Elem inv_product(const BlackBoxGroup &G, const Elem &i, const Elem &x) {
  return G.mul(i, G.conj(i, x));
}

std::optional<Elem> zeta1(const BlackBoxGroup &G, const Elem &i, const Elem &x) {
  Elem y = inv_product(G, i, x);
  // z^2 = y exactly when y has odd order
  Elem z = G.power(y, (G.odd_part() + 1) / 2);
  if (!G.eq(G.mul(z, z), y)) return std::nullopt;
  Elem c = G.mul(z, G.inv(x));
  assert(G.commute(c, i));
  return c;
}

std::optional<Elem> zeta0(const BlackBoxGroup &G, const Elem &i, const Elem &x) {
  Elem y = inv_product(G, i, x);
  return involution_of(G, y);
}

Subgroup generate_centralizer(const BlackBoxGroup &G, const Elem &i, unsigned count,
                              Rng &rng) {
  std::vector<Elem> gens;
  for (unsigned tries = 0; gens.size() < count; ++tries) {
    if (tries >= g_retry_cap) throw MonteCarloExhausted("centralizer generation");
    auto c = zeta1(G, i, G.random(rng));
    if (c && !G.is_identity(*c)) gens.push_back(*c);
  }
  return G.sub(gens);
}

Subgroup second_derived(const Subgroup &S, unsigned count, Rng &rng, unsigned passes) {
  Subgroup cur = S;
  for (unsigned pass = 0; pass < passes; ++pass) {
    std::vector<Elem> gens;
    bool trivial = true;
    for (const auto &g : cur.gens())
      if (!cur.is_identity(g)) trivial = false;
    if (!trivial)
      for (unsigned j = 0; j < count; ++j) {
        Elem c = cur.comm(cur.random(rng), cur.random(rng));
        if (!cur.is_identity(c)) gens.push_back(c);
      }
    cur = cur.sub(gens, S.exponent());
  }
  return cur;
}

Subgroup normal_closure(const Subgroup &S, const std::vector<Elem> &seeds, unsigned count,
                        Rng &rng) {
  std::vector<Elem> gens = seeds;
  for (unsigned j = 0; j < count; ++j)
    for (const auto &s : seeds) gens.push_back(S.conj(s, S.random(rng)));
  return S.sub(gens);
}

Subgroup power_image(const Subgroup &S, const big &e, unsigned count, Rng &rng) {
  std::vector<Elem> gens;
  for (unsigned j = 0; j < count; ++j) {
    Elem y = S.power(S.random(rng), e);
    if (!S.is_identity(y)) gens.push_back(y);
  }
  return S.sub(gens);
}

std::optional<Elem> mismatch_element(const Subgroup &D, const Elem &t, u64 r) {
  const big &E = D.exponent();
  unsigned v = valuation(E, r);
  if (v == 0) return std::nullopt;
  big rv = ipow(big(r), v);
  Elem y = D.power(t, E / rv);
  if (D.is_identity(y) || D.centralizes(y)) return std::nullopt;
  // the chain y, y^r, ... is noncentral up to some point; keep the last such term
  for (unsigned j = 1; j < v; ++j) {
    Elem z = D.power(y, r);
    if (D.is_identity(z) || D.centralizes(z)) break;
    y = z;
  }
  return y;
}

std::vector<Subgroup> split_commuting_product(const Subgroup &D,
                                              const std::vector<Subgroup> &known,
                                              const std::vector<ComponentTarget> &targets,
                                              Rng &rng, const SplitOptions &opt) {
  std::vector<u64> primes = opt.primes;
  if (primes.empty()) {
    primes.push_back(2);
    for (u64 r : prime_divisors(D.odd_part()))
      if (r != D.p()) primes.push_back(r);
  }
  std::vector<std::optional<Subgroup>> found(targets.size());
  unsigned left = targets.size();
  auto commutes_all = [&](const Elem &y) {
    for (const auto &K : known)
      if (!K.centralizes(y)) return false;
    for (const auto &K : found)
      if (K && !K->centralizes(y)) return false;
    return true;
  };
  for (unsigned c = 0; c < opt.candidates && left; ++c) {
    Elem t = D.random(rng);
    for (u64 r : primes) {
      auto y = mismatch_element(D, t, r);
      if (!y || !commutes_all(*y)) continue;
      Subgroup N = normal_closure(D, {*y}, opt.conjugates, rng);
      bool placed = false;
      for (size_t j = 0; j < targets.size() && !placed; ++j) {
        if (found[j] || !targets[j].accept(N, rng)) continue;
        N.label = targets[j].label;
        found[j] = N;
        --left;
        placed = true;
      }
      if (placed) break;
    }
  }
  if (left) throw RecognitionFailed("commuting product did not split");
  std::vector<Subgroup> out;
  for (auto &f : found) out.push_back(*f);
  return out;
}

}  // namespace bbcpt

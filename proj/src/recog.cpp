#include "bbcpt/recog.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bbcpt {

namespace {

// exact-order test with the prime list of N precomputed
struct OrderTest {
  big N;
  std::vector<big> cofactors;
  explicit OrderTest(const big &n) : N(n) {
    for (u64 r : prime_divisors(n)) cofactors.push_back(n / r);
  }
  bool operator()(const BlackBoxGroup &G, const Elem &x) const {
    if (!G.order_divides(x, N)) return false;
    for (const auto &c : cofactors)
      if (G.order_divides(x, c)) return false;
    return true;
  }
};

// the involution in <x>, computed with a local exponent multiple of o(x)
std::optional<Elem> local_involution(const BlackBoxGroup &G, const Elem &x, unsigned a,
                                     const big &m) {
  Elem y = G.power(x, m);
  if (G.is_identity(y)) return std::nullopt;
  for (unsigned s = 0; s < a; ++s) {
    Elem z = G.mul(y, y);
    if (G.is_identity(z)) return y;
    y = z;
  }
  return std::nullopt;
}

std::vector<u64> ppd_upto(u64 q, unsigned max_a, std::vector<unsigned> *rank_of = nullptr) {
  std::vector<u64> out;
  for (unsigned a = 1; a <= max_a; ++a)
    for (u64 r : ppd_primes(q, a)) {
      out.push_back(r);
      if (rank_of) rank_of->push_back(a);
    }
  return out;
}

Sl2Check fail(Sl2Check c, const char *why) {
  c.ok = false;
  c.why = why;
  return c;
}

// Commuting A, B. Reports SL2xSL2 when both carry the same involution and
// <A, B> has elements of order dividing q^2-1 but neither q-1 nor q+1.
Rank2 commuting_pair(const Subgroup &A, const Subgroup &B, const Subgroup &S, u64 q, Rng &rng,
                     Rank2Profile &P) {
  const big N0 = big(S.p()) * (big(q) * q - 1), q2 = big(q) * q - 1;
  unsigned a0;
  big m0;
  split2(N0, a0, m0);
  auto first_involution = [&](const Subgroup &H) -> std::optional<Elem> {
    for (unsigned n = 0; n < 40; ++n)
      if (auto y = local_involution(H, H.random(rng), a0, m0)) return y;
    return std::nullopt;
  };
  for (unsigned n = 0; n < 60 && !P.q2; ++n) {
    Elem x = S.random(rng);
    ++P.samples;
    if (!S.order_divides(x, N0)) return Rank2::Commute;
    if (S.order_divides(x, q2) && !S.order_divides(x, q - 1) && !S.order_divides(x, q + 1))
      P.q2 = true;
  }
  if (!P.q2) return Rank2::Commute;
  auto a = first_involution(A), b = first_involution(B);
  if (a && b && S.eq(*a, *b)) return Rank2::SL2xSL2;
  return Rank2::Commute;
}

}  // namespace

std::vector<bool> prime_support(const BlackBoxGroup &G, const Elem &x,
                                const std::vector<u64> &primes, const big *M) {
  const big &E = M ? *M : G.exponent();
  std::vector<bool> out(primes.size(), false);
  std::vector<big> parts(primes.size(), 1);
  big P = 1;
  std::set<u64> done;
  for (size_t j = 0; j < primes.size(); ++j) {
    if (done.count(primes[j])) continue;
    done.insert(primes[j]);
    unsigned v = valuation(E, primes[j]);
    if (!v) continue;
    parts[j] = ipow(big(primes[j]), v);
    P *= parts[j];
  }
  if (P == 1) return out;
  Elem y = G.power(x, E / P);
  if (G.is_identity(y)) return out;
  for (size_t j = 0; j < primes.size(); ++j) {
    if (parts[j] == 1) continue;
    out[j] = !G.order_divides(y, P / parts[j]);
  }
  // duplicates share the answer of their first occurrence
  for (size_t j = 0; j < primes.size(); ++j)
    for (size_t l = 0; l < j; ++l)
      if (primes[l] == primes[j]) out[j] = out[l];
  return out;
}

PdRankResult pdrank(const BlackBoxGroup &G, const Elem &x, u64 q, unsigned max_a) {
  std::vector<unsigned> rank_of;
  auto primes = ppd_upto(q, max_a, &rank_of);
  auto sup = prime_support(G, x, primes);
  PdRankResult r;
  for (size_t j = 0; j < primes.size(); ++j)
    if (sup[j] && rank_of[j] >= r.rank) {
      r.rank = rank_of[j];
      r.witness_prime = primes[j];
    }
  return r;
}

Sl2Check sl2_check(const Subgroup &S, u64 q, Rng &rng, unsigned max_samples) {
  Sl2Check c;
  const u64 p = S.p();
  const big N0 = big(p) * (big(q) * q - 1);
  unsigned a0;
  big m0;
  split2(N0, a0, m0);
  const OrderTest om(q - 1), op(q + 1);
  const big q2 = big(q) * q - 1;
  bool seen_m = false, seen_p = false, seen_sing = false, have_z = false;
  for (unsigned n = 1; n <= max_samples; ++n) {
    c.samples = n;
    Elem x = S.random(rng);
    if (!S.order_divides(x, N0)) return fail(c, "exponent");
    if (!S.order_divides(x, q2)) {
      seen_sing = true;
      if (!S.order_divides(x, 2 * p)) return fail(c, "mixed order");
    } else {
      bool d1 = S.order_divides(x, q - 1), d2 = S.order_divides(x, q + 1);
      if (!d1 && !d2) return fail(c, "order divides q^2-1 but not q-1 or q+1");
      if (!seen_m && d1) seen_m = om(S, x);
      if (!seen_p && d2) seen_p = op(S, x);
    }
    if (auto y = local_involution(S, x, a0, m0)) {
      if (!have_z) {
        if (!S.centralizes(*y)) return fail(c, "noncentral involution");
        c.central = *y;
        have_z = true;
      } else if (!S.eq(*y, c.central)) {
        return fail(c, "two involutions");
      }
    }
    if (n >= 40 && seen_m && seen_p && seen_sing && have_z) break;
  }
  if (!(seen_m && seen_p && seen_sing && have_z)) return fail(c, "missing witness");
  // commutators must regenerate the torus orders
  for (unsigned t = 0; t < 30; ++t) {
    Elem k = S.comm(S.random(rng), S.random(rng));
    if (op(S, k)) {
      c.ok = true;
      return c;
    }
  }
  return fail(c, "commutators degenerate");
}

bool is_sl2q(const Subgroup &S, u64 q, Rng &rng) { return sl2_check(S, q, rng).ok; }

Sl2Check psl2_check(const Subgroup &S, u64 Q, Rng &rng, unsigned max_samples) {
  Sl2Check c;
  const u64 p = S.p();
  const big half = (big(Q) * Q - 1) / 2;
  const big N0 = big(p) * half;
  unsigned a0;
  big m0;
  split2(N0, a0, m0);
  const OrderTest o1((Q - 1) / 2), o2((Q + 1) / 2);
  bool seen1 = false, seen2 = false, seen_sing = false, seen_inv = false;
  for (unsigned n = 1; n <= max_samples; ++n) {
    c.samples = n;
    Elem x = S.random(rng);
    if (!S.order_divides(x, N0)) return fail(c, "exponent");
    if (!S.order_divides(x, half)) {
      seen_sing = true;
      if (!S.order_divides(x, p)) return fail(c, "mixed order");
    } else {
      bool d1 = S.order_divides(x, (Q - 1) / 2), d2 = S.order_divides(x, (Q + 1) / 2);
      if (!d1 && !d2) return fail(c, "order outside the tori");
      if (!seen1 && d1) seen1 = o1(S, x);
      if (!seen2 && d2) seen2 = o2(S, x);
    }
    if (!seen_inv)
      if (auto y = local_involution(S, x, a0, m0)) {
        if (S.centralizes(*y)) return fail(c, "central involution");
        c.central = *y;
        seen_inv = true;
      }
    if (n >= 40 && seen1 && seen2 && seen_sing && seen_inv) {
      c.ok = true;
      return c;
    }
  }
  return fail(c, "missing witness");
}

bool is_psl2q(const Subgroup &S, u64 Q, Rng &rng) { return psl2_check(S, Q, rng).ok; }

u64 sl2_field(const Subgroup &S, Rng &rng, unsigned max_k) {
  u64 q = 1;
  for (unsigned k = 1; k <= max_k; ++k) {
    q *= S.p();
    if (q <= 3) continue;
    if (sl2_check(S, q, rng).ok) return q;
  }
  return 0;
}

std::string rank2_name(Rank2 r) {
  switch (r) {
    case Rank2::SL3: return "SL3";
    case Rank2::SU3: return "SU3";
    case Rank2::Sp4: return "Sp4";
    case Rank2::SL2xSL2: return "SL2oSL2";
    case Rank2::PSL2q2: return "PSL2(q^2)";
    case Rank2::Omega6Minus: return "Omega6-";
    case Rank2::Omega6Plus: return "Omega6+";
    case Rank2::Commute: return "commute";
    case Rank2::Other: return "other";
  }
  return "?";
}

Rank2 recognize_rank2(const Subgroup &A, const Subgroup &B, u64 q, Rng &rng,
                      Rank2Profile *prof) {
  Rank2Profile local;
  Rank2Profile &P = prof ? *prof : local;
  P = {};
  std::vector<Elem> gens = A.gens();
  gens.insert(gens.end(), B.gens().begin(), B.gens().end());
  Subgroup S = A.sub(gens);
  const u64 p = S.p();
  if (A.commutes_with(B)) return commuting_pair(A, B, S, q, rng, P);
  big M = big(p) * p;
  for (unsigned j = 1; j <= 6; ++j) M = lcm(M, ipow(big(q), j) - 1);
  std::vector<u64> primes;
  std::vector<unsigned> rank_of;
  for (unsigned a : {3u, 4u, 6u})
    for (u64 r : ppd_primes(q, a)) {
      primes.push_back(r);
      rank_of.push_back(a);
    }
  const big q2 = big(q) * q - 1, pp = big(p) * p, Mp = M / pp;
  auto sample = [&]() -> bool {
    Elem x = S.random(rng);
    ++P.samples;
    if (!S.order_divides(x, M)) {
      P.exceeds = true;
      return false;
    }
    auto sup = prime_support(S, x, primes, &M);
    for (size_t j = 0; j < primes.size(); ++j)
      if (sup[j]) {
        if (rank_of[j] == 3) P.f3 = true;
        if (rank_of[j] == 4) P.f4 = true;
        if (rank_of[j] == 6) P.f6 = true;
      }
    if (!S.order_divides(x, Mp) && !S.order_divides(x, pp)) P.mixed = true;
    if (S.order_divides(x, q2) && !S.order_divides(x, q - 1) && !S.order_divides(x, q + 1))
      P.q2 = true;
    return true;
  };
  for (unsigned n = 0; n < 80; ++n)
    if (!sample()) return Rank2::Other;
  // PSL2(q^2) and Sp4 differ only by the mixed p-singular elements
  if (P.f4 && !P.f3 && !P.f6)
    for (unsigned n = 0; n < 160 && !P.mixed; ++n)
      if (!sample()) return Rank2::Other;
  if (P.f3 && !P.f4 && !P.f6) return Rank2::SL3;
  if (P.f6 && !P.f3 && !P.f4) return Rank2::SU3;
  if (P.f4 && !P.f3 && !P.f6) return P.mixed ? Rank2::Sp4 : Rank2::PSL2q2;
  if (P.f4 && P.f6 && !P.f3) return Rank2::Omega6Minus;
  if (P.f3 && P.f4 && !P.f6) return Rank2::Omega6Plus;
  if (!P.f3 && !P.f4 && !P.f6 && P.q2) return Rank2::SL2xSL2;
  return Rank2::Other;
}

ClassicalResult classical_involution(const BlackBoxGroup &G, const Elem &i, u64 q, Rng &rng,
                                     const ClassicalOptions &opt) {
  ClassicalResult res;
  for (unsigned att = 0; att < opt.attempts; ++att) {
    Subgroup C = generate_centralizer(G, i, opt.centralizer_gens, rng);
    Subgroup D = second_derived(C, opt.derived_count, rng);
    res.D = D;
    if (D.gens().empty()) continue;
    u64 found_q = 0;
    ComponentTarget tgt;
    tgt.label = "SL2";
    tgt.accept = [&](const Subgroup &N, Rng &r) {
      u64 qq = q;
      Sl2Check chk;
      if (qq) {
        chk = sl2_check(N, qq, r);
      } else {
        qq = sl2_field(N, r);
        if (qq) chk = sl2_check(N, qq, r);
      }
      if (!chk.ok || !N.eq(chk.central, i)) return false;
      // a component is normal: conjugating by D keeps it an SL2
      for (int t = 0; t < 2; ++t) {
        Elem d = D.random(r);
        std::vector<Elem> g2 = N.gens();
        for (const auto &g : N.gens()) g2.push_back(N.conj(g, d));
        if (!is_sl2q(N.sub(g2), qq, r)) return false;
      }
      found_q = qq;
      return true;
    };
    SplitOptions so;
    so.candidates = opt.candidates;
    try {
      auto comps = split_commuting_product(D, {}, {tgt}, rng, so);
      res.classical = true;
      res.K = comps[0];
      res.K->label = "SL2";
      res.q = found_q;
      return res;
    } catch (const RecognitionFailed &) {
    }
  }
  return res;
}

bool is_classical_involution(const BlackBoxGroup &G, const Elem &i, u64 q, Rng &rng) {
  return classical_involution(G, i, q, rng).classical;
}

RecognitionReport identify_type(const BlackBoxGroup &G, const Subgroup &K, u64 q,
                                unsigned samples, Rng &rng) {
  RecognitionReport rep;
  rep.q = q;
  std::vector<unsigned> rank_of;
  auto primes = ppd_upto(q, 8, &rank_of);
  const big q4 = ipow(big(q), 4) - 1, q3m = ipow(big(q), 3) - 1, q3p = ipow(big(q), 3) + 1;
  const OrderTest t44(q4 / 4), t42(q4 / 2), tsl4(q4 / (4 * (q - 1)));
  std::set<unsigned> ranks;
  bool o44 = false, o42 = false, om7 = false, osl4 = false;
  unsigned used = 0, built = 0, tries = 0;
  auto round = [&](unsigned want) {
    for (; tries < 4 * want && built < want; ++tries) {
      Elem g = G.random(rng);
      std::vector<Elem> gens = K.gens();
      bool moved = false;
      for (const auto &k : K.gens()) {
        Elem kg = G.conj(k, g);
        gens.push_back(kg);
        if (!moved && !K.centralizes(kg)) moved = true;
      }
      if (!moved) continue;
      ++built;
      Subgroup L = G.sub(gens);
      for (unsigned s = 0; s < samples; ++s) {
        Elem x = L.random(rng);
        ++used;
        auto sup = prime_support(L, x, primes);
        for (size_t j = 0; j < primes.size(); ++j)
          if (sup[j]) ranks.insert(rank_of[j]);
        if (!o44 && t44(L, x)) o44 = true;
        if (!o42 && t42(L, x)) o42 = true;
        if (!osl4 && tsl4(L, x)) osl4 = true;
        if (!om7 && L.order_divides(x, q3m) && !L.order_divides(x, q4) &&
            !L.order_divides(x, q3p))
          om7 = true;
      }
    }
  };
  auto top = [&] { return ranks.empty() ? 0u : *ranks.rbegin(); };
  round(3);
  if (top() <= 4) round(6);
  // the Omega_8 witnesses are rare; Omega_7 is only concluded after more rounds
  for (unsigned extra = 6; extra <= 24 && top() == 6 && om7 && !o44 && !o42; extra += 6)
    round(3 + extra);
  if (!built) throw RecognitionFailed("every conjugate of K commuted with K");
  rep.confidence = used;
  rep.pdrank = ranks.empty() ? 0 : *ranks.rbegin();
  bool f3 = ranks.count(3), f4 = ranks.count(4);
  std::string d = "pdrank=" + std::to_string(rep.pdrank);
  switch (rep.pdrank) {
    case 8: rep.family = Family::OmegaMinus; break;
    case 6:
      if (o44 || o42) {
        rep.family = Family::OmegaPlus;
        d += o44 ? " order(q^4-1)/4" : "";
        d += o42 ? " order(q^4-1)/2" : "";
      } else if (om7) {
        rep.family = Family::OmegaOdd;
        d += " q^3-1 test";
      } else {
        rep.family = Family::SU;
        d += f4 ? " SU4" : " SU3";
      }
      break;
    case 4:
      rep.family = (osl4 || f3) ? Family::SL : Family::Sp;
      d += osl4 ? " order(q^4-1)/4(q-1)" : "";
      break;
    case 2:
    case 3: rep.family = Family::SL; break;
    default: throw RecognitionFailed("pdrank " + std::to_string(rep.pdrank) + " is not classical");
  }
  rep.detail = d;
  return rep;
}

}  // namespace bbcpt

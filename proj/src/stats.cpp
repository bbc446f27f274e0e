#include "bbcpt/stats.hpp"

#include <cmath>
#include <cstdio>

#include "bbcpt/invol.hpp"

namespace bbcpt {

namespace {

constexpr double kZ = 4.75;

double wilson_upper(u64 n, u64 k) {
  if (!n) return 1;
  const double p = double(k) / double(n), z2 = kZ * kZ, nn = double(n);
  return (p + z2 / (2 * nn) + kZ * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn))) /
         (1 + z2 / nn);
}

// K^j commutes with K exactly when j moves K to another component
bool moves(const Subgroup &K, const Elem &j) {
  std::vector<Elem> gens;
  for (const auto &x : K.gens()) gens.push_back(K.conj(x, j));
  return K.commutes_with(K.sub(gens));
}

// what one block needs: private copies so PR states and counters are not shared
struct Block {
  BlackBoxGroup G;
  std::optional<Subgroup> K, C;
};

Block copy_block(const BlackBoxGroup &G, const ProbeSetup &s) {
  Block b{G.fresh(), std::nullopt, std::nullopt};
  if (s.K) b.K = s.K->fresh();
  if (s.C) b.C = s.C->fresh();
  return b;
}

bool trial(Block &b, const ProbeSetup &s, Rng &rng) {
  const BlackBoxGroup &G = b.G;
  auto classical = [&](const Elem &j) {
    return s.classical ? s.classical(G, j, rng) : is_classical_involution(G, j, s.q, rng);
  };
  switch (s.kind) {
    case Probe::EvenOrder: return !G.order_divides(G.random(rng), G.odd_part());
    case Probe::T1EvenProduct: return zeta0(G, s.i, G.random(rng)).has_value();
    case Probe::Twin: {
      Elem g = b.C->random(rng);
      return moves(*b.K, g);
    }
    case Probe::RootClassical:
    case Probe::Sp4Classical: {
      auto j = zeta0(G, s.i, G.random(rng));
      if (!j || b.K->centralizes(*j)) return false;
      return classical(*j);
    }
    case Probe::NormalizingClassical: {
      auto j = zeta0(G, s.i, G.random(rng));
      if (!j || moves(*b.K, *j)) return false;
      return classical(*j);
    }
    case Probe::T1Classical: {
      auto j = zeta0(G, s.i, G.random(rng));
      return j && classical(*j);
    }
  }
  return false;
}

u64 run_block(const BlackBoxGroup &G, const ProbeSetup &s, u64 seed, u64 block, u64 count) {
  Block b = copy_block(G, s);
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + block + 1);
  u64 hits = 0;
  for (u64 t = 0; t < count; ++t) hits += trial(b, s, rng);
  return hits;
}

ProbeStats finish(const ProbeSetup &s, u64 trials, u64 hits) {
  return make_stats(probe_id(s.kind), s.group, s.floor_text, s.floor, trials, hits);
}

}  // namespace

ProbeStats make_stats(std::string id, std::string group, std::string floor_text, double floor,
                      u64 trials, u64 successes) {
  ProbeStats s;
  s.bound_id = std::move(id);
  s.group = std::move(group);
  s.floor_text = std::move(floor_text);
  s.floor = floor;
  s.trials = trials;
  s.successes = successes;
  s.upper = wilson_upper(trials, successes);
  s.passed = trials > 0 && s.upper >= floor;
  return s;
}

std::string probe_id(Probe p) {
  switch (p) {
    case Probe::RootClassical: return "root-classical";
    case Probe::T1EvenProduct: return "t1-even-product";
    case Probe::NormalizingClassical: return "normalizing-classical";
    case Probe::Twin: return "twin";
    case Probe::T1Classical: return "t1-classical";
    case Probe::Sp4Classical: return "sp4-t2-classical";
    case Probe::EvenOrder: return "even-order";
  }
  return "?";
}

std::optional<Probe> parse_probe(const std::string &s) {
  for (Probe p : {Probe::RootClassical, Probe::T1EvenProduct, Probe::NormalizingClassical,
                  Probe::Twin, Probe::T1Classical, Probe::Sp4Classical, Probe::EvenOrder})
    if (probe_id(p) == s) return p;
  return std::nullopt;
}

double probe_floor(Probe p, u64 q, std::string *text) {
  const double Q = double(q), lift = 1 - 2 / Q;
  std::string t;
  double f = 0;
  switch (p) {
    case Probe::RootClassical: t = "1/750*(1-2/q)"; f = lift / 750; break;
    case Probe::T1EvenProduct: t = "1/30"; f = 1.0 / 30; break;
    case Probe::NormalizingClassical:
      t = "(1/2^16-1/q^11)*(1-2/q)";
      f = (std::ldexp(1.0, -16) - std::pow(Q, -11)) * lift;
      break;
    case Probe::Twin: t = "1/8"; f = 1.0 / 8; break;
    case Probe::T1Classical: t = "1/960"; f = 1.0 / 960; break;
    case Probe::Sp4Classical: t = "1/768"; f = 1.0 / 768; break;
    case Probe::EvenOrder: t = "1/4"; f = 0.25; break;
  }
  if (text) *text = t;
  return f;
}

bool omega7_t1(const BlackBoxGroup &G, const Elem &t, u64 q, Rng &rng) {
  Subgroup C = second_derived(generate_centralizer(G, t, 24, rng), 32, rng);
  if (C.gens().empty()) return false;
  std::vector<u64> primes;
  std::vector<unsigned> rank;
  for (unsigned a : {3u, 4u, 6u})
    for (u64 r : ppd_primes(q, a)) {
      primes.push_back(r);
      rank.push_back(a);
    }
  const u64 p = G.p();
  primes.push_back(p);
  rank.push_back(1);
  bool four = false;
  // Omega_4^- x Omega_3 also has rank 4, but only there does it meet p
  for (unsigned s = 0; s < 60; ++s) {
    auto sup = prime_support(C, C.random(rng), primes);
    bool r4 = false, pp = false;
    for (size_t j = 0; j < primes.size(); ++j) {
      if (!sup[j]) continue;
      if (rank[j] == 3 || rank[j] == 6) return false;
      if (rank[j] == 4) r4 = true;
      if (rank[j] == 1) pp = true;
    }
    if (r4 && pp) return false;
    four = four || r4;
  }
  return four;
}

ProbeSetup prepare_probe(const BlackBoxGroup &G, Probe kind, u64 q, Rng &rng,
                         const std::function<bool(const Elem &)> &pick) {
  ProbeSetup s;
  s.kind = kind;
  s.q = q;
  s.floor = probe_floor(kind, q, &s.floor_text);
  auto root = [&] {
    RootSL2 K = construct_long_root_sl2(G, q, rng);
    s.K = K.group;
    s.i = *K.central;
    return K;
  };
  auto special = [&](auto &&accept) {
    for (unsigned n = 0; n < g_retry_cap; ++n) {
      auto x = involution_of(G, G.random(rng));
      if (x && (pick ? pick(*x) : accept(*x))) return *x;
    }
    throw MonteCarloExhausted("no involution of the required type");
  };
  switch (kind) {
    case Probe::EvenOrder: break;
    case Probe::RootClassical:
    case Probe::NormalizingClassical: root(); break;
    case Probe::T1EvenProduct: root(); break;  // in PSL_n the root involution is t1
    case Probe::Twin: {
      root();
      s.C = generate_centralizer(G, s.i, 24, rng);
      break;
    }
    case Probe::T1Classical:
      s.i = special([&](const Elem &x) { return omega7_t1(G, x, q, rng); });
      break;
    case Probe::Sp4Classical: {
      // t of type t2: not classical and C(t)'' = PSL2(q)
      for (unsigned n = 0; n < 256 && !s.K; ++n) {
        Elem t = special([&](const Elem &x) { return !is_classical_involution(G, x, q, rng); });
        Subgroup C = second_derived(generate_centralizer(G, t, 24, rng), 32, rng);
        if (!psl2_check(C, q, rng).ok) continue;
        s.i = t;
        s.K = C;
      }
      if (!s.K) throw MonteCarloExhausted("no involution of type t2");
      break;
    }
  }
  return s;
}

ProbeStats measure_rate(const BlackBoxGroup &G, const ProbeSetup &setup, u64 trials, u64 seed) {
  const long blocks = long((trials + kProbeBlock - 1) / kProbeBlock);
  std::vector<u64> hits(blocks, 0);
#pragma omp parallel for schedule(dynamic)
  for (long b = 0; b < blocks; ++b) {
    const u64 count = std::min<u64>(kProbeBlock, trials - u64(b) * kProbeBlock);
    hits[b] = run_block(G, setup, seed, u64(b), count);
  }
  u64 total = 0;
  for (u64 h : hits) total += h;
  return finish(setup, trials, total);
}

ProbeStats measure_rate_serial(const BlackBoxGroup &G, const ProbeSetup &setup, u64 trials,
                               u64 seed) {
  u64 total = 0;
  for (u64 b = 0; b * kProbeBlock < trials; ++b)
    total += run_block(G, setup, seed, b, std::min<u64>(kProbeBlock, trials - b * kProbeBlock));
  return finish(setup, trials, total);
}

std::string rate_table_header() { return "bound_id,group,trials,successes,floor,rate,upper,passed"; }

std::string rate_table_row(const ProbeStats &s) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g,%.6g", s.rate(), s.upper);
  return s.bound_id + "," + s.group + "," + std::to_string(s.trials) + "," +
         std::to_string(s.successes) + "," + s.floor_text + "," + buf + "," +
         (s.passed ? "pass" : "fail");
}

}  // namespace bbcpt

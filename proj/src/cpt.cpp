#include "bbcpt/cpt.hpp"

#include <set>

namespace bbcpt {

namespace {

const ClassicalOptions kOpt;

bool is_trivial(const Subgroup &S) {
  for (const auto &g : S.gens())
    if (!S.is_identity(g)) return false;
  return true;
}

bool is_involution(const BlackBoxGroup &G, const Elem &x) {
  return !G.is_identity(x) && G.is_identity(G.mul(x, x));
}

Subgroup cderived(const Subgroup &X, const Elem &i, Rng &rng) {
  Subgroup C = generate_centralizer(X, i, kOpt.centralizer_gens, rng);
  return second_derived(C, kOpt.derived_count, rng);
}

Subgroup conj_sub(const Subgroup &A, const Elem &g) {
  std::vector<Elem> gens;
  for (const auto &x : A.gens()) gens.push_back(A.conj(x, g));
  return A.sub(gens);
}

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::SL2: return "SL2";
    case Shape::PSL2: return "PSL2";
    case Shape::PSL2q2: return "PSL2(q^2)";
  }
  return "?";
}

RootSL2 node_from(const ClassicalResult &r, const Elem &i, u64 q) {
  RootSL2 K;
  K.group = *r.K;
  K.central = i;
  K.q = q;
  K.cent2 = r.D;
  return K;
}

}  // namespace

std::string bond_name(Bond b) {
  switch (b) {
    case Bond::Commute: return "commute";
    case Bond::Single: return "single";
    case Bond::Double: return "double";
    case Bond::Circ2: return "SL2oSL2";
    case Bond::Fused: return "fused";
  }
  return "?";
}

std::string kind_name(SystemKind k) {
  switch (k) {
    case SystemKind::CurtisTits: return "CurtisTits";
    case SystemKind::Phan: return "Phan";
    case SystemKind::Mixed: return "mixed";
  }
  return "?";
}

std::map<NodePair, Bond> extended_diagram(Family f, unsigned n, bool fused) {
  std::map<NodePair, Bond> d;
  switch (f) {
    case Family::SL:
    case Family::SU:
      for (unsigned s = 0; s < n; ++s) d[{s, s + 1}] = Bond::Single;
      d[{0, n}] = Bond::Single;
      break;
    case Family::OmegaOdd:
      for (unsigned s = 1; s + 2 <= n; ++s) d[{s, s + 1}] = Bond::Single;
      d[{0, 2}] = Bond::Single;
      d[{0, 1}] = Bond::Circ2;
      d[{n - 1, n}] = Bond::Double;
      break;
    case Family::OmegaPlus:
    case Family::OmegaMinus:
      d[{0, 1}] = Bond::Circ2;
      d[{0, 2}] = Bond::Single;
      if (fused) {
        for (unsigned s = 1; s + 3 <= n; ++s) d[{s, s + 1}] = Bond::Single;
        d[{n - 2, n - 1}] = Bond::Fused;
      } else {
        for (unsigned s = 1; s + 2 <= n; ++s) d[{s, s + 1}] = Bond::Single;
        d[{n - 2, n}] = Bond::Single;
        d[{n - 1, n}] = Bond::Circ2;
      }
      break;
    case Family::Sp:
      if (n == 2) {
        d[{0, 1}] = Bond::Double;
        d[{1, 2}] = Bond::Double;
        d[{0, 2}] = Bond::Circ2;
      } else {
        d[{0, 1}] = Bond::Double;
        d[{n - 1, n}] = Bond::Double;
        for (unsigned s = 1; s + 2 <= n; ++s) d[{s, s + 1}] = Bond::Single;
      }
      break;
  }
  return d;
}

RootSL2 find_component(const Subgroup &D, const std::vector<Subgroup> &known, Shape shape,
                       u64 q, const std::optional<Elem> &central, Rng &rng,
                       const std::function<bool(const Subgroup &)> &extra) {
  const u64 Q = shape == Shape::PSL2q2 ? q * q : q;
  const bool sl = shape == Shape::SL2;
  std::optional<Elem> got;
  ComponentTarget t;
  t.label = shape_name(shape);
  t.accept = [&](const Subgroup &N, Rng &r) {
    Sl2Check c = sl ? sl2_check(N, Q, r) : psl2_check(N, Q, r);
    if (!c.ok) return false;
    if (central && !N.eq(c.central, *central)) return false;
    if (extra && !extra(N)) return false;
    // a component stays itself under conjugation by D
    for (int k = 0; k < 2; ++k) {
      Elem d = D.random(r);
      std::vector<Elem> g2 = N.gens();
      for (const auto &g : N.gens()) g2.push_back(N.conj(g, d));
      Subgroup M = N.sub(g2);
      if (!(sl ? is_sl2q(M, Q, r) : is_psl2q(M, Q, r))) return false;
    }
    if (sl) got = c.central;
    return true;
  };
  auto comps = split_commuting_product(D, known, {t}, rng);
  RootSL2 K;
  K.group = comps[0];
  K.group.label = t.label;
  K.central = got;
  K.q = Q;
  K.shape = t.label;
  K.long_root = sl;
  return K;
}

RootSL2 construct_long_root_sl2(const BlackBoxGroup &G, u64 q, Rng &rng) {
  for (unsigned t = 0; t < 64; ++t) {
    auto i0 = involution_of(G, G.random(rng));
    if (!i0) continue;
    Elem cur = *i0;
    // walk along zeta0 images until the gate accepts
    for (unsigned step = 0; step < 8; ++step) {
      ClassicalResult r = classical_involution(G, cur, q, rng, kOpt);
      if (r.classical) return node_from(r, cur, r.q);
      std::optional<Elem> nxt;
      for (unsigned k = 0; k < 64 && !nxt; ++k) {
        auto j = zeta0(G, cur, G.random(rng));
        if (j && !G.eq(*j, cur)) nxt = j;
      }
      if (!nxt) break;
      cur = *nxt;
    }
  }
  throw MonteCarloExhausted("no classical involution found");
}

CommutingClassical find_commuting_classical(const BlackBoxGroup &G, const RootSL2 &K,
                                            const Subgroup &context, bool orthogonal,
                                            Rng &rng) {
  const Elem &i = *K.central;
  for (unsigned draws = 1; draws <= g_retry_cap; ++draws) {
    auto j = zeta0(G, i, context.random(rng));
    if (!j || K.group.centralizes(*j)) continue;
    // K^j commuting with K means j swaps K with its twin
    if (orthogonal && K.group.commutes_with(conj_sub(K.group, *j))) continue;
    ClassicalResult r = classical_involution(G, *j, K.q, rng, kOpt);
    if (!r.classical) continue;
    return {*j, node_from(r, *j, K.q), draws};
  }
  throw MonteCarloExhausted("no commuting classical involution");
}

namespace {

struct Chain {
  std::map<int, RootSL2> nodes;
  std::vector<Elem> inv;
  std::optional<RootSL2> twin2;  // n = 4: the other component of C(i_2)''
};

Subgroup power_complement(const Subgroup &D, u64 q, const std::vector<Subgroup> &known,
                          Rng &rng) {
  // p(q^2-1)-th powers kill the SL2 components and land in the rest
  const big e = big(D.p()) * (big(q) * q - 1);
  Subgroup P = power_image(D, e, 12, rng);
  for (unsigned t = 0; t < 3 && is_trivial(P); ++t) P = power_image(D, e, 12, rng);
  if (is_trivial(P)) throw RecognitionFailed("no complement beyond the SL2 components");
  Subgroup L = normal_closure(D, P.gens(), 2, rng);
  for (const auto &K : known)
    if (!K.commutes_with(L)) throw RecognitionFailed("complement does not commute");
  return L;
}

// i_s from zeta0^{i_{s-1}} on the Levi factor X, with its SL2 of C_X(i_s)''
std::pair<Elem, RootSL2> next_in_levi(const BlackBoxGroup &G, const Subgroup &X,
                                      const RootSL2 &prev, bool orthogonal, Rng &rng) {
  const Elem &i = *prev.central;
  for (unsigned draws = 0; draws < g_retry_cap; ++draws) {
    auto j = zeta0(G, i, X.random(rng));
    if (!j || prev.group.centralizes(*j)) continue;
    if (orthogonal && prev.group.commutes_with(conj_sub(prev.group, *j))) continue;
    ClassicalResult r = classical_involution(X, *j, prev.q, rng, kOpt);
    if (!r.classical) continue;
    return {*j, node_from(r, *j, prev.q)};
  }
  throw MonteCarloExhausted("Levi step");
}

RootSL2 whole_sl2(const Subgroup &S, u64 q, Rng &rng) {
  Sl2Check c = sl2_check(S, q, rng);
  if (!c.ok) throw RecognitionFailed("terminal factor is not SL2: " + c.why);
  RootSL2 K;
  K.group = S;
  K.central = c.central;
  K.q = q;
  return K;
}

RootSL2 whole_psl2(const Subgroup &S, u64 Q, Rng &rng, bool fused) {
  Sl2Check c = psl2_check(S, Q, rng);
  if (!c.ok) throw RecognitionFailed("terminal factor is not PSL2: " + c.why);
  RootSL2 K;
  K.group = S;
  K.q = Q;
  K.long_root = false;
  K.shape = fused ? "PSL2(q^2)" : "PSL2";
  return K;
}

Chain psl_chain(const BlackBoxGroup &G, const RootSL2 &K1, unsigned n, Rng &rng) {
  if (n < 3) throw std::invalid_argument("linear chain needs n >= 3");
  Chain ch;
  const u64 q = K1.q;
  Subgroup D1 = K1.cent2 ? *K1.cent2 : cderived(G, *K1.central, rng);
  ch.nodes[1] = K1;
  ch.inv.push_back(*K1.central);
  // for n = 4 an involution commuting with i_1 up to the centre can swap its
  // eigenspaces, and then K_1^j is the twin of K_1
  auto c2 = find_commuting_classical(G, K1, G, n == 4, rng);
  ch.nodes[2] = c2.L;
  ch.inv.push_back(c2.j);
  if (n == 3) return ch;
  if (n == 4) {
    // C(i_1)'' and C(i_2)'' are both SL2 x SL2
    RootSL2 L1 = find_component(D1, {K1.group}, Shape::SL2, q, std::nullopt, rng);
    ch.nodes[3] = L1;
    ch.inv.push_back(*L1.central);
    Subgroup D2 = c2.L.cent2 ? *c2.L.cent2 : cderived(G, c2.j, rng);
    ch.twin2 = find_component(D2, {c2.L.group}, Shape::SL2, q, std::nullopt, rng);
    return ch;
  }
  std::map<unsigned, Subgroup> L;
  L[1] = power_complement(D1, q, {K1.group}, rng);
  if (2 <= n - 3) L[2] = cderived(L[1], c2.j, rng);
  for (unsigned s = 3; s <= n - 2; ++s) {
    auto [j, Ks] = next_in_levi(G, L[s - 2], ch.nodes[s - 1], false, rng);
    ch.nodes[s] = Ks;
    ch.inv.push_back(j);
    if (s <= n - 3) L[s] = cderived(L[s - 1], j, rng);
  }
  RootSL2 last = whole_sl2(L[n - 3], q, rng);
  ch.nodes[n - 1] = last;
  ch.inv.push_back(*last.central);
  return ch;
}

CPTSystem orthogonal(const BlackBoxGroup &G, const RootSL2 &K1, unsigned n, int eps,
                     Rng &rng) {
  const bool odd = eps == 0;
  if (n < (odd ? 3u : 4u)) throw std::invalid_argument("orthogonal chain needs larger rank");
  const u64 q = K1.q;
  const Elem i1 = *K1.central;
  CPTSystem sys;
  sys.rank = n;
  sys.nodes[1] = K1;
  sys.chain.push_back(i1);
  Subgroup D1 = K1.cent2 ? *K1.cent2 : cderived(G, i1, rng);

  // the twin of K1: a C(i1)-conjugate commuting with it
  Subgroup C1 = generate_centralizer(G, i1, kOpt.centralizer_gens, rng);
  std::optional<RootSL2> K0;
  for (unsigned t = 0; t < 64 && !K0; ++t) {
    Subgroup Kg = conj_sub(K1.group, C1.random(rng));
    if (!K1.group.commutes_with(Kg)) continue;
    K0 = K1;
    K0->group = Kg;
    K0->cent2.reset();
  }
  if (!K0) K0 = find_component(D1, {K1.group}, Shape::SL2, q, i1, rng);
  sys.nodes[0] = *K0;

  const unsigned last_i = odd ? n - 1 : n - 2, last_L = odd ? n - 2 : n - 3;
  std::map<unsigned, Subgroup> L;
  std::vector<RootSL2> ends;  // terminal nodes when L_1 is already the end
  if (last_L == 1) {
    std::vector<Subgroup> known{K1.group, K0->group};
    if (odd) {
      ends.push_back(find_component(D1, known, Shape::PSL2, q, std::nullopt, rng));
    } else if (eps > 0) {
      RootSL2 a = find_component(D1, known, Shape::SL2, q, std::nullopt, rng);
      known.push_back(a.group);
      RootSL2 b = find_component(D1, known, Shape::SL2, q, std::nullopt, rng);
      ends = {a, b};
    } else {
      ends.push_back(find_component(D1, known, Shape::PSL2q2, q, std::nullopt, rng));
    }
  } else {
    L[1] = power_complement(D1, q, {K1.group, K0->group}, rng);
  }

  // i_2 with <K1, K2> of single bond; the bond type fixes Curtis-Tits or Phan
  std::optional<CommutingClassical> c2;
  bool phan = false;
  for (unsigned t = 0; t < 4 && !c2; ++t) {
    auto c = find_commuting_classical(G, K1, G, true, rng);
    Rank2 b = recognize_rank2(K1.group, c.L.group, q, rng);
    if (b != Rank2::SL3 && b != Rank2::SU3) continue;
    phan = b == Rank2::SU3;
    c2 = c;
  }
  if (!c2) throw RecognitionFailed("no single bond next to K1");
  sys.nodes[2] = c2->L;
  sys.chain.push_back(c2->j);
  if (2 <= last_L) L[2] = cderived(L[1], c2->j, rng);
  for (unsigned s = 3; s <= last_i; ++s) {
    auto [j, Ks] = next_in_levi(G, L[s - 2], sys.nodes[s - 1], true, rng);
    sys.nodes[s] = Ks;
    sys.chain.push_back(j);
    if (s <= last_L) L[s] = cderived(L[s - 1], j, rng);
  }

  // terminal factor L_{last_L}: Omega_3 for B_n, Omega_4^+- for D_n
  int tau = eps;
  if (!odd && phan && n % 2 == 1) tau = -eps;
  if (odd) {
    sys.nodes[n] = ends.empty() ? whole_psl2(L[last_L], q, rng, false) : ends[0];
    sys.nodes[n].long_root = false;
  } else if (tau > 0) {
    if (ends.empty()) {
      RootSL2 a = find_component(L[last_L], {}, Shape::SL2, q, std::nullopt, rng);
      RootSL2 b = find_component(L[last_L], {a.group}, Shape::SL2, q, std::nullopt, rng);
      ends = {a, b};
    }
    sys.nodes[n - 1] = ends[0];
    sys.nodes[n] = ends[1];
  } else {
    sys.nodes[n - 1] = ends.empty() ? whole_psl2(L[last_L], q * q, rng, true) : ends[0];
    sys.nodes[n - 1].long_root = false;
    sys.nodes[n - 1].q = q * q;
    sys.nodes[n - 1].shape = "PSL2(q^2)";
    sys.fused = true;
  }
  return sys;
}

}  // namespace

CPTSystem cpt_psln(const BlackBoxGroup &G, const RootSL2 &K1, unsigned n, Rng &rng) {
  Chain ch = psl_chain(G, K1, n, rng);
  CPTSystem sys;
  sys.rank = n - 1;
  sys.nodes = ch.nodes;
  sys.chain = ch.inv;
  if (n == 4) {
    sys.nodes[0] = *ch.twin2;
  } else {
    Elem i0 = ch.inv[0];
    for (size_t s = 1; s < ch.inv.size(); ++s) {
      if (!G.commute(i0, ch.inv[s])) throw RecognitionFailed("chain involutions do not commute");
      i0 = G.mul(i0, ch.inv[s]);
    }
    if (!is_involution(G, i0)) throw RecognitionFailed("i_0 is not an involution");
    ClassicalResult r = classical_involution(G, i0, K1.q, rng, kOpt);
    if (!r.classical) throw RecognitionFailed("i_0 is not classical");
    sys.nodes[0] = node_from(r, i0, K1.q);
  }
  return sys;
}

CPTSystem cpt_bn(const BlackBoxGroup &G, const RootSL2 &K1, unsigned n, Rng &rng) {
  return orthogonal(G, K1, n, 0, rng);
}

CPTSystem cpt_dn(const BlackBoxGroup &G, const RootSL2 &K1, int epsilon, unsigned n, Rng &rng) {
  return orthogonal(G, K1, n, epsilon >= 0 ? 1 : -1, rng);
}

CPTSystem cpt_c2(const BlackBoxGroup &G, u64 q, Rng &rng) {
  // t of the non-classical class, K1 = C(t)'' = PSL2(q)
  std::optional<Elem> t;
  std::optional<RootSL2> K1;
  for (unsigned n = 0; n < 256 && !K1; ++n) {
    auto x = involution_of(G, G.random(rng));
    if (!x) continue;
    ClassicalResult r = classical_involution(G, *x, q, rng, kOpt);
    if (r.classical) continue;
    Subgroup C = r.D.gens().empty() ? cderived(G, *x, rng) : r.D;
    if (!psl2_check(C, q, rng).ok) continue;
    t = x;
    K1 = whole_psl2(C, q, rng, false);
  }
  if (!K1) throw MonteCarloExhausted("no involution of type t2");
  // classical i = zeta0^t(g) not centralizing K1
  std::optional<ClassicalResult> ri;
  Elem i;
  for (unsigned n = 0; n < g_retry_cap && !ri; ++n) {
    auto j = zeta0(G, *t, G.random(rng));
    if (!j || K1->group.centralizes(*j)) continue;
    ClassicalResult r = classical_involution(G, *j, q, rng, kOpt);
    if (!r.classical) continue;
    ri = r;
    i = *j;
  }
  if (!ri) throw MonteCarloExhausted("no classical involution commuting with t");
  CPTSystem sys;
  sys.rank = 2;
  sys.nodes[0] = node_from(*ri, i, q);
  sys.nodes[1] = *K1;
  sys.nodes[2] = find_component(ri->D, {*ri->K}, Shape::SL2, q, std::nullopt, rng);
  sys.chain = {*t, i};
  return sys;
}

CPTSystem cpt_cn(const BlackBoxGroup &G, u64 q, unsigned n, Rng &rng) {
  if (n < 3) throw std::invalid_argument("cpt_cn needs n >= 3");
  // an involution of type t_n from an element of maximal primitive divisor rank
  const bool minus = ipow(big(q), n) % 4 == 3;
  const unsigned want = minus ? 2 * n : n;
  std::optional<Elem> t;
  for (unsigned k = 0; k < g_retry_cap && !t; ++k) {
    Elem x = G.random(rng);
    if (pdrank(G, x, q, 2 * n).rank != want) continue;
    auto y = involution_of(G, x);
    if (!y) continue;
    if (!minus && n % 2 == 0) {
      // only t_n has products y y^g of rank 2n
      bool seen = false;
      for (unsigned s = 0; s < 20 * n && !seen; ++s)
        seen = pdrank(G, G.mul(*y, G.conj(*y, G.random(rng))), q, 2 * n).rank == 2 * n;
      if (!seen) continue;
    }
    t = y;
  }
  if (!t) throw MonteCarloExhausted("no involution of type t_n");
  Subgroup C = cderived(G, *t, rng);

  // interior nodes from the linear chain inside C
  RootSL2 K1 = construct_long_root_sl2(C, q, rng);
  Chain ch = psl_chain(C, K1, n, rng);
  CPTSystem sys;
  sys.rank = n;
  sys.nodes = ch.nodes;
  for (auto &[k, v] : sys.nodes) v.long_root = false;
  sys.chain = {*t};
  for (const auto &i : ch.inv) sys.chain.push_back(i);

  // end nodes: the component of C_{C(a)''}(b)'' commuting with the rest
  auto end_node = [&](const Elem &a, const Elem &b, const std::vector<Subgroup> &known,
                      const Subgroup &partner) {
    Subgroup D = cderived(G, a, rng);
    Subgroup E = cderived(D, b, rng);
    return find_component(E, known, Shape::SL2, q, std::nullopt, rng,
                          [&](const Subgroup &N) { return !partner.commutes_with(N); });
  };
  std::vector<Subgroup> left, right;
  for (unsigned s = 1; s <= n - 2; ++s) left.push_back(sys.nodes[s].group);
  for (unsigned s = 2; s <= n - 1; ++s) right.push_back(sys.nodes[s].group);
  sys.nodes[n] = end_node(*sys.nodes[n - 1].central, *sys.nodes[n - 2].central, left,
                          sys.nodes[n - 1].group);
  sys.nodes[0] = end_node(*sys.nodes[1].central, *sys.nodes[2].central, right,
                          sys.nodes[1].group);
  return sys;
}

void observe_edges(CPTSystem &sys, u64 q, Rng &rng) {
  auto diag = extended_diagram(sys.family.family, sys.rank, sys.fused);
  sys.edges.clear();
  std::set<Rank2> singles;
  for (auto a = sys.nodes.begin(); a != sys.nodes.end(); ++a)
    for (auto b = std::next(a); b != sys.nodes.end(); ++b) {
      NodePair pr{a->first, b->first};
      Bond exp = diag.count(pr) ? diag[pr] : Bond::Commute;
      const Subgroup &A = a->second.group, &B = b->second.group;
      Rank2 rel;
      if (A.commutes_with(B))
        rel = exp == Bond::Circ2 ? recognize_rank2(A, B, q, rng) : Rank2::Commute;
      else
        rel = recognize_rank2(A, B, q, rng);
      sys.edges[pr] = rel;
      if (exp == Bond::Single) singles.insert(rel);
    }
  if (sys.fused || singles.size() > 1)
    sys.kind = SystemKind::Mixed;
  else if (singles.count(Rank2::SU3))
    sys.kind = SystemKind::Phan;
  else if (singles.empty() || singles.count(Rank2::SL3))
    sys.kind = SystemKind::CurtisTits;
  else
    sys.kind = SystemKind::Mixed;
}

bool VerifyReport::ok() const {
  for (const auto &c : checks)
    if (!c.ok) return false;
  return !checks.empty();
}

VerifyReport verify_cpt(const CPTSystem &sys, Rng &rng) {
  VerifyReport rep;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const u64 q = sys.family.q;
  const unsigned count = sys.rank + 1 - (sys.fused ? 1 : 0);
  bool nodes_ok = sys.nodes.size() == count;
  for (unsigned k = 0; k < count && nodes_ok; ++k) nodes_ok = sys.nodes.count(k);
  add("node set", nodes_ok, std::to_string(sys.nodes.size()) + " nodes, want " + std::to_string(count));
  if (!nodes_ok) return rep;

  for (const auto &[k, K] : sys.nodes) {
    const Subgroup &S = K.group;
    std::string name = "node " + std::to_string(k) + " " + K.shape;
    if (K.shape == "SL2") {
      Sl2Check c = sl2_check(S, K.q, rng);
      bool ok = c.ok && K.central && is_involution(S, *K.central) && S.centralizes(*K.central) &&
                S.eq(c.central, *K.central);
      add(name, ok, c.ok ? "" : c.why);
    } else {
      Sl2Check c = psl2_check(S, K.q, rng);
      add(name, c.ok, c.ok ? "" : c.why);
    }
  }

  bool chain_ok = true;
  for (size_t a = 0; a < sys.chain.size(); ++a) {
    const Subgroup &S = sys.nodes.begin()->second.group;
    if (!is_involution(S, sys.chain[a])) chain_ok = false;
    for (size_t b = a + 1; b < sys.chain.size(); ++b)
      if (!S.commute(sys.chain[a], sys.chain[b])) chain_ok = false;
  }
  add("chain involutions commute", chain_ok);

  CPTSystem again = sys;
  observe_edges(again, q, rng);
  auto diag = extended_diagram(sys.family.family, sys.rank, sys.fused);
  std::optional<Rank2> single;
  for (const auto &[pr, rel] : again.edges) {
    Bond exp = diag.count(pr) ? diag[pr] : Bond::Commute;
    bool ok = false;
    switch (exp) {
      case Bond::Commute: ok = rel == Rank2::Commute || rel == Rank2::SL2xSL2; break;
      case Bond::Circ2: ok = rel == Rank2::SL2xSL2; break;
      case Bond::Double: ok = rel == Rank2::Sp4; break;
      case Bond::Single:
        ok = rel == Rank2::SL3 || rel == Rank2::SU3;
        if (single && rel != *single) ok = false;
        if (!single) single = rel;
        break;
      case Bond::Fused: ok = rel == Rank2::Omega6Minus || rel == Rank2::Omega6Plus; break;
    }
    add("edge " + std::to_string(pr.first) + "-" + std::to_string(pr.second) + " " +
            bond_name(exp),
        ok, rank2_name(rel));
  }
  // the fused end pairs Omega6- with SL3 bonds and Omega6+ with SU3 bonds
  if (sys.fused && single) {
    Rank2 f = again.edges[{static_cast<int>(count) - 2, static_cast<int>(count) - 1}];
    add("fused end matches bonds",
        (*single == Rank2::SL3) == (f == Rank2::Omega6Minus), rank2_name(f));
  }
  add("kind", again.kind == sys.kind, kind_name(again.kind));
  return rep;
}

CPTSystem construct_cpt(const BlackBoxGroup &G0, unsigned dim, u64 seed) {
  // random state must depend on the seed only
  const BlackBoxGroup G = G0.fresh();
  Rng rng(seed);
  RootSL2 K = construct_long_root_sl2(G, 0, rng);
  const u64 q = K.q;
  RecognitionReport rep = identify_type(G, K.group, q, 40, rng);
  CPTSystem sys;
  switch (rep.family) {
    case Family::SL:
    case Family::SU: sys = cpt_psln(G, K, dim, rng); break;
    case Family::OmegaOdd: sys = cpt_bn(G, K, (dim - 1) / 2, rng); break;
    case Family::OmegaPlus: sys = cpt_dn(G, K, 1, dim / 2, rng); break;
    case Family::OmegaMinus: sys = cpt_dn(G, K, -1, dim / 2, rng); break;
    case Family::Sp: sys = dim == 4 ? cpt_c2(G, q, rng) : cpt_cn(G, q, dim / 2, rng); break;
  }
  sys.family = rep;
  sys.seed = seed;
  observe_edges(sys, q, rng);
  sys.mults = G.counters().mul;
  return sys;
}

}  // namespace bbcpt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "bbcpt/cpt.hpp"
#include "bbcpt/whitebox.hpp"
#include "support.hpp"

using namespace bbcpt;
using namespace bbcpt::testing;

TEST_CASE("extended diagrams have rank + 1 nodes") {
  auto nodes = [](const std::map<NodePair, Bond> &d) {
    std::set<int> s;
    for (const auto &[pr, b] : d) s.insert(pr.first), s.insert(pr.second);
    return s.size();
  };
  CHECK(nodes(extended_diagram(Family::SL, 4, false)) == 5);
  CHECK(nodes(extended_diagram(Family::Sp, 2, false)) == 3);
  CHECK(nodes(extended_diagram(Family::Sp, 3, false)) == 4);
  CHECK(nodes(extended_diagram(Family::OmegaOdd, 3, false)) == 4);
  CHECK(nodes(extended_diagram(Family::OmegaPlus, 4, false)) == 5);
  CHECK(nodes(extended_diagram(Family::OmegaMinus, 4, true)) == 4);
  // the affine A_n diagram is a cycle
  auto a = extended_diagram(Family::SL, 3, false);
  CHECK(a.at({0, 3}) == Bond::Single);
  CHECK(a.at({0, 1}) == Bond::Single);
  auto c = extended_diagram(Family::Sp, 3, false);
  CHECK(c.at({0, 1}) == Bond::Double);
  CHECK(c.at({2, 3}) == Bond::Double);
  CHECK(c.at({1, 2}) == Bond::Single);
}

TEST_CASE("long root SL2 has a classical central involution") {
  auto M = group(Family::Sp, 6, 5);
  Rng rng(1);
  RootSL2 K = construct_long_root_sl2(M.group, 5, rng);
  REQUIRE(K.central);
  CHECK(whitebox_involution_type(M, *K.central).classical);
  CHECK(K.group.centralizes(*K.central));
  CHECK(is_sl2q(K.group, 5, rng));
}

TEST_CASE("commuting classical involution next to K") {
  auto M = group(Family::SL, 5, 5);
  const auto &G = M.group;
  Rng rng(2);
  RootSL2 K = construct_long_root_sl2(G, 5, rng);
  auto c = find_commuting_classical(G, K, G, false, rng);
  CHECK(G.commute(c.j, *K.central));
  CHECK(!K.group.centralizes(c.j));
  CHECK(whitebox_involution_type(M, c.j).classical);
  CHECK(recognize_rank2(K.group, c.L.group, 5, rng) == Rank2::SL3);
}

TEST_CASE("construct and verify small systems") {
  struct C {
    Family f;
    unsigned d, p, k;
    size_t nodes;
    std::set<SystemKind> kinds;
  };
  const SystemKind CT = SystemKind::CurtisTits, Ph = SystemKind::Phan;
  // orthogonal groups give either kind, by the bond found next to K1
  for (C c : {C{Family::SL, 3, 5, 1, 3, {CT}}, C{Family::SL, 4, 3, 2, 4, {CT}},
              C{Family::SU, 4, 5, 1, 4, {Ph}}, C{Family::Sp, 4, 5, 1, 3, {CT}},
              C{Family::OmegaOdd, 7, 5, 1, 4, {CT, Ph}}}) {
    auto M = group(c.f, c.d, c.p, c.k);
    CPTSystem sys = construct_cpt(M.group, c.d, 3);
    Rng rng(17);
    VerifyReport rep = verify_cpt(sys, rng);
    std::string bad;
    for (const auto &l : rep.checks)
      if (!l.ok) bad += " [" + l.name + " " + l.detail + "]";
    CHECK_MESSAGE(rep.ok(), family_name(c.f) << c.d << bad);
    CHECK(sys.nodes.size() == c.nodes);
    CHECK_MESSAGE(c.kinds.count(sys.kind), family_name(c.f) << c.d << " " << kind_name(sys.kind));
    CHECK(sys.family.family == c.f);
    CHECK(sys.mults < 10000000);
    for (size_t a = 0; a < sys.chain.size(); ++a)
      for (size_t b = a + 1; b < sys.chain.size(); ++b)
        CHECK(M.group.commute(sys.chain[a], sys.chain[b]));
  }
}

TEST_CASE("Omega8- ends in a fused PSL2(q^2) node") {
  auto M = group(Family::OmegaMinus, 8, 5);
  CPTSystem sys = construct_cpt(M.group, 8, 2);
  Rng rng(3);
  CHECK(verify_cpt(sys, rng).ok());
  CHECK(sys.fused);
  CHECK(sys.nodes.size() == 4);
  CHECK(sys.nodes.at(3).shape == "PSL2(q^2)");
  CHECK(sys.kind == SystemKind::Mixed);
}

TEST_CASE("same seed, same system") {
  auto M = group(Family::SL, 4, 5);
  CPTSystem a = construct_cpt(M.group, 4, 11);
  CPTSystem b = construct_cpt(M.group, 4, 11);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (const auto &[id, K] : a.nodes) CHECK(K.group.gens() == b.nodes.at(id).group.gens());
  CHECK(a.mults == b.mults);
}

TEST_CASE("verify rejects a broken system") {
  auto M = group(Family::SL, 4, 5);
  CPTSystem sys = construct_cpt(M.group, 4, 5);
  Rng rng(1);
  REQUIRE(verify_cpt(sys, rng).ok());

  CPTSystem swapped = sys;
  std::swap(swapped.nodes[1], swapped.nodes[2]);  // 0-2 now bonds, 0-1 does not
  CHECK(!verify_cpt(swapped, rng).ok());

  CPTSystem missing = sys;
  missing.nodes.erase(3);
  CHECK(!verify_cpt(missing, rng).ok());

  CPTSystem wrong_kind = sys;
  wrong_kind.kind = SystemKind::Phan;
  CHECK(!verify_cpt(wrong_kind, rng).ok());
}

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bbcpt/recog.hpp"

namespace bbcpt {

class VerificationFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// One node of the system. PSL2 nodes (short roots in PSp4, the Omega_3 end of
// B_n, the fused PSL2(q^2) end of D_n^-) have no central involution.
struct RootSL2 {
  Subgroup group;
  std::optional<Elem> central;
  bool long_root = true;
  u64 q = 0;  // field of the node; q^2 for a fused node
  std::string shape = "SL2";  // SL2, PSL2 or PSL2(q^2)
  std::optional<Subgroup> cent2;  // C(central)'' when it was built on the way
};

enum class Shape { SL2, PSL2, PSL2q2 };

// A component of the commuting product D of the given shape that commutes with
// every known subgroup. central, when given, must be its involution; extra is
// an additional gate. Throws RecognitionFailed.
RootSL2 find_component(const Subgroup &D, const std::vector<Subgroup> &known, Shape shape,
                       u64 q, const std::optional<Elem> &central, Rng &rng,
                       const std::function<bool(const Subgroup &)> &extra = {});

enum class Bond { Commute, Single, Double, Circ2, Fused };
std::string bond_name(Bond b);

enum class SystemKind { CurtisTits, Phan, Mixed };
std::string kind_name(SystemKind k);

using NodePair = std::pair<int, int>;

struct CPTSystem {
  RecognitionReport family;
  unsigned rank = 0;
  std::map<int, RootSL2> nodes;
  std::map<NodePair, Rank2> edges;  // observed relation for every pair
  SystemKind kind = SystemKind::CurtisTits;
  std::vector<Elem> chain;  // i_1, i_2, ... in construction order
  bool fused = false;  // last node is PSL2(q^2)
  u64 seed = 0;
  u64 mults = 0;  // oracle multiplications spent by construct_cpt
};

// Pairs of the extended Dynkin diagram and their bonds. Pairs not listed commute.
std::map<NodePair, Bond> extended_diagram(Family f, unsigned n, bool fused);

// q = 0 discovers the field from the first classical involution found
RootSL2 construct_long_root_sl2(const BlackBoxGroup &G, u64 q, Rng &rng);

struct CommutingClassical {
  Elem j;
  RootSL2 L;
  unsigned draws = 0;
};

// j = zeta0^i(g) for g drawn from context, classical, not centralizing K.
// orthogonal additionally asks for j in N(K): K^j must not commute with K.
CommutingClassical find_commuting_classical(const BlackBoxGroup &G, const RootSL2 &K,
                                            const Subgroup &context, bool orthogonal,
                                            Rng &rng);

// n is the expected rank (0 when unknown, then it is read off the construction)
CPTSystem cpt_psln(const BlackBoxGroup &G, const RootSL2 &K1, unsigned n, Rng &rng);
CPTSystem cpt_bn(const BlackBoxGroup &G, const RootSL2 &K1, unsigned n, Rng &rng);
CPTSystem cpt_dn(const BlackBoxGroup &G, const RootSL2 &K1, int epsilon, unsigned n, Rng &rng);
CPTSystem cpt_c2(const BlackBoxGroup &G, u64 q, Rng &rng);
CPTSystem cpt_cn(const BlackBoxGroup &G, u64 q, unsigned n, Rng &rng);

struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckLine> checks;
  bool ok() const;
};

// Observed relation of every node pair. Fills sys.edges and sys.kind.
void observe_edges(CPTSystem &sys, u64 q, Rng &rng);

VerifyReport verify_cpt(const CPTSystem &sys, Rng &rng);

// Bootstrap, identify, and dispatch on the family. n = rank from the input spec.
CPTSystem construct_cpt(const BlackBoxGroup &G, unsigned n, u64 seed);

}  // namespace bbcpt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "bbcpt/bbox.hpp"
#include "support.hpp"

using namespace bbcpt;
using bbcpt::testing::group;

namespace {
MatrixGroup sl25() { return group(Family::SL, 2, 5, 1, false); }
}  // namespace

TEST_CASE("group of order two") {
  auto M = sl25();
  Elem t = M.from_rows({{4, 0}, {0, 4}});
  auto H = M.group.sub({t});
  Rng rng(3);
  bool one = false, inv = false;
  for (int i = 0; i < 100; ++i) {
    Elem x = H.random(rng);
    if (H.is_identity(x)) one = true;
    else if (H.eq(x, t)) inv = true;
    else FAIL("element outside <t>");
  }
  CHECK(one);
  CHECK(inv);
}

TEST_CASE("SL(2,5) stream: even orders and near-uniform") {
  auto M = sl25();
  const auto &G = M.group;
  Rng rng(11);
  std::map<Elem, int> hist;
  int even = 0;
  const int N = 10000;
  for (int i = 0; i < N; ++i) {
    Elem x = G.random(rng);
    ++hist[x];
    if (!G.order_divides(x, G.odd_part())) ++even;
  }
  CHECK(hist.size() == 120);
  CHECK(even >= N / 4);
  double tv = 0;
  for (auto &[x, c] : hist) tv += std::abs(double(c) / N - 1.0 / 120);
  tv /= 2;
  MESSAGE("tv distance " << tv);
  CHECK(tv < 0.1);
}

TEST_CASE("power and order_divides") {
  auto M = sl25();
  const auto &G = M.group;
  Rng rng(5);
  Elem x4, x6;
  for (int i = 0; i < 2000 && (x4.empty() || x6.empty()); ++i) {
    Elem x = G.random(rng);
    if (G.has_order(x, 4)) x4 = x;
    if (G.has_order(x, 6)) x6 = x;
  }
  REQUIRE(!x4.empty());
  REQUIRE(!x6.empty());
  CHECK(G.is_identity(G.power(x4, 0)));
  CHECK_FALSE(G.is_identity(G.power(x4, 2)));
  CHECK(G.is_identity(G.power(x4, 4)));
  CHECK_FALSE(G.order_divides(x6, 4));
  CHECK(G.order_divides(x6, 12));
  CHECK(G.order_divides(G.one(), 7));
  for (int i = 0; i < 200; ++i) {
    Elem x = G.random(rng);
    CHECK(G.order_divides(x, G.exponent()));
    CHECK(G.is_identity(G.mul(x, G.inv(x))));
    // windowed and plain paths agree
    big M2 = big(1) << 40;
    M2 += 12345;
    Elem a = G.power(x, M2), b = G.one();
    Elem y = x;
    for (unsigned bit = 0; bit <= 40; ++bit) {
      if (bit_test(M2, bit)) b = G.mul(b, y);
      y = G.mul(y, y);
    }
    CHECK(G.eq(a, b));
  }
}

TEST_CASE("oracle calls are counted and shared with subgroups") {
  auto M = sl25();
  const auto &G = M.group;
  u64 before = G.counters().mul;
  auto H = G.sub({G.gens()[0]});
  H.mul(H.gens()[0], H.gens()[0]);
  CHECK(G.counters().mul == before + 1);
  auto K = G.fresh();
  K.mul(K.gens()[0], K.gens()[0]);
  CHECK(G.counters().mul == before + 1);
  CHECK(K.counters().mul == 1);
}

TEST_CASE("same seed, same stream") {
  auto M = sl25();
  auto A = M.group.fresh(), B = M.group.fresh();
  Rng r1(99), r2(99);
  for (int i = 0; i < 50; ++i) CHECK(A.random(r1) == B.random(r2));
}

TEST_CASE("trivial subgroup yields the identity") {
  auto M = sl25();
  auto H = M.group.sub({});
  Rng rng(1);
  CHECK(H.is_identity(H.random(rng)));
}

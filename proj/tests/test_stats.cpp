#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bbcpt/stats.hpp"
#include "bbcpt/whitebox.hpp"
#include "support.hpp"

using namespace bbcpt;
using namespace bbcpt::testing;

TEST_CASE("wilson slack") {
  auto a = make_stats("x", "g", "1/2", 0.5, 1000, 500);
  CHECK(a.passed);
  CHECK(a.upper > 0.5);
  auto b = make_stats("x", "g", "1/2", 0.5, 1000, 400);
  CHECK(!b.passed);
  // a rate at twice the floor passes
  auto c = make_stats("x", "g", "1/30", 1.0 / 30, 1000, 67);
  CHECK(c.passed);
  auto z = make_stats("x", "g", "1/10", 0.1, 1000, 0);
  CHECK(!z.passed);
  CHECK(z.upper < 0.1);
  CHECK(make_stats("x", "g", "0", 0, 0, 0).passed == false);
}

TEST_CASE("parallel and serial runs count the same") {
  auto M = group(Family::Sp, 4, 5);
  Rng rng(1);
  ProbeSetup s = prepare_probe(M.group, Probe::EvenOrder, 5, rng);
  auto a = measure_rate(M.group, s, 2300, 9);
  auto b = measure_rate_serial(M.group, s, 2300, 9);
  CHECK(a.successes == b.successes);
  CHECK(a.trials == 2300);
  CHECK(a.passed);
  auto c = measure_rate(M.group, s, 2300, 10);
  CHECK(c.successes != a.successes);
}

TEST_CASE("even order proportion in Sp(6,5)") {
  auto M = group(Family::Sp, 6, 5);
  Rng rng(2);
  ProbeSetup s = prepare_probe(M.group, Probe::EvenOrder, 5, rng);
  auto r = measure_rate(M.group, s, 2000, 1);
  MESSAGE(rate_table_row(r));
  CHECK(r.rate() >= 0.25);
}

TEST_CASE("linear probes above their floors") {
  auto M = group(Family::SL, 4, 5);
  Rng rng(3);
  for (Probe p : {Probe::T1EvenProduct, Probe::RootClassical}) {
    ProbeSetup s = prepare_probe(M.group, p, 5, rng);
    auto r = measure_rate(M.group, s, 1000, 2);
    MESSAGE(rate_table_row(r));
    CHECK(r.passed);
    CHECK(r.rate() >= r.floor);
  }
}

TEST_CASE("twin probe in Omega(7,5)") {
  auto M = group(Family::OmegaOdd, 7, 5);
  Rng rng(4);
  ProbeSetup s = prepare_probe(M.group, Probe::Twin, 5, rng);
  auto r = measure_rate(M.group, s, 1000, 3);
  MESSAGE(rate_table_row(r));
  CHECK(r.rate() >= 1.0 / 8);
}

TEST_CASE("black-box t1 test in Omega(7,5) matches eigenspaces") {
  auto M = group(Family::OmegaOdd, 7, 5);
  const auto &G = M.group;
  Rng rng(5);
  int n = 0, t1 = 0;
  while (n < 20) {
    auto i = involution_of(G, G.random(rng));
    if (!i) continue;
    ++n;
    bool wb = whitebox_involution_type(M, *i).label == "t1" ||
              whitebox_involution_type(M, *i).label == "t1'";
    t1 += wb;
    CHECK(omega7_t1(G, *i, 5, rng) == wb);
  }
  MESSAGE(t1 << " of type t1");
}

TEST_CASE("probe ids round trip and floors") {
  for (Probe p : {Probe::RootClassical, Probe::T1EvenProduct, Probe::NormalizingClassical,
                  Probe::Twin, Probe::T1Classical, Probe::Sp4Classical, Probe::EvenOrder})
    CHECK(parse_probe(probe_id(p)) == p);
  CHECK(!parse_probe("nope"));
  CHECK(probe_floor(Probe::RootClassical, 5) == doctest::Approx(0.6 / 750));
  double f = probe_floor(Probe::NormalizingClassical, 5);
  CHECK(f > 0);
  CHECK(f < 1e-5);
}

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bbcpt/cpt.hpp"

namespace bbcpt {

struct ProbeStats {
  std::string bound_id;
  std::string group;
  u64 trials = 0;
  u64 successes = 0;
  std::string floor_text;
  double floor = 0;
  double upper = 0;  // Wilson upper bound at z = 4.75 (one-sided 1e-6)
  bool passed = false;

  double rate() const { return trials ? double(successes) / double(trials) : 0.0; }
};

// passed iff the Wilson upper bound reaches the floor, so a true rate at or
// above the floor fails with probability below 1e-6
ProbeStats make_stats(std::string id, std::string group, std::string floor_text, double floor,
                      u64 trials, u64 successes);

enum class Probe {
  RootClassical,      // zeta0^i(g) classical and outside C(K), i central in a root SL2
  T1EvenProduct,      // i i^g of even order, i of type t1 in a linear group
  NormalizingClassical,  // zeta0^i(g) classical and in N(K), Omega_8^+
  Twin,               // g in C(i): <K, K^g> is SL2 o SL2
  T1Classical,        // zeta0^t(g) classical, t of type t1 in an orthogonal group
  Sp4Classical,       // zeta0^t(g) classical, outside C(K), t of type t2 in PSp4, K = C(t)''
  EvenOrder,          // random g has even order
};

std::string probe_id(Probe p);
std::optional<Probe> parse_probe(const std::string &s);

using InvolutionTest = std::function<bool(const BlackBoxGroup &, const Elem &, Rng &)>;

struct ProbeSetup {
  Probe kind = Probe::EvenOrder;
  std::string group;  // label for the table
  u64 q = 0;
  Elem i;  // the involution the event is built on
  std::optional<Subgroup> K;
  std::optional<Subgroup> C;  // context for Twin
  std::string floor_text;
  double floor = 0;
  InvolutionTest classical;  // defaults to the black-box decision
};

// Floors as functions of q. n is the Lie rank where it matters.
double probe_floor(Probe p, u64 q, std::string *text = nullptr);

// Builds the prerequisite objects with black-box methods. pick, when given,
// replaces the default test for the special involution (t1 or t2).
ProbeSetup prepare_probe(const BlackBoxGroup &G, Probe kind, u64 q, Rng &rng,
                         const std::function<bool(const Elem &)> &pick = {});

// Trials run in blocks of fixed seeds on fresh copies of the groups; blocks
// are spread over OpenMP threads, so the counts do not depend on the thread count.
ProbeStats measure_rate(const BlackBoxGroup &G, const ProbeSetup &setup, u64 trials, u64 seed);
ProbeStats measure_rate_serial(const BlackBoxGroup &G, const ProbeSetup &setup, u64 trials,
                               u64 seed);

constexpr u64 kProbeBlock = 500;

std::string rate_table_header();
std::string rate_table_row(const ProbeStats &s);

// black-box type t1 test for involutions of Omega_7: C(t)'' has primitive
// divisor rank 4 and neither 3 nor 6
bool omega7_t1(const BlackBoxGroup &G, const Elem &t, u64 q, Rng &rng);

}  // namespace bbcpt

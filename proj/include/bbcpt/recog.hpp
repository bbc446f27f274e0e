#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbcpt/invol.hpp"
#include "bbcpt/matgrp.hpp"

namespace bbcpt {

struct PdRankResult {
  unsigned rank = 0;
  std::optional<u64> witness_prime;
};

// Which of `primes` divide o(x). One large power plus one small power per prime.
// Uses G's exponent unless M (a known multiple of o(x)) is given.
std::vector<bool> prime_support(const BlackBoxGroup &G, const Elem &x,
                                const std::vector<u64> &primes, const big *M = nullptr);

PdRankResult pdrank(const BlackBoxGroup &G, const Elem &x, u64 q, unsigned max_a);

struct Sl2Check {
  bool ok = false;
  Elem central;  // the central involution (SL2) or a noncentral one (PSL2)
  unsigned samples = 0;
  std::string why;
};

Sl2Check sl2_check(const Subgroup &S, u64 q, Rng &rng, unsigned max_samples = 120);
bool is_sl2q(const Subgroup &S, u64 q, Rng &rng);
// PSL2(Q) for Q = q or q^2: no central involution
Sl2Check psl2_check(const Subgroup &S, u64 Q, Rng &rng, unsigned max_samples = 120);
bool is_psl2q(const Subgroup &S, u64 Q, Rng &rng);
// smallest q = p^k for which S passes as SL2(q); 0 when none does
u64 sl2_field(const Subgroup &S, Rng &rng, unsigned max_k = 6);

enum class Rank2 { SL3, SU3, Sp4, SL2xSL2, PSL2q2, Omega6Minus, Omega6Plus, Commute, Other };
std::string rank2_name(Rank2 r);

struct Rank2Profile {
  bool f3 = false, f4 = false, f6 = false, mixed = false, q2 = false, exceeds = false;
  unsigned samples = 0;
};

Rank2 recognize_rank2(const Subgroup &A, const Subgroup &B, u64 q, Rng &rng,
                      Rank2Profile *prof = nullptr);

struct ClassicalResult {
  bool classical = false;
  u64 q = 0;
  Subgroup D;  // C(i)''
  std::optional<Subgroup> K;  // SL2 component with central involution i
};

struct ClassicalOptions {
  unsigned centralizer_gens = 24;
  unsigned derived_count = 32;
  unsigned candidates = 45;
  unsigned attempts = 2;
};

// q = 0 asks the test to discover the field size from the component
ClassicalResult classical_involution(const BlackBoxGroup &G, const Elem &i, u64 q, Rng &rng,
                                     const ClassicalOptions &opt = {});
bool is_classical_involution(const BlackBoxGroup &G, const Elem &i, u64 q, Rng &rng);

struct RecognitionReport {
  Family family = Family::SL;
  unsigned confidence = 0;  // samples used
  unsigned pdrank = 0;
  u64 q = 0;
  std::string detail;
};

RecognitionReport identify_type(const BlackBoxGroup &G, const Subgroup &K, u64 q,
                                unsigned samples, Rng &rng);

}  // namespace bbcpt

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bbcpt/bbox.hpp"

namespace bbcpt {

// A subgroup is a black-box group sharing its parent's oracle.
using Subgroup = BlackBoxGroup;

// Last non-identity term of x^m, x^2m, ..., or none for odd order.
std::optional<Elem> involution_of(const BlackBoxGroup &G, const Elem &x);

// i * i^x
Elem inv_product(const BlackBoxGroup &G, const Elem &i, const Elem &x);

std::optional<Elem> zeta1(const BlackBoxGroup &G, const Elem &i, const Elem &x);
std::optional<Elem> zeta0(const BlackBoxGroup &G, const Elem &i, const Elem &x);

Subgroup generate_centralizer(const BlackBoxGroup &G, const Elem &i, unsigned count,
                              Rng &rng);
Subgroup second_derived(const Subgroup &S, unsigned count, Rng &rng, unsigned passes = 2);
Subgroup normal_closure(const Subgroup &S, const std::vector<Elem> &seeds, unsigned count,
                        Rng &rng);
// subgroup generated by count random e-th powers
Subgroup power_image(const Subgroup &S, const big &e, unsigned count, Rng &rng);

struct ComponentTarget {
  std::string label;
  // gate: returns true when the candidate is the wanted component
  std::function<bool(const Subgroup &, Rng &)> accept;
};

struct SplitOptions {
  unsigned candidates = 45;
  unsigned conjugates = 6;
  std::vector<u64> primes;  // primes tried for the mismatch projection; default 2 then odd r | E
};

// Extracts one component per target from a commuting product D. Found
// components commute with every subgroup in `known` and with each other.
std::vector<Subgroup> split_commuting_product(const Subgroup &D,
                                              const std::vector<Subgroup> &known,
                                              const std::vector<ComponentTarget> &targets,
                                              Rng &rng, const SplitOptions &opt = {});

// Candidate elements for the mismatch projection, exposed for reuse.
std::optional<Elem> mismatch_element(const Subgroup &D, const Elem &t, u64 r);

}  // namespace bbcpt

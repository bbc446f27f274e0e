#pragma once

#include "bbcpt/matgrp.hpp"

namespace bbcpt::testing {

inline GroupSpec spec(Family f, unsigned d, unsigned p, unsigned k = 1,
                      bool projective = true) {
  GroupSpec s;
  s.family = f;
  s.dim = d;
  s.field = field_params(p, k);
  s.projective = projective;
  s.fixture = true;
  return s;
}

inline MatrixGroup group(Family f, unsigned d, unsigned p, unsigned k = 1,
                         bool projective = true) {
  return make_matrix_group(spec(f, d, p, k, projective));
}

}  // namespace bbcpt::testing

#include <unordered_set>

namespace bbcpt::testing {

struct ElemHash {
  size_t operator()(const Elem &x) const {
    size_t h = 1469598103934665603ULL;
    for (auto v : x) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

using ElemSet = std::unordered_set<Elem, ElemHash>;

// closure under right multiplication by generators; valid for the matrix
// backend where encodings are canonical
inline ElemSet enumerate(const BlackBoxGroup &G, size_t cap = 5000000) {
  ElemSet seen{G.one()};
  std::vector<Elem> frontier{G.one()};
  const auto &O = *G.oracle();
  while (!frontier.empty() && seen.size() <= cap) {
    std::vector<Elem> next;
    for (const auto &x : frontier)
      for (const auto &g : G.gens()) {
        Elem y = O.mul(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  return seen;
}

}  // namespace bbcpt::testing

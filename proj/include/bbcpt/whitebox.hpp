#pragma once

// Ground truth for tests only. Lives in its own library so the black-box
// modules cannot link against it.

#include <string>

#include "bbcpt/matgrp.hpp"

namespace bbcpt {

struct WhiteboxInvolution {
  bool involution = false;
  std::string label;  // "t<k>", "t<k>'" or "not-involution"
  int minus_dim = -1;  // min dim of the -1 eigenspace over lifts squaring to 1
  bool order4_lift = false;  // no lift in the group squares to 1
  bool classical = false;
};

WhiteboxInvolution whitebox_involution_type(const MatrixGroup &G, const Elem &x);

// lifts of x lying in the linear group (before the quotient by scalars)
std::vector<Elem> whitebox_lifts(const MatrixGroup &G, const Elem &x);

}  // namespace bbcpt

#pragma once

#include <iosfwd>
#include <string>

#include "bbcpt/cpt.hpp"
#include "bbcpt/matgrp.hpp"

namespace bbcpt {

class BadInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// key=value group description; gens=<path> switches to explicit generators,
// which then need p, k and exponent
struct InputSpec {
  GroupSpec spec;
  std::string gens_path;
  big exponent = 0;
};

InputSpec parse_spec_text(const std::string &text);
// the matrix group of the spec, with the explicit generators swapped in when given
MatrixGroup build_group(const InputSpec &in);

std::optional<Rank2> parse_rank2(const std::string &s);
std::optional<SystemKind> parse_kind(const std::string &s);

// Line-oriented text. Nothing in it depends on timing, so one seed gives one file.
void write_cpt(std::ostream &os, const CPTSystem &sys, const MatrixGroup &M,
               const VerifyReport &rep);

struct LoadedCpt {
  InputSpec input;
  MatrixGroup group;
  CPTSystem sys;
};

// throws BadInput on malformed files
LoadedCpt read_cpt(std::istream &is);

}  // namespace bbcpt

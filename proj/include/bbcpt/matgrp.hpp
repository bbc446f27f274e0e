#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbcpt/bbox.hpp"
#include "bbcpt/gf.hpp"

namespace bbcpt {

enum class Family { SL, SU, Sp, OmegaOdd, OmegaPlus, OmegaMinus };

std::string family_name(Family f);
std::optional<Family> parse_family(const std::string &s);

struct GroupSpec {
  Family family = Family::SL;
  unsigned dim = 0;
  FieldParams field;  // GF(q); SU matrices live over GF(q^2)
  bool projective = true;
  bool fixture = false;  // allows the small dimensions used by tests
};

class BadSpec : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

void validate_spec(const GroupSpec &s);

struct ExponentBound {
  big E;
  unsigned a = 0;
  big m;
};

ExponentBound exponent_bound(const GroupSpec &s);
big group_order(const GroupSpec &s);  // order of the linear group before any quotient

// Dense d x d matrices over a table field, row-major.
struct MatOps {
  std::shared_ptr<const Field> F;
  unsigned d = 0;

  Elem identity() const;
  Elem mul(const Elem &a, const Elem &b) const;
  std::optional<Elem> inverse(const Elem &a) const;
  fe det(Elem a) const;
  unsigned rank(Elem a) const;
  std::vector<std::vector<fe>> kernel(Elem a) const;  // basis of {v : a v = 0}
  Elem transpose(const Elem &a) const;
  Elem frob(const Elem &a) const;  // entrywise a -> a^sqrt|F|
  Elem scale(const Elem &a, fe s) const;
  Elem add(const Elem &a, const Elem &b) const;
  Elem normalize(Elem a) const;  // first nonzero entry of row 0 becomes 1
};

class MatOracle : public Oracle {
public:
  MatOracle(MatOps ops, bool projective) : ops_(std::move(ops)), proj_(projective) {}
  Elem mul(const Elem &x, const Elem &y) const override;
  Elem inv(const Elem &x) const override;
  bool is_identity(const Elem &x) const override;
  Elem identity() const override { return ops_.identity(); }

  const MatOps &ops() const { return ops_; }
  bool projective() const { return proj_; }
  Elem canon(const Elem &x) const { return proj_ ? ops_.normalize(x) : x; }

private:
  MatOps ops_;
  bool proj_;
};

struct MatrixGroup {
  GroupSpec spec;
  std::shared_ptr<const Field> F;  // entry field
  std::shared_ptr<const Field> base;  // GF(q)
  std::shared_ptr<const MatOracle> oracle;
  Elem form;  // Gram matrix J of the preserved form; empty for SL
  bool hermitian = false;
  std::vector<Elem> generators;
  BlackBoxGroup group;

  const MatOps &ops() const { return oracle->ops(); }
  bool preserves_form(const Elem &g) const;
  Elem from_rows(const std::vector<std::vector<fe>> &rows) const;
  std::string dump(const Elem &x) const;
  Elem parse(const std::string &line) const;
};

MatrixGroup make_matrix_group(const GroupSpec &s);
BlackBoxGroup make_group(const GroupSpec &s);

}  // namespace bbcpt

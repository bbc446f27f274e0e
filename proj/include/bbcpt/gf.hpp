#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbcpt {

// Field elements are integer codes in [0, q): the base-p digits of the code
// are the coefficients of the polynomial representative, lowest degree first.
using fe = std::uint16_t;

struct FieldParams {
  unsigned p = 0;
  unsigned k = 0;
  unsigned q = 0;
  std::vector<unsigned> modulus;  // monic, coefficient of x^i at index i
};

struct FieldElement {
  std::vector<unsigned> coeffs;
};

class FieldError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

bool is_prime_u64(std::uint64_t n);
bool is_irreducible(unsigned p, const std::vector<unsigned> &poly);

// Fixed table for the small fields, seeded search otherwise.
FieldParams field_params(unsigned p, unsigned k, std::uint64_t seed = 0);

class Field {
public:
  explicit Field(FieldParams params);

  static std::shared_ptr<const Field> get(unsigned p, unsigned k);

  const FieldParams &params() const { return par_; }
  unsigned p() const { return par_.p; }
  unsigned k() const { return par_.k; }
  unsigned q() const { return par_.q; }

  fe zero() const { return 0; }
  fe one() const { return 1; }

  fe add(fe a, fe b) const { return add_[a * par_.q + b]; }
  fe sub(fe a, fe b) const { return add_[a * par_.q + neg_[b]]; }
  fe neg(fe a) const { return neg_[a]; }
  fe mul(fe a, fe b) const { return mul_[a * par_.q + b]; }
  fe inv(fe a) const;
  fe div(fe a, fe b) const { return mul(a, inv(b)); }
  fe pow(fe a, std::uint64_t e) const;

  // a -> a^(p^r)
  fe frob_power(fe a, unsigned r) const;
  // a -> a^sqrt(q); the involutory automorphism of GF(q^2) over GF(q)
  fe frobenius(fe a) const;

  bool is_square(fe a) const;
  fe sqrt(fe a) const;  // throws if a is not a square
  fe from_int(long long v) const;
  fe primitive() const { return prim_; }
  std::uint64_t mult_order(fe a) const;

  std::vector<unsigned> digits(fe a) const;
  fe from_digits(const std::vector<unsigned> &d) const;

  const fe *add_table() const { return add_.data(); }
  const fe *mul_table() const { return mul_.data(); }

private:
  FieldParams par_;
  std::vector<fe> add_, mul_, neg_, inv_;
  fe prim_ = 1;
};

enum class FieldOp { add, sub, mul, div };

FieldElement to_element(const Field &F, fe a);
fe from_element(const Field &F, const FieldElement &x);
FieldElement field_arith(const Field &F, const FieldElement &a,
                         const FieldElement &b, FieldOp op);

}  // namespace bbcpt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bbcpt/gf.hpp"

using namespace bbcpt;

TEST_CASE("prime field products") {
  auto F = Field::get(5, 1);
  FieldElement a{{3}}, b{{4}};
  CHECK(field_arith(*F, a, b, FieldOp::mul).coeffs == std::vector<unsigned>{2});
  for (unsigned x = 1; x < 5; ++x) CHECK(F->mul(fe(x), F->inv(fe(x))) == 1);
}

TEST_CASE("GF(9) uses x^2+1") {
  auto F = Field::get(3, 2);
  CHECK(F->params().modulus == std::vector<unsigned>{1, 0, 1});
  FieldElement x{{0, 1}};
  CHECK(field_arith(*F, x, x, FieldOp::mul).coeffs == std::vector<unsigned>{2, 0});
}

TEST_CASE("division by zero is an error") {
  auto F = Field::get(7, 2);
  FieldElement a{{1, 2}}, z{{0, 0}};
  CHECK_THROWS_AS(field_arith(*F, a, z, FieldOp::div), FieldError);
  CHECK_THROWS_AS(F->inv(0), FieldError);
}

TEST_CASE("table moduli are irreducible") {
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{
           {3, 2}, {5, 2}, {7, 2}, {3, 4}, {11, 2}, {5, 3}, {3, 3}, {3, 5}, {3, 6}}) {
    auto fp = field_params(p, k);
    CHECK(is_irreducible(p, fp.modulus));
    CHECK(fp.q == unsigned(std::pow(p, k)));
  }
  CHECK_FALSE(is_irreducible(5, {4, 0, 1}));  // x^2 - 1
  CHECK_FALSE(is_irreducible(3, {0, 1, 1}));
}

TEST_CASE("seeded search is reproducible") {
  CHECK(field_params(3, 5, 7).modulus == field_params(3, 5, 7).modulus);
}

TEST_CASE("Fermat and field axioms, exhaustive for small q") {
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{
           {5, 1}, {7, 1}, {3, 2}, {5, 2}, {11, 1}, {13, 1}}) {
    auto F = Field::get(p, k);
    unsigned q = F->q();
    for (unsigned a = 1; a < q; ++a) CHECK(F->pow(fe(a), q - 1) == 1);
    CHECK(F->mult_order(F->primitive()) == q - 1);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        CHECK(F->add(fe(a), fe(b)) == F->add(fe(b), fe(a)));
        CHECK(F->mul(fe(a), fe(b)) == F->mul(fe(b), fe(a)));
        CHECK(F->sub(F->add(fe(a), fe(b)), fe(b)) == a);
        for (unsigned c = 0; c < q; c += 3)
          CHECK(F->mul(fe(a), F->add(fe(b), fe(c))) ==
                F->add(F->mul(fe(a), fe(b)), F->mul(fe(a), fe(c))));
      }
  }
}

TEST_CASE("associativity on GF(81) triples") {
  auto F = Field::get(3, 4);
  for (unsigned a = 1; a < 81; a += 7)
    for (unsigned b = 2; b < 81; b += 5)
      for (unsigned c = 0; c < 81; c += 11)
        CHECK(F->mul(F->mul(fe(a), fe(b)), fe(c)) == F->mul(fe(a), F->mul(fe(b), fe(c))));
}

TEST_CASE("frobenius on GF(25)") {
  auto F = Field::get(5, 2);
  bool moved = false;
  for (unsigned a = 0; a < 25; ++a) {
    fe f = F->frobenius(fe(a));
    CHECK(f == F->pow(fe(a), 5));
    CHECK(F->frobenius(f) == a);
    if (a < 5) CHECK(f == a);
    if (f != a) moved = true;
  }
  CHECK(moved);
  CHECK_THROWS_AS(Field::get(5, 1)->frobenius(2), FieldError);
}

TEST_CASE("digit serialization round-trips") {
  auto F = Field::get(5, 3);
  for (unsigned a = 0; a < 125; ++a) {
    auto e = to_element(*F, fe(a));
    CHECK(e.coeffs.size() == 3);
    CHECK(from_element(*F, e) == a);
  }
  CHECK_THROWS_AS(from_element(*F, FieldElement{{7, 0, 0}}), FieldError);
}

TEST_CASE("bad characteristic") {
  CHECK_THROWS_AS(field_params(4, 1), FieldError);
  CHECK_THROWS_AS(field_params(2, 3), FieldError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bbcpt/numth.hpp"

using namespace bbcpt;

TEST_CASE("factoring") {
  auto f = factor(624);
  CHECK(f == std::map<u64, unsigned>{{2, 4}, {3, 1}, {13, 1}});
  CHECK(factor(1000000007ULL).size() == 1);
  u64 n = 4294967291ULL * 4294967279ULL;
  auto g = factor(n);
  CHECK(g.size() == 2);
  CHECK(g.count(4294967291ULL));
  CHECK(is_probable_prime(2305843009213693951ULL));
  CHECK_FALSE(is_probable_prime(3215031751ULL));
}

TEST_CASE("primitive prime divisors for q = 5") {
  CHECK(ppd_primes(5, 1) == std::vector<u64>{2});
  CHECK(ppd_primes(5, 2) == std::vector<u64>{3});
  CHECK(ppd_primes(5, 3) == std::vector<u64>{31});
  CHECK(ppd_primes(5, 4) == std::vector<u64>{13});
  CHECK(ppd_primes(5, 5) == std::vector<u64>{11, 71});
  CHECK(ppd_primes(5, 6) == std::vector<u64>{7});
  CHECK(ppd_primes(5, 8) == std::vector<u64>{313});
}

TEST_CASE("primitive prime divisors for q = 9") {
  CHECK(ppd_primes(9, 2) == std::vector<u64>{5});
  CHECK(ppd_primes(9, 3) == std::vector<u64>{7, 13});
  CHECK(ppd_primes(9, 4) == std::vector<u64>{41});
  CHECK(ppd_primes(9, 6) == std::vector<u64>{73});
  CHECK(ppd_primes(9, 8) == std::vector<u64>{17, 193});
}

TEST_CASE("ppd definition holds up to a = 16") {
  for (u64 q : {5, 7, 9, 11, 25}) {
    for (unsigned a = 1; a <= 16; ++a) {
      for (u64 r : ppd_primes(q, a)) {
        CHECK((ipow(big(q), a) - 1) % r == 0);
        for (unsigned i = 1; i < a; ++i) CHECK((ipow(big(q), i) - 1) % r != 0);
      }
    }
  }
}

TEST_CASE("2-part split") {
  unsigned a;
  big m;
  split2(480, a, m);
  CHECK(a == 5);
  CHECK(m == 15);
  CHECK(valuation(big(1488000), 2) == 7);
  CHECK(lcm(big(4), big(6)) == 12);
}

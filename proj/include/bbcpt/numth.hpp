#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <vector>

namespace bbcpt {

using big = boost::multiprecision::cpp_int;
using u64 = std::uint64_t;

bool is_probable_prime(u64 n);
std::map<u64, unsigned> factor(u64 n);
// throws if a cofactor above 2^64 survives trial division
std::map<u64, unsigned> factor_big(const big &n);

big ipow(const big &b, unsigned e);
big cyclotomic_value(u64 q, unsigned a);  // Phi_a(q)
// primes dividing q^a - 1 but no q^i - 1 with i < a
const std::vector<u64> &ppd_primes(u64 q, unsigned a);
unsigned valuation(big n, u64 r);
big lcm(const big &a, const big &b);
// odd part and 2-adic valuation
void split2(const big &n, unsigned &a, big &m);
std::vector<u64> prime_divisors(const big &n);

}  // namespace bbcpt

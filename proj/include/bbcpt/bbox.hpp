#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbcpt/numth.hpp"

namespace bbcpt {

// Opaque element encoding. Algorithms only pass these back to the oracle.
using Elem = std::vector<std::uint16_t>;

class Oracle {
public:
  virtual ~Oracle() = default;
  virtual Elem mul(const Elem &x, const Elem &y) const = 0;
  virtual Elem inv(const Elem &x) const = 0;
  virtual bool is_identity(const Elem &x) const = 0;
  virtual Elem identity() const = 0;
};

struct OracleCounters {
  std::atomic<u64> mul{0}, inv{0}, ident{0};
  u64 total() const { return mul + inv; }
};

class MonteCarloExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class RecognitionFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Default cap on randomized searches; overridable from the cli.
extern unsigned g_retry_cap;

class Rng {
public:
  explicit Rng(u64 seed) : eng_(seed) {}
  u64 next() { return eng_(); }
  u64 below(u64 n) { return eng_() % n; }
  u64 fork() { return eng_() ^ 0x9e3779b97f4a7c15ULL; }

private:
  std::mt19937_64 eng_;
};

class PRState {
public:
  static constexpr unsigned R = 10;
  static constexpr unsigned burn_in = 50;
  PRState(std::shared_ptr<const Oracle> oracle,
          std::shared_ptr<OracleCounters> cnt, const std::vector<Elem> &gens,
          u64 seed);
  Elem next();

private:
  Elem mul(const Elem &x, const Elem &y);
  std::shared_ptr<const Oracle> oracle_;
  std::shared_ptr<OracleCounters> cnt_;
  std::vector<Elem> slots_;
  Elem acc_;
  Rng rng_;
  bool trivial_ = false;
};

class BlackBoxGroup {
public:
  BlackBoxGroup() = default;
  BlackBoxGroup(std::shared_ptr<const Oracle> oracle, std::vector<Elem> gens,
                big exponent, unsigned p);

  // subgroup sharing the oracle and counters; inherits the exponent unless given
  BlackBoxGroup sub(std::vector<Elem> gens) const;
  BlackBoxGroup sub(std::vector<Elem> gens, const big &exponent) const;
  BlackBoxGroup fresh() const;  // same group, separate counters and PR state

  const std::vector<Elem> &gens() const { return gens_; }
  const big &exponent() const { return E_; }
  unsigned two_power() const { return a_; }
  const big &odd_part() const { return m_; }
  unsigned p() const { return p_; }
  const OracleCounters &counters() const { return *cnt_; }
  std::shared_ptr<OracleCounters> counters_ptr() const { return cnt_; }
  const std::shared_ptr<const Oracle> &oracle() const { return oracle_; }

  std::string label;  // claimed type once a recognizer has accepted it

  Elem one() const { return oracle_->identity(); }
  Elem mul(const Elem &x, const Elem &y) const;
  Elem inv(const Elem &x) const;
  bool is_identity(const Elem &x) const;
  bool eq(const Elem &x, const Elem &y) const;
  Elem conj(const Elem &x, const Elem &g) const;  // g^-1 x g
  Elem comm(const Elem &x, const Elem &y) const;  // x^-1 y^-1 x y
  bool commute(const Elem &x, const Elem &y) const;
  bool centralizes(const Elem &x) const;  // x commutes with every generator
  bool commutes_with(const BlackBoxGroup &H) const;

  Elem power(const Elem &x, const big &M) const;
  bool order_divides(const Elem &x, const big &M) const;
  // x has order exactly N, checked without computing the order
  bool has_order(const Elem &x, const big &N) const;

  Elem random(Rng &rng) const;
  Elem random_word(Rng &rng, unsigned len) const;

private:
  std::shared_ptr<const Oracle> oracle_;
  std::shared_ptr<OracleCounters> cnt_;
  std::vector<Elem> gens_;
  big E_, m_;
  unsigned a_ = 0;
  unsigned p_ = 0;
  mutable std::shared_ptr<PRState> pr_;
};

}  // namespace bbcpt

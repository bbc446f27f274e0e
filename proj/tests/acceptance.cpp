// End-to-end acceptance run. One line per criterion on stdout; details on stderr.
// Usage: acceptance [criterion ...]   (no arguments runs all eight)

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "bbcpt/cptio.hpp"
#include "bbcpt/stats.hpp"
#include "bbcpt/whitebox.hpp"
#include "support.hpp"

using namespace bbcpt;
using namespace bbcpt::testing;

namespace {

struct Target {
  Family f;
  unsigned d, p, k;
  std::string name;
};

const std::vector<Target> kTargets = {
    {Family::SL, 3, 5, 1, "PSL3(5)"},       {Family::SL, 4, 5, 1, "PSL4(5)"},
    {Family::SL, 5, 5, 1, "PSL5(5)"},       {Family::SU, 4, 5, 1, "PSU4(5)"},
    {Family::Sp, 4, 5, 1, "PSp4(5)"},       {Family::Sp, 6, 5, 1, "PSp6(5)"},
    {Family::OmegaOdd, 7, 5, 1, "O7(5)"},   {Family::OmegaPlus, 8, 5, 1, "O8+(5)"},
    {Family::OmegaMinus, 8, 5, 1, "O8-(5)"}, {Family::SL, 4, 3, 2, "PSL4(9)"},
};

using clk = std::chrono::steady_clock;
double since(clk::time_point t) { return std::chrono::duration<double>(clk::now() - t).count(); }

MatrixGroup make(const Target &t) { return group(t.f, t.d, t.p, t.k, true); }
u64 qof(const Target &t) {
  u64 q = 1;
  for (unsigned j = 0; j < t.k; ++j) q *= t.p;
  return q;
}

void line(int n, bool ok, const std::string &what) {
  std::cout << "criterion " << n << " " << (ok ? "PASS" : "FAIL") << " " << what << std::endl;
}

// shared by 1, 7 and 8
struct ConstructRun {
  bool verified = false;
  double secs = 0;
  u64 mults = 0;
  std::string file;
};
std::map<std::pair<size_t, u64>, ConstructRun> g_runs;

ConstructRun construct_once(size_t ti, u64 seed) {
  auto M = make(kTargets[ti]);
  ConstructRun r;
  auto t0 = clk::now();
  try {
    CPTSystem sys = construct_cpt(M.group, kTargets[ti].d, seed);
    Rng rng(seed ^ 0x5eedULL);
    VerifyReport rep = verify_cpt(sys, rng);
    r.verified = rep.ok();
    r.mults = sys.mults;
    std::ostringstream os;
    write_cpt(os, sys, M, rep);
    r.file = os.str();
    for (const auto &l : rep.checks)
      if (!l.ok) std::cerr << "  " << kTargets[ti].name << " seed " << seed << " x " << l.name << " " << l.detail << "\n";
  } catch (const std::exception &e) {
    std::cerr << "  " << kTargets[ti].name << " seed " << seed << " threw " << e.what() << "\n";
  }
  r.secs = since(t0);
  return r;
}

void runs_for(u64 seeds) {
  for (size_t ti = 0; ti < kTargets.size(); ++ti)
    for (u64 s = 1; s <= seeds; ++s)
      if (!g_runs.count({ti, s})) g_runs[{ti, s}] = construct_once(ti, s);
}

bool c1() {
  runs_for(5);
  bool all = true;
  double worst = 0;
  for (size_t ti = 0; ti < kTargets.size(); ++ti) {
    int ok = 0;
    for (u64 s = 1; s <= 5; ++s) {
      const auto &r = g_runs[{ti, s}];
      ok += r.verified && r.secs < 600;
      worst = std::max(worst, r.secs);
    }
    std::cerr << "  " << kTargets[ti].name << " " << ok << "/5\n";
    all = all && ok >= 4;
  }
  line(1, all, "construct+verify >= 4/5 seeds per group, slowest run " + std::to_string(worst) + " s");
  return all;
}

bool c2() {
  bool all = true;
  std::string worst;
  int lo = 101;
  for (const auto &t : kTargets) {
    auto M = make(t);
    int ok = 0;
    std::map<std::string, int> wrong;
    for (u64 s = 1; s <= 100; ++s) {
      const BlackBoxGroup G = M.group.fresh();
      Rng rng(1000 + s);
      try {
        RootSL2 K = construct_long_root_sl2(G, 0, rng);
        auto r = identify_type(G, K.group, K.q, 40, rng);
        if (r.family == t.f && r.q == qof(t)) ++ok;
        else ++wrong[family_name(r.family) + "/" + std::to_string(r.q)];
      } catch (const std::exception &e) {
        ++wrong[std::string("error ") + e.what()];
      }
    }
    std::cerr << "  " << t.name << " " << ok << "/100";
    for (const auto &[w, c] : wrong) std::cerr << " [" << w << " x" << c << "]";
    std::cerr << "\n";
    if (ok < lo) lo = ok, worst = t.name;
    all = all && ok >= 99;
  }
  line(2, all, "identify >= 99/100 per family, lowest " + std::to_string(lo) + " (" + worst + ")");
  return all;
}

bool c3() {
  bool all = true;
  int total = 0;
  for (const auto &t : kTargets) {
    auto M = make(t);
    const auto &G = M.group;
    u64 q = qof(t);
    Rng rng(31);
    RootSL2 K = construct_long_root_sl2(G, q, rng);
    int n = 0, agree = 0, cl = 0;
    // half from random elements, half from zeta0 of a classical involution
    while (n < 60) {
      Elem x = G.random(rng);
      auto i = n % 2 ? zeta0(G, *K.central, x) : involution_of(G, x);
      if (!i) continue;
      ++n;
      bool wb = whitebox_involution_type(M, *i).classical;
      cl += wb;
      agree += is_classical_involution(G, *i, q, rng) == wb;
    }
    std::cerr << "  " << t.name << " " << agree << "/" << n << " (" << cl << " classical)\n";
    all = all && agree == n;
    total += n;
  }
  line(3, all, "classical test agrees with eigenspace labels on " + std::to_string(total) + " involutions");
  return all;
}

bool c4() {
  bool all = true;
  for (const auto &t : kTargets) {
    auto M = make(t);
    const auto &G = M.group;
    Rng rng(41);
    int bad_c0 = 0, bad_c1 = 0, in_iz = 0, got0 = 0;
    std::optional<Elem> i;
    for (int n = 0; n < 10000; ++n) {
      if (n % 1000 == 0) {
        i.reset();
        while (!i) i = involution_of(G, G.random(rng));
      }
      Elem x = G.random(rng);
      if (auto a = zeta0(G, *i, x)) {
        ++got0;
        bad_c0 += !G.commute(*a, *i);
        // projective groups: Z is trivial, so i Z = {i}
        in_iz += G.eq(*a, *i);
      }
      if (auto b = zeta1(G, *i, x)) bad_c1 += !G.commute(*b, *i);
    }
    std::cerr << "  " << t.name << " zeta0 returned " << got0 << ", violations " << bad_c0 << "/"
              << in_iz << "/" << bad_c1 << "\n";
    all = all && !bad_c0 && !bad_c1 && !in_iz && got0 > 0;
  }

  auto S = group(Family::SL, 2, 5, 1, false);
  Elem z = S.from_rows({{4, 0}, {0, 4}});
  Rng rng(9);
  std::map<Elem, int> hist;
  const int N = 10000;
  int none = 0;
  for (int n = 0; n < N; ++n) {
    auto y = zeta1(S.group, z, S.group.random(rng));
    if (y) ++hist[*y];
    else ++none;
  }
  double tv = 0;
  for (const auto &[x, c] : hist) tv += std::abs(double(c) / N - 1.0 / 120);
  tv = (tv + double(120 - hist.size()) / 120 + double(none) / N) / 2;
  std::cerr << "  SL2(5) zeta1 total variation " << tv << "\n";
  all = all && tv < 0.1;
  line(4, all, "zeta contracts over 10^4 calls per family, SL2(5) tv " + std::to_string(tv));
  return all;
}

bool c5() {
  struct P {
    size_t target;
    Probe kind;
    u64 trials;
    bool whitebox;
  };
  std::vector<P> ps = {{1, Probe::RootClassical, 10000, false},
                       {1, Probe::T1EvenProduct, 10000, false},
                       // 10^5 black-box classical tests would take hours; labels come from eigenspaces
                       {7, Probe::NormalizingClassical, 100000, true},
                       {6, Probe::Twin, 10000, false},
                       {6, Probe::T1Classical, 10000, false},
                       {4, Probe::Sp4Classical, 10000, false}};
  for (size_t ti = 0; ti < kTargets.size(); ++ti) ps.push_back({ti, Probe::EvenOrder, 10000, false});
  bool all = true;
  int passed = 0;
  std::cerr << "  " << rate_table_header() << "\n";
  for (const auto &p : ps) {
    const auto &t = kTargets[p.target];
    auto M = make(t);
    Rng rng(7);
    auto t0 = clk::now();
    ProbeSetup s = prepare_probe(M.group, p.kind, qof(t), rng);
    s.group = t.name;
    if (p.whitebox)
      s.classical = [&M](const BlackBoxGroup &, const Elem &j, Rng &) {
        return whitebox_involution_type(M, j).classical;
      };
    ProbeStats r = measure_rate(M.group, s, p.trials, 3);
    // the even-order floor is a plain proportion, not a lower bound to be met up to noise
    bool ok = p.kind == Probe::EvenOrder ? r.rate() >= 0.25 : r.passed;
    std::cerr << "  " << rate_table_row(r) << " " << since(t0) << "s\n";
    all = all && ok;
    passed += ok;
  }
  line(5, all, "probe floors, " + std::to_string(passed) + "/" + std::to_string(ps.size()) + " rows pass");
  return all;
}

unsigned brute_order(const BlackBoxGroup &G, const Elem &x) {
  Elem y = x;
  unsigned n = 1;
  for (; !G.is_identity(y); ++n) y = G.mul(y, x);
  return n;
}

Elem brute_power(const BlackBoxGroup &G, const Elem &x, unsigned e) {
  Elem r = G.one();
  for (unsigned j = 0; j < e; ++j) r = G.mul(r, x);
  return r;
}

unsigned brute_pdrank(u64 q, unsigned o, unsigned max_a) {
  unsigned best = 0;
  for (unsigned a = 1; a <= max_a; ++a)
    for (u64 r : ppd_primes(q, a))
      if (o % r == 0) best = a;
  return best;
}

bool c6() {
  long bad = 0, checked = 0;
  for (unsigned d : {2u, 3u}) {
    auto M = group(Family::SL, d, 5, 1, false);
    const auto &G = M.group;
    auto all = enumerate(G);
    std::cerr << "  SL" << d << "(5): " << all.size() << " elements\n";
    for (const auto &x : all) {
      unsigned o = brute_order(G, x);
      auto i = involution_of(G, x);
      bool ok = o % 2 ? !i : (i && G.eq(*i, brute_power(G, x, o / 2)));
      ok = ok && pdrank(G, x, 5, 2 * d).rank == brute_pdrank(5, o, 2 * d);
      bad += !ok;
      ++checked;
    }
  }

  // is_sl2q on subgroups of SL3(5) against enumeration: order 120 with one involution
  auto M = group(Family::SL, 3, 5, 1, false);
  const auto &G = M.group;
  Rng rng(21);
  Subgroup B = G.sub({M.from_rows({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                      M.from_rows({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}})});
  int yes = 0, sub_bad = 0;
  const int subs = 300;
  for (int n = 0; n < subs; ++n) {
    Elem g = G.random(rng);
    std::vector<Elem> gens;
    switch (n % 4) {
      case 0: gens = {B.random(rng), B.random(rng)}; break;
      case 1: {
        Elem x = B.random(rng);
        gens = {x, G.mul(x, x)};
        break;
      }
      case 2: gens = {B.random(rng), G.random(rng)}; break;
      default: gens = {G.random(rng), G.random(rng)}; break;
    }
    for (auto &x : gens) x = G.conj(x, g);
    Subgroup S = G.sub(gens);
    auto el = enumerate(S, 400000);
    int inv = 0;
    if (el.size() == 120)
      for (const auto &x : el) inv += !S.is_identity(x) && S.is_identity(S.mul(x, x));
    bool truth = el.size() == 120 && inv == 1;
    yes += truth;
    sub_bad += is_sl2q(S, 5, rng) != truth;
  }
  std::cerr << "  " << bad << " element mismatches of " << checked << "; is_sl2q " << sub_bad
            << " mismatches on " << subs << " subgroups (" << yes << " SL2)\n";
  bool ok = !bad && !sub_bad && yes > 0;
  line(6, ok, "brute force in SL2(5) and SL3(5): " + std::to_string(checked) + " elements, " +
                  std::to_string(subs) + " subgroups");
  return ok;
}

bool c7() {
  runs_for(5);
  u64 worst = 0;
  bool all = true;
  for (const auto &[key, r] : g_runs) {
    worst = std::max(worst, r.mults);
    all = all && r.mults > 0 && r.mults < 10000000;
  }
  line(7, all, "multiplications per construct < 10^7, max " + std::to_string(worst));
  return all;
}

bool c8() {
  runs_for(1);
  bool all = true;
  for (size_t ti = 0; ti < kTargets.size(); ++ti) {
    ConstructRun again = construct_once(ti, 1);
    bool same = !again.file.empty() && again.file == g_runs[{ti, 1}].file;
    if (!same) std::cerr << "  " << kTargets[ti].name << " files differ\n";
    all = all && same;
  }
  line(8, all, "byte-identical cpt files for the same seed on all ten groups");
  return all;
}

}  // namespace

int main(int argc, char **argv) {
  std::set<int> pick;
  for (int a = 1; a < argc; ++a) pick.insert(std::atoi(argv[a]));
  bool (*fs[])() = {c1, c2, c3, c4, c5, c6, c7, c8};
  bool all = true;
  for (int n = 1; n <= 8; ++n) {
    if (!pick.empty() && !pick.count(n)) continue;
    auto t0 = clk::now();
    all = fs[n - 1]() && all;
    std::cerr << "  (" << since(t0) << " s)\n";
  }
  return all ? 0 : 1;
}

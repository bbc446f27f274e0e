// bbcpt: construct, identify, probe and verify from the command line
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bbcpt/cptio.hpp"
#include "bbcpt/stats.hpp"

using namespace bbcpt;

namespace {

enum Exit { kOk = 0, kMonteCarlo = 2, kVerify = 3, kBadInput = 4 };

struct Config {
  std::string mode = "construct";
  std::string family, spec_file, in, out = "-", probe;
  unsigned dim = 0, q = 0, p = 0, k = 0;
  u64 seed = 1;
  u64 trials = 10000;
  unsigned retry_cap = 1u << 14;
  bool affine = false;
};

unsigned env_or(const char *name, unsigned v) {
  const char *e = std::getenv(name);
  if (!e || !*e) return v;
  char *end = nullptr;
  unsigned long x = std::strtoul(e, &end, 10);
  if (*end || !x) throw BadInput(std::string("bad ") + name);
  return unsigned(x);
}

InputSpec input_of(const Config &c) {
  if (!c.spec_file.empty()) {
    std::ifstream f(c.spec_file);
    if (!f) throw BadInput("cannot read " + c.spec_file);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_spec_text(ss.str());
  }
  if (c.family.empty() || !c.dim) throw BadInput("--family and --dim are required");
  std::ostringstream s;
  s << "family=" << c.family << "\ndim=" << c.dim << "\n";
  if (c.q) s << "q=" << c.q << "\n";
  if (c.p) s << "p=" << c.p << "\n";
  if (c.k) s << "k=" << c.k << "\n";
  s << "projective=" << (c.affine ? 0 : 1) << "\n";
  return parse_spec_text(s.str());
}

// output goes to --out, or stdout for "-"
template <class F>
void emit(const std::string &path, F &&write) {
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw BadInput("cannot write " + path);
  write(f);
}

std::vector<Probe> default_probes(const GroupSpec &s) {
  std::vector<Probe> v;
  switch (s.family) {
    case Family::SL:
    case Family::SU: v = {Probe::RootClassical, Probe::T1EvenProduct}; break;
    case Family::Sp:
      if (s.dim == 4) v = {Probe::Sp4Classical};
      break;
    case Family::OmegaOdd:
      v = {Probe::Twin};
      if (s.dim == 7) v.push_back(Probe::T1Classical);
      break;
    case Family::OmegaPlus:
      v = {Probe::Twin};
      if (s.dim == 8) v.push_back(Probe::NormalizingClassical);
      break;
    case Family::OmegaMinus: v = {Probe::Twin}; break;
  }
  v.push_back(Probe::EvenOrder);
  return v;
}

int run(const Config &c) {
  g_retry_cap = env_or("BBCPT_RETRY_CAP", c.retry_cap);

  if (c.mode == "verify") {
    std::string path = c.in.empty() ? c.out : c.in;
    if (path.empty() || path == "-") throw BadInput("verify needs --in <cpt file>");
    std::ifstream f(path);
    if (!f) throw BadInput("cannot read " + path);
    LoadedCpt L = read_cpt(f);
    Rng rng(L.sys.seed ^ 0x5eedULL);
    VerifyReport rep = verify_cpt(L.sys, rng);
    for (const auto &l : rep.checks)
      std::cout << "check " << (l.ok ? "ok" : "FAIL") << " " << l.name
                << (l.detail.empty() ? "" : " : " + l.detail) << "\n";
    std::cout << "verify " << (rep.ok() ? "pass" : "fail") << "\n";
    return rep.ok() ? kOk : kVerify;
  }

  InputSpec in = input_of(c);
  MatrixGroup M = build_group(in);
  const BlackBoxGroup &G = M.group;
  const GroupSpec &s = M.spec;

  if (c.mode == "construct") {
    CPTSystem sys = construct_cpt(G, s.dim, c.seed);
    Rng rng(c.seed ^ 0x5eedULL);
    VerifyReport rep = verify_cpt(sys, rng);
    emit(c.out, [&](std::ostream &os) { write_cpt(os, sys, M, rep); });
    return rep.ok() ? kOk : kVerify;
  }
  if (c.mode == "identify") {
    Rng rng(c.seed);
    RootSL2 K = construct_long_root_sl2(G, 0, rng);
    RecognitionReport r = identify_type(G, K.group, K.q, 40, rng);
    emit(c.out, [&](std::ostream &os) {
      os << "family " << family_name(r.family) << "\nq " << r.q << "\npdrank " << r.pdrank
         << "\nsamples " << r.confidence << "\ndetail " << r.detail << "\nseed " << c.seed
         << "\n";
    });
    return kOk;
  }
  if (c.mode == "probe") {
    const u64 trials = env_or("BBCPT_TRIALS", unsigned(c.trials));
    std::vector<Probe> probes;
    if (c.probe.empty()) {
      probes = default_probes(s);
    } else {
      auto pr = parse_probe(c.probe);
      if (!pr) throw BadInput("unknown probe " + c.probe);
      probes = {*pr};
    }
    Rng rng(c.seed);
    RootSL2 K = construct_long_root_sl2(G, 0, rng);
    std::vector<ProbeStats> rows;
    for (Probe pr : probes) {
      ProbeSetup setup = prepare_probe(G, pr, K.q, rng);
      setup.group = family_name(s.family) + std::to_string(s.dim) + "(" + std::to_string(K.q) + ")";
      rows.push_back(measure_rate(G, setup, trials, c.seed));
    }
    bool all = true;
    emit(c.out, [&](std::ostream &os) {
      os << rate_table_header() << "\n";
      for (const auto &r : rows) {
        os << rate_table_row(r) << "\n";
        all = all && r.passed;
      }
    });
    return all ? kOk : kVerify;
  }
  throw BadInput("unknown mode " + c.mode);
}

}  // namespace

int main(int argc, char **argv) {
  Config c;
  CLI::App app{"black-box construction of Curtis-Phan-Tits systems"};
  app.add_option("--mode", c.mode, "construct, identify, probe or verify")
      ->check(CLI::IsMember({"construct", "identify", "probe", "verify"}));
  app.add_option("--family", c.family, "sl, su, sp, omega, omega+, omega-");
  app.add_option("--dim", c.dim, "matrix dimension");
  app.add_option("--q", c.q, "field size");
  app.add_option("--p", c.p, "characteristic");
  app.add_option("--k", c.k, "degree, q = p^k");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--trials", c.trials, "trials per probe");
  app.add_option("--retry-cap", c.retry_cap, "cap on randomized searches");
  app.add_option("--out", c.out, "output file, - for stdout");
  app.add_option("--in", c.in, "cpt file for verify");
  app.add_option("--spec", c.spec_file, "key=value group spec file");
  app.add_option("--probe", c.probe, "run only this probe");
  app.add_flag("--affine", c.affine, "the linear group instead of its projective image");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int r = app.exit(e);
    return r == 0 ? 0 : kBadInput;
  }
  try {
    return run(c);
  } catch (const MonteCarloExhausted &e) {
    std::cerr << "error MonteCarloExhausted: " << e.what() << "\n";
    return kMonteCarlo;
  } catch (const RecognitionFailed &e) {
    std::cerr << "error RecognitionFailed: " << e.what() << "\n";
    return kMonteCarlo;
  } catch (const VerificationFailed &e) {
    std::cerr << "error VerificationFailed: " << e.what() << "\n";
    return kVerify;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error BadInput: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception &e) {
    std::cerr << "error Internal: " << e.what() << "\n";
    return 1;
  }
}

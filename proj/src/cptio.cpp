#include "bbcpt/cptio.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace bbcpt {

namespace {

std::string trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

unsigned to_uint(const std::string &key, const std::string &v) {
  try {
    size_t pos = 0;
    unsigned long x = std::stoul(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return unsigned(x);
  } catch (const std::exception &) {
    throw BadInput("bad value for " + key + ": " + v);
  }
}

big to_big(const std::string &key, const std::string &v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw BadInput("bad value for " + key + ": " + v);
  return big(v);
}

// q = p^k from q alone
std::pair<unsigned, unsigned> split_q(unsigned q) {
  auto f = factor(q);
  if (f.size() != 1) throw BadInput("q is not a prime power: " + std::to_string(q));
  return {unsigned(f.begin()->first), f.begin()->second};
}

}  // namespace

InputSpec parse_spec_text(const std::string &text) {
  InputSpec in;
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw BadInput("expected key=value: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  for (const auto &[k, v] : kv)
    if (k != "family" && k != "dim" && k != "q" && k != "p" && k != "k" && k != "projective" &&
        k != "gens" && k != "exponent")
      throw BadInput("unknown key " + k);
  if (!kv.count("family") || !kv.count("dim")) throw BadInput("family and dim are required");
  auto f = parse_family(kv["family"]);
  if (!f) throw BadInput("unknown family " + kv["family"]);
  in.spec.family = *f;
  in.spec.dim = to_uint("dim", kv["dim"]);
  unsigned p = kv.count("p") ? to_uint("p", kv["p"]) : 0;
  unsigned k = kv.count("k") ? to_uint("k", kv["k"]) : 0;
  if (kv.count("q")) {
    auto [pq, kq] = split_q(to_uint("q", kv["q"]));
    if ((p && p != pq) || (k && k != kq)) throw BadInput("q disagrees with p and k");
    p = pq;
    k = kq;
  }
  if (!p) throw BadInput("one of q or p is required");
  if (!k) k = 1;
  if (p % 2 == 0) throw BadInput("characteristic must be odd");
  in.spec.field = field_params(p, k);
  in.spec.projective = !kv.count("projective") || kv["projective"] != "0";
  if (kv.count("gens")) {
    in.gens_path = kv["gens"];
    if (!kv.count("exponent")) throw BadInput("explicit generators need an exponent");
    in.exponent = to_big("exponent", kv["exponent"]);
  }
  try {
    validate_spec(in.spec);
  } catch (const BadSpec &e) {
    throw BadInput(e.what());
  }
  return in;
}

MatrixGroup build_group(const InputSpec &in) {
  MatrixGroup M;
  try {
    M = make_matrix_group(in.spec);
  } catch (const BadSpec &e) {
    throw BadInput(e.what());
  }
  if (in.gens_path.empty()) return M;
  std::ifstream f(in.gens_path);
  if (!f) throw BadInput("cannot read " + in.gens_path);
  std::vector<Elem> gens;
  std::string line;
  while (std::getline(f, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    try {
      gens.push_back(M.parse(line));
    } catch (const std::invalid_argument &e) {
      throw BadInput(in.gens_path + ": " + e.what());
    }
  }
  if (gens.empty()) throw BadInput("no generators in " + in.gens_path);
  M.generators = gens;
  M.group = BlackBoxGroup(M.oracle, gens, in.exponent, in.spec.field.p);
  return M;
}

std::optional<Rank2> parse_rank2(const std::string &s) {
  for (Rank2 r : {Rank2::SL3, Rank2::SU3, Rank2::Sp4, Rank2::SL2xSL2, Rank2::PSL2q2,
                  Rank2::Omega6Minus, Rank2::Omega6Plus, Rank2::Commute, Rank2::Other})
    if (rank2_name(r) == s) return r;
  return std::nullopt;
}

std::optional<SystemKind> parse_kind(const std::string &s) {
  for (SystemKind k : {SystemKind::CurtisTits, SystemKind::Phan, SystemKind::Mixed})
    if (kind_name(k) == s) return k;
  return std::nullopt;
}

void write_cpt(std::ostream &os, const CPTSystem &sys, const MatrixGroup &M,
               const VerifyReport &rep) {
  const auto &sp = M.spec;
  auto diag = extended_diagram(sys.family.family, sys.rank, sys.fused);
  os << "cpt 1\n";
  os << "family " << family_name(sp.family) << "\n";
  os << "dim " << sp.dim << "\n";
  os << "p " << sp.field.p << "\n";
  os << "k " << sp.field.k << "\n";
  os << "projective " << (sp.projective ? 1 : 0) << "\n";
  os << "exponent " << M.group.exponent() << "\n";
  os << "seed " << sys.seed << "\n";
  os << "identified " << family_name(sys.family.family) << "\n";
  os << "q " << sys.family.q << "\n";
  os << "detail " << sys.family.detail << "\n";
  os << "kind " << kind_name(sys.kind) << "\n";
  os << "rank " << sys.rank << "\n";
  os << "fused " << (sys.fused ? 1 : 0) << "\n";
  os << "mults " << sys.mults << "\n";
  for (const auto &[id, K] : sys.nodes) {
    os << "node " << id << " " << K.shape << " " << (K.long_root ? "long" : "short") << " q "
       << K.q << " gens " << K.group.gens().size() << "\n";
    if (K.central) os << "central " << M.dump(*K.central) << "\n";
    for (const auto &g : K.group.gens()) os << "gen " << M.dump(g) << "\n";
  }
  for (const auto &c : sys.chain) os << "chain " << M.dump(c) << "\n";
  for (const auto &[pr, rel] : sys.edges) {
    Bond b = diag.count(pr) ? diag.at(pr) : Bond::Commute;
    os << "edge " << pr.first << " " << pr.second << " " << bond_name(b) << " "
       << rank2_name(rel) << "\n";
  }
  for (const auto &c : rep.checks)
    os << "check " << (c.ok ? "ok" : "FAIL") << " " << c.name
       << (c.detail.empty() ? "" : " : " + c.detail) << "\n";
  os << "verify " << (rep.ok() ? "pass" : "fail") << "\n";
}

LoadedCpt read_cpt(std::istream &is) {
  std::map<std::string, std::string> head;
  std::vector<std::vector<std::string>> body;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (first && key != "cpt") throw BadInput("not a cpt file");
    first = false;
    if (key == "node" || key == "central" || key == "gen" || key == "chain" || key == "edge") {
      std::vector<std::string> toks{key};
      for (std::string t; ls >> t;) toks.push_back(t);
      body.push_back(toks);
    } else {
      std::string rest;
      std::getline(ls, rest);
      head[key] = trim(rest);
    }
  }
  if (first) throw BadInput("empty cpt file");
  for (const char *k : {"family", "dim", "p", "k", "exponent", "seed", "identified", "q", "kind",
                        "rank", "fused"})
    if (!head.count(k)) throw BadInput(std::string("cpt file lacks ") + k);

  LoadedCpt L;
  auto f = parse_family(head["family"]);
  auto idf = parse_family(head["identified"]);
  if (!f || !idf) throw BadInput("bad family in cpt file");
  L.input.spec.family = *f;
  L.input.spec.dim = to_uint("dim", head["dim"]);
  L.input.spec.field = field_params(to_uint("p", head["p"]), to_uint("k", head["k"]));
  L.input.spec.projective = head["projective"] != "0";
  L.input.exponent = to_big("exponent", head["exponent"]);
  try {
    validate_spec(L.input.spec);
    L.group = make_matrix_group(L.input.spec);
  } catch (const BadSpec &e) {
    throw BadInput(e.what());
  }
  const MatrixGroup &M = L.group;
  // node subgroups need only the oracle and the exponent
  BlackBoxGroup G(M.oracle, {}, L.input.exponent, L.input.spec.field.p);
  CPTSystem &sys = L.sys;
  sys.family.family = *idf;
  sys.family.q = to_uint("q", head["q"]);
  sys.family.detail = head["detail"];
  auto kind = parse_kind(head["kind"]);
  if (!kind) throw BadInput("bad kind " + head["kind"]);
  sys.kind = *kind;
  sys.rank = to_uint("rank", head["rank"]);
  sys.fused = head["fused"] == "1";
  sys.seed = std::stoull(head["seed"]);
  if (head.count("mults")) sys.mults = std::stoull(head["mults"]);

  auto parse = [&](const std::vector<std::string> &t) {
    if (t.size() != 2) throw BadInput("bad " + t[0] + " line");
    try {
      return M.parse(t[1]);
    } catch (const std::invalid_argument &e) {
      throw BadInput(std::string("bad matrix: ") + e.what());
    }
  };
  for (size_t j = 0; j < body.size();) {
    const auto &t = body[j];
    if (t[0] == "node") {
      if (t.size() != 8 || t[4] != "q" || t[6] != "gens") throw BadInput("bad node line");
      int id = int(to_uint("node", t[1]));
      RootSL2 K;
      K.shape = t[2];
      K.long_root = t[3] == "long";
      K.q = to_uint("q", t[5]);
      unsigned n = to_uint("gens", t[7]);
      ++j;
      if (j < body.size() && body[j][0] == "central") K.central = parse(body[j++]);
      std::vector<Elem> gens;
      for (unsigned c = 0; c < n; ++c, ++j) {
        if (j >= body.size() || body[j][0] != "gen") throw BadInput("node has too few gens");
        gens.push_back(parse(body[j]));
      }
      K.group = G.sub(gens);
      K.group.label = K.shape;
      if (sys.nodes.count(id)) throw BadInput("duplicate node " + t[1]);
      sys.nodes[id] = K;
    } else if (t[0] == "chain") {
      sys.chain.push_back(parse(t));
      ++j;
    } else if (t[0] == "edge") {
      if (t.size() != 5) throw BadInput("bad edge line");
      auto r = parse_rank2(t[4]);
      if (!r) throw BadInput("bad relation " + t[4]);
      sys.edges[{int(to_uint("edge", t[1])), int(to_uint("edge", t[2]))}] = *r;
      ++j;
    } else {
      throw BadInput(t[0] + " line outside a node");
    }
  }
  return L;
}

}  // namespace bbcpt

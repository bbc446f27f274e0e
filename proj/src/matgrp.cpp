#include "bbcpt/matgrp.hpp"

#include <sstream>

namespace bbcpt {

std::string family_name(Family f) {
  switch (f) {
    case Family::SL: return "SL";
    case Family::SU: return "SU";
    case Family::Sp: return "Sp";
    case Family::OmegaOdd: return "OmegaOdd";
    case Family::OmegaPlus: return "OmegaPlus";
    case Family::OmegaMinus: return "OmegaMinus";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string &s0) {
  std::string s;
  for (char c : s0) s += char(std::tolower((unsigned char)c));
  if (s == "sl" || s == "psl") return Family::SL;
  if (s == "su" || s == "psu") return Family::SU;
  if (s == "sp" || s == "psp") return Family::Sp;
  if (s == "omegaodd" || s == "omega" || s == "o" || s == "b") return Family::OmegaOdd;
  if (s == "omegaplus" || s == "o+" || s == "omega+" || s == "d") return Family::OmegaPlus;
  if (s == "omegaminus" || s == "o-" || s == "omega-") return Family::OmegaMinus;
  return std::nullopt;
}

void validate_spec(const GroupSpec &s) {
  const auto &f = s.field;
  if (f.p % 2 == 0 || !is_prime_u64(f.p)) throw BadSpec("characteristic must be an odd prime");
  unsigned q = 1;
  for (unsigned i = 0; i < f.k; ++i) q *= f.p;
  if (f.k == 0 || q != f.q) throw BadSpec("q != p^k");
  if (q <= 3) throw BadSpec("field size must exceed 3");
  if (f.modulus.size() != f.k + 1 || !is_irreducible(f.p, f.modulus))
    throw BadSpec("modulus not irreducible");
  unsigned d = s.dim;
  bool ok = false;
  bool fx = s.fixture;
  switch (s.family) {
    case Family::SL: ok = d >= (fx ? 2u : 3u); break;
    case Family::SU: ok = d >= 3; break;
    case Family::Sp: ok = d % 2 == 0 && d >= (fx ? 2u : 4u); break;
    case Family::OmegaOdd: ok = d % 2 == 1 && d >= (fx ? 3u : 7u); break;
    case Family::OmegaPlus:
    case Family::OmegaMinus: ok = d % 2 == 0 && d >= (fx ? 4u : 8u); break;
  }
  if (!ok) throw BadSpec("unsupported dimension for " + family_name(s.family));
  if (d > 12) throw BadSpec("dimension above 12 not supported");
  if (s.family == Family::SU && q * q > 1024) throw BadSpec("field too large for SU");
}

namespace {

big gl_order(const big &Q, unsigned d) {
  big r = 1, qd = ipow(Q, d), qi = 1;
  for (unsigned i = 0; i < d; ++i) {
    r *= qd - qi;
    qi *= Q;
  }
  return r;
}

}  // namespace

ExponentBound exponent_bound(const GroupSpec &s) {
  big Q = s.field.q;
  if (s.family == Family::SU) Q *= s.field.q;
  ExponentBound b;
  b.E = gl_order(Q, s.dim);
  split2(b.E, b.a, b.m);
  return b;
}

big group_order(const GroupSpec &s) {
  big q = s.field.q;
  unsigned d = s.dim, m = d / 2;
  big r = 1;
  switch (s.family) {
    case Family::SL:
      r = ipow(q, d * (d - 1) / 2);
      for (unsigned i = 2; i <= d; ++i) r *= ipow(q, i) - 1;
      break;
    case Family::SU:
      r = ipow(q, d * (d - 1) / 2);
      for (unsigned i = 2; i <= d; ++i) r *= (i % 2) ? ipow(q, i) + 1 : ipow(q, i) - 1;
      break;
    case Family::Sp:
      r = ipow(q, m * m);
      for (unsigned i = 1; i <= m; ++i) r *= ipow(q, 2 * i) - 1;
      break;
    case Family::OmegaOdd:
      r = ipow(q, m * m);
      for (unsigned i = 1; i <= m; ++i) r *= ipow(q, 2 * i) - 1;
      r /= 2;
      break;
    case Family::OmegaPlus:
    case Family::OmegaMinus: {
      r = ipow(q, m * (m - 1));
      for (unsigned i = 1; i < m; ++i) r *= ipow(q, 2 * i) - 1;
      r *= s.family == Family::OmegaPlus ? ipow(q, m) - 1 : ipow(q, m) + 1;
      r /= 2;
      break;
    }
  }
  return r;
}

// ---- dense matrices ----

Elem MatOps::identity() const {
  Elem r(d * d, 0);
  for (unsigned i = 0; i < d; ++i) r[i * d + i] = 1;
  return r;
}

Elem MatOps::mul(const Elem &a, const Elem &b) const {
  Elem c(d * d, 0);
  const unsigned q = F->q();
  if (F->k() == 1) {
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j) {
        std::uint32_t acc = 0;
        for (unsigned l = 0; l < d; ++l) acc += std::uint32_t(a[i * d + l]) * b[l * d + j];
        c[i * d + j] = fe(acc % q);
      }
    return c;
  }
  const fe *M = F->mul_table(), *A = F->add_table();
  for (unsigned i = 0; i < d; ++i)
    for (unsigned l = 0; l < d; ++l) {
      fe x = a[i * d + l];
      if (!x) continue;
      const fe *row = M + x * q;
      fe *ci = &c[i * d];
      const fe *bl = &b[l * d];
      for (unsigned j = 0; j < d; ++j) ci[j] = A[ci[j] * q + row[bl[j]]];
    }
  return c;
}

namespace {

// in-place row reduction of an r x c matrix; returns pivot columns
std::vector<unsigned> rref(const Field &F, Elem &a, unsigned r, unsigned c) {
  std::vector<unsigned> piv;
  unsigned row = 0;
  for (unsigned col = 0; col < c && row < r; ++col) {
    unsigned s = row;
    while (s < r && a[s * c + col] == 0) ++s;
    if (s == r) continue;
    if (s != row)
      for (unsigned j = 0; j < c; ++j) std::swap(a[s * c + j], a[row * c + j]);
    fe iv = F.inv(a[row * c + col]);
    for (unsigned j = 0; j < c; ++j) a[row * c + j] = F.mul(a[row * c + j], iv);
    for (unsigned t = 0; t < r; ++t) {
      if (t == row || a[t * c + col] == 0) continue;
      fe f = a[t * c + col];
      for (unsigned j = 0; j < c; ++j)
        a[t * c + j] = F.sub(a[t * c + j], F.mul(f, a[row * c + j]));
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

}  // namespace

std::optional<Elem> MatOps::inverse(const Elem &a) const {
  unsigned w = 2 * d;
  Elem aug(d * w, 0);
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) aug[i * w + j] = a[i * d + j];
    aug[i * w + d + i] = 1;
  }
  auto piv = rref(*F, aug, d, w);
  if (piv.size() < d || piv[d - 1] != d - 1) return std::nullopt;
  Elem r(d * d);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) r[i * d + j] = aug[i * w + d + j];
  return r;
}

fe MatOps::det(Elem a) const {
  fe r = 1;
  for (unsigned col = 0; col < d; ++col) {
    unsigned s = col;
    while (s < d && a[s * d + col] == 0) ++s;
    if (s == d) return 0;
    if (s != col) {
      for (unsigned j = 0; j < d; ++j) std::swap(a[s * d + j], a[col * d + j]);
      r = F->neg(r);
    }
    fe pv = a[col * d + col];
    r = F->mul(r, pv);
    fe iv = F->inv(pv);
    for (unsigned t = col + 1; t < d; ++t) {
      fe f = F->mul(a[t * d + col], iv);
      if (!f) continue;
      for (unsigned j = col; j < d; ++j)
        a[t * d + j] = F->sub(a[t * d + j], F->mul(f, a[col * d + j]));
    }
  }
  return r;
}

unsigned MatOps::rank(Elem a) const { return rref(*F, a, d, d).size(); }

std::vector<std::vector<fe>> MatOps::kernel(Elem a) const {
  auto piv = rref(*F, a, d, d);
  std::vector<bool> is_piv(d, false);
  for (unsigned c : piv) is_piv[c] = true;
  std::vector<std::vector<fe>> basis;
  for (unsigned f = 0; f < d; ++f) {
    if (is_piv[f]) continue;
    std::vector<fe> v(d, 0);
    v[f] = 1;
    for (unsigned r = 0; r < piv.size(); ++r) v[piv[r]] = F->neg(a[r * d + f]);
    basis.push_back(v);
  }
  return basis;
}

Elem MatOps::transpose(const Elem &a) const {
  Elem r(d * d);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) r[j * d + i] = a[i * d + j];
  return r;
}

Elem MatOps::frob(const Elem &a) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F->frobenius(a[i]);
  return r;
}

Elem MatOps::scale(const Elem &a, fe s) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F->mul(a[i], s);
  return r;
}

Elem MatOps::add(const Elem &a, const Elem &b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F->add(a[i], b[i]);
  return r;
}

Elem MatOps::normalize(Elem a) const {
  unsigned j = 0;
  while (j < d && a[j] == 0) ++j;
  if (j == d || a[j] == 1) return a;
  fe iv = F->inv(a[j]);
  const fe *row = F->mul_table() + iv * F->q();
  for (auto &x : a) x = row[x];
  return a;
}

Elem MatOracle::mul(const Elem &x, const Elem &y) const { return canon(ops_.mul(x, y)); }

Elem MatOracle::inv(const Elem &x) const {
  auto r = ops_.inverse(x);
  if (!r) throw std::runtime_error("singular matrix in oracle");
  return canon(*r);
}

bool MatOracle::is_identity(const Elem &x) const {
  unsigned d = ops_.d;
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j)
      if (x[i * d + j] != (i == j ? 1 : 0)) return false;
  return true;
}

// ---- the groups ----

bool MatrixGroup::preserves_form(const Elem &g) const {
  if (form.empty()) return true;
  const auto &M = ops();
  Elem sg = hermitian ? M.frob(g) : g;
  return M.mul(M.mul(M.transpose(g), form), sg) == form;
}

Elem MatrixGroup::from_rows(const std::vector<std::vector<fe>> &rows) const {
  unsigned d = spec.dim;
  Elem r(d * d);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) r[i * d + j] = rows.at(i).at(j);
  return oracle->canon(r);
}

namespace {
char digit_char(unsigned v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }
unsigned char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  throw std::invalid_argument("bad digit in matrix dump");
}
}  // namespace

std::string MatrixGroup::dump(const Elem &x) const {
  std::string s;
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    for (unsigned c : F->digits(x[i])) s += digit_char(c);
  }
  return s;
}

Elem MatrixGroup::parse(const std::string &line) const {
  Elem r;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.size() != F->k()) throw std::invalid_argument("bad entry width in matrix dump");
    std::vector<unsigned> dg;
    for (char c : tok) {
      unsigned v = char_digit(c);
      if (v >= F->p()) throw std::invalid_argument("digit out of range");
      dg.push_back(v);
    }
    r.push_back(F->from_digits(dg));
  }
  if (r.size() != spec.dim * spec.dim) throw std::invalid_argument("bad matrix size");
  return r;
}

namespace {

// a nonsquare of the base field, as an element of the entry field
fe nonsquare(const Field &F) {
  for (unsigned a = 1; a < F.q(); ++a)
    if (!F.is_square(fe(a))) return fe(a);
  throw std::logic_error("no nonsquare");
}

Elem build_form(const GroupSpec &s, const Field &F) {
  unsigned d = s.dim;
  Elem J(d * d, 0);
  auto at = [&](unsigned i, unsigned j) -> fe & { return J[i * d + j]; };
  switch (s.family) {
    case Family::SL: return {};
    case Family::Sp:
      for (unsigned i = 0; i < d; ++i) at(i, d - 1 - i) = i < d / 2 ? 1 : F.neg(1);
      break;
    case Family::SU:
    case Family::OmegaOdd:
    case Family::OmegaPlus:
      for (unsigned i = 0; i < d; ++i) at(i, d - 1 - i) = 1;
      break;
    case Family::OmegaMinus: {
      for (unsigned i = 0; i < d; ++i) at(i, d - 1 - i) = 1;
      unsigned m = d / 2 - 1;
      at(m, m + 1) = at(m + 1, m) = 0;
      at(m, m) = F.from_int(2);
      at(m + 1, m + 1) = F.neg(F.mul(F.from_int(2), nonsquare(F)));
      break;
    }
  }
  return J;
}

}  // namespace

MatrixGroup make_matrix_group(const GroupSpec &s) {
  validate_spec(s);
  MatrixGroup G;
  G.spec = s;
  unsigned p = s.field.p, k = s.field.k, d = s.dim;
  G.base = Field::get(p, k);
  if (G.base->params().modulus != s.field.modulus)
    G.base = std::make_shared<const Field>(s.field);
  G.hermitian = s.family == Family::SU;
  G.F = G.hermitian ? Field::get(p, 2 * k) : G.base;
  const Field &F = *G.F;
  MatOps ops{G.F, d};
  G.oracle = std::make_shared<MatOracle>(ops, s.projective);
  G.form = build_form(s, F);

  std::vector<fe> basis;  // F_p-basis of the entry field
  for (unsigned i = 0, c = 1; i < F.k(); ++i, c *= p) basis.push_back(fe(c));

  auto outer = [&](const std::vector<fe> &z, const std::vector<fe> &r, fe c) {
    Elem M(d * d, 0);
    for (unsigned a = 0; a < d; ++a)
      for (unsigned b = 0; b < d; ++b) M[a * d + b] = F.mul(c, F.mul(z[a], r[b]));
    return M;
  };
  auto sig = [&](fe a) { return G.hermitian ? F.frobenius(a) : a; };
  // r_v = row vector of x -> h(x, v)
  auto hrow = [&](const std::vector<fe> &v) {
    std::vector<fe> r(d, 0);
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j) r[i] = F.add(r[i], F.mul(G.form[i * d + j], sig(v[j])));
    return r;
  };
  auto hval = [&](const std::vector<fe> &x, const std::vector<fe> &v) {
    auto r = hrow(v);
    fe s = 0;
    for (unsigned i = 0; i < d; ++i) s = F.add(s, F.mul(x[i], r[i]));
    return s;
  };
  auto unit = [&](unsigned i, fe c) {
    std::vector<fe> v(d, 0);
    v[i] = c;
    return v;
  };

  std::vector<Elem> gens;
  Elem I = ops.identity();
  if (s.family == Family::SL) {
    for (unsigned j = 1; j < d; ++j)
      for (fe b : basis) {
        Elem x = I, y = I;
        x[0 * d + j] = b;
        y[j * d + 0] = b;
        gens.push_back(x);
        gens.push_back(y);
      }
  } else {
    fe half = F.inv(F.from_int(2));
    // trace-zero scalars: c0 * GF(q) with frobenius(c0) = -c0
    std::vector<fe> cvals;
    if (s.family == Family::Sp) {
      cvals = basis;
    } else if (G.hermitian) {
      fe c0 = 0;
      for (unsigned a = 1; a < F.q() && !c0; ++a)
        if (F.frobenius(fe(a)) == F.neg(fe(a))) c0 = fe(a);
      fe g = F.pow(F.primitive(), s.field.q + 1), gp = 1;
      for (unsigned i = 0; i < k; ++i, gp = F.mul(gp, g)) cvals.push_back(F.mul(c0, gp));
    }
    for (unsigned ui : {0u, d - 1}) {
      auto u = unit(ui, 1);
      auto ru = hrow(u);
      for (unsigned j = 1; j + 1 < d; ++j)
        for (fe b : basis) {
          auto w = unit(j, b);
          auto rw = hrow(w);
          Elem T;
          if (s.family == Family::Sp) {
            T = ops.add(ops.add(I, outer(w, ru, 1)), outer(u, rw, 1));
          } else {
            fe c = F.neg(F.mul(hval(w, w), half));
            T = ops.add(ops.add(ops.add(I, outer(w, ru, 1)), outer(u, rw, F.neg(1))),
                        outer(u, ru, c));
          }
          gens.push_back(T);
        }
      for (fe c : cvals) gens.push_back(ops.add(I, outer(u, ru, c)));
    }
  }
  for (auto &g : gens) {
    if (!G.preserves_form(g) || ops.det(g) != 1)
      throw std::logic_error("generator fails the form check");
    g = G.oracle->canon(g);
  }
  G.generators = gens;
  auto eb = exponent_bound(s);
  G.group = BlackBoxGroup(G.oracle, gens, eb.E, p);
  return G;
}

BlackBoxGroup make_group(const GroupSpec &s) { return make_matrix_group(s).group; }

}  // namespace bbcpt

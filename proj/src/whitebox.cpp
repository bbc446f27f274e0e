#include "bbcpt/whitebox.hpp"

namespace bbcpt {

namespace {

bool orthogonal(Family f) {
  return f == Family::OmegaOdd || f == Family::OmegaPlus || f == Family::OmegaMinus;
}

fe gram_det(const MatrixGroup &G, const std::vector<std::vector<fe>> &B) {
  const Field &F = *G.F;
  unsigned d = G.spec.dim, r = B.size();
  Elem gm(r * r, 0);
  for (unsigned a = 0; a < r; ++a)
    for (unsigned b = 0; b < r; ++b) {
      fe s = 0;
      for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j)
          s = F.add(s, F.mul(B[a][i], F.mul(G.form[i * d + j], B[b][j])));
      gm[a * r + b] = s;
    }
  MatOps small{G.F, r};
  return small.det(gm);
}

}  // namespace

std::vector<Elem> whitebox_lifts(const MatrixGroup &G, const Elem &x) {
  if (!G.spec.projective) return {x};
  const auto &M = G.ops();
  const Field &F = *G.F;
  std::vector<Elem> out;
  for (unsigned mu = 1; mu < F.q(); ++mu) {
    Elem y = M.scale(x, fe(mu));
    if (M.det(y) == 1 && G.preserves_form(y)) out.push_back(y);
  }
  return out;
}

WhiteboxInvolution whitebox_involution_type(const MatrixGroup &G, const Elem &x0) {
  WhiteboxInvolution r;
  const auto &M = G.ops();
  const Field &F = *G.F;
  unsigned d = G.spec.dim;
  Elem x = G.oracle->canon(x0);
  Elem I = M.identity();
  if (G.oracle->is_identity(x) || !G.oracle->is_identity(G.oracle->canon(M.mul(x, x)))) {
    r.label = "not-involution";
    return r;
  }
  r.involution = true;
  bool orth = orthogonal(G.spec.family);
  bool any_sq1 = false;
  int best = -1;
  bool best_plus = false, classical = false;
  for (const Elem &y : whitebox_lifts(G, x)) {
    if (M.mul(y, y) != I) continue;
    Elem yp = M.add(y, I);
    auto E = M.kernel(yp);
    unsigned k = E.size();
    bool plus = true;
    if (orth) {
      if (k % 2) continue;
      fe dt = gram_det(G, E);
      // y is in Omega iff the -1 space has square discriminant
      if (!F.is_square(dt)) continue;
      fe disc = (k / 2) % 2 ? F.neg(dt) : dt;
      plus = F.is_square(disc);
      if (k == 4 && plus) classical = true;
    } else if (k == 2) {
      classical = true;
    }
    any_sq1 = true;
    if (best < 0 || int(k) < best) {
      best = k;
      best_plus = plus;
    }
  }
  r.classical = classical;
  if (!any_sq1) {
    r.order4_lift = true;
    r.label = "t" + std::to_string(d / 2) + "'";
    return r;
  }
  r.minus_dim = best;
  Family f = G.spec.family;
  if (f == Family::SL || f == Family::SU) {
    r.label = "t" + std::to_string(best);
  } else if (f == Family::Sp) {
    r.label = "t" + std::to_string(best / 2);
  } else {
    r.label = "t" + std::to_string(best / 2) + (best_plus ? "" : "'");
  }
  return r;
}

}  // namespace bbcpt

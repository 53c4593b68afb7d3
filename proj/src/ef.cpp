#include <algorithm>

#include "qha/algebra.hpp"
#include "qha/cartan.hpp"
#include "qha/errors.hpp"

namespace qha {

namespace {

AlgElt eval(const QuasiHopfAlgebra& H, const Poly& p, const std::vector<AlgElt>& subs) {
  AlgElt r;
  for (auto& [w, c] : p) {
    AlgElt t = H.one();
    for (char x : w) t = H.mul(t, subs[static_cast<unsigned char>(x)]);
    r += c * t;
  }
  return r;
}

std::string lead(const QuasiHopfAlgebra& H, const AlgElt& x) {
  if (x.is_zero()) return "";
  AlgElt one;
  one.c.insert(*x.c.begin());
  return "residue " + H.str(one) + (x.c.size() > 1 ? " + ..." : "");
}

std::string lead(const QuasiHopfAlgebra& H, const TensorElt& x) {
  if (x.is_zero()) return "";
  TensorElt one(x.rank);
  one.c.insert(*x.c.begin());
  return "difference " + H.str(one) + (x.c.size() > 1 ? " + ..." : "");
}

}  // namespace

EFPresentation ef_presentation(const QuasiHopfAlgebra& H) {
  const CartanDatum& D = H.datum();
  const AbGroup& G = H.group();
  DoubledGroup DG(G);
  std::size_t th = D.theta();
  if (th % 2) throw NotDoubledDatum("odd number of letters");
  std::size_t n = th / 2;
  long L = D.conductor();
  auto z = [L](long e) { return CycloNumber::root(L, e); };

  for (std::size_t i = 0; i < th; ++i)
    for (std::size_t j = 0; j < th; ++j) {
      bool same = (i < n) == (j < n);
      long want = same ? D.A[i % n][j % n] : 0;
      if (D.A[i][j] != want) throw NotDoubledDatum("Cartan matrix is not block diagonal diag(A, A)");
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (D.h[i] != D.h[i + n]) throw NotDoubledDatum("h_i != h_{i+n} at i = " + std::to_string(i));
    if (!D.in_G(D.h[i])) throw NotDoubledDatum("h_i outside G at i = " + std::to_string(i));
    for (std::size_t k = 0; k < D.big.rank(); ++k)
      if (mod_l(D.chi_exp(i, D.big.generator(k)) + D.chi_exp(i + n, D.big.generator(k)), L))
        throw NotDoubledDatum("chi_i != chi_{i+n}^-1 at i = " + std::to_string(i));
  }

  EFPresentation P;
  P.n = n;
  std::vector<Elt> hg;
  for (std::size_t i = 0; i < n; ++i) {
    hg.push_back(DG.iota_inv(D.h[i]));
    P.E.push_back(H.gen(static_cast<int>(i)));
    P.F.push_back(H.mul(H.gen(static_cast<int>(i + n)), H.group_elt(G.neg(hg[i]))));
  }
  IntMatrix A0(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A0[i][j] = D.A[i][j];

  // E braids by q_ij = chi_j(h_i), F by q'_ij = q_ji^{-1}
  auto braid_e = [&](const Root& a, const Root& b) {
    long e = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e += a[i] * b[j] * D.q_exp(i, j);
    return mod_l(e, L);
  };
  auto braid_f = [&](const Root& a, const Root& b) {
    long e = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e -= a[i] * b[j] * D.q_exp(j, i);
    return mod_l(e, L);
  };
  auto unit = [n](std::size_t i) {
    Root r(n, 0);
    r[i] = 1;
    return r;
  };
  auto ad_power = [&](const std::vector<AlgElt>& x, const BraidFn& br, std::size_t i, std::size_t j, long k) {
    AlgElt y = x[j];
    Root deg = unit(j);
    for (long t = 0; t < k; ++t) {
      y = H.mul(x[i], y) - z(br(unit(i), deg)) * H.mul(y, x[i]);
      deg[i] += 1;
    }
    return y;
  };

  Report& R = P.relations;
  for (std::size_t k = 0; k < G.rank(); ++k) {
    AlgElt g = H.group_elt(G.generator(k)), gi = H.group_elt(G.neg(G.generator(k)));
    for (std::size_t j = 0; j < n; ++j) {
      long e = D.chi_exp(j, DG.iota(G.generator(k)));
      AlgElt re = H.mul(H.mul(g, P.E[j]), gi) - z(e) * P.E[j];
      AlgElt rf = H.mul(H.mul(g, P.F[j]), gi) - z(-e) * P.F[j];
      R.add("g" + std::to_string(k) + " E" + std::to_string(j) + " g^-1 = chi(g) E", re.is_zero(), lead(H, re));
      R.add("g" + std::to_string(k) + " F" + std::to_string(j) + " g^-1 = chi(g)^-1 F", rf.is_zero(), lead(H, rf));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      AlgElt r = H.mul(P.E[i], P.F[j]) - H.mul(P.F[j], P.E[i]);
      if (i == j) {
        auto it = H.lambda().find({static_cast<int>(i), static_cast<int>(i + n)});
        CycloNumber lam = it == H.lambda().end() ? CycloNumber(0) : it->second;
        r -= lam * (H.group_elt(G.neg(hg[i])) - H.group_elt(hg[i]));
      }
      R.add("E" + std::to_string(i) + " F" + std::to_string(j) + " - F E = delta lambda (h^-1 - h)", r.is_zero(),
            lead(H, r));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      AlgElt re = ad_power(P.E, braid_e, i, j, 1 - A0[i][j]);
      AlgElt rf = ad_power(P.F, braid_f, i, j, 1 - A0[i][j]);
      R.add("ad(E" + std::to_string(i) + ")^" + std::to_string(1 - A0[i][j]) + "(E" + std::to_string(j) + ") = 0",
            re.is_zero(), lead(H, re));
      R.add("ad(F" + std::to_string(i) + ")^" + std::to_string(1 - A0[i][j]) + "(F" + std::to_string(j) + ") = 0",
            rf.is_zero(), lead(H, rf));
    }
  RootSystem RS = root_system(A0);
  for (std::size_t p = 0; p < RS.positive.size(); ++p) {
    const Root& a = RS.positive[p];
    std::size_t v = std::find_if(a.begin(), a.end(), [](long x) { return x != 0; }) - a.begin();
    long N = component_order(D, v);
    P.u_plus *= N;
    P.u_minus *= N;
    std::string rs;
    for (long x : a) rs += std::to_string(x);
    try {
      AlgElt ea = H.pow(eval(H, root_vector(A0, L, braid_e, a), P.E), N);
      AlgElt fa = H.pow(eval(H, root_vector(A0, L, braid_f, a), P.F), N);
      R.add("E_" + rs + "^" + std::to_string(N) + " = 0", ea.is_zero(), lead(H, ea));
      R.add("F_" + rs + "^" + std::to_string(N) + " = 0", fa.is_zero(), lead(H, fa));
    } catch (const UnsupportedType& e) {
      R.notes.push_back("root vector " + rs + " not built: " + e.what());
    }
  }

  // closed forms
  Report& C = P.closed_forms;
  long gn = G.order();
  for (std::size_t i = 0; i < n; ++i) {
    std::string si = std::to_string(i);
    long N = component_order(D, i);
    AlgElt h = H.group_elt(hg[i]), hinv = H.group_elt(G.neg(hg[i]));
    if (N % 2) {
      CycloNumber q = z(D.q_exp(i, i) * ((N + 1) / 2));
      AlgElt r = H.mul(P.E[i], P.F[i]) - H.mul(P.F[i], P.E[i]) - (q - q.inv()).inv() * (h - hinv);
      C.add("E" + si + " F" + si + " - F E = (h - h^-1)/(q - q^-1)", r.is_zero(), lead(H, r));
    }

    TensorElt dE = H.coproduct(P.E[i]), dF = H.coproduct(P.F[i]);
    TensorElt pe = H.tensor({h, P.E[i]});
    TensorElt pf = H.tensor({H.one(), P.F[i]}), pf2 = pf;
    for (long f = 0; f < gn; ++f) {
      AlgElt ef = H.mul(P.E[i], H.idem(f)), ff = H.mul(P.F[i], H.idem(f));
      for (long g = 0; g < gn; ++g) {
        AlgElt ig = H.idem(g);
        CycloNumber chi = H.root(H.char_exp(g, hg[i]));
        pe += H.psi(static_cast<int>(i), f, g) * H.tensor({ef, ig});
        TensorElt t = H.psi(static_cast<int>(i + n), f, g) * H.tensor({ff, ig});
        pf += chi.inv() * t;
        pf2 += chi * t;
      }
    }
    C.add("D(E" + si + ") = sum Psi_i(f,g) E 1_f (x) 1_g + h (x) E", dE == pe, lead(H, dE - pe));
    C.add("D(F" + si + ") = sum Psi_{i+n}(f,g) chi_g(h^-1) F 1_f (x) 1_g + 1 (x) F", dF == pf, lead(H, dF - pf));
    C.add("D(F" + si + ") = sum Psi_{i+n}(f,g) chi_g(h) F 1_f (x) 1_g + 1 (x) F", dF == pf2, lead(H, dF - pf2));
    P.dE.push_back(dE);
    P.dF.push_back(dF);

    AlgElt sE = H.antipode(P.E[i]), sF = H.antipode(P.F[i]);
    AlgElt pse, psf1, psf2, psf3;
    CycloNumber pre = z(-D.q_exp(i, i));
    for (long g = 0; g < gn; ++g) {
      AlgElt fg = H.mul(P.F[i], H.idem(g));
      CycloNumber chi = H.root(H.char_exp(g, hg[i]));
      pse += H.effe(static_cast<int>(i), g) * H.mul(P.E[i], H.idem(g));
      CycloNumber fe = H.effe(static_cast<int>(i + n), g);
      psf1 += pre * chi * fe * fg;
      psf2 += pre * chi * chi * fe * fg;
      psf3 += pre * (chi * chi).inv() * fe * fg;
    }
    C.add("S(E" + si + ") = sum F_i(g) E 1_g", sE == pse, lead(H, sE - pse));
    C.add("S(F" + si + ") = chi_i(h)^-1 sum chi_g(h) F_{i+n}(g) F 1_g", sF == psf1, lead(H, sF - psf1));
    C.add("S(F" + si + ") = chi_{i+n}(h) sum chi_g(h^2) F_{i+n}(g) F 1_g", sF == psf2, lead(H, sF - psf2));
    C.add("S(F" + si + ") = chi_{i+n}(h) sum chi_g(h^-2) F_{i+n}(g) F 1_g", sF == psf3, lead(H, sF - psf3));
    P.SE.push_back(sE);
    P.SF.push_back(sF);
  }

  long e0 = G.index(G.identity()), up = 0, um = 0;
  for (long b = 0; b < static_cast<long>(H.dim()); ++b) {
    if (H.rid(b) != e0) continue;
    const Word& w = H.word(b);
    up += std::all_of(w.begin(), w.end(), [n](char x) { return static_cast<std::size_t>(x) < n; });
    um += std::all_of(w.begin(), w.end(), [n](char x) { return static_cast<std::size_t>(x) >= n; });
  }
  C.add("dim u+ = " + std::to_string(P.u_plus) + " normal E-words", up == P.u_plus, "counted " + std::to_string(up));
  C.add("dim u- = " + std::to_string(P.u_minus) + " normal F-words", um == P.u_minus, "counted " + std::to_string(um));
  long tri = P.u_plus * gn * P.u_minus;
  C.add("dim u+ |G| dim u- = dim H", tri == static_cast<long>(H.dim()),
        std::to_string(tri) + " vs " + std::to_string(H.dim()));
  return P;
}

}  // namespace qha

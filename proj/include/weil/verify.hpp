#pragma once

// Verification suites: exact checks of the representation-theoretic
// identities, exhaustive at small scale and seeded samples beyond.

#include "weil/io.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weil::verify {

using io::json;

struct SuiteConfig
{
  int p = 3;
  int n = 1;
  std::uint64_t seed = 0;
  int samples = 0; // 0: suite default
};

struct SuiteResult
{
  static constexpr std::size_t max_witnesses = 5;

  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  json witnesses = json::array();
  json details = json::object();

  bool passed() const { return failures == 0 && checks > 0; }

  void check(bool ok, const std::function<json()>& witness)
  {
    ++checks;
    if (ok)
      return;
    ++failures;
    if (witnesses.size() < max_witnesses)
      witnesses.push_back(witness());
  }

  json to_json() const
  {
    return json{{"name", name},     {"passed", passed()},     {"checks", checks},
                {"failures", failures}, {"details", details}, {"witnesses", witnesses}};
  }
};

inline int samples_or(const SuiteConfig& c, int fallback) { return c.samples > 0 ? c.samples : fallback; }

inline std::uint64_t suite_seed(const SuiteConfig& c, std::uint64_t salt) { return c.seed * 1000003ULL + salt; }

/// Index tuples: all of them if there are at most `limit`, otherwise
/// `count` seeded draws.
template <std::size_t K>
std::vector<std::array<std::size_t, K>> index_tuples(std::size_t n, std::size_t limit, int count, Rng& rng,
                                                     bool* exhaustive = nullptr)
{
  std::vector<std::array<std::size_t, K>> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < K; ++k)
    total *= n;
  const bool all = total <= limit;
  if (exhaustive)
    *exhaustive = all;
  if (all) {
    for (std::size_t t = 0; t < total; ++t) {
      std::array<std::size_t, K> a{};
      std::size_t x = t;
      for (std::size_t k = K; k-- > 0;) {
        a[k] = x % n;
        x /= n;
      }
      out.push_back(a);
    }
    return out;
  }
  for (int t = 0; t < count; ++t) {
    std::array<std::size_t, K> a{};
    for (auto& x : a)
      x = static_cast<std::size_t>(rng.below(static_cast<int>(n)));
    out.push_back(a);
  }
  return out;
}

inline json labels_json(std::initializer_list<const OrientedSubspace*> ls)
{
  json a = json::array();
  for (const auto* l : ls)
    a.push_back(l->to_string());
  return a;
}

// ---------------------------------------------------------------------------

/// Irreducibility (commutant of dimension 1), central character and the
/// representation property of every model.
inline SuiteResult suite_svn(const SuiteConfig& cfg)
{
  SuiteResult r{"svn"};
  const auto V = SymplecticSpace::standard(cfg.p, cfg.n);
  auto labels = enumerate_oriented_lagrangians(V);
  Rng rng(suite_seed(cfg, 1));
  bool exhaustive = false;
  auto picks = index_tuples<1>(labels.size(), 100, samples_or(cfg, 20), rng, &exhaustive);
  const auto H = enumerate_heis(V);
  for (const auto& [i] : picks) {
    const ModelSpace m(V, labels[i]);
    r.check(m.size() == static_cast<std::size_t>(ipow(cfg.p, cfg.n)),
            [&] { return json{{"check", "model_dimension"}, {"label", labels[i].to_string()}}; });
    const std::size_t cd = commutant_dimension(m);
    r.check(cd == 1, [&] {
      return json{{"check", "commutant_dimension"}, {"label", labels[i].to_string()}, {"dimension", cd}};
    });
    r.check(central_character_holds(m),
            [&] { return json{{"check", "central_character"}, {"label", labels[i].to_string()}}; });
    auto pairs = index_tuples<2>(H.size(), 1000, 50, rng);
    for (const auto& [a, b] : pairs) {
      const bool ok = pi_matrix(m, H[a]) * pi_matrix(m, H[b]) == pi_matrix(m, heis_mul(V, H[a], H[b]));
      r.check(ok, [&] {
        return json{{"check", "representation"},
                    {"label", labels[i].to_string()},
                    {"h1", H[a].to_string()},
                    {"h2", H[b].to_string()}};
      });
    }
  }
  r.details = json{{"models", picks.size()}, {"exhaustive", exhaustive}, {"group_order", H.size()}};
  return r;
}

/// T_{N,M} T_{M,L} = T_{N,L}.
inline SuiteResult suite_multiplicativity(const SuiteConfig& cfg)
{
  SuiteResult r{"multiplicativity"};
  const auto V = SymplecticSpace::standard(cfg.p, cfg.n);
  const CanonicalSpace C(V);
  auto labels = enumerate_oriented_lagrangians(V);
  Rng rng(suite_seed(cfg, 2));
  bool exhaustive = false;
  auto triples = index_tuples<3>(labels.size(), 1000, samples_or(cfg, cfg.n == 1 ? 500 : 200), rng, &exhaustive);
  std::size_t transverse = 0;
  for (const auto& [a, b, c] : triples) {
    const auto &N = labels[a], &M = labels[b], &L = labels[c];
    if (in_general_position(N, M) && in_general_position(M, L) && in_general_position(N, L))
      ++transverse;
    const CycMatrix lhs = C.transport(N, M) * C.transport(M, L);
    r.check(lhs == C.transport(N, L), [&] {
      return json{{"check", "multiplicativity"},
                  {"triple", labels_json({&N, &M, &L})},
                  {"composed", io::to_json(lhs)},
                  {"direct", io::to_json(C.transport(N, L))}};
    });
  }
  r.details = json{{"oriented_lagrangians", labels.size()},
                   {"triples", triples.size()},
                   {"pairwise_transverse", transverse},
                   {"exhaustive", exhaustive}};
  return r;
}

/// Closed form against composition through transverse middles.
inline SuiteResult suite_chained(const SuiteConfig& cfg)
{
  SuiteResult r{"chained"};
  const auto V = SymplecticSpace::standard(cfg.p, cfg.n);
  const CanonicalSpace C(V);
  auto labels = enumerate_oriented_lagrangians(V);
  auto lags = enumerate_lagrangians(V);
  Rng rng(suite_seed(cfg, 3));
  bool exhaustive = false;
  auto pairs = index_tuples<2>(labels.size(), 1000, samples_or(cfg, 100), rng, &exhaustive);
  const bool all_middles = labels.size() * labels.size() <= 100;
  std::size_t middles = 0;
  for (const auto& [a, b] : pairs) {
    const auto &M = labels[a], &L = labels[b];
    const CycMatrix& closed = C.transport(M, L);
    const CycMatrix chained = canonical_T(V, M, L, Method::chained).mat;
    r.check(chained == closed, [&] {
      return json{{"check", "closed_vs_chained"},
                  {"pair", labels_json({&M, &L})},
                  {"closed", io::to_json(closed)},
                  {"chained", io::to_json(chained)}};
    });
    std::vector<OrientedSubspace> cands;
    for (const auto& S : lags)
      if (in_general_position(S, M.sub) && in_general_position(S, L.sub))
        for (int o = 1; o < cfg.p; ++o)
          cands.emplace_back(S, o);
    if (!all_middles && cands.size() > 3) {
      std::vector<OrientedSubspace> pick;
      for (int k = 0; k < 3; ++k)
        pick.push_back(cands[static_cast<std::size_t>(rng.below(static_cast<int>(cands.size())))]);
      cands = std::move(pick);
    }
    for (const auto& S : cands) {
      ++middles;
      const CycMatrix via = chained_T(V, M, L, S).mat;
      r.check(via == closed, [&] {
        return json{{"check", "middle_independence"},
                    {"pair", labels_json({&M, &L})},
                    {"middle", S.to_string()},
                    {"closed", io::to_json(closed)},
                    {"chained", io::to_json(via)}};
      });
    }
  }
  r.details = json{{"pairs", pairs.size()}, {"exhaustive", exhaustive}, {"middles", middles}, {"all_middles", all_middles}};
  return r;
}

/// Intertwining property and the kernel calculus.
inline SuiteResult suite_kernels(const SuiteConfig& cfg)
{
  SuiteResult r{"kernels"};
  const auto V = SymplecticSpace::standard(cfg.p, cfg.n);
  const CanonicalSpace C(V);
  auto labels = enumerate_oriented_lagrangians(V);
  const auto H = enumerate_heis(V);
  Rng rng(suite_seed(cfg, 4));
  bool pairs_exhaustive = false, triples_exhaustive = false;
  auto pairs = index_tuples<2>(labels.size(), 1000, samples_or(cfg, 50), rng, &pairs_exhaustive);
  std::size_t transverse = 0;
  for (const auto& [a, b] : pairs) {
    const auto &M = labels[a], &L = labels[b];
    const ModelSpace mm(V, M), ml(V, L);
    const CycMatrix& T = C.transport(M, L);
    std::vector<HeisElement> hs;
    if (H.size() <= 125) {
      hs = H;
    } else {
      hs = heis_generators(V);
      for (int k = 0; k < 5; ++k)
        hs.push_back(H[static_cast<std::size_t>(rng.below(static_cast<int>(H.size())))]);
    }
    for (const auto& h : hs)
      r.check(T * pi_matrix(ml, h) == pi_matrix(mm, h) * T, [&] {
        return json{{"check", "intertwining"}, {"pair", labels_json({&M, &L})}, {"h", h.to_string()}};
      });
    if (in_general_position(M, L)) {
      ++transverse;
      const CycMatrix K = transform_matrix(ansatz_kernel(V, M, L));
      const CycMatrix A = ansatz_T(V, M, L).mat;
      r.check(K == A && A == T, [&] {
        return json{{"check", "ansatz_kernel"},
                    {"pair", labels_json({&M, &L})},
                    {"transform", io::to_json(K)},
                    {"ansatz", io::to_json(A)}};
      });
    }
    if (M == L) {
      // T_{L,L} = Id; its kernel is psi on Z x L and zero elsewhere.
      const Kernel K = kernel_of(Intertwiner(ml, mm, T));
      r.check(K == basis_kernel(V, L, L), [&] { return json{{"check", "identity_kernel"}, {"label", L.to_string()}}; });
    }
  }
  auto triples = index_tuples<3>(labels.size(), 1000, samples_or(cfg, 50), rng, &triples_exhaustive);
  for (const auto& [a, b, c] : triples) {
    const auto &N = labels[a], &M = labels[b], &L = labels[c];
    const ModelSpace mn(V, N), mm(V, M), ml(V, L);
    const Kernel K1 = kernel_of(Intertwiner(mm, mn, C.transport(N, M)));
    const Kernel K2 = kernel_of(Intertwiner(ml, mm, C.transport(M, L)));
    const Kernel K12 = convolve(K1, K2);
    const CycMatrix lhs = transform_matrix(K12);
    const CycMatrix rhs = transform_matrix(K1) * transform_matrix(K2);
    r.check(lhs == rhs, [&] {
      return json{{"check", "convolution"},
                  {"triple", labels_json({&N, &M, &L})},
                  {"convolved", io::to_json(lhs)},
                  {"composed", io::to_json(rhs)}};
    });
    const Kernel K13 = kernel_of(Intertwiner(ml, mn, C.transport(N, L)));
    r.check(K12 == K13, [&] {
      return json{{"check", "kernel_multiplicativity"}, {"triple", labels_json({&N, &M, &L})}};
    });
  }
  r.details = json{{"pairs", pairs.size()},
                   {"pairs_exhaustive", pairs_exhaustive},
                   {"transverse_pairs", transverse},
                   {"triples", triples.size()},
                   {"triples_exhaustive", triples_exhaustive}};
  return r;
}

/// Group elements: the whole group when small and of dimension 2,
/// otherwise seeded transvection words.
inline std::vector<SpElement> group_sample(const SymplecticSpace& V, std::size_t limit, int count, std::uint64_t seed,
                                           bool* exhaustive)
{
  if (V.dim() == 2 && static_cast<std::size_t>(ipow(V.p(), 3) - V.p()) <= limit) {
    *exhaustive = true;
    return enumerate_sp(V);
  }
  *exhaustive = false;
  return sample_sp(V, count, seed);
}

/// rho(g) pi(h) = pi(g h) rho(g).
inline SuiteResult suite_egorov(const SuiteConfig& cfg)
{
  SuiteResult r{"egorov"};
  const auto V = SymplecticSpace::standard(cfg.p, cfg.n);
  const CanonicalSpace C(V);
  const ModelSpace m = C.base_model();
  const auto H = enumerate_heis(V);
  bool g_exhaustive = false;
  auto gs = group_sample(V, 30, samples_or(cfg, 20), suite_seed(cfg, 5), &g_exhaustive);
  Rng rng(suite_seed(cfg, 6));
  const bool h_exhaustive = gs.size() * H.size() <= 1000;
  std::size_t pairs = 0;
  for (const auto& g : gs) {
    const CycMatrix rho = weil_rep(C, g).mat;
    std::vector<HeisElement> hs;
    if (h_exhaustive) {
      hs = H;
    } else {
      hs = heis_generators(V);
      for (int k = 0; k < 5; ++k)
        hs.push_back(H[static_cast<std::size_t>(rng.below(static_cast<int>(H.size())))]);
    }
    for (const auto& h : hs) {
      ++pairs;
      const HeisElement gh = sp_act_heis(g, h);
      r.check(rho * pi_matrix(m, h) == pi_matrix(m, gh) * rho, [&] {
        return json{{"check", "egorov"}, {"g", g.to_string()}, {"h", h.to_string()}, {"rho", io::to_json(rho)}};
      });
    }
  }
  r.details = json{{"group_elements", gs.size()},
                   {"group_exhaustive", g_exhaustive},
                   {"heisenberg_exhaustive", h_exhaustive},
                   {"pairs", pairs}};
  return r;
}

/// rho(g1 g2) = rho(g1) rho(g2).
inline SuiteResult suite_homomorphism(const SuiteConfig& cfg)
{
  SuiteResult r{"homomorphism"};
  const auto V = SymplecticSpace::standard(cfg.p, cfg.n);
  const CanonicalSpace C(V);
  std::vector<std::pair<SpElement, SpElement>> pairs;
  bool exhaustive = false;
  if (V.dim() == 2 && ipow(ipow(cfg.p, 3) - cfg.p, 2) <= 1000) {
    exhaustive = true;
    const auto G = enumerate_sp(V);
    for (const auto& a : G)
      for (const auto& b : G)
        pairs.emplace_back(a, b);
  } else {
    const int count = samples_or(cfg, cfg.n == 1 ? 200 : 100);
    const auto A = sample_sp(V, count, suite_seed(cfg, 7));
    const auto B = sample_sp(V, count, suite_seed(cfg, 8));
    for (int i = 0; i < count; ++i)
      pairs.emplace_back(A[static_cast<std::size_t>(i)], B[static_cast<std::size_t>(i)]);
  }
  std::map<FpMat, CycMatrix> cache;
  auto rho = [&](const SpElement& g) -> const CycMatrix& {
    auto it = cache.find(g.mat());
    if (it == cache.end())
      it = cache.emplace(g.mat(), weil_rep(C, g).mat).first;
    return it->second;
  };
  r.check(rho(SpElement::identity(V)) == CycMatrix::identity(cfg.p, C.dim()),
          [&] { return json{{"check", "identity"}}; });
  for (const auto& [a, b] : pairs) {
    const CycMatrix lhs = rho(a * b);
    const CycMatrix rhs = rho(a) * rho(b);
    r.check(lhs == rhs, [&] {
      return json{{"check", "homomorphism"},
                  {"g1", a.to_string()},
                  {"g2", b.to_string()},
                  {"rho_product", io::to_json(lhs)},
                  {"product_of_rho", io::to_json(rhs)}};
    });
  }
  r.details = json{{"pairs", pairs.size()}, {"exhaustive", exhaustive}};
  return r;
}

/// The total operator on the sum of all models is an Sp-invariant idempotent
/// of rank p^n.
inline SuiteResult suite_idempotent(const SuiteConfig& cfg)
{
  SuiteResult r{"idempotent"};
  const auto V = SymplecticSpace::standard(cfg.p, cfg.n);
  const CanonicalSpace C(V);
  const GammaSpace G = gamma_space(C);
  bool g_exhaustive = false;
  auto gs = group_sample(V, 30, samples_or(cfg, 10), suite_seed(cfg, 9), &g_exhaustive);
  const bool full = G.dim() <= 100;
  if (full) {
    const CycMatrix T = total_idempotent(C, G);
    r.check(T * T == T, [&] { return json{{"check", "idempotent"}}; });
    const std::size_t rk = T.rank();
    r.check(rk == C.dim(), [&] { return json{{"check", "rank"}, {"rank", rk}}; });
    const CycMatrix Tc = CycMatrix::identity(cfg.p, G.dim()) - T;
    r.check(Tc * Tc == Tc, [&] { return json{{"check", "complement_idempotent"}}; });
    const std::size_t rkc = Tc.rank();
    r.check(rkc == G.dim() - C.dim(), [&] { return json{{"check", "complement_rank"}, {"rank", rkc}}; });
    for (const auto& g : gs) {
      const CycMatrix P = gamma_action(C, G, g);
      r.check(P * T == T * P, [&] { return json{{"check", "invariance"}, {"g", g.to_string()}}; });
    }
    r.details = json{{"mode", "full"}, {"dimension", G.dim()}, {"rank", rk}, {"complement_rank", rkc}};
  } else {
    // Blockwise: (T^2)_{N,L} = T_{N,L} and Phi(g) T Phi(g)^{-1} = T on sampled blocks.
    Rng rng(suite_seed(cfg, 10));
    const CycNum w = CycNum::from_rational(cfg.p, Rational(1, static_cast<unsigned long>(G.labels.size())));
    auto blocks = index_tuples<2>(G.labels.size(), 0, samples_or(cfg, 10), rng);
    for (const auto& [a, b] : blocks) {
      const auto &N = G.labels[a], &L = G.labels[b];
      CycMatrix acc(cfg.p, C.dim(), C.dim());
      for (const auto& M : G.labels)
        acc = acc + C.transport(N, M) * C.transport(M, L);
      r.check(w * acc == C.transport(N, L),
              [&] { return json{{"check", "idempotent_block"}, {"block", labels_json({&N, &L})}}; });
      for (const auto& g : gs) {
        const SymplecticIso ginv = g.inverse().iso();
        const auto gN = act_on_lagrangian(g, N), gL = act_on_lagrangian(g, L);
        const CycMatrix lhs = C.transport(gN, gL) * pullback_matrix(ginv, gL);
        const CycMatrix rhs = pullback_matrix(ginv, gN) * C.transport(N, L);
        r.check(lhs == rhs, [&] {
          return json{{"check", "invariance_block"}, {"block", labels_json({&N, &L})}, {"g", g.to_string()}};
        });
      }
    }
    r.details = json{{"mode", "blockwise"}, {"dimension", G.dim()}, {"blocks", blocks.size()}};
  }
  r.details["group_elements"] = gs.size();
  r.details["group_exhaustive"] = g_exhaustive;
  return r;
}

/// Product compatibility for V1 x V2 with dim V1 = 2, dim V2 = 2n.
inline SuiteResult suite_tensor(const SuiteConfig& cfg)
{
  SuiteResult r{"tensor"};
  const CanonicalSpace C1(SymplecticSpace::standard(cfg.p, 1));
  const CanonicalSpace C2(SymplecticSpace::standard(cfg.p, cfg.n));
  const CanonicalSpace C12 = product_canonical(C1, C2);
  const CycMatrix alpha = tensor_alpha(C12, C1, C2);
  r.check(C12.dim() == C1.dim() * C2.dim(), [&] { return json{{"check", "dimension"}}; });
  r.check(alpha.rank() == C12.dim(), [&] { return json{{"check", "alpha_invertible"}}; });
  const auto d12 = delta(C12.base_model()).values;
  std::vector<CycNum> dd(C12.dim(), CycNum::zero(cfg.p));
  dd[0] = CycNum::one(cfg.p);
  r.check(alpha.apply(d12) == dd, [&] { return json{{"check", "delta_to_delta_tensor_delta"}}; });
  const int count = samples_or(cfg, 50);
  const auto A = sample_sp(C1.space(), count, suite_seed(cfg, 11));
  const auto B = sample_sp(C2.space(), count, suite_seed(cfg, 12));
  for (int i = 0; i < count; ++i) {
    const auto& g1 = A[static_cast<std::size_t>(i)];
    const auto& g2 = B[static_cast<std::size_t>(i)];
    const SpElement g = product_element(C12.space(), g1, g2);
    const CycMatrix lhs = alpha * weil_rep(C12, g).mat;
    const CycMatrix rhs = kron(weil_rep(C1, g1).mat, weil_rep(C2, g2).mat) * alpha;
    r.check(lhs == rhs, [&] {
      return json{{"check", "product_compatibility"}, {"g1", g1.to_string()}, {"g2", g2.to_string()}};
    });
  }
  r.details = json{{"n1", 1}, {"n2", cfg.n}, {"pairs", count}};
  return r;
}

/// Pairing between H(V-bar) and H(V).
inline SuiteResult suite_duality(const SuiteConfig& cfg)
{
  SuiteResult r{"duality"};
  const auto V = SymplecticSpace::standard(cfg.p, cfg.n);
  const CanonicalSpace C(V);
  const CanonicalSpace bar = dual_canonical(C);
  const CanonicalSpace conj = conjugate_canonical(C);
  auto labels = enumerate_oriented_lagrangians(V);
  const CycMatrix G0 = duality_gram(bar, C, C.base());
  const std::size_t rk = G0.rank();
  r.check(rk == C.dim(), [&] { return json{{"check", "nondegenerate"}, {"rank", rk}}; });
  const auto d = delta(C.base_model()).values;
  const CycNum dd = duality_pairing(bar, C, d, d, C.base());
  r.check(dd == CycNum::one(cfg.p), [&] { return json{{"check", "delta_pairing"}, {"value", io::to_json(dd)}}; });
  Rng rng(suite_seed(cfg, 13));
  bool base_exhaustive = false, pairs_exhaustive = false;
  auto bases = index_tuples<1>(labels.size(), 100, samples_or(cfg, 20), rng, &base_exhaustive);
  for (const auto& [i] : bases) {
    const CycMatrix Gi = duality_gram(bar, C, labels[i]);
    r.check(Gi == G0, [&] {
      return json{{"check", "base_independence"}, {"label", labels[i].to_string()}, {"gram", io::to_json(Gi)}};
    });
  }
  auto pairs = index_tuples<2>(labels.size(), 1000, samples_or(cfg, 100), rng, &pairs_exhaustive);
  for (const auto& [a, b] : pairs) {
    const auto &M = labels[a], &L = labels[b];
    const CycMatrix lhs = flip_matrix(bar, conj, M) * bar.transport(M, L);
    const CycMatrix rhs = conj.transport(M, L) * flip_matrix(bar, conj, L);
    r.check(lhs == rhs, [&] { return json{{"check", "flip_intertwines"}, {"pair", labels_json({&M, &L})}}; });
  }
  r.details = json{{"rank", rk},
                   {"bases", bases.size()},
                   {"bases_exhaustive", base_exhaustive},
                   {"pairs", pairs.size()},
                   {"pairs_exhaustive", pairs_exhaustive}};
  return r;
}

/// Random element fixing I pointwise: a word in transvections along I^perp.
inline SpElement random_parabolic(const SymplecticReduction& red, Rng& rng, int word_length = 20)
{
  const SymplecticSpace& V = red.ambient();
  SpElement g = SpElement::identity(V);
  if (red.perp_space().dim() == 0)
    return g;
  for (int k = 0; k < word_length; ++k) {
    FpVec c(static_cast<std::size_t>(red.perp_space().dim()));
    do {
      for (int& x : c)
        x = rng.below(V.p());
    } while (fp::is_zero(c));
    FpVec u = fp::combine(c, red.perp_space().rows(), static_cast<std::size_t>(V.dim()), V.p());
    g = transvection(V, u, 1 + rng.below(V.p() - 1)) * g;
  }
  return g;
}

/// H(V)^I is identified with H(I^perp/I), equivariantly and naturally.
inline SuiteResult suite_reduction(const SuiteConfig& cfg)
{
  SuiteResult r{"reduction"};
  const auto V = SymplecticSpace::standard(cfg.p, cfg.n);
  const CanonicalSpace C(V);
  const auto e1 = fp::unit(static_cast<std::size_t>(V.dim()), 0);
  const OrientedSubspace I(Subspace(cfg.p, V.dim(), {e1}), 1);
  const SymplecticReduction red(V, I);
  const CanonicalSpace CR(red.reduced());
  const std::size_t expect = static_cast<std::size_t>(ipow(cfg.p, cfg.n - 1));

  const CycMatrix inv = invariant_subspace(C, I.sub);
  r.check(inv.cols() == expect, [&] { return json{{"check", "invariant_dimension"}, {"dimension", inv.cols()}}; });
  const CycMatrix alpha = reduction_alpha(C, red, CR);
  const std::size_t rk = (alpha * inv).rank();
  r.check(rk == expect && CR.dim() == expect, [&] { return json{{"check", "alpha_isomorphism"}, {"rank", rk}}; });

  Rng rng(suite_seed(cfg, 14));
  const int count = samples_or(cfg, 10);
  for (int k = 0; k < count; ++k) {
    const SpElement g = random_parabolic(red, rng);
    const SymplecticIso gI = red.induced(g.iso(), red);
    const CycMatrix lhs = alpha * weil_rep(C, g).mat * inv;
    const CycMatrix rhs = weil_rep(CR, SpElement(red.reduced(), gI.mat)).mat * alpha * inv;
    r.check(lhs == rhs, [&] { return json{{"check", "parabolic_equivariance"}, {"g", g.to_string()}}; });
  }
  for (const auto& g : sample_sp(V, std::max(1, count / 2), suite_seed(cfg, 15))) {
    const OrientedSubspace J = act_on_lagrangian(g, I);
    const SymplecticReduction redJ(V, J);
    const CanonicalSpace CJ(redJ.reduced());
    const SymplecticIso fI = red.induced(g.iso(), redJ);
    const CycMatrix invJ = invariant_subspace(C, J.sub);
    const CycMatrix lhs = functor_matrix(fI, CR, CJ) * reduction_alpha(C, redJ, CJ) * invJ;
    const CycMatrix rhs = alpha * functor_matrix(g.iso(), C, C) * invJ;
    r.check(lhs == rhs, [&] { return json{{"check", "naturality"}, {"g", g.to_string()}}; });
  }
  {
    const SymplecticReduction red0(V, OrientedSubspace(Subspace::zero(cfg.p, V.dim()), 1));
    const CanonicalSpace C0(red0.reduced());
    const CycMatrix a0 = reduction_alpha(C, red0, C0);
    r.check(a0 == CycMatrix::identity(cfg.p, C.dim()), [&] { return json{{"check", "zero_isotropic"}}; });
  }
  auto labels = enumerate_oriented_lagrangians(V);
  std::vector<OrientedSubspace> picks{C.base(), labels[static_cast<std::size_t>(rng.below(static_cast<int>(labels.size())))]};
  for (const auto& L : picks) {
    const SymplecticReduction redL(V, L);
    const CanonicalSpace CL(redL.reduced());
    const auto v = distinguished_vector(C, L);
    const CycMatrix invL = invariant_subspace(C, L.sub);
    const auto av = reduction_alpha(C, redL, CL).apply(v);
    const bool ok = invL.cols() == 1 && is_invariant(C, L.sub, v) && av.size() == 1 && av[0] == CycNum::one(cfg.p);
    r.check(ok, [&] { return json{{"check", "distinguished_vector"}, {"label", L.to_string()}}; });
  }
  r.details = json{{"isotropic", I.to_string()},
                   {"reduced_dimension", red.reduced().dim()},
                   {"invariant_dimension", inv.cols()},
                   {"samples", count}};
  return r;
}

/// Gauss sum identity plus the residue-map and discriminant identities on
/// transverse triples and on (M, L, S) with S transverse to M and L.
inline SuiteResult suite_lemmas(const SuiteConfig& cfg)
{
  SuiteResult r{"lemmas"};
  const int p = cfg.p, n = cfg.n;
  const auto V = SymplecticSpace::standard(p, n);
  for (int k = 1; k <= 3; ++k) {
    const CycNum lhs = gauss_sum(p).pow(2 * k);
    const CycNum rhs = CycNum::from_int(p, ipow(p, k) * legendre(k % 2 ? -1 : 1, p));
    r.check(lhs == rhs, [&] { return json{{"check", "gauss_identity"}, {"n", k}, {"value", io::to_json(lhs)}}; });
  }
  auto labels = enumerate_oriented_lagrangians(V);
  std::vector<std::array<std::size_t, 3>> triples;
  Rng rng(suite_seed(cfg, 16));
  const std::size_t L3 = labels.size() * labels.size() * labels.size();
  const int count = samples_or(cfg, 200);
  const bool exhaustive = L3 <= 1000;
  auto transverse3 = [&](std::size_t a, std::size_t b, std::size_t c) {
    return in_general_position(labels[a], labels[b]) && in_general_position(labels[b], labels[c]) &&
           in_general_position(labels[a], labels[c]);
  };
  if (exhaustive) {
    for (const auto& t : index_tuples<3>(labels.size(), L3, 0, rng))
      if (transverse3(t[0], t[1], t[2]))
        triples.push_back(t);
  } else {
    while (static_cast<int>(triples.size()) < count) {
      std::array<std::size_t, 3> t{};
      for (auto& x : t)
        x = static_cast<std::size_t>(rng.below(static_cast<int>(labels.size())));
      if (transverse3(t[0], t[1], t[2]))
        triples.push_back(t);
    }
  }
  const CycNum one = CycNum::one(p);
  for (const auto& [a, b, c] : triples) {
    const auto &N = labels[a], &M = labels[b], &L = labels[c];
    auto wit = [&](const char* name) {
      return [&, name] { return json{{"check", name}, {"triple", labels_json({&N, &M, &L})}}; };
    };
    const FpMat rm = residue_map(V, M.sub, L.sub, N.sub);
    FpMat form(static_cast<std::size_t>(n), FpVec(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            V.omega(rm[static_cast<std::size_t>(i)], M.rows()[static_cast<std::size_t>(j)]);
    const int rw = residue_wedge(V, M, L.sub, N.sub);
    bool symmetric = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        symmetric = symmetric && form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                                     form[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    r.check(symmetric && discriminant(form, p) == legendre(binom2_sign(n) * rw, p), wit("residue_discriminant"));
    r.check(symmetric && discriminant(form, p) == discriminant_by_diagonalization(form, p),
            wit("discriminant_by_diagonalization"));
    const long long rhs = static_cast<long long>(n % 2 ? -1 : 1) * wedge_pairing(V, M, N) % p *
                          wedge_pairing(V, L, M) % p * inv_mod(wedge_pairing(V, L, N), p);
    r.check(rw == mod_p(rhs, p), wit("residue_wedge_identity"));
    const CocycleValue cv = cocycle_C(V, N, M, L);
    r.check(cv.closed == cv.operator_value && cv.closed == cv.gauss_sum_value, wit("cocycle_value"));
    const CycNum A = transverse_normalization(V, N, M) * transverse_normalization(V, M, L) /
                     transverse_normalization(V, N, L);
    r.check(A * cv.closed == one, wit("cocycle_cancellation"));
    const ModelSpace mn(V, N), ml(V, L);
    r.check(averaging_matrix(mn, ml).apply(delta(ml).values)[0] == one, wit("averaging_delta"));
  }

  // (M, L, S): M, L arbitrary, S transverse to both.
  std::vector<std::array<std::size_t, 3>> mls;
  if (exhaustive) {
    for (const auto& t : index_tuples<3>(labels.size(), L3, 0, rng))
      if (in_general_position(labels[t[2]], labels[t[0]]) && in_general_position(labels[t[2]], labels[t[1]]))
        mls.push_back(t);
  } else {
    while (static_cast<int>(mls.size()) < count) {
      std::array<std::size_t, 3> t{};
      for (auto& x : t)
        x = static_cast<std::size_t>(rng.below(static_cast<int>(labels.size())));
      // Bias toward intersecting pairs so the quotient identities are exercised.
      if (mls.size() % 2 == 0)
        t[1] = t[0];
      if (in_general_position(labels[t[2]], labels[t[0]]) && in_general_position(labels[t[2]], labels[t[1]]))
        mls.push_back(t);
    }
  }
  const CycNum G = gauss_sum(p);
  for (const auto& [a, b, c] : mls) {
    const auto &M = labels[a], &L = labels[b], &S = labels[c];
    auto wit = [&](const char* name) {
      return [&, name] { return json{{"check", name}, {"triple", labels_json({&M, &L, &S})}}; };
    };
    const Subspace I = intersect(M.sub, L.sub);
    const int nI = n - I.dim();
    const OrientationSplit sM = orientation_decompose(M, I), sL = orientation_decompose(L, I);
    const FpMat& cm = sM.quotient_rows;
    const FpMat rc = residue_images(V, cm, L.sub, S.sub);
    const auto k = static_cast<std::size_t>(nI);
    FpMat B(k, FpVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        B[i][j] = V.omega(cm[i], rc[j]);
    bool symmetric = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        symmetric = symmetric && B[i][j] == B[j][i];
    const long long qo2 = static_cast<long long>(sM.quotient_orient) * sM.quotient_orient % p;
    const int bw = mod_p(qo2 * wedge_rows(V, cm, rc), p);
    const int dB = symmetric ? discriminant(B, p) : 0;
    r.check(symmetric && dB == legendre(binom2_sign(nI) * bw, p), wit("quotient_discriminant"));

    long long id2 = static_cast<long long>(n % 2 ? -1 : 1);
    id2 = id2 * wedge_rows(V, sL.quotient_rows, cm) % p * sL.quotient_orient % p * sM.quotient_orient % p;
    id2 = id2 * wedge_pairing(V, S, M) % p * inv_mod(wedge_pairing(V, L, S), p) % p;
    id2 = id2 * sL.iota % p * inv_mod(sM.iota, p) % p;
    r.check(bw == mod_p(id2, p), wit("quotient_wedge_identity"));

    // F_{M,S} F_{S,L} = #I * (sum over M/I) F_{M,L}, the sum being G^{n_I} sigma(d[B]).
    std::vector<long long> counts(static_cast<std::size_t>(p), 0);
    for (const auto& x : fp::all_vectors(nI, p)) {
      const FpVec m = fp::combine(x, cm, static_cast<std::size_t>(V.dim()), p);
      const FpVec rmv = fp::combine(x, rc, static_cast<std::size_t>(V.dim()), p);
      ++counts[static_cast<std::size_t>(static_cast<long long>(half_mod(p)) * V.omega(m, rmv) % p)];
    }
    const CycNum sum = root_sum(counts, p);
    r.check(symmetric && sum == G.pow(nI) * CycNum::from_int(p, dB), wit("quotient_gauss_sum"));
    const ModelSpace mm(V, M), ml(V, L), ms(V, S);
    const CycMatrix lhs = averaging_matrix(mm, ms) * averaging_matrix(ms, ml);
    const CycNum scalar = CycNum::from_int(p, ipow(p, I.dim())) * sum;
    r.check(lhs == scalar * averaging_matrix(mm, ml), wit("composition_scalar"));
  }
  r.details = json{{"transverse_triples", triples.size()}, {"middle_triples", mls.size()}, {"exhaustive", exhaustive}};
  return r;
}

inline const std::vector<std::string>& suite_names()
{
  static const std::vector<std::string> names{"svn",       "multiplicativity", "chained", "kernels",
                                              "egorov",    "homomorphism",     "idempotent", "tensor",
                                              "duality",   "reduction",        "lemmas"};
  return names;
}

inline SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg)
{
  if (name == "svn")
    return suite_svn(cfg);
  if (name == "multiplicativity")
    return suite_multiplicativity(cfg);
  if (name == "chained")
    return suite_chained(cfg);
  if (name == "kernels")
    return suite_kernels(cfg);
  if (name == "egorov")
    return suite_egorov(cfg);
  if (name == "homomorphism")
    return suite_homomorphism(cfg);
  if (name == "idempotent")
    return suite_idempotent(cfg);
  if (name == "tensor")
    return suite_tensor(cfg);
  if (name == "duality")
    return suite_duality(cfg);
  if (name == "reduction")
    return suite_reduction(cfg);
  if (name == "lemmas")
    return suite_lemmas(cfg);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

/// Report for one suite or, with "all", every suite in order.
inline json run_report(const std::string& name, const SuiteConfig& cfg, bool* passed)
{
  std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};
  json suites = json::array();
  bool ok = true;
  for (const auto& s : names) {
    SuiteResult res = run_suite(s, cfg);
    ok = ok && res.passed();
    suites.push_back(res.to_json());
  }
  if (passed)
    *passed = ok;
  return json{{"kind", "verify"},
              {"p", cfg.p},
              {"n", cfg.n},
              {"seed", cfg.seed},
              {"suite", name},
              {"passed", ok},
              {"suites", suites}};
}

} // namespace weil::verify

#include "ahibe/core/scheme.hpp"

#include <sodium.h>

#include "ahibe/error.hpp"

namespace ahibe::core {

using pairing::ExpTerm;
using pairing::FixedBase;
using pairing::ScalarField;

HierarchicalIdentity::HierarchicalIdentity(std::vector<Scalar> components) : components_(std::move(components)) {
  for (const auto& c : components_) require(!c.is_zero(), "identity components must be nonzero");
}

HierarchicalIdentity HierarchicalIdentity::prefix(std::size_t depth) const {
  require(depth <= components_.size(), "prefix longer than identity");
  return HierarchicalIdentity(std::vector<Scalar>(components_.begin(), components_.begin() + depth));
}

HierarchicalIdentity HierarchicalIdentity::extend(const Scalar& component) const {
  auto next = components_;
  next.push_back(component);
  return HierarchicalIdentity(std::move(next));
}

bool HierarchicalIdentity::is_prefix_of(const HierarchicalIdentity& other) const {
  if (depth() > other.depth()) return false;
  for (std::size_t i = 0; i < depth(); ++i) {
    if (components_[i] != other.components_[i]) return false;
  }
  return true;
}

namespace {

void wipe(Scalar& s) { sodium_memzero(&s, sizeof s); }

// Exponentiation of a base that may have a fixed-base table.
struct Base2 {
  const G2Elem* plain = nullptr;
  const FixedBase<G2Elem>* table = nullptr;

  ExpTerm<G2Elem> term(const Scalar& e) const { return {plain, table, e}; }
  G2Elem exp(const GroupSuite& s, const Scalar& e) const { return table ? s.exp(*table, e) : s.exp(*plain, e); }
};

struct WBases {
  std::array<Base2, 3> w;

  WBases(const PublicParams& pp, const KeyGenTables* tables) {
    if (tables != nullptr) {
      for (int k = 0; k < 3; ++k) w[k].table = &tables->w[k];
    } else {
      w[0].plain = &pp.w_phi1;
      w[1].plain = &pp.w_phi2;
      w[2].plain = &pp.w;
    }
  }
};

// (X^r W1^c, W2^c, W3^c)
G2Triple key_block(const GroupSuite& s, const WBases& wb, Base2 x, const Scalar& r, const Scalar& c) {
  std::array<ExpTerm<G2Elem>, 2> terms{x.term(r), wb.w[0].term(c)};
  return {s.multi_exp(std::span<const ExpTerm<G2Elem>>(terms)), wb.w[1].exp(s, c), wb.w[2].exp(s, c)};
}

// base^γ W_k^δ for k = 1..3, times `prefix` when given
G2Triple mix(const GroupSuite& s, const std::array<G2Elem, 3>& w, const G2Triple* prefix, const G2Triple& base,
             const Scalar& gamma, const Scalar& delta) {
  G2Triple out;
  for (int k = 0; k < 3; ++k) {
    std::array<G2Elem, 2> b{base[k], w[k]};
    std::array<Scalar, 2> e{gamma, delta};
    out[k] = s.multi_exp(std::span<const G2Elem>(b), std::span<const Scalar>(e));
    if (prefix != nullptr) out[k] = s.mul((*prefix)[k], out[k]);
  }
  return out;
}

std::vector<Scalar> draw(RandomSource& rng, const ScalarField& F, std::size_t n) {
  std::vector<Scalar> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(rng.scalar(F));
  return out;
}

}  // namespace

SetupResult setup(const GroupSuite& suite, unsigned l, RandomSource& rng, bool with_transcript) {
  require(l >= 1, "maximum depth must be at least 1");
  require(l <= 0xFFFF, "maximum depth too large");
  const auto& F = suite.scalars();

  Scalar nu = rng.scalar(F), phi1 = rng.scalar(F), phi2 = rng.scalar(F);
  Scalar tau = F.add(phi1, F.mul(nu, phi2));
  Scalar neg_tau = F.neg(tau);
  Scalar y_h = rng.scalar(F);
  std::vector<Scalar> y_u = draw(rng, F, l);
  Scalar y_w = rng.scalar(F);
  Scalar alpha = rng.scalar(F);

  const G1Elem g = suite.g1();
  const G2Elem g_hat = suite.g2();
  auto triple = [&](const Scalar& y) -> G1Triple {
    return {suite.exp(g, y), suite.exp(g, F.mul(y, nu)), suite.exp(g, F.mul(y, neg_tau))};
  };

  SetupResult out{MasterKey{}, PublicParams{suite}, std::nullopt};
  auto& pp = out.pp;
  auto& mk = out.mk;
  pp.l = l;
  pp.g = {g, suite.exp(g, nu), suite.exp(g, neg_tau)};
  pp.h = triple(y_h);
  for (const auto& y : y_u) pp.u.push_back(triple(y));
  pp.w = suite.exp(g_hat, y_w);
  pp.w_phi1 = suite.exp(g_hat, F.mul(y_w, phi1));
  pp.w_phi2 = suite.exp(g_hat, F.mul(y_w, phi2));

  mk.g_hat = g_hat;
  mk.g_hat_alpha = suite.exp(g_hat, alpha);
  mk.h_hat = suite.exp(g_hat, y_h);
  for (const auto& y : y_u) mk.u_hat.push_back(suite.exp(g_hat, y));
  pp.omega = suite.pair(g, mk.g_hat_alpha);

  if (with_transcript) out.transcript = TrapdoorTranscript{nu, phi1, phi2, tau, alpha, y_h, y_u, y_w, std::nullopt};
  for (Scalar* s : {&nu, &phi1, &phi2, &tau, &neg_tau, &y_h, &y_w, &alpha}) wipe(*s);
  for (auto& y : y_u) wipe(y);
  return out;
}

KeyGenTables prepare_keygen(const MasterKey& mk, const PublicParams& pp) {
  const auto& s = pp.suite;
  KeyGenTables t{s.prepare(mk.g_hat), {}, {s.prepare(pp.w_phi1), s.prepare(pp.w_phi2), s.prepare(pp.w)}};
  for (const auto& u : mk.u_hat) t.u_hat.push_back(s.prepare(u));
  return t;
}

void detail::check_identity(const HierarchicalIdentity& id, const PublicParams& pp, bool allow_root) {
  require(allow_root || id.depth() >= 1, "identity must have depth at least 1");
  require(id.depth() <= pp.l, "identity depth exceeds the maximum depth");
  const auto& F = pp.suite.scalars();
  for (const auto& c : id.components()) require(F.contains(c) && !c.is_zero(), "identity component outside Z_p^*");
}

void check_key_shape(const PrivateKey& sk, const PublicParams& pp) {
  detail::check_identity(sk.id, pp, true);
  std::size_t free_levels = pp.l - sk.id.depth();
  if (sk.l3.size() != free_levels || sk.r3.size() != free_levels) {
    fail(ErrorKind::malformed, "private key block count does not match its depth");
  }
}

G2Elem identity_product(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp) {
  if (id.depth() == 0) return mk.h_hat;
  std::vector<G2Elem> bases{mk.h_hat};
  std::vector<Scalar> exps{pp.suite.scalars().one()};
  for (std::size_t i = 0; i < id.depth(); ++i) {
    bases.push_back(mk.u_hat[i]);
    exps.push_back(id[i]);
  }
  return pp.suite.multi_exp(bases, exps);
}

PrivateKey detail::keygen_any_depth(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp,
                                    RandomSource& rng, const KeyGenTables* tables) {
  check_identity(id, pp, true);
  require(mk.u_hat.size() == pp.l, "master key does not match public parameters");
  const auto& s = pp.suite;
  const auto& F = s.scalars();
  const std::size_t m = id.depth();
  const std::size_t free_levels = pp.l - m;

  Scalar r1 = rng.scalar(F), c1 = rng.scalar(F), c2 = rng.scalar(F);
  auto c3 = draw(rng, F, free_levels);
  Scalar r2 = rng.scalar(F), c4 = rng.scalar(F), c5 = rng.scalar(F);
  auto c6 = draw(rng, F, free_levels);

  const G2Elem x = identity_product(id, mk, pp);
  WBases wb(pp, tables);
  Base2 bx{&x, nullptr};
  Base2 bg = tables ? Base2{nullptr, &tables->g_hat} : Base2{&mk.g_hat, nullptr};
  auto bu = [&](std::size_t level) {  // level is 1-based
    return tables ? Base2{nullptr, &tables->u_hat[level - 1]} : Base2{&mk.u_hat[level - 1], nullptr};
  };

  PrivateKey sk;
  sk.id = id;
  sk.k1 = key_block(s, wb, bx, r1, c1);
  sk.k1[0] = s.mul(mk.g_hat_alpha, sk.k1[0]);
  sk.k2 = key_block(s, wb, bg, r1, c2);
  for (std::size_t j = 0; j < free_levels; ++j) sk.l3.push_back(key_block(s, wb, bu(m + 1 + j), r1, c3[j]));
  sk.r1 = key_block(s, wb, bx, r2, c4);
  sk.r2 = key_block(s, wb, bg, r2, c5);
  for (std::size_t j = 0; j < free_levels; ++j) sk.r3.push_back(key_block(s, wb, bu(m + 1 + j), r2, c6[j]));

  for (Scalar* v : {&r1, &c1, &c2, &r2, &c4, &c5}) wipe(*v);
  for (auto& v : c3) wipe(v);
  for (auto& v : c6) wipe(v);
  return sk;
}

PrivateKey keygen(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp, RandomSource& rng,
                  const KeyGenTables* tables) {
  detail::check_identity(id, pp, false);
  return detail::keygen_any_depth(id, mk, pp, rng, tables);
}

PrivateKey detail::delegate_any_depth(const HierarchicalIdentity& child, const PrivateKey& sk, const PublicParams& pp,
                                      RandomSource& rng) {
  check_key_shape(sk, pp);
  check_identity(child, pp, false);
  require(child.depth() == sk.id.depth() + 1, "delegation must extend the identity by exactly one level");
  require(sk.id.is_prefix_of(child), "key identity is not a prefix of the target identity");
  const auto& s = pp.suite;
  const auto& F = s.scalars();
  const std::size_t rest = pp.l - child.depth();  // levels m+2..l
  const Scalar& I = child[sk.id.depth()];
  const auto w = pp.w_basis();

  Scalar gamma1 = rng.scalar(F), d1 = rng.scalar(F), d2 = rng.scalar(F);
  auto d3 = draw(rng, F, rest);
  Scalar gamma2 = rng.scalar(F), d4 = rng.scalar(F), d5 = rng.scalar(F);
  auto d6 = draw(rng, F, rest);

  // K_1 L_{m+1}^I and R_1 R_{3,m+1}^I
  G2Triple a, b;
  for (int k = 0; k < 3; ++k) {
    a[k] = s.mul(sk.k1[k], s.exp(sk.l3[0][k], I));
    b[k] = s.mul(sk.r1[k], s.exp(sk.r3[0][k], I));
  }

  PrivateKey out;
  out.id = child;
  out.k1 = mix(s, w, &a, b, gamma1, d1);
  out.k2 = mix(s, w, &sk.k2, sk.r2, gamma1, d2);
  for (std::size_t j = 0; j < rest; ++j) out.l3.push_back(mix(s, w, &sk.l3[j + 1], sk.r3[j + 1], gamma1, d3[j]));
  out.r1 = mix(s, w, nullptr, b, gamma2, d4);
  out.r2 = mix(s, w, nullptr, sk.r2, gamma2, d5);
  for (std::size_t j = 0; j < rest; ++j) out.r3.push_back(mix(s, w, nullptr, sk.r3[j + 1], gamma2, d6[j]));

  for (Scalar* v : {&gamma1, &d1, &d2, &gamma2, &d4, &d5}) wipe(*v);
  for (auto& v : d3) wipe(v);
  for (auto& v : d6) wipe(v);
  return out;
}

PrivateKey delegate(const HierarchicalIdentity& child, const PrivateKey& sk, const PublicParams& pp,
                    RandomSource& rng) {
  require(sk.id.depth() >= 1, "delegation source must have depth at least 1");
  return detail::delegate_any_depth(child, sk, pp, rng);
}

Ciphertext detail::encrypt_any_depth(const HierarchicalIdentity& id, const GTElem& m, const PublicParams& pp,
                                     RandomSource& rng) {
  check_identity(id, pp, true);
  const auto& s = pp.suite;
  const auto& F = s.scalars();
  Scalar t = rng.scalar(F);

  Ciphertext ct;
  ct.c = s.mul(s.exp(pp.omega, t), m);
  for (int k = 0; k < 3; ++k) {
    ct.c1[k] = s.exp(pp.g[k], t);
    G1Elem product = pp.h[k];
    if (id.depth() > 0) {
      std::vector<G1Elem> bases{pp.h[k]};
      std::vector<Scalar> exps{F.one()};
      for (std::size_t i = 0; i < id.depth(); ++i) {
        bases.push_back(pp.u[i][k]);
        exps.push_back(id[i]);
      }
      product = s.multi_exp(bases, exps);
    }
    ct.c2[k] = s.exp(product, t);
  }
  wipe(t);
  return ct;
}

Ciphertext encrypt(const HierarchicalIdentity& id, const GTElem& m, const PublicParams& pp, RandomSource& rng) {
  detail::check_identity(id, pp, false);
  return detail::encrypt_any_depth(id, m, pp, rng);
}

GTElem decrypt(const Ciphertext& ct, const PrivateKey& sk, const PublicParams& pp) {
  check_key_shape(sk, pp);
  const auto& s = pp.suite;
  GTElem mask = s.multi_pair(ct.c1, sk.k1);
  GTElem unmask = s.multi_pair(ct.c2, sk.k2);
  return s.mul(s.mul(ct.c, unmask), s.inverse(mask));
}

}  // namespace ahibe::core

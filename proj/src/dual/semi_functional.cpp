#include "ahibe/dual/semi_functional.hpp"

#include "ahibe/error.hpp"

namespace ahibe::dual {
namespace {

using core::G2Triple;

// Multiplies (f̂^{-ν})^e and f̂^e into the first two components of a block.
void add_sf(const GroupSuite& s, const SemiFunctionalParams& sfp, G2Triple& block, const Scalar& e) {
  block[0] = s.mul(block[0], s.exp(sfp.f_hat_neg_nu, e));
  block[1] = s.mul(block[1], s.exp(sfp.f_hat, e));
}

SFKey keygen_sf(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp,
                const SemiFunctionalParams& sfp, RandomSource& rng, bool type2, const Scalar* forced_z1) {
  SFKey out{core::keygen(id, mk, pp, rng), {}};
  const auto& s = pp.suite;
  const auto& F = s.scalars();
  const std::size_t free_levels = out.key.l3.size();
  auto& rnd = out.randomness;

  rnd.s_k1 = rng.scalar(F);
  rnd.z_k1 = forced_z1 ? *forced_z1 : rng.scalar(F);
  for (std::size_t i = 0; i < free_levels; ++i) rnd.z_k2.push_back(rng.scalar(F));
  rnd.s_k2 = rng.scalar(F);
  if (type2) {
    rnd.z_k3 = rng.scalar(F);
    for (std::size_t i = 0; i < free_levels; ++i) rnd.z_k4.push_back(rng.scalar(F));
  }
  const Scalar& z_r1 = type2 ? *rnd.z_k3 : rnd.z_k1;
  const auto& z_r3 = type2 ? rnd.z_k4 : rnd.z_k2;

  auto& k = out.key;
  add_sf(s, sfp, k.k1, F.mul(rnd.s_k1, rnd.z_k1));
  add_sf(s, sfp, k.k2, rnd.s_k1);
  for (std::size_t i = 0; i < free_levels; ++i) add_sf(s, sfp, k.l3[i], F.mul(rnd.s_k1, rnd.z_k2[i]));
  add_sf(s, sfp, k.r1, F.mul(rnd.s_k2, z_r1));
  add_sf(s, sfp, k.r2, rnd.s_k2);
  for (std::size_t i = 0; i < free_levels; ++i) add_sf(s, sfp, k.r3[i], F.mul(rnd.s_k2, z_r3[i]));
  return out;
}

}  // namespace

SemiFunctionalParams sf_params(std::optional<TrapdoorTranscript>& transcript, const GroupSuite& suite,
                               RandomSource& rng) {
  require(transcript.has_value(), "semi-functional parameters need the setup transcript");
  const auto& F = suite.scalars();
  SemiFunctionalParams p;
  p.y_f = rng.scalar(F);
  p.nu = transcript->nu;
  p.phi2 = transcript->phi2;
  p.f = suite.exp(suite.g1(), p.y_f);
  p.f_neg_phi2 = suite.exp(suite.g1(), F.neg(F.mul(p.y_f, p.phi2)));
  p.f_hat = suite.exp(suite.g2(), p.y_f);
  p.f_hat_neg_nu = suite.exp(suite.g2(), F.neg(F.mul(p.y_f, p.nu)));
  transcript->y_f = p.y_f;
  return p;
}

SFKey keygen_sf1(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp,
                 const SemiFunctionalParams& sfp, RandomSource& rng) {
  return keygen_sf(id, mk, pp, sfp, rng, false, nullptr);
}

SFKey keygen_sf2(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp,
                 const SemiFunctionalParams& sfp, RandomSource& rng) {
  return keygen_sf(id, mk, pp, sfp, rng, true, nullptr);
}

SFKey nominal_sf1_keygen(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp,
                         const SemiFunctionalParams& sfp, const Scalar& z_c, RandomSource& rng) {
  return keygen_sf(id, mk, pp, sfp, rng, false, &z_c);
}

SFCiphertext encrypt_sf(const HierarchicalIdentity& id, const GTElem& m, const PublicParams& pp,
                        const SemiFunctionalParams& sfp, RandomSource& rng) {
  SFCiphertext out{core::encrypt(id, m, pp, rng), {}};
  const auto& s = pp.suite;
  const auto& F = s.scalars();
  auto& r = out.randomness;
  r.s_c = rng.scalar(F);
  r.z_c = rng.scalar(F);
  Scalar sz = F.mul(r.s_c, r.z_c);
  auto& ct = out.ct;
  ct.c1[1] = s.mul(ct.c1[1], s.exp(sfp.f, r.s_c));
  ct.c1[2] = s.mul(ct.c1[2], s.exp(sfp.f_neg_phi2, r.s_c));
  ct.c2[1] = s.mul(ct.c2[1], s.exp(sfp.f, sz));
  ct.c2[2] = s.mul(ct.c2[2], s.exp(sfp.f_neg_phi2, sz));
  return out;
}

GTElem decrypt_residual(const Ciphertext& ct, const PrivateKey& sk, const PublicParams& pp, const GTElem& true_m) {
  return pp.suite.div(true_m, core::decrypt(ct, sk, pp));
}

PrivateKey rerandomize(const PrivateKey& sk, const PublicParams& pp, const Scalar& gamma, RandomSource& rng) {
  core::check_key_shape(sk, pp);
  const auto& s = pp.suite;
  const auto& F = s.scalars();
  const auto w = pp.w_basis();
  Scalar gamma2 = rng.nonzero_scalar(F);

  auto mix = [&](const G2Triple* keep, const G2Triple& r, const Scalar& g) {
    Scalar delta = rng.scalar(F);
    G2Triple out;
    for (int k = 0; k < 3; ++k) {
      std::array<G2Elem, 2> b{r[k], w[k]};
      std::array<Scalar, 2> e{g, delta};
      out[k] = s.multi_exp(std::span<const G2Elem>(b), std::span<const Scalar>(e));
      if (keep) out[k] = s.mul((*keep)[k], out[k]);
    }
    return out;
  };

  PrivateKey out;
  out.id = sk.id;
  out.k1 = mix(&sk.k1, sk.r1, gamma);
  out.k2 = mix(&sk.k2, sk.r2, gamma);
  for (std::size_t i = 0; i < sk.l3.size(); ++i) out.l3.push_back(mix(&sk.l3[i], sk.r3[i], gamma));
  out.r1 = mix(nullptr, sk.r1, gamma2);
  out.r2 = mix(nullptr, sk.r2, gamma2);
  for (const auto& r : sk.r3) out.r3.push_back(mix(nullptr, r, gamma2));
  return out;
}

}  // namespace ahibe::dual

#pragma once

// Semi-functional keys and ciphertexts. These need the setup trapdoor and
// exist only for exercising the dual-system algebra in tests.

#include <optional>
#include <vector>

#include "ahibe/core/scheme.hpp"

namespace ahibe::dual {

using core::Ciphertext;
using core::HierarchicalIdentity;
using core::MasterKey;
using core::PrivateKey;
using core::PublicParams;
using core::TrapdoorTranscript;
using pairing::G1Elem;
using pairing::G2Elem;
using pairing::GroupSuite;
using pairing::GTElem;
using pairing::RandomSource;
using pairing::Scalar;

struct SemiFunctionalParams {
  Scalar y_f, nu, phi2;
  G1Elem f, f_neg_phi2;      // f, f^{-φ2}
  G2Elem f_hat, f_hat_neg_nu;  // f̂, f̂^{-ν}
};

struct SFKeyRandomness {
  Scalar s_k1, z_k1;
  std::vector<Scalar> z_k2;  // levels m+1..l
  Scalar s_k2;
  // Type-2 only.
  std::optional<Scalar> z_k3;
  std::vector<Scalar> z_k4;
};

struct SFCiphertextRandomness {
  Scalar s_c, z_c;
};

struct SFKey {
  PrivateKey key;
  SFKeyRandomness randomness;
};

struct SFCiphertext {
  Ciphertext ct;
  SFCiphertextRandomness randomness;
};

/// Draws y_f and records it in the transcript. Throws invalid_argument when
/// no transcript is available.
SemiFunctionalParams sf_params(std::optional<TrapdoorTranscript>& transcript, const GroupSuite& suite,
                               RandomSource& rng);

/// Normal key times semi-functional factors; the randomization blocks reuse
/// the z-exponents of the decryption blocks.
SFKey keygen_sf1(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp,
                 const SemiFunctionalParams& sfp, RandomSource& rng);

/// As keygen_sf1, with fresh z_{k,3}, {z_{k,4,i}} in the randomization blocks.
SFKey keygen_sf2(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp,
                 const SemiFunctionalParams& sfp, RandomSource& rng);

SFCiphertext encrypt_sf(const HierarchicalIdentity& id, const GTElem& m, const PublicParams& pp,
                        const SemiFunctionalParams& sfp, RandomSource& rng);

/// Type-1 key with z_{k,1} fixed to `z_c`; decrypts sf ciphertexts made with z_c.
SFKey nominal_sf1_keygen(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp,
                         const SemiFunctionalParams& sfp, const Scalar& z_c, RandomSource& rng);

/// true_M / decrypt(ct, sk). For an sf ciphertext and an sf key this is
/// e(f, f̂)^{s_c (s_{k,1} z_{k,1} − s_{k,1} z_c)} before re-randomization.
GTElem decrypt_residual(const Ciphertext& ct, const PrivateKey& sk, const PublicParams& pp, const GTElem& true_m);

/// Same-level re-randomization: K ← K·R^γ·W^δ on the decryption and delegation
/// blocks with the given γ, and R ← R^{γ'}·W^δ with a fresh γ'.
PrivateKey rerandomize(const PrivateKey& sk, const PublicParams& pp, const Scalar& gamma, RandomSource& rng);

}  // namespace ahibe::dual

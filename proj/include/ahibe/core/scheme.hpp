#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ahibe/pairing/group.hpp"
#include "ahibe/pairing/random.hpp"

namespace ahibe::core {

using pairing::G1Elem;
using pairing::G2Elem;
using pairing::GroupSuite;
using pairing::GTElem;
using pairing::RandomSource;
using pairing::Scalar;

/// (I_1, ..., I_m) with every I_i a nonzero scalar. The empty vector is the
/// root identity; the public algorithms reject it.
class HierarchicalIdentity {
 public:
  HierarchicalIdentity() = default;
  explicit HierarchicalIdentity(std::vector<Scalar> components);
  static HierarchicalIdentity root() { return {}; }

  std::size_t depth() const { return components_.size(); }
  const std::vector<Scalar>& components() const { return components_; }
  const Scalar& operator[](std::size_t i) const { return components_[i]; }

  HierarchicalIdentity prefix(std::size_t depth) const;
  HierarchicalIdentity extend(const Scalar& component) const;
  bool is_prefix_of(const HierarchicalIdentity& other) const;

  friend bool operator==(const HierarchicalIdentity&, const HierarchicalIdentity&) = default;

 private:
  std::vector<Scalar> components_;
};

/// (x, x^ν, x^{-τ}) for one base x in G.
using G1Triple = std::array<G1Elem, 3>;
/// One key block (X^r W1^c, W2^c, W3^c).
using G2Triple = std::array<G2Elem, 3>;

struct PublicParams {
  explicit PublicParams(GroupSuite s) : suite(std::move(s)) {}

  GroupSuite suite;
  unsigned l = 0;
  G1Triple g, h;
  std::vector<G1Triple> u;  // u[i-1] for level i
  G2Elem w_phi1, w_phi2, w;
  GTElem omega;

  std::array<G2Elem, 3> w_basis() const { return {w_phi1, w_phi2, w}; }
};

struct MasterKey {
  G2Elem g_hat, g_hat_alpha, h_hat;
  std::vector<G2Elem> u_hat;
};

/// Setup exponents. Test-only: anyone holding these can break anonymity.
struct TrapdoorTranscript {
  Scalar nu, phi1, phi2, tau, alpha, y_h;
  std::vector<Scalar> y_u;
  Scalar y_w;
  std::optional<Scalar> y_f;
};

/// Key for an identity of depth m under parameters of depth l. `l3[j]` and
/// `r3[j]` belong to level m+1+j.
struct PrivateKey {
  HierarchicalIdentity id;
  G2Triple k1, k2;
  std::vector<G2Triple> l3;
  G2Triple r1, r2;
  std::vector<G2Triple> r3;

  std::size_t element_count() const { return 12 + 6 * l3.size(); }
};

/// Six elements of G and one of G_T at every depth.
struct Ciphertext {
  GTElem c;
  G1Triple c1, c2;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

struct SetupResult {
  MasterKey mk;
  PublicParams pp;
  std::optional<TrapdoorTranscript> transcript;
};

/// Fixed-base tables for the master-key bases used by KeyGen.
struct KeyGenTables {
  pairing::FixedBase<G2Elem> g_hat;
  std::vector<pairing::FixedBase<G2Elem>> u_hat;
  std::array<pairing::FixedBase<G2Elem>, 3> w;
};

SetupResult setup(const GroupSuite& suite, unsigned l, RandomSource& rng, bool with_transcript = false);

KeyGenTables prepare_keygen(const MasterKey& mk, const PublicParams& pp);

PrivateKey keygen(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp, RandomSource& rng,
                  const KeyGenTables* tables = nullptr);

/// One-level delegation: `child` must extend `sk.id` by exactly one component.
PrivateKey delegate(const HierarchicalIdentity& child, const PrivateKey& sk, const PublicParams& pp,
                    RandomSource& rng);

Ciphertext encrypt(const HierarchicalIdentity& id, const GTElem& m, const PublicParams& pp, RandomSource& rng);

/// Returns the raw G_T element; a key for a different identity yields an
/// unrelated element rather than an error.
GTElem decrypt(const Ciphertext& ct, const PrivateKey& sk, const PublicParams& pp);

/// Rejects keys whose block counts do not fit `pp`.
void check_key_shape(const PrivateKey& sk, const PublicParams& pp);

/// ĥ ∏ û_i^{I_i}, as a (depth+1)-term multi-exponentiation (none at depth 0).
G2Elem identity_product(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp);

namespace detail {
// Same algorithms without the depth >= 1 restriction, so the root key
// (depth 0) and root ciphertexts can be produced for cost measurements.
PrivateKey keygen_any_depth(const HierarchicalIdentity& id, const MasterKey& mk, const PublicParams& pp,
                            RandomSource& rng, const KeyGenTables* tables = nullptr);
PrivateKey delegate_any_depth(const HierarchicalIdentity& child, const PrivateKey& sk, const PublicParams& pp,
                              RandomSource& rng);
Ciphertext encrypt_any_depth(const HierarchicalIdentity& id, const GTElem& m, const PublicParams& pp,
                             RandomSource& rng);
void check_identity(const HierarchicalIdentity& id, const PublicParams& pp, bool allow_root);
}  // namespace detail

}  // namespace ahibe::core

#include "ahibe/cli/hybrid.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "ahibe/core/serialize.hpp"
#include "ahibe/error.hpp"

namespace ahibe::cli {
namespace {

constexpr std::string_view kIdDomain = "ahibe/identity/v1";
constexpr std::string_view kKdfDomain = "ahibe/kem-dem/v1";
constexpr std::array<std::uint8_t, 4> kMagic{'A', 'H', 'C', 'T'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void init_sodium() {
  if (sodium_init() < 0) fail(ErrorKind::io, "libsodium initialisation failed");
}

}  // namespace

std::vector<std::string> split_path(std::string_view path) {
  require(!path.empty(), "empty identity path");
  std::vector<std::string> labels;
  std::size_t start = 0;
  while (true) {
    auto slash = path.find('/', start);
    auto label = path.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
    require(!label.empty(), "identity path has an empty label: '" + std::string(path) + "'");
    labels.emplace_back(label);
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return labels;
}

core::HierarchicalIdentity hash_identity(const std::vector<std::string>& labels, const pairing::ScalarField& field) {
  init_sodium();
  std::vector<pairing::Scalar> out;
  for (std::size_t level = 0; level < labels.size(); ++level) {
    const auto& label = labels[level];
    for (unsigned counter = 0;; ++counter) {
      require(counter < 256, "identity hashing did not find a nonzero residue");
      std::vector<std::uint8_t> in(kIdDomain.begin(), kIdDomain.end());
      put_u32(in, static_cast<std::uint32_t>(level));
      put_u32(in, static_cast<std::uint32_t>(label.size()));
      in.insert(in.end(), label.begin(), label.end());
      in.push_back(static_cast<std::uint8_t>(counter));
      std::array<std::uint8_t, crypto_generichash_BYTES_MAX> h{};
      crypto_generichash(h.data(), h.size(), in.data(), in.size(), nullptr, 0);
      auto s = field.reduce(h);
      if (!s.is_zero()) {
        out.push_back(s);
        break;
      }
    }
  }
  return core::HierarchicalIdentity(std::move(out));
}

std::vector<std::uint8_t> HybridCiphertext::associated_data() const {
  std::vector<std::uint8_t> ad(kMagic.begin(), kMagic.end());
  ad.push_back(kVersion);
  put_u32(ad, static_cast<std::uint32_t>(header.size()));
  ad.insert(ad.end(), header.begin(), header.end());
  return ad;
}

std::vector<std::uint8_t> HybridCiphertext::encode() const {
  auto out = associated_data();
  out.insert(out.end(), nonce.begin(), nonce.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

HybridCiphertext HybridCiphertext::parse(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t fixed = 4 + 1 + 4;
  if (bytes.size() < fixed || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    fail(ErrorKind::malformed, "not a hybrid ciphertext (bad magic)");
  }
  if (bytes[4] != kVersion) fail(ErrorKind::malformed, "unsupported hybrid ciphertext version");
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len = (len << 8) | bytes[5 + i];
  if (bytes.size() - fixed < std::size_t{len} + kNonceBytes + crypto_aead_xchacha20poly1305_ietf_ABYTES) {
    fail(ErrorKind::malformed, "hybrid ciphertext is truncated");
  }
  HybridCiphertext hc;
  auto rest = bytes.subspan(fixed);
  hc.header.assign(rest.begin(), rest.begin() + len);
  std::copy_n(rest.begin() + len, kNonceBytes, hc.nonce.begin());
  hc.body.assign(rest.begin() + len + kNonceBytes, rest.end());
  return hc;
}

std::array<std::uint8_t, 32> derive_key(const pairing::GTElem& m, const pairing::GroupSuite& suite) {
  init_sodium();
  auto enc = suite.encode(m);
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, 32);
  crypto_generichash_update(&st, reinterpret_cast<const unsigned char*>(kKdfDomain.data()), kKdfDomain.size());
  crypto_generichash_update(&st, enc.data(), enc.size());
  std::array<std::uint8_t, 32> key{};
  crypto_generichash_final(&st, key.data(), key.size());
  sodium_memzero(enc.data(), enc.size());
  return key;
}

HybridCiphertext seal(const core::HierarchicalIdentity& id, std::span<const std::uint8_t> message,
                      const core::PublicParams& pp, pairing::RandomSource& rng) {
  const auto& s = pp.suite;
  auto m = s.exp(s.gt_generator(), rng.nonzero_scalar(s.scalars()));
  HybridCiphertext hc;
  hc.header = core::serialize(core::encrypt(id, m, pp, rng), pp);
  rng.fill(hc.nonce);
  auto key = derive_key(m, s);
  auto ad = hc.associated_data();
  hc.body.resize(message.size() + crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long n = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(hc.body.data(), &n, message.data(), message.size(), ad.data(),
                                             ad.size(), nullptr, hc.nonce.data(), key.data());
  hc.body.resize(n);
  sodium_memzero(key.data(), key.size());
  return hc;
}

std::vector<std::uint8_t> open(const HybridCiphertext& hc, const core::PrivateKey& sk, const core::PublicParams& pp) {
  auto ct = core::deserialize_ciphertext(hc.header, pp);
  auto key = derive_key(core::decrypt(ct, sk, pp), pp.suite);
  auto ad = hc.associated_data();
  require(hc.body.size() >= crypto_aead_xchacha20poly1305_ietf_ABYTES, "hybrid body shorter than its tag");
  std::vector<std::uint8_t> msg(hc.body.size() - crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long n = 0;
  int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(msg.data(), &n, nullptr, hc.body.data(), hc.body.size(),
                                                      ad.data(), ad.size(), hc.nonce.data(), key.data());
  sodium_memzero(key.data(), key.size());
  if (rc != 0) {
    sodium_memzero(msg.data(), msg.size());
    fail(ErrorKind::authentication, "authentication failed: wrong key or tampered ciphertext");
  }
  msg.resize(n);
  return msg;
}

}  // namespace ahibe::cli

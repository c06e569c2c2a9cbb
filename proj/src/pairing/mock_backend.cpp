// Mock bilinear group: Z_p under addition in all three groups, with the
// pairing multiplying discrete logs. Generators have log 1.

#include "backends.hpp"

#include <string>

#include "ahibe/error.hpp"

namespace ahibe::pairing::detail {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

class MockField final : public ScalarField {
 public:
  explicit MockField(std::uint64_t p) : p_(p), modulus_(Scalar::from_u64(p)) {}

  const Scalar& modulus() const override { return modulus_; }
  Scalar add(const Scalar& a, const Scalar& b) const override {
    std::uint64_t s = a.low() + b.low();  // both < 2^62
    return Scalar::from_u64(s >= p_ ? s - p_ : s);
  }
  Scalar sub(const Scalar& a, const Scalar& b) const override {
    return Scalar::from_u64(a.low() >= b.low() ? a.low() - b.low() : a.low() + p_ - b.low());
  }
  Scalar mul(const Scalar& a, const Scalar& b) const override {
    return Scalar::from_u64(mulmod(a.low(), b.low(), p_));
  }
  Scalar inverse(const Scalar& a) const override {
    require(!a.is_zero(), "inverse of zero");
    return Scalar::from_u64(powmod(a.low(), p_ - 2, p_));
  }
  Scalar reduce(std::span<const std::uint8_t> le_bytes) const override {
    std::uint64_t acc = 0;
    for (std::size_t i = le_bytes.size(); i-- > 0;) {
      acc = static_cast<std::uint64_t>((static_cast<u128>(acc) << 8 | le_bytes[i]) % p_);
    }
    return Scalar::from_u64(acc);
  }

 private:
  std::uint64_t p_;
  Scalar modulus_;
};

template <class E>
E make(std::uint64_t log) {
  E e;
  e.words()[0] = log;
  return e;
}

template <class E>
std::uint64_t log_word(const E& e) {
  return e.words()[0];
}

class MockBackend final : public Backend {
 public:
  MockBackend(std::uint64_t p, std::uint64_t seed) : p_(p), seed_(seed), field_(p) {}

  BackendTag tag() const override { return BackendTag::mock; }
  std::string description() const override {
    return "mock(p=" + std::to_string(p_) + ", seed=" + std::to_string(seed_) + ")";
  }
  std::vector<std::uint8_t> encode_params() const override {
    std::vector<std::uint8_t> out;
    put_u64(out, p_);
    put_u64(out, seed_);
    return out;
  }
  const ScalarField& scalars() const override { return field_; }

  G1Elem g1_generator() const override { return make<G1Elem>(1); }
  G2Elem g2_generator() const override { return make<G2Elem>(1); }
  G1Elem g1_identity() const override { return {}; }
  G2Elem g2_identity() const override { return {}; }
  GTElem gt_identity() const override { return {}; }

  G1Elem mul(const G1Elem& a, const G1Elem& b) const override { return add_logs(a, b); }
  G2Elem mul(const G2Elem& a, const G2Elem& b) const override { return add_logs(a, b); }
  GTElem mul(const GTElem& a, const GTElem& b) const override { return add_logs(a, b); }
  G1Elem inverse(const G1Elem& a) const override { return negate(a); }
  G2Elem inverse(const G2Elem& a) const override { return negate(a); }
  GTElem inverse(const GTElem& a) const override { return negate(a); }
  G1Elem exp(const G1Elem& a, const Scalar& s) const override { return scale(a, s); }
  G2Elem exp(const G2Elem& a, const Scalar& s) const override { return scale(a, s); }
  GTElem exp(const GTElem& a, const Scalar& s) const override { return scale(a, s); }
  G1Elem multi_exp(std::span<const G1Elem> b, std::span<const Scalar> s) const override { return dot(b, s); }
  G2Elem multi_exp(std::span<const G2Elem> b, std::span<const Scalar> s) const override { return dot(b, s); }
  GTElem multi_exp(std::span<const GTElem> b, std::span<const Scalar> s) const override { return dot(b, s); }

  GTElem multi_pair(std::span<const G1Elem> xs, std::span<const G2Elem> ys) const override {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) acc = (acc + mulmod(log_word(xs[i]), log_word(ys[i]), p_)) % p_;
    return make<GTElem>(acc);
  }

  std::shared_ptr<const void> prepare(const G1Elem&) const override { return nullptr; }
  std::shared_ptr<const void> prepare(const G2Elem&) const override { return nullptr; }
  G1Elem exp_prepared(const FixedBase<G1Elem>& b, const Scalar& s) const override { return scale(b.base, s); }
  G2Elem exp_prepared(const FixedBase<G2Elem>& b, const Scalar& s) const override { return scale(b.base, s); }

  std::vector<std::uint8_t> encode(const G1Elem& a) const override { return encode_log(a); }
  std::vector<std::uint8_t> encode(const G2Elem& a) const override { return encode_log(a); }
  std::vector<std::uint8_t> encode(const GTElem& a) const override { return encode_log(a); }
  G1Elem decode_g1(std::span<const std::uint8_t> b) const override { return decode_log<G1Elem>(b); }
  G2Elem decode_g2(std::span<const std::uint8_t> b) const override { return decode_log<G2Elem>(b); }
  GTElem decode_gt(std::span<const std::uint8_t> b) const override { return decode_log<GTElem>(b); }

 private:
  static void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  template <class E>
  E add_logs(const E& a, const E& b) const {
    return make<E>((log_word(a) + log_word(b)) % p_);
  }
  template <class E>
  E negate(const E& a) const {
    return make<E>(log_word(a) == 0 ? 0 : p_ - log_word(a));
  }
  template <class E>
  E scale(const E& a, const Scalar& s) const {
    return make<E>(mulmod(log_word(a), s.low() % p_, p_));
  }
  template <class E>
  E dot(std::span<const E> bases, std::span<const Scalar> scalars) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < bases.size(); ++i) acc = (acc + mulmod(log_word(bases[i]), scalars[i].low() % p_, p_)) % p_;
    return make<E>(acc);
  }
  template <class E>
  std::vector<std::uint8_t> encode_log(const E& a) const {
    std::vector<std::uint8_t> out;
    put_u64(out, log_word(a));
    return out;
  }
  template <class E>
  E decode_log(std::span<const std::uint8_t> b) const {
    if (b.size() != 8) fail(ErrorKind::malformed, "mock element must be 8 bytes");
    std::uint64_t v = 0;
    for (auto byte : b) v = v << 8 | byte;
    if (v >= p_) fail(ErrorKind::malformed, "mock element out of range");
    return make<E>(v);
  }

  std::uint64_t p_;
  std::uint64_t seed_;
  MockField field_;
};

}  // namespace

std::shared_ptr<const Backend> make_mock_backend(std::uint64_t p, std::uint64_t seed) {
  require(p >= 101, "mock group order must be at least 101");
  require(p < (std::uint64_t{1} << 62), "mock group order must be below 2^62");
  require(is_prime(p), "mock group order must be prime");
  return std::make_shared<MockBackend>(p, seed);
}

}  // namespace ahibe::pairing::detail

namespace ahibe::pairing {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++r;
  }
  // These witnesses are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace ahibe::pairing

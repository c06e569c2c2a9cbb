#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ahibe/pairing/counter.hpp"
#include "ahibe/pairing/scalar.hpp"

namespace ahibe::pairing {

enum class GroupId : std::uint8_t { g1, g2, gt };

/// Backend-opaque group element. The words hold either an affine curve point
/// or target-group value in canonical form (concrete backend) or a discrete
/// logarithm in word 0 (mock backend); equal elements have equal words.
template <GroupId Id, std::size_t Words>
class Element {
 public:
  static constexpr GroupId group = Id;
  static constexpr std::size_t kWords = Words;

  Element() = default;
  std::array<std::uint64_t, Words>& words() { return words_; }
  const std::array<std::uint64_t, Words>& words() const { return words_; }

  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::array<std::uint64_t, Words> words_{};
};

using G1Elem = Element<GroupId::g1, 12>;  // sizeof(blst_p1_affine) / 8
using G2Elem = Element<GroupId::g2, 24>;  // sizeof(blst_p2_affine) / 8
using GTElem = Element<GroupId::gt, 72>;  // sizeof(blst_fp12) / 8

enum class BackendTag : std::uint8_t { concrete = 1, mock = 2 };
enum class CurveId : std::uint8_t { bls12_381 = 1 };

/// Precomputed table for repeated exponentiation of one fixed base.
template <class E>
struct FixedBase {
  E base;
  std::shared_ptr<const void> table;  // backend-specific; may be null
};

/// One term of a multi-exponentiation; `table` optionally accelerates `base`.
template <class E>
struct ExpTerm {
  const E* base = nullptr;
  const FixedBase<E>* table = nullptr;
  Scalar exponent;
};

namespace detail {

class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendTag tag() const = 0;
  virtual std::string description() const = 0;
  virtual std::vector<std::uint8_t> encode_params() const = 0;
  virtual const ScalarField& scalars() const = 0;

  virtual G1Elem g1_generator() const = 0;
  virtual G2Elem g2_generator() const = 0;
  virtual G1Elem g1_identity() const = 0;
  virtual G2Elem g2_identity() const = 0;
  virtual GTElem gt_identity() const = 0;

  virtual G1Elem mul(const G1Elem& a, const G1Elem& b) const = 0;
  virtual G2Elem mul(const G2Elem& a, const G2Elem& b) const = 0;
  virtual GTElem mul(const GTElem& a, const GTElem& b) const = 0;
  virtual G1Elem inverse(const G1Elem& a) const = 0;
  virtual G2Elem inverse(const G2Elem& a) const = 0;
  virtual GTElem inverse(const GTElem& a) const = 0;
  virtual G1Elem exp(const G1Elem& a, const Scalar& s) const = 0;
  virtual G2Elem exp(const G2Elem& a, const Scalar& s) const = 0;
  virtual GTElem exp(const GTElem& a, const Scalar& s) const = 0;
  virtual G1Elem multi_exp(std::span<const G1Elem> bases, std::span<const Scalar> scalars) const = 0;
  virtual G2Elem multi_exp(std::span<const G2Elem> bases, std::span<const Scalar> scalars) const = 0;
  virtual GTElem multi_exp(std::span<const GTElem> bases, std::span<const Scalar> scalars) const = 0;
  virtual GTElem multi_pair(std::span<const G1Elem> xs, std::span<const G2Elem> ys) const = 0;

  virtual std::shared_ptr<const void> prepare(const G1Elem& base) const = 0;
  virtual std::shared_ptr<const void> prepare(const G2Elem& base) const = 0;
  virtual G1Elem exp_prepared(const FixedBase<G1Elem>& base, const Scalar& s) const = 0;
  virtual G2Elem exp_prepared(const FixedBase<G2Elem>& base, const Scalar& s) const = 0;

  virtual std::vector<std::uint8_t> encode(const G1Elem& a) const = 0;
  virtual std::vector<std::uint8_t> encode(const G2Elem& a) const = 0;
  virtual std::vector<std::uint8_t> encode(const GTElem& a) const = 0;
  /// Throw ahibe::Error(malformed) on anything that is not a canonical
  /// encoding of an order-p element.
  virtual G1Elem decode_g1(std::span<const std::uint8_t> bytes) const = 0;
  virtual G2Elem decode_g2(std::span<const std::uint8_t> bytes) const = 0;
  virtual GTElem decode_gt(std::span<const std::uint8_t> bytes) const = 0;
};

}  // namespace detail

/// An asymmetric bilinear group (p, G, Ĝ, G_T, e) with fixed generators g, ĝ.
///
/// Immutable and cheap to copy; copies share the backend. Every exponentiation
/// and pairing issued through the suite is recorded in the thread's active
/// CountingScope, if any.
class GroupSuite {
 public:
  /// Exponent-bookkeeping backend over Z_p: each element is its discrete log
  /// relative to the fixed generator. `p` must be a prime in [101, 2^62).
  static GroupSuite mock(std::uint64_t p, std::uint64_t seed);
  /// Pairing-friendly type-III curve.
  static GroupSuite concrete(CurveId curve = CurveId::bls12_381);
  static GroupSuite concrete(const std::string& curve_name);

  BackendTag backend() const { return impl_->tag(); }
  bool is_mock() const { return backend() == BackendTag::mock; }
  std::string description() const { return impl_->description(); }
  const ScalarField& scalars() const { return impl_->scalars(); }
  const Scalar& order() const { return scalars().modulus(); }

  G1Elem g1() const { return impl_->g1_generator(); }
  G2Elem g2() const { return impl_->g2_generator(); }
  G1Elem identity_g1() const { return impl_->g1_identity(); }
  G2Elem identity_g2() const { return impl_->g2_identity(); }
  GTElem identity_gt() const { return impl_->gt_identity(); }
  /// e(g, ĝ); computed on each call, not counted.
  GTElem gt_generator() const;

  template <class E>
  E identity() const;

  template <class E>
  E mul(const E& a, const E& b) const { return impl_->mul(a, b); }
  template <class E>
  E inverse(const E& a) const { return impl_->inverse(a); }
  template <class E>
  E div(const E& a, const E& b) const { return impl_->mul(a, impl_->inverse(b)); }

  G1Elem exp(const G1Elem& a, const Scalar& s) const;
  G2Elem exp(const G2Elem& a, const Scalar& s) const;
  GTElem exp(const GTElem& a, const Scalar& s) const;

  /// ∏ bases[i]^scalars[i]. Throws invalid_argument on empty or unequal lists.
  G1Elem multi_exp(std::span<const G1Elem> bases, std::span<const Scalar> scalars) const;
  G2Elem multi_exp(std::span<const G2Elem> bases, std::span<const Scalar> scalars) const;
  GTElem multi_exp(std::span<const GTElem> bases, std::span<const Scalar> scalars) const;

  GTElem pair(const G1Elem& x, const G2Elem& y) const;
  /// ∏ e(xs[i], ys[i]) with a single final exponentiation.
  GTElem multi_pair(std::span<const G1Elem> xs, std::span<const G2Elem> ys) const;

  FixedBase<G1Elem> prepare(const G1Elem& base) const { return {base, impl_->prepare(base)}; }
  FixedBase<G2Elem> prepare(const G2Elem& base) const { return {base, impl_->prepare(base)}; }
  /// Counted as a single exponentiation.
  G1Elem exp(const FixedBase<G1Elem>& base, const Scalar& s) const;
  G2Elem exp(const FixedBase<G2Elem>& base, const Scalar& s) const;
  /// Counted as one m-term multi-exponentiation; prepared terms use their tables.
  G1Elem multi_exp(std::span<const ExpTerm<G1Elem>> terms) const;
  G2Elem multi_exp(std::span<const ExpTerm<G2Elem>> terms) const;

  std::vector<std::uint8_t> encode(const G1Elem& a) const { return impl_->encode(a); }
  std::vector<std::uint8_t> encode(const G2Elem& a) const { return impl_->encode(a); }
  std::vector<std::uint8_t> encode(const GTElem& a) const { return impl_->encode(a); }
  template <class E>
  E decode(std::span<const std::uint8_t> bytes) const;

  /// Backend tag byte followed by the backend parameters.
  std::vector<std::uint8_t> serialize() const;
  /// Parses a serialized suite from the front of `bytes`; `consumed` receives
  /// the number of bytes read.
  static GroupSuite deserialize(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

  /// Same backend and parameters.
  friend bool operator==(const GroupSuite& a, const GroupSuite& b) { return a.serialize() == b.serialize(); }

  const detail::Backend& backend_impl() const { return *impl_; }

 private:
  explicit GroupSuite(std::shared_ptr<const detail::Backend> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::Backend> impl_;
};

template <>
inline G1Elem GroupSuite::identity<G1Elem>() const { return identity_g1(); }
template <>
inline G2Elem GroupSuite::identity<G2Elem>() const { return identity_g2(); }
template <>
inline GTElem GroupSuite::identity<GTElem>() const { return identity_gt(); }
template <>
inline G1Elem GroupSuite::decode<G1Elem>(std::span<const std::uint8_t> b) const { return impl_->decode_g1(b); }
template <>
inline G2Elem GroupSuite::decode<G2Elem>(std::span<const std::uint8_t> b) const { return impl_->decode_g2(b); }
template <>
inline GTElem GroupSuite::decode<GTElem>(std::span<const std::uint8_t> b) const { return impl_->decode_gt(b); }

/// Discrete-log view of mock-backend elements, for exponent-level assertions.
/// Throws invalid_argument when `suite` is not a mock suite.
namespace mock {
Scalar log_of(const GroupSuite& suite, const G1Elem& a);
Scalar log_of(const GroupSuite& suite, const G2Elem& a);
Scalar log_of(const GroupSuite& suite, const GTElem& a);
/// Element with the given discrete log.
template <class E>
E from_log(const GroupSuite& suite, const Scalar& log);
}  // namespace mock

bool is_prime(std::uint64_t n);

}  // namespace ahibe::pairing

#include <cctype>

#include "ahibe/error.hpp"
#include "ahibe/pairing/group.hpp"
#include "backends.hpp"

namespace ahibe::pairing {
namespace {

template <class B, class S>
void check_lists(const B& bases, const S& scalars, const char* what) {
  require(!bases.empty(), std::string(what) + ": empty input");
  require(bases.size() == scalars.size(), std::string(what) + ": length mismatch");
}

unsigned arity(std::size_t n) { return static_cast<unsigned>(n); }

template <class E>
E fold_terms(const detail::Backend& impl, std::span<const ExpTerm<E>> terms) {
  std::vector<E> plain;
  std::vector<Scalar> plain_scalars;
  E acc{};
  bool have = false;
  for (const auto& t : terms) {
    require(t.base != nullptr || t.table != nullptr, "multi_exp: term without a base");
    if (t.table != nullptr) {
      E part = impl.exp_prepared(*t.table, t.exponent);
      acc = have ? impl.mul(acc, part) : part;
      have = true;
    } else {
      plain.push_back(*t.base);
      plain_scalars.push_back(t.exponent);
    }
  }
  if (!plain.empty()) {
    E part = impl.multi_exp(std::span<const E>(plain), std::span<const Scalar>(plain_scalars));
    acc = have ? impl.mul(acc, part) : part;
  }
  return acc;
}

}  // namespace

GroupSuite GroupSuite::mock(std::uint64_t p, std::uint64_t seed) { return GroupSuite(detail::make_mock_backend(p, seed)); }

GroupSuite GroupSuite::concrete(CurveId curve) {
  switch (curve) {
    case CurveId::bls12_381: return GroupSuite(detail::bls12_381_backend());
  }
  fail(ErrorKind::invalid_argument, "unknown curve id");
}

GroupSuite GroupSuite::concrete(const std::string& curve_name) {
  std::string name;
  for (char c : curve_name) {
    if (c != '-' && c != '_') name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (name == "bls12381" || name == "default") return concrete(CurveId::bls12_381);
  fail(ErrorKind::invalid_argument, "unknown curve: " + curve_name);
}

GTElem GroupSuite::gt_generator() const {
  G1Elem g = g1();
  G2Elem gh = g2();
  return impl_->multi_pair(std::span<const G1Elem>(&g, 1), std::span<const G2Elem>(&gh, 1));
}

G1Elem GroupSuite::exp(const G1Elem& a, const Scalar& s) const {
  detail::count({OpKind::exp_g1});
  return impl_->exp(a, s);
}
G2Elem GroupSuite::exp(const G2Elem& a, const Scalar& s) const {
  detail::count({OpKind::exp_g2});
  return impl_->exp(a, s);
}
GTElem GroupSuite::exp(const GTElem& a, const Scalar& s) const {
  detail::count({OpKind::exp_gt});
  return impl_->exp(a, s);
}

G1Elem GroupSuite::multi_exp(std::span<const G1Elem> bases, std::span<const Scalar> scalars) const {
  check_lists(bases, scalars, "multi_exp");
  detail::count({OpKind::mexp_g1, arity(bases.size())});
  return impl_->multi_exp(bases, scalars);
}
G2Elem GroupSuite::multi_exp(std::span<const G2Elem> bases, std::span<const Scalar> scalars) const {
  check_lists(bases, scalars, "multi_exp");
  detail::count({OpKind::mexp_g2, arity(bases.size())});
  return impl_->multi_exp(bases, scalars);
}
GTElem GroupSuite::multi_exp(std::span<const GTElem> bases, std::span<const Scalar> scalars) const {
  check_lists(bases, scalars, "multi_exp");
  detail::count({OpKind::mexp_gt, arity(bases.size())});
  return impl_->multi_exp(bases, scalars);
}

GTElem GroupSuite::pair(const G1Elem& x, const G2Elem& y) const {
  detail::count({OpKind::pair});
  return impl_->multi_pair(std::span<const G1Elem>(&x, 1), std::span<const G2Elem>(&y, 1));
}

GTElem GroupSuite::multi_pair(std::span<const G1Elem> xs, std::span<const G2Elem> ys) const {
  check_lists(xs, ys, "multi_pair");
  detail::count({OpKind::mpair, arity(xs.size())});
  return impl_->multi_pair(xs, ys);
}

G1Elem GroupSuite::exp(const FixedBase<G1Elem>& base, const Scalar& s) const {
  detail::count({OpKind::exp_g1});
  return impl_->exp_prepared(base, s);
}
G2Elem GroupSuite::exp(const FixedBase<G2Elem>& base, const Scalar& s) const {
  detail::count({OpKind::exp_g2});
  return impl_->exp_prepared(base, s);
}

G1Elem GroupSuite::multi_exp(std::span<const ExpTerm<G1Elem>> terms) const {
  require(!terms.empty(), "multi_exp: empty input");
  detail::count({OpKind::mexp_g1, arity(terms.size())});
  return fold_terms<G1Elem>(*impl_, terms);
}
G2Elem GroupSuite::multi_exp(std::span<const ExpTerm<G2Elem>> terms) const {
  require(!terms.empty(), "multi_exp: empty input");
  detail::count({OpKind::mexp_g2, arity(terms.size())});
  return fold_terms<G2Elem>(*impl_, terms);
}

std::vector<std::uint8_t> GroupSuite::serialize() const {
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(impl_->tag())};
  auto params = impl_->encode_params();
  out.insert(out.end(), params.begin(), params.end());
  return out;
}

GroupSuite GroupSuite::deserialize(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
  if (bytes.empty()) fail(ErrorKind::malformed, "empty suite encoding");
  switch (static_cast<BackendTag>(bytes[0])) {
    case BackendTag::concrete: {
      if (bytes.size() < 2) fail(ErrorKind::malformed, "truncated suite encoding");
      if (bytes[1] != static_cast<std::uint8_t>(CurveId::bls12_381)) fail(ErrorKind::malformed, "unknown curve id");
      if (consumed) *consumed = 2;
      return concrete(CurveId::bls12_381);
    }
    case BackendTag::mock: {
      if (bytes.size() < 17) fail(ErrorKind::malformed, "truncated suite encoding");
      std::uint64_t p = 0, seed = 0;
      for (std::size_t i = 0; i < 8; ++i) p = p << 8 | bytes[1 + i];
      for (std::size_t i = 0; i < 8; ++i) seed = seed << 8 | bytes[9 + i];
      if (consumed) *consumed = 17;
      try {
        return mock(p, seed);
      } catch (const Error& e) {
        fail(ErrorKind::malformed, e.what());
      }
    }
  }
  fail(ErrorKind::malformed, "unknown backend tag");
}

namespace mock {
namespace {
template <class E>
Scalar log_word(const GroupSuite& suite, const E& a) {
  require(suite.is_mock(), "discrete logs are only available on the mock backend");
  return Scalar::from_u64(a.words()[0]);
}
}  // namespace

Scalar log_of(const GroupSuite& suite, const G1Elem& a) { return log_word(suite, a); }
Scalar log_of(const GroupSuite& suite, const G2Elem& a) { return log_word(suite, a); }
Scalar log_of(const GroupSuite& suite, const GTElem& a) { return log_word(suite, a); }

template <class E>
E from_log(const GroupSuite& suite, const Scalar& log) {
  require(suite.is_mock(), "discrete logs are only available on the mock backend");
  require(suite.scalars().contains(log), "log out of range");
  E e;
  e.words()[0] = log.low();
  return e;
}

template G1Elem from_log<G1Elem>(const GroupSuite&, const Scalar&);
template G2Elem from_log<G2Elem>(const GroupSuite&, const Scalar&);
template GTElem from_log<GTElem>(const GroupSuite&, const Scalar&);
}  // namespace mock

}  // namespace ahibe::pairing

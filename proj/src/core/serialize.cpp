#include "ahibe/core/serialize.hpp"

#include <algorithm>
#include <string>

#include "ahibe/error.hpp"

namespace ahibe::core {
namespace {

constexpr std::uint8_t kMagic[4] = {'A', 'H', 'I', 'B'};
constexpr std::uint8_t kVersion = 1;

class Writer {
 public:
  Writer(const PublicParams& pp, ObjectKind kind) : suite_(pp.suite) {
    out_.assign(std::begin(kMagic), std::end(kMagic));
    out_.push_back(kVersion);
    auto s = suite_.serialize();
    out_.insert(out_.end(), s.begin(), s.end());
    u16(pp.l);
    out_.push_back(static_cast<std::uint8_t>(kind));
  }

  void u16(std::size_t v) {
    if (v > 0xFFFF) fail(ErrorKind::invalid_argument, "value does not fit in 16 bits");
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void u32(std::size_t v) {
    for (int i = 3; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void blob(const std::vector<std::uint8_t>& b) {
    u16(b.size());
    out_.insert(out_.end(), b.begin(), b.end());
  }
  void scalar(const Scalar& s) {
    auto be = s.to_be_bytes();
    std::size_t width = suite_.scalars().byte_width();
    blob(std::vector<std::uint8_t>(be.end() - static_cast<std::ptrdiff_t>(width), be.end()));
  }

  // Elements are buffered so the count can precede them.
  template <class E>
  void element(const E& e) {
    elements_.push_back(suite_.encode(e));
  }
  template <class E, std::size_t N>
  void elements(const std::array<E, N>& es) {
    for (const auto& e : es) element(e);
  }

  std::vector<std::uint8_t> finish() {
    u32(elements_.size());
    for (const auto& e : elements_) blob(e);
    return std::move(out_);
  }

 private:
  const GroupSuite& suite_;
  std::vector<std::uint8_t> out_;
  std::vector<std::vector<std::uint8_t>> elements_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) fail(ErrorKind::malformed, "truncated input");
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::size_t u16() {
    auto b = take(2);
    return static_cast<std::size_t>(b[0]) << 8 | b[1];
  }
  std::size_t u32() {
    auto b = take(4);
    std::size_t v = 0;
    for (auto x : b) v = v << 8 | x;
    return v;
  }
  std::span<const std::uint8_t> blob() { return take(u16()); }
  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }
  void skip(std::size_t n) { take(n); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct Header {
  GroupSuite suite;
  unsigned l;
  ObjectKind kind;
};

Header read_header(Reader& r, ObjectKind expected) {
  auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) fail(ErrorKind::malformed, "bad magic");
  if (r.u8() != kVersion) fail(ErrorKind::malformed, "unsupported format version");
  std::size_t used = 0;
  auto suite = GroupSuite::deserialize(r.rest(), &used);
  r.skip(used);
  auto l = static_cast<unsigned>(r.u16());
  auto kind = static_cast<ObjectKind>(r.u8());
  if (kind != expected) fail(ErrorKind::malformed, "unexpected object kind");
  if (l == 0) fail(ErrorKind::malformed, "maximum depth is zero");
  return {suite, l, kind};
}

void match(const Header& h, const PublicParams& pp) {
  if (!(h.suite == pp.suite)) fail(ErrorKind::malformed, "object was made under a different group suite");
  if (h.l != pp.l) fail(ErrorKind::malformed, "object was made for a different maximum depth");
}

// Decodes the counted element list in order.
class Elements {
 public:
  Elements(Reader& r, const GroupSuite& suite, std::size_t expected) : r_(r), suite_(suite), left_(r.u32()) {
    if (left_ != expected) {
      fail(ErrorKind::malformed, "expected " + std::to_string(expected) + " elements, found " + std::to_string(left_));
    }
  }
  template <class E>
  E next() {
    --left_;
    return suite_.decode<E>(r_.blob());
  }
  template <class E, std::size_t N>
  std::array<E, N> next_array() {
    std::array<E, N> out;
    for (auto& e : out) e = next<E>();
    return out;
  }
  void finish() {
    if (!r_.done()) fail(ErrorKind::malformed, "trailing bytes");
  }

 private:
  Reader& r_;
  const GroupSuite& suite_;
  std::size_t left_;
};

}  // namespace

std::vector<std::uint8_t> serialize(const PublicParams& pp) {
  Writer w(pp, ObjectKind::public_params);
  w.elements(pp.g);
  w.elements(pp.h);
  for (const auto& u : pp.u) w.elements(u);
  w.element(pp.w_phi1);
  w.element(pp.w_phi2);
  w.element(pp.w);
  w.element(pp.omega);
  return w.finish();
}

std::vector<std::uint8_t> serialize(const MasterKey& mk, const PublicParams& pp) {
  Writer w(pp, ObjectKind::master_key);
  w.element(mk.g_hat);
  w.element(mk.g_hat_alpha);
  w.element(mk.h_hat);
  for (const auto& u : mk.u_hat) w.element(u);
  return w.finish();
}

std::vector<std::uint8_t> serialize(const PrivateKey& sk, const PublicParams& pp) {
  check_key_shape(sk, pp);
  Writer w(pp, ObjectKind::private_key);
  w.u16(sk.id.depth());
  for (const auto& c : sk.id.components()) w.scalar(c);
  w.elements(sk.k1);
  w.elements(sk.k2);
  for (const auto& b : sk.l3) w.elements(b);
  w.elements(sk.r1);
  w.elements(sk.r2);
  for (const auto& b : sk.r3) w.elements(b);
  return w.finish();
}

std::vector<std::uint8_t> serialize(const Ciphertext& ct, const PublicParams& pp) {
  Writer w(pp, ObjectKind::ciphertext);
  w.element(ct.c);
  w.elements(ct.c1);
  w.elements(ct.c2);
  return w.finish();
}

ObjectKind peek_kind(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) fail(ErrorKind::malformed, "bad magic");
  if (r.u8() != kVersion) fail(ErrorKind::malformed, "unsupported format version");
  std::size_t used = 0;
  GroupSuite::deserialize(r.rest(), &used);
  r.skip(used);
  r.u16();
  auto kind = r.u8();
  switch (static_cast<ObjectKind>(kind)) {
    case ObjectKind::public_params:
    case ObjectKind::master_key:
    case ObjectKind::private_key:
    case ObjectKind::ciphertext:
      return static_cast<ObjectKind>(kind);
  }
  fail(ErrorKind::malformed, "unknown object kind");
}

PublicParams deserialize_public_params(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto h = read_header(r, ObjectKind::public_params);
  PublicParams pp{h.suite};
  pp.l = h.l;
  Elements e(r, h.suite, 6 + 3 * std::size_t{h.l} + 4);
  pp.g = e.next_array<G1Elem, 3>();
  pp.h = e.next_array<G1Elem, 3>();
  for (unsigned i = 0; i < h.l; ++i) pp.u.push_back(e.next_array<G1Elem, 3>());
  pp.w_phi1 = e.next<G2Elem>();
  pp.w_phi2 = e.next<G2Elem>();
  pp.w = e.next<G2Elem>();
  pp.omega = e.next<GTElem>();
  e.finish();
  if (!(pp.g[0] == h.suite.g1())) fail(ErrorKind::malformed, "public parameters use a foreign generator");
  return pp;
}

MasterKey deserialize_master_key(std::span<const std::uint8_t> bytes, const PublicParams& pp) {
  Reader r(bytes);
  auto h = read_header(r, ObjectKind::master_key);
  match(h, pp);
  MasterKey mk;
  Elements e(r, pp.suite, 3 + std::size_t{pp.l});
  mk.g_hat = e.next<G2Elem>();
  mk.g_hat_alpha = e.next<G2Elem>();
  mk.h_hat = e.next<G2Elem>();
  for (unsigned i = 0; i < pp.l; ++i) mk.u_hat.push_back(e.next<G2Elem>());
  e.finish();
  return mk;
}

PrivateKey deserialize_private_key(std::span<const std::uint8_t> bytes, const PublicParams& pp) {
  Reader r(bytes);
  auto h = read_header(r, ObjectKind::private_key);
  match(h, pp);
  std::size_t depth = r.u16();
  if (depth > pp.l) fail(ErrorKind::malformed, "key depth exceeds the maximum depth");
  const auto& F = pp.suite.scalars();
  std::vector<Scalar> comps;
  for (std::size_t i = 0; i < depth; ++i) {
    auto b = r.blob();
    if (b.size() != F.byte_width()) fail(ErrorKind::malformed, "bad identity component length");
    auto c = Scalar::from_be_bytes(b);
    if (!F.contains(c) || c.is_zero()) fail(ErrorKind::malformed, "identity component outside Z_p^*");
    comps.push_back(c);
  }
  PrivateKey sk;
  sk.id = HierarchicalIdentity(std::move(comps));
  const std::size_t free_levels = pp.l - depth;
  Elements e(r, pp.suite, 12 + 6 * free_levels);
  sk.k1 = e.next_array<G2Elem, 3>();
  sk.k2 = e.next_array<G2Elem, 3>();
  for (std::size_t i = 0; i < free_levels; ++i) sk.l3.push_back(e.next_array<G2Elem, 3>());
  sk.r1 = e.next_array<G2Elem, 3>();
  sk.r2 = e.next_array<G2Elem, 3>();
  for (std::size_t i = 0; i < free_levels; ++i) sk.r3.push_back(e.next_array<G2Elem, 3>());
  e.finish();
  return sk;
}

Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes, const PublicParams& pp) {
  Reader r(bytes);
  auto h = read_header(r, ObjectKind::ciphertext);
  match(h, pp);
  Ciphertext ct;
  Elements e(r, pp.suite, 7);
  ct.c = e.next<GTElem>();
  ct.c1 = e.next_array<G1Elem, 3>();
  ct.c2 = e.next_array<G1Elem, 3>();
  e.finish();
  return ct;
}

}  // namespace ahibe::core

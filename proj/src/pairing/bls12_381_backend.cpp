// BLS12-381 backend. Curve and field arithmetic come from blst; this file
// adds canonical element storage, multi-exponentiation, target-group
// exponentiation, fixed-base tables and the wire encodings.

#include <blst.h>

#include <array>
#include <cstring>
#include <vector>

#include "ahibe/error.hpp"
#include "backends.hpp"
#include "straus.hpp"

namespace ahibe::pairing::detail {
namespace {

static_assert(sizeof(blst_p1_affine) == G1Elem::kWords * 8);
static_assert(sizeof(blst_p2_affine) == G2Elem::kWords * 8);
static_assert(sizeof(blst_fp12) == GTElem::kWords * 8);

constexpr std::size_t kScalarBits = 255;
constexpr std::size_t kG1Bytes = 48;
constexpr std::size_t kG2Bytes = 96;
constexpr std::size_t kFpBytes = 48;
constexpr std::size_t kGTBytes = 12 * kFpBytes;

template <class To, class From>
To bit_copy(const From& from) {
  static_assert(sizeof(To) == sizeof(From));
  To to;
  std::memcpy(&to, &from, sizeof(To));
  return to;
}

blst_fr to_fr(const Scalar& s) {
  blst_fr fr;
  blst_fr_from_uint64(&fr, s.limbs().data());
  return fr;
}

Scalar from_fr(const blst_fr& fr) {
  std::array<std::uint64_t, 4> limbs{};
  blst_uint64_from_fr(limbs.data(), &fr);
  return Scalar(limbs);
}

class Bls12381Field final : public ScalarField {
 public:
  Bls12381Field()
      : modulus_({0xffffffff00000001ULL, 0x53bda402fffe5bfeULL, 0x3339d80809a1d805ULL, 0x73eda753299d7d48ULL}) {}

  const Scalar& modulus() const override { return modulus_; }
  Scalar add(const Scalar& a, const Scalar& b) const override { return binary(a, b, blst_fr_add); }
  Scalar sub(const Scalar& a, const Scalar& b) const override { return binary(a, b, blst_fr_sub); }
  Scalar mul(const Scalar& a, const Scalar& b) const override { return binary(a, b, blst_fr_mul); }
  Scalar inverse(const Scalar& a) const override {
    require(!a.is_zero(), "inverse of zero");
    blst_fr x = to_fr(a), r;
    blst_fr_eucl_inverse(&r, &x);
    return from_fr(r);
  }
  Scalar reduce(std::span<const std::uint8_t> le_bytes) const override {
    blst_scalar s;
    blst_scalar_from_le_bytes(&s, le_bytes.data(), le_bytes.size());
    std::array<std::uint64_t, 4> limbs{};
    blst_uint64_from_scalar(limbs.data(), &s);
    return Scalar(limbs);
  }

 private:
  static Scalar binary(const Scalar& a, const Scalar& b, void (*op)(blst_fr*, const blst_fr*, const blst_fr*)) {
    blst_fr x = to_fr(a), y = to_fr(b), r;
    op(&r, &x, &y);
    return from_fr(r);
  }

  Scalar modulus_;
};

// Additive views of the three groups for the Straus kernel.
struct G1Ops {
  using Point = blst_p1;
  static Point identity() { return Point{}; }
  static void add(Point& out, const Point& a, const Point& b) { blst_p1_add_or_double(&out, &a, &b); }
  static void dbl(Point& out, const Point& a) { blst_p1_double(&out, &a); }
};

struct G2Ops {
  using Point = blst_p2;
  static Point identity() { return Point{}; }
  static void add(Point& out, const Point& a, const Point& b) { blst_p2_add_or_double(&out, &a, &b); }
  static void dbl(Point& out, const Point& a) { blst_p2_double(&out, &a); }
};

// Pairing outputs lie in the cyclotomic subgroup, so squaring can use the
// cheaper cyclotomic formula.
struct GTOps {
  using Point = blst_fp12;
  static Point identity() { return *blst_fp12_one(); }
  static void add(Point& out, const Point& a, const Point& b) { blst_fp12_mul(&out, &a, &b); }
  static void dbl(Point& out, const Point& a) { blst_fp12_cyclotomic_sqr(&out, &a); }
};

blst_p1 to_point(const G1Elem& e) {
  auto a = bit_copy<blst_p1_affine>(e.words());
  blst_p1 p;
  blst_p1_from_affine(&p, &a);
  return p;
}

blst_p2 to_point(const G2Elem& e) {
  auto a = bit_copy<blst_p2_affine>(e.words());
  blst_p2 p;
  blst_p2_from_affine(&p, &a);
  return p;
}

G1Elem from_point(const blst_p1& p) {
  blst_p1_affine a;
  blst_p1_to_affine(&a, &p);
  G1Elem e;
  std::memcpy(e.words().data(), &a, sizeof a);
  return e;
}

G2Elem from_point(const blst_p2& p) {
  blst_p2_affine a;
  blst_p2_to_affine(&a, &p);
  G2Elem e;
  std::memcpy(e.words().data(), &a, sizeof a);
  return e;
}

blst_fp12 to_fp12(const GTElem& e) { return bit_copy<blst_fp12>(e.words()); }

GTElem from_fp12(const blst_fp12& f) {
  GTElem e;
  std::memcpy(e.words().data(), &f, sizeof f);
  return e;
}

// Fixed-window table: entry [w][d-1] holds d * 16^w * base in affine form,
// so an exponentiation is at most 64 mixed additions and no doublings.
template <class Affine>
struct CombTable {
  static constexpr std::size_t kWindows = 64;
  static constexpr std::size_t kDigits = 15;
  std::vector<Affine> points;  // kWindows * kDigits

  const Affine& at(std::size_t window, unsigned digit) const { return points[window * kDigits + digit - 1]; }
};

template <class Affine, class Point, class Ops, class ToAffineBatch>
std::shared_ptr<const void> build_comb(const Point& base, ToAffineBatch to_affine_batch) {
  using Table = CombTable<Affine>;
  std::vector<Point> projective(Table::kWindows * Table::kDigits);
  Point window_base = base;
  for (std::size_t w = 0; w < Table::kWindows; ++w) {
    Point* row = &projective[w * Table::kDigits];
    row[0] = window_base;
    for (std::size_t d = 1; d < Table::kDigits; ++d) Ops::add(row[d], row[d - 1], window_base);
    for (int k = 0; k < 4; ++k) Ops::dbl(window_base, window_base);
  }
  auto table = std::make_shared<Table>();
  table->points.resize(projective.size());
  std::vector<const Point*> ptrs(projective.size());
  for (std::size_t i = 0; i < projective.size(); ++i) ptrs[i] = &projective[i];
  to_affine_batch(table->points.data(), ptrs.data(), ptrs.size());
  return table;
}

template <class Affine, class Point, class AddAffine>
Point comb_exp(const CombTable<Affine>& table, const Scalar& s, AddAffine add_affine) {
  Point acc{};
  for (std::size_t w = 0; w < CombTable<Affine>::kWindows; ++w) {
    unsigned digit = static_cast<unsigned>((s.limbs()[w / 16] >> (4 * (w % 16))) & 0xF);
    if (digit != 0) add_affine(&acc, &acc, &table.at(w, digit));
  }
  return acc;
}

class Bls12381Backend final : public Backend {
 public:
  BackendTag tag() const override { return BackendTag::concrete; }
  std::string description() const override { return "BLS12-381"; }
  std::vector<std::uint8_t> encode_params() const override { return {static_cast<std::uint8_t>(CurveId::bls12_381)}; }
  const ScalarField& scalars() const override { return field_; }

  G1Elem g1_generator() const override { return from_point(*blst_p1_generator()); }
  G2Elem g2_generator() const override { return from_point(*blst_p2_generator()); }
  G1Elem g1_identity() const override { return {}; }
  G2Elem g2_identity() const override { return {}; }
  GTElem gt_identity() const override { return from_fp12(*blst_fp12_one()); }

  G1Elem mul(const G1Elem& a, const G1Elem& b) const override {
    blst_p1 p = to_point(a);
    auto q = bit_copy<blst_p1_affine>(b.words());
    blst_p1_add_or_double_affine(&p, &p, &q);
    return from_point(p);
  }
  G2Elem mul(const G2Elem& a, const G2Elem& b) const override {
    blst_p2 p = to_point(a);
    auto q = bit_copy<blst_p2_affine>(b.words());
    blst_p2_add_or_double_affine(&p, &p, &q);
    return from_point(p);
  }
  GTElem mul(const GTElem& a, const GTElem& b) const override {
    blst_fp12 x = to_fp12(a), y = to_fp12(b), r;
    blst_fp12_mul(&r, &x, &y);
    return from_fp12(r);
  }

  G1Elem inverse(const G1Elem& a) const override {
    blst_p1 p = to_point(a);
    blst_p1_cneg(&p, true);
    return from_point(p);
  }
  G2Elem inverse(const G2Elem& a) const override {
    blst_p2 p = to_point(a);
    blst_p2_cneg(&p, true);
    return from_point(p);
  }
  // Unitary elements: the inverse is the conjugate.
  GTElem inverse(const GTElem& a) const override {
    blst_fp12 f = to_fp12(a);
    blst_fp12_conjugate(&f);
    return from_fp12(f);
  }

  G1Elem exp(const G1Elem& a, const Scalar& s) const override {
    blst_p1 p = to_point(a), r;
    auto bytes = s.to_le_bytes();
    blst_p1_mult(&r, &p, bytes.data(), kScalarBits);
    return from_point(r);
  }
  G2Elem exp(const G2Elem& a, const Scalar& s) const override {
    blst_p2 p = to_point(a), r;
    auto bytes = s.to_le_bytes();
    blst_p2_mult(&r, &p, bytes.data(), kScalarBits);
    return from_point(r);
  }
  GTElem exp(const GTElem& a, const Scalar& s) const override {
    blst_fp12 f = to_fp12(a);
    return from_fp12(straus<GTOps>(std::span<const blst_fp12>(&f, 1), std::span<const Scalar>(&s, 1)));
  }

  G1Elem multi_exp(std::span<const G1Elem> b, std::span<const Scalar> s) const override {
    if (b.size() < kStrausThreshold) return fold(b, s);
    std::vector<blst_p1> points;
    for (const auto& e : b) points.push_back(to_point(e));
    return from_point(straus<G1Ops>(points, s));
  }
  G2Elem multi_exp(std::span<const G2Elem> b, std::span<const Scalar> s) const override {
    if (b.size() < kStrausThreshold) return fold(b, s);
    std::vector<blst_p2> points;
    for (const auto& e : b) points.push_back(to_point(e));
    return from_point(straus<G2Ops>(points, s));
  }
  GTElem multi_exp(std::span<const GTElem> b, std::span<const Scalar> s) const override {
    std::vector<blst_fp12> values;
    for (const auto& e : b) values.push_back(to_fp12(e));
    return from_fp12(straus<GTOps>(values, s));
  }

  GTElem multi_pair(std::span<const G1Elem> xs, std::span<const G2Elem> ys) const override {
    std::vector<blst_p1_affine> ps;
    std::vector<blst_p2_affine> qs;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      auto p = bit_copy<blst_p1_affine>(xs[i].words());
      auto q = bit_copy<blst_p2_affine>(ys[i].words());
      if (blst_p1_affine_is_inf(&p) || blst_p2_affine_is_inf(&q)) continue;  // e(O, ·) = 1
      ps.push_back(p);
      qs.push_back(q);
    }
    if (ps.empty()) return gt_identity();
    std::vector<const blst_p1_affine*> p_ptrs;
    std::vector<const blst_p2_affine*> q_ptrs;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      p_ptrs.push_back(&ps[i]);
      q_ptrs.push_back(&qs[i]);
    }
    blst_fp12 f, r;
    blst_miller_loop_n(&f, q_ptrs.data(), p_ptrs.data(), ps.size());
    blst_final_exp(&r, &f);
    return from_fp12(r);
  }

  std::shared_ptr<const void> prepare(const G1Elem& base) const override {
    return build_comb<blst_p1_affine, blst_p1, G1Ops>(to_point(base), blst_p1s_to_affine);
  }
  std::shared_ptr<const void> prepare(const G2Elem& base) const override {
    return build_comb<blst_p2_affine, blst_p2, G2Ops>(to_point(base), blst_p2s_to_affine);
  }
  G1Elem exp_prepared(const FixedBase<G1Elem>& b, const Scalar& s) const override {
    if (!b.table) return exp(b.base, s);
    const auto& table = *static_cast<const CombTable<blst_p1_affine>*>(b.table.get());
    return from_point(comb_exp<blst_p1_affine, blst_p1>(table, s, blst_p1_add_or_double_affine));
  }
  G2Elem exp_prepared(const FixedBase<G2Elem>& b, const Scalar& s) const override {
    if (!b.table) return exp(b.base, s);
    const auto& table = *static_cast<const CombTable<blst_p2_affine>*>(b.table.get());
    return from_point(comb_exp<blst_p2_affine, blst_p2>(table, s, blst_p2_add_or_double_affine));
  }

  std::vector<std::uint8_t> encode(const G1Elem& a) const override {
    std::vector<std::uint8_t> out(kG1Bytes);
    auto aff = bit_copy<blst_p1_affine>(a.words());
    blst_p1_affine_compress(out.data(), &aff);
    return out;
  }
  std::vector<std::uint8_t> encode(const G2Elem& a) const override {
    std::vector<std::uint8_t> out(kG2Bytes);
    auto aff = bit_copy<blst_p2_affine>(a.words());
    blst_p2_affine_compress(out.data(), &aff);
    return out;
  }
  std::vector<std::uint8_t> encode(const GTElem& a) const override {
    std::vector<std::uint8_t> out(kGTBytes);
    blst_fp12 f = to_fp12(a);
    const blst_fp* coeffs = &f.fp6[0].fp2[0].fp[0];
    for (std::size_t i = 0; i < 12; ++i) blst_bendian_from_fp(out.data() + i * kFpBytes, &coeffs[i]);
    return out;
  }

  G1Elem decode_g1(std::span<const std::uint8_t> b) const override {
    if (b.size() != kG1Bytes) fail(ErrorKind::malformed, "G1 element must be 48 bytes");
    blst_p1_affine a;
    if (blst_p1_uncompress(&a, b.data()) != BLST_SUCCESS || !blst_p1_affine_in_g1(&a)) {
      fail(ErrorKind::malformed, "invalid G1 element encoding");
    }
    G1Elem e;
    std::memcpy(e.words().data(), &a, sizeof a);
    return e;
  }
  G2Elem decode_g2(std::span<const std::uint8_t> b) const override {
    if (b.size() != kG2Bytes) fail(ErrorKind::malformed, "G2 element must be 96 bytes");
    blst_p2_affine a;
    if (blst_p2_uncompress(&a, b.data()) != BLST_SUCCESS || !blst_p2_affine_in_g2(&a)) {
      fail(ErrorKind::malformed, "invalid G2 element encoding");
    }
    G2Elem e;
    std::memcpy(e.words().data(), &a, sizeof a);
    return e;
  }
  GTElem decode_gt(std::span<const std::uint8_t> b) const override {
    if (b.size() != kGTBytes) fail(ErrorKind::malformed, "GT element must be 576 bytes");
    blst_fp12 f;
    blst_fp* coeffs = &f.fp6[0].fp2[0].fp[0];
    for (std::size_t i = 0; i < 12; ++i) {
      blst_fp_from_bendian(&coeffs[i], b.data() + i * kFpBytes);
      std::array<std::uint8_t, kFpBytes> check{};
      blst_bendian_from_fp(check.data(), &coeffs[i]);
      if (std::memcmp(check.data(), b.data() + i * kFpBytes, kFpBytes) != 0) {
        fail(ErrorKind::malformed, "non-canonical GT coefficient");
      }
    }
    if (!blst_fp12_in_group(&f)) fail(ErrorKind::malformed, "GT element outside the order-r subgroup");
    return from_fp12(f);
  }

 private:
  // blst's single exponentiation uses the GLV/GLS endomorphism, which halves
  // the doublings; interleaving only wins once it is shared by 3+ bases.
  static constexpr std::size_t kStrausThreshold = 3;

  template <class E>
  E fold(std::span<const E> bases, std::span<const Scalar> scalars) const {
    E acc = exp(bases[0], scalars[0]);
    for (std::size_t i = 1; i < bases.size(); ++i) acc = mul(acc, exp(bases[i], scalars[i]));
    return acc;
  }

  Bls12381Field field_;
};

}  // namespace

std::shared_ptr<const Backend> bls12_381_backend() {
  static const auto instance = std::make_shared<const Bls12381Backend>();
  return instance;
}

}  // namespace ahibe::pairing::detail

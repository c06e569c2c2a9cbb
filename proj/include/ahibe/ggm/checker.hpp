#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ahibe/ggm/poly.hpp"

namespace ahibe::ggm {

using PolyList = std::vector<FormalPoly>;

/// Group holding the challenge T_b.
enum class ChallengeGroup { g1, g2, gt };

struct AssumptionInstance {
  std::string name;
  PolyList P;  // over G
  PolyList Q;  // over Ĝ
  PolyList R;  // over G_T
  FormalPoly T0, T1;
  ChallengeGroup challenge = ChallengeGroup::g1;

  /// Throws Error(invalid_argument) if T0 = T1 or P, Q or R is empty.
  void validate() const;
};

/// 3(q + 2l)^2 t / p.
struct Bound {
  std::size_t l = 0;
  unsigned t = 0;

  std::string symbolic() const;  // e.g. "3(q+12)^2*4/p"
  mpq_class evaluate(std::uint64_t q, const mpz_class& p) const;
};

struct Verdict {
  std::array<bool, 2> t_dependent_on_P{};
  std::array<bool, 2> pairing_dependent{};
  bool generic_secure = false;
  Bound bound;
  /// {e(T_b, Q_j)} as formal products (empty for a G_T challenge).
  std::array<PolyList, 2> challenge_products;
};

/// α·T = Σ β_i·P_i for some α ≠ 0, i.e. T lies in the rational span of P.
bool dependent_on(const FormalPoly& T, const PolyList& P);

/// Σ α_i·T·Q_i = Σ β_ij·P_i·Q_j + Σ γ_i·R_i with some α_i ≠ 0.
bool pairing_dependent(const FormalPoly& T, const PolyList& P, const PolyList& Q, const PolyList& R);

/// Distinct products {a·b}, in first-seen order.
PolyList products(const PolyList& as, const PolyList& bs);

/// Rank of the polynomials as vectors over the joint monomial basis.
std::size_t rank(const PolyList& polys);

/// Runs both tests for b = 0, 1. A challenge in Ĝ swaps the roles of P and Q;
/// a challenge in G_T is tested for membership in span({P_i·Q_j} ∪ R) and
/// has no pairing test.
Verdict check_assumption(const AssumptionInstance& inst);

/// The five assumptions of the scheme's security proof, n = 1..5.
AssumptionInstance builtin_assumption(int n);

/// Text format, one polynomial per line:
///   name: A5
///   challenge: G1        (G1 | G2 | GT, default G1)
///   P: A*B + 2*C
/// Sections P, Q, R, T0, T1; '#' starts a comment; R defaults to {1}.
AssumptionInstance parse_instance(std::string_view text);

std::string to_string(ChallengeGroup g);

}  // namespace ahibe::ggm

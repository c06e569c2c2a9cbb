#include "ahibe/ggm/checker.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ahibe/error.hpp"

namespace ahibe::ggm {
namespace {

FormalPoly P(std::string_view s) { return FormalPoly::parse(s); }

PolyList polys(std::initializer_list<std::string_view> xs) {
  PolyList out;
  for (auto x : xs) out.push_back(P(x));
  return out;
}

unsigned max_degree(const PolyList& ps) {
  unsigned d = 0;
  for (const auto& p : ps) d = std::max(d, p.degree());
  return d;
}

PolyList concat(PolyList a, const PolyList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::size_t rank(const PolyList& polys) {
  std::map<Monomial, std::size_t> column;
  for (const auto& p : polys) {
    for (const auto& [m, c] : p.terms()) column.emplace(m, column.size());
  }
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& p : polys) {
    std::vector<mpq_class> row(column.size());
    for (const auto& [m, c] : p.terms()) row[column[m]] = c;
    rows.push_back(std::move(row));
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < column.size() && r < rows.size(); ++col) {
    auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                              [&](const auto& row) { return row[col] != 0; });
    if (pivot == rows.end()) continue;
    std::swap(*pivot, rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      mpq_class f = rows[i][col] / rows[r][col];
      for (std::size_t j = col; j < column.size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

bool dependent_on(const FormalPoly& T, const PolyList& P) {
  if (T.is_zero()) return true;  // α·0 = 0 with any α
  return rank(concat(P, {T})) == rank(P);
}

PolyList products(const PolyList& as, const PolyList& bs) {
  PolyList out;
  for (const auto& a : as) {
    for (const auto& b : bs) {
      auto p = a * b;
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
  }
  return out;
}

bool pairing_dependent(const FormalPoly& T, const PolyList& P, const PolyList& Q, const PolyList& R) {
  // A nonzero α exists iff the |Q| vectors T·Q_i do not stay independent
  // modulo span(S), S = {P_i·Q_j} ∪ R.
  PolyList tq;
  for (const auto& q : Q) tq.push_back(T * q);
  PolyList S = concat(products(P, Q), R);
  return rank(concat(tq, S)) < tq.size() + rank(S);
}

void AssumptionInstance::validate() const {
  require(!P.empty() && !Q.empty() && !R.empty(), "P, Q and R must be non-empty");
  require(!(T0 == T1), "T0 and T1 must differ");
}

std::string Bound::symbolic() const {
  std::ostringstream s;
  s << "3(q+" << 2 * l << ")^2*" << t << "/p";
  return s.str();
}

mpq_class Bound::evaluate(std::uint64_t q, const mpz_class& p) const {
  require(p > 0, "group order must be positive");
  mpz_class base = mpz_class(std::to_string(q)) + 2 * static_cast<unsigned long>(l);
  mpq_class out(3 * base * base * t, p);
  out.canonicalize();
  return out;
}

Verdict check_assumption(const AssumptionInstance& inst) {
  inst.validate();
  Verdict v;
  const std::array<const FormalPoly*, 2> T{&inst.T0, &inst.T1};
  const PolyList pq = products(inst.P, inst.Q);
  unsigned t = std::max({max_degree(inst.P), max_degree(inst.Q), max_degree(inst.R), max_degree(pq),
                         inst.T0.degree(), inst.T1.degree()});

  if (inst.challenge == ChallengeGroup::gt) {
    PolyList span = concat(pq, inst.R);
    for (int b = 0; b < 2; ++b) v.t_dependent_on_P[b] = dependent_on(*T[b], span);
  } else {
    // The tests are stated for T over G; a Ĝ challenge uses the dual roles.
    bool swap = inst.challenge == ChallengeGroup::g2;
    const PolyList& same = swap ? inst.Q : inst.P;
    const PolyList& other = swap ? inst.P : inst.Q;
    for (int b = 0; b < 2; ++b) {
      v.t_dependent_on_P[b] = dependent_on(*T[b], same);
      v.pairing_dependent[b] = pairing_dependent(*T[b], same, other, inst.R);
      v.challenge_products[b] = products({*T[b]}, other);
      t = std::max(t, max_degree(v.challenge_products[b]));
    }
  }
  v.generic_secure = !(v.t_dependent_on_P[0] || v.t_dependent_on_P[1] || v.pairing_dependent[0] ||
                       v.pairing_dependent[1]);
  v.bound = {std::max({inst.P.size(), inst.Q.size(), inst.R.size()}), t};
  return v;
}

AssumptionInstance builtin_assumption(int n) {
  AssumptionInstance a;
  a.R = polys({"1"});
  a.T1 = P("D");
  switch (n) {
    case 1:
      a.name = "LW1";
      a.P = polys({"1", "A", "B", "A*B^2", "B^2", "B^3", "C", "A*C", "B*C", "B^2*C", "B^3*C"});
      a.Q = polys({"1", "B"});
      a.T0 = P("A*B^2*C");
      break;
    case 2:
      a.name = "LW2";
      a.P = polys({"1", "A", "A^2", "B*X", "A*B*X", "A^2*X"});
      a.Q = polys({"1", "A", "B", "C"});
      a.T0 = P("B*C");
      a.challenge = ChallengeGroup::g2;
      break;
    case 3:
      a.name = "SXDH";
      a.P = polys({"1"});
      a.Q = polys({"1", "A", "B"});
      a.T0 = P("A*B");
      a.challenge = ChallengeGroup::g2;
      break;
    case 4:
      a.name = "DBDH";
      a.P = polys({"1", "A", "B", "C"});
      a.Q = polys({"1", "A", "B", "C"});
      a.T0 = P("A*B*C");
      a.challenge = ChallengeGroup::gt;
      break;
    case 5:
      a.name = "A3DH";
      a.P = polys({"1", "A", "B", "C", "A*B", "A^2*B"});
      a.Q = polys({"1", "A", "B"});
      a.T0 = P("A*B*C");
      break;
    default:
      fail(ErrorKind::invalid_argument, "builtin assumptions are numbered 1 to 5");
  }
  return a;
}

std::string to_string(ChallengeGroup g) {
  switch (g) {
    case ChallengeGroup::g1: return "G1";
    case ChallengeGroup::g2: return "G2";
    case ChallengeGroup::gt: return "GT";
  }
  return "?";
}

AssumptionInstance parse_instance(std::string_view text) {
  AssumptionInstance inst;
  bool have_t0 = false, have_t1 = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    auto where = "line " + std::to_string(line_no) + ": ";
    if (colon == std::string::npos) fail(ErrorKind::malformed, where + "expected 'SECTION: value'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    std::string upper = key;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    try {
      if (upper == "NAME") {
        inst.name = value;
      } else if (upper == "CHALLENGE") {
        std::string g = value;
        std::transform(g.begin(), g.end(), g.begin(), [](unsigned char c) { return std::toupper(c); });
        if (g == "G1" || g == "G") inst.challenge = ChallengeGroup::g1;
        else if (g == "G2" || g == "GHAT") inst.challenge = ChallengeGroup::g2;
        else if (g == "GT") inst.challenge = ChallengeGroup::gt;
        else fail(ErrorKind::malformed, "unknown challenge group '" + value + "'");
      } else if (upper == "P") {
        inst.P.push_back(FormalPoly::parse(value));
      } else if (upper == "Q") {
        inst.Q.push_back(FormalPoly::parse(value));
      } else if (upper == "R") {
        inst.R.push_back(FormalPoly::parse(value));
      } else if (upper == "T0") {
        if (have_t0) fail(ErrorKind::malformed, "T0 given twice");
        inst.T0 = FormalPoly::parse(value);
        have_t0 = true;
      } else if (upper == "T1") {
        if (have_t1) fail(ErrorKind::malformed, "T1 given twice");
        inst.T1 = FormalPoly::parse(value);
        have_t1 = true;
      } else {
        fail(ErrorKind::malformed, "unknown section '" + key + "'");
      }
    } catch (const Error& e) {
      fail(ErrorKind::malformed, where + e.what());
    }
  }
  if (!have_t0 || !have_t1) fail(ErrorKind::malformed, "instance needs both T0 and T1");
  if (inst.R.empty()) inst.R.push_back(FormalPoly::constant(1));
  if (inst.P.empty() || inst.Q.empty()) fail(ErrorKind::malformed, "instance needs P and Q");
  if (inst.T0 == inst.T1) fail(ErrorKind::malformed, "T0 and T1 must differ");
  return inst;
}

}  // namespace ahibe::ggm

#pragma once

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <string_view>

namespace ahibe::ggm {

/// Product of formal variables with positive exponents; empty means 1.
using Monomial = std::map<std::string, unsigned>;

/// Sparse multivariate polynomial over Q. Zero coefficients are never stored.
class FormalPoly {
 public:
  FormalPoly() = default;
  static FormalPoly constant(const mpq_class& c);
  static FormalPoly variable(const std::string& name, unsigned power = 1);

  /// Parses e.g. "A*B + 2*C", "A^2*B - 1/3", "1". Throws Error(malformed).
  static FormalPoly parse(std::string_view text);

  const std::map<Monomial, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;
  std::set<std::string> variables() const;

  FormalPoly operator+(const FormalPoly& o) const;
  FormalPoly operator-(const FormalPoly& o) const;
  FormalPoly operator*(const FormalPoly& o) const;
  FormalPoly operator*(const mpq_class& c) const;

  friend bool operator==(const FormalPoly& a, const FormalPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const FormalPoly& a, const FormalPoly& b) { return a.terms_ < b.terms_; }

  /// Canonical text: terms by descending degree, variables sorted, e.g. "A^2*B*C + 1".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const mpq_class& c);
  std::map<Monomial, mpq_class> terms_;
};

std::string monomial_string(const Monomial& m);

}  // namespace ahibe::ggm

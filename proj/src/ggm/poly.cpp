#include "ahibe/ggm/poly.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "ahibe/error.hpp"

namespace ahibe::ggm {

FormalPoly FormalPoly::constant(const mpq_class& c) {
  FormalPoly p;
  p.add_term({}, c);
  return p;
}

FormalPoly FormalPoly::variable(const std::string& name, unsigned power) {
  FormalPoly p;
  Monomial m;
  if (power > 0) m[name] = power;
  p.add_term(m, 1);
  return p;
}

void FormalPoly::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned FormalPoly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned md = 0;
    for (const auto& [v, e] : m) md += e;
    d = std::max(d, md);
  }
  return d;
}

std::set<std::string> FormalPoly::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) out.insert(v);
  }
  return out;
}

FormalPoly FormalPoly::operator+(const FormalPoly& o) const {
  FormalPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

FormalPoly FormalPoly::operator-(const FormalPoly& o) const { return *this + o * mpq_class(-1); }

FormalPoly FormalPoly::operator*(const mpq_class& k) const {
  FormalPoly r;
  for (const auto& [m, c] : terms_) r.add_term(m, c * k);
  return r;
}

FormalPoly FormalPoly::operator*(const FormalPoly& o) const {
  FormalPoly r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [v, e] : m2) m[v] += e;
      r.add_term(m, c1 * c2);
    }
  }
  return r;
}

std::string monomial_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (const auto& [v, e] : m) {
    if (!out.empty()) out += '*';
    out += v;
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

std::string FormalPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, mpq_class>> sorted(terms_.begin(), terms_.end());
  auto deg = [](const Monomial& m) {
    unsigned d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
  };
  // Graded lex: higher degree first, then higher power of the earliest variable.
  auto lex_greater = [](const Monomial& a, const Monomial& b) {
    auto i = a.begin(), j = b.begin();
    for (; i != a.end() && j != b.end(); ++i, ++j) {
      if (i->first != j->first) return i->first < j->first;
      if (i->second != j->second) return i->second > j->second;
    }
    return i != a.end() && j == b.end();
  };
  std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
    if (deg(a.first) != deg(b.first)) return deg(a.first) > deg(b.first);
    return lex_greater(a.first, b.first);
  });
  std::string out;
  for (const auto& [m, c] : sorted) {
    mpq_class mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (m.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + '*';
      out += monomial_string(m);
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  FormalPoly parse_all() {
    FormalPoly p = sum();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::malformed, "polynomial \"" + std::string(s_) + "\": " + what);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FormalPoly sum() {
    bool negative = false;
    if (eat('-')) negative = true;
    else eat('+');
    FormalPoly acc = term();
    if (negative) acc = acc * mpq_class(-1);
    while (true) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  FormalPoly term() {
    FormalPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  unsigned power() {
    if (!eat('^')) return 1;
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected exponent after '^'");
    unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (e > 64) error("exponent too large");
    return static_cast<unsigned>(e);
  }

  static FormalPoly pow(const FormalPoly& base, unsigned e) {
    FormalPoly r = FormalPoly::constant(1);
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
  }

  FormalPoly factor() {
    skip_ws();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FormalPoly inner = sum();
      if (!eat(')')) error("missing ')'");
      return pow(inner, power());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class value(digits(), 10);
      if (eat('/')) {
        skip_ws();
        mpz_class den(digits(), 10);
        if (den == 0) error("zero denominator");
        value /= den;
      }
      return FormalPoly::constant(value);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      return FormalPoly::variable(name, power());
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

FormalPoly FormalPoly::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace ahibe::ggm

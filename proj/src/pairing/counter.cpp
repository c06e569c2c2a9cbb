#include "ahibe/pairing/counter.hpp"

#include <sstream>

namespace ahibe::pairing {

std::string OpClass::name() const {
  switch (kind) {
    case OpKind::exp_g1: return "exp_G1";
    case OpKind::exp_g2: return "exp_G2";
    case OpKind::exp_gt: return "exp_GT";
    case OpKind::mexp_g1: return "mexp_G1(" + std::to_string(terms) + ")";
    case OpKind::mexp_g2: return "mexp_G2(" + std::to_string(terms) + ")";
    case OpKind::mexp_gt: return "mexp_GT(" + std::to_string(terms) + ")";
    case OpKind::pair: return "pair";
    case OpKind::mpair: return "mpair(" + std::to_string(terms) + ")";
  }
  return "?";
}

void OpCounts::add(OpClass op, std::uint64_t n) {
  if (n != 0) counts_[op] += n;
}

std::uint64_t OpCounts::operator[](OpClass op) const {
  auto it = counts_.find(op);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t OpCounts::total() const {
  std::uint64_t t = 0;
  for (const auto& [op, n] : counts_) t += n;
  return t;
}

std::string OpCounts::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [op, n] : counts_) {
    out << (first ? "" : ", ") << op.name() << ": " << n;
    first = false;
  }
  out << '}';
  return out.str();
}

namespace {
thread_local OperationCounter* t_active = nullptr;
}

CountingScope::CountingScope(OperationCounter& counter) : previous_(t_active) { t_active = &counter; }
CountingScope::~CountingScope() { t_active = previous_; }

OperationCounter* detail::active_counter() { return t_active; }

}  // namespace ahibe::pairing

#include "alba/system.hpp"

#include "alba/syntax.hpp"

namespace alba {

bool System::is_pure() const {
  for (const auto& ineq : antecedent) {
    if (!ineq.is_pure()) return false;
  }
  return true;
}

Symbols System::symbols() const {
  Symbols s;
  for (const auto& ineq : antecedent) {
    collect_symbols(ineq.lhs, s);
    collect_symbols(ineq.rhs, s);
  }
  s.noms.insert(head_left);
  s.noms.insert(head_right);
  return s;
}

std::string print(const Inequality& ineq) { return print(ineq.lhs) + " <= " + print(ineq.rhs); }

std::string print(const System& sys) {
  std::string out;
  for (std::size_t i = 0; i < sys.antecedent.size(); ++i) {
    if (i) out += " & ";
    out += print(sys.antecedent[i]);
  }
  if (!out.empty()) out += ' ';
  out += "=> " + print(sys.head());
  return out;
}

Inequality as_inequality(const Formula& f) {
  if (f.is(Op::Implies)) return {f.child(0), f.child(1)};
  return {Formula::top(), f};
}

}  // namespace alba

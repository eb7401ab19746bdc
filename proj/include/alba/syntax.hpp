#ifndef ALBA_SYNTAX_HPP
#define ALBA_SYNTAX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alba/formula.hpp"

namespace alba {

/** Concrete ASCII syntax.

      variables   p  q1  foo_bar        (lowercase identifiers)
      nominals    'i  'home              ('n<digits> is reserved)
      constants   true  false
      unary       ~  []  <>  [^]  <^>  @'i
      binary      &  |  ->  <->          (tightest first; -> and <-> associate right)

    `a <-> b` is sugar for `(a -> b) & (b -> a)`. */
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

struct ParseOptions {
  /// Accept the fresh-supply names 'n0, 'n1, ... (used when re-reading output).
  bool allow_reserved_nominals = false;
};

Formula parse(std::string_view text, const ParseOptions& opts = {});

/// Canonical rendering with minimal parentheses. parse(print(f)) == f.
std::string print(const Formula& f);

}  // namespace alba

#endif  // ALBA_SYNTAX_HPP

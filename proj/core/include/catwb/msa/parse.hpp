#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "catwb/msa/term.hpp"

namespace catwb::msa {

class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t column)
      : std::runtime_error(std::move(message)), column_(column) {}
  /// 1-based column in the parsed text.
  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

/// Closed terms written as `f(t)`, `pair(s, t)`, `c`. Names may contain
/// letters, digits and `_ . ' -`. Throws ParseError for unknown names and
/// syntax, IllSorted for ill-sorted applications.
Term parseTerm(const Signature &sig, std::string_view text);

} // namespace catwb::msa

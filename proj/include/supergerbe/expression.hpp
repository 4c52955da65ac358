#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "supergerbe/error.hpp"
#include "supergerbe/superform.hpp"

namespace supergerbe {

// Syntax error inside an expression literal; offset is a 0-based column.
class ExpressionError : public Error {
 public:
  ExpressionError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::ParseError, message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Grammar: sums and products of exact literals (n, n/m, ni), tau, i,
// declared generators, basis forms, d(expr), parentheses and integer powers.
// Products are ordered super products.
SuperForm parse_form(const std::string& text, const RingPtr& ring);
SuperFunction parse_function(const std::string& text, const RingPtr& ring);
Scalar parse_scalar(const std::string& text, const RingPtr& ring);
Gaussian parse_number(const std::string& text);

// Textual ring declaration. Derivations map a generator to a 1-form over the
// basis forms; relations map a monomial to its replacement.
struct RingSpec {
  std::vector<std::string> even;
  std::vector<std::string> odd;
  std::vector<std::string> forms;
  std::vector<std::pair<std::string, std::string>> derivations;
  std::vector<std::pair<std::string, std::string>> relations;
};

RingPtr build_ring(const RingSpec& spec);

// Inverse of build_ring for emission.
RingSpec describe_ring(const Ring& ring);

}  // namespace supergerbe

#include "configset/arith.hpp"

#include "configset/error.hpp"

namespace configset {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax_error: return "syntax_error";
    case ErrorCode::semantic_error: return "semantic_error";
    case ErrorCode::kind_mismatch: return "kind_mismatch";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::resource_limit: return "resource_limit";
    case ErrorCode::shape_mismatch: return "shape_mismatch";
    case ErrorCode::precondition_failed: return "precondition_failed";
    case ErrorCode::search_cap_exceeded: return "search_cap_exceeded";
    case ErrorCode::synthesis_failed: return "synthesis_failed";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

std::string format_integer(const Integer& value) { return value.str(); }

std::string format_rational(const Rational& value) {
  // cpp_rational is always normalized with a positive denominator.
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

namespace {

Integer parse_integer_strict(const std::string& text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) {
    throw Error(ErrorCode::syntax_error, "malformed integer '" + text + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw Error(ErrorCode::syntax_error, "malformed integer '" + text + "'");
    }
  }
  return Integer(text[0] == '+' ? text.substr(1) : text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer_strict(text));
  Integer num = parse_integer_strict(text.substr(0, slash));
  Integer den = parse_integer_strict(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::syntax_error, "zero denominator in '" + text + "'");
  return Rational(num, den);
}

}  // namespace configset

#include "bdluk/rational.hpp"

#include "bdluk/errors.hpp"

#include <cctype>

namespace bdluk {

Rat parse_rat(const std::string& text) {
  std::size_t pos = 0;
  auto digits = [&](std::size_t start) {
    std::size_t p = start;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    return p;
  };

  if (pos < text.size() && text[pos] == '-') ++pos;
  std::size_t num_end = digits(pos);
  if (num_end == pos) throw ParseError(pos, "expected digits in rational literal");
  pos = num_end;
  if (pos == text.size()) return Rat(text);

  if (text[pos] != '/') throw ParseError(pos, "unexpected character in rational literal");
  std::size_t den_start = pos + 1;
  std::size_t den_end = digits(den_start);
  if (den_end == den_start) throw ParseError(den_start, "expected digits after '/'");
  if (den_end != text.size()) throw ParseError(den_end, "trailing characters after rational literal");

  std::string den = text.substr(den_start);
  bool all_zero = den.find_first_not_of('0') == std::string::npos;
  if (all_zero) throw ParseError(den_start, "zero denominator");
  return Rat(text);
}

std::string rat_to_string(const Rat& r) {
  return r.str();
}

}  // namespace bdluk

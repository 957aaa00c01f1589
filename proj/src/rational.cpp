#include "hhnn/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace hhnn {

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r) << '/' << denominator(r);
  return os.str();
}

Rat rat_from_string(const std::string& text) {
  using Int = boost::multiprecision::cpp_int;
  const auto bad = [&] { throw std::invalid_argument("malformed rational: '" + text + "'"); };
  if (text.empty()) bad();

  const auto parse_int = [&](const std::string& s) -> Int {
    if (s.empty()) bad();
    std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (start == s.size()) bad();
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') bad();
    return Int(s[0] == '+' ? s.substr(1) : s);
  };

  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) bad();
  return Rat(num, den);
}

}  // namespace hhnn

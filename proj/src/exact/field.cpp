#include "braidkit/exact/field.hpp"

#include <charconv>

namespace braidkit::exact {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (p >= (1ULL << 31)) throw std::invalid_argument("prime too large: " + std::to_string(p));
  return Field(Kind::prime, p);
}

Field Field::parse(std::string_view text) {
  if (text == "Q" || text == "QQ") return rationals();
  std::string_view digits;
  if (text.starts_with("GF(") && text.ends_with(")"))
    digits = text.substr(3, text.size() - 4);
  else if (text.starts_with("GF:"))
    digits = text.substr(3);
  else
    throw std::invalid_argument("unknown field '" + std::string(text) + "'");
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw std::invalid_argument("bad field characteristic in '" + std::string(text) + "'");
  return prime(p);
}

std::string Field::name() const {
  if (kind_ == Kind::rationals) return "Q";
  return "GF(" + std::to_string(p_) + ")";
}

}  // namespace braidkit::exact

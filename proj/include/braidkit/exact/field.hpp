#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace braidkit::exact {

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

// Q or a prime field GF(p), p < 2^31 so products fit in 64 bits.
class Field {
 public:
  enum class Kind { rationals, prime };

  static Field rationals() { return Field(Kind::rationals, 0); }
  static Field prime(std::uint64_t p);
  // Accepts "Q", "GF(p)", "GF:p".
  static Field parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return kind_ == Kind::rationals; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;
  Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

}  // namespace braidkit::exact

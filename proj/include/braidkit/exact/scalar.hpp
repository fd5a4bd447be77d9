#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "braidkit/exact/field.hpp"

namespace braidkit::exact {

// Exact field element. Operations between different fields throw FieldMismatch.
class Scalar {
 public:
  Scalar() : v_(mpq_class(0)) {}
  Scalar(const Field& f, long value);

  static Scalar zero(const Field& f) { return Scalar(f, 0); }
  static Scalar one(const Field& f) { return Scalar(f, 1); }
  static Scalar fraction(const Field& f, const mpz_class& num, const mpz_class& den);
  // Integer or a/b literal.
  static Scalar parse(const Field& f, std::string_view literal);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar inverse() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  // this += a * b, this -= a * b
  void add_mul(const Scalar& a, const Scalar& b);
  void sub_mul(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  bool operator==(const Scalar& o) const;

  std::string to_string() const;

  bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  std::uint64_t residue() const { return std::get<Residue>(v_).r; }

 private:
  struct Residue {
    std::uint64_t r;
    std::uint64_t p;
    bool operator==(const Residue&) const = default;
  };
  explicit Scalar(Residue r) : v_(r) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}
  void same_field(const Scalar& o) const;

  std::variant<mpq_class, Residue> v_;
};

}  // namespace braidkit::exact

#include "braidkit/exact/scalar.hpp"

#include <stdexcept>

namespace braidkit::exact {

namespace {

std::uint64_t reduce(long v, std::uint64_t p) {
  long m = v % static_cast<long>(p);
  if (m < 0) m += static_cast<long>(p);
  return static_cast<std::uint64_t>(m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t mpz_mod(const mpz_class& z, std::uint64_t p) {
  mpz_class m = z % static_cast<unsigned long>(p);
  if (m < 0) m += static_cast<unsigned long>(p);
  return m.get_ui();
}

}  // namespace

Scalar::Scalar(const Field& f, long value) {
  if (f.is_rational())
    v_ = mpq_class(value);
  else
    v_ = Residue{reduce(value, f.characteristic()), f.characteristic()};
}

Scalar Scalar::fraction(const Field& f, const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (f.is_rational()) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
  }
  std::uint64_t p = f.characteristic();
  std::uint64_t d = mpz_mod(den, p);
  if (d == 0) throw std::invalid_argument("denominator vanishes in " + f.name());
  return Scalar(Residue{mpz_mod(num, p) * pow_mod(d, p - 2, p) % p, p});
}

Scalar Scalar::parse(const Field& f, std::string_view literal) {
  std::string s(literal);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty scalar literal");
  auto slash = s.find('/');
  mpz_class num, den(1);
  try {
    if (slash == std::string::npos) {
      num = mpz_class(s.front() == '+' ? s.substr(1) : s, 10);
    } else {
      std::string a = s.substr(0, slash);
      if (!a.empty() && a.front() == '+') a.erase(a.begin());
      num = mpz_class(a, 10);
      den = mpz_class(s.substr(slash + 1), 10);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad scalar literal '" + s + "'");
  }
  return fraction(f, num, den);
}

Field Scalar::field() const {
  if (auto r = std::get_if<Residue>(&v_)) return Field(Field::Kind::prime, r->p);
  return Field::rationals();
}

void Scalar::same_field(const Scalar& o) const {
  if (v_.index() != o.v_.index())
    throw FieldMismatch("scalar field mismatch: " + field().name() + " vs " + o.field().name());
  if (auto r = std::get_if<Residue>(&v_))
    if (r->p != std::get<Residue>(o.v_).p)
      throw FieldMismatch("scalar field mismatch: " + field().name() + " vs " + o.field().name());
}

bool Scalar::is_zero() const {
  if (auto r = std::get_if<Residue>(&v_)) return r->r == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
  if (auto r = std::get_if<Residue>(&v_)) return r->r == 1;
  return std::get<mpq_class>(v_) == 1;
}

Scalar Scalar::operator-() const {
  if (auto r = std::get_if<Residue>(&v_)) return Scalar(Residue{r->r ? r->p - r->r : 0, r->p});
  return Scalar(mpq_class(-std::get<mpq_class>(v_)));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (auto r = std::get_if<Residue>(&v_)) return Scalar(Residue{pow_mod(r->r, r->p - 2, r->p), r->p});
  return Scalar(mpq_class(1 / std::get<mpq_class>(v_)));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  same_field(o);
  if (auto r = std::get_if<Residue>(&v_)) {
    r->r = (r->r + std::get<Residue>(o.v_).r) % r->p;
  } else {
    std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  same_field(o);
  if (auto r = std::get_if<Residue>(&v_)) {
    r->r = (r->r + r->p - std::get<Residue>(o.v_).r) % r->p;
  } else {
    std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  same_field(o);
  if (auto r = std::get_if<Residue>(&v_)) {
    r->r = r->r * std::get<Residue>(o.v_).r % r->p;
  } else {
    std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

void Scalar::add_mul(const Scalar& a, const Scalar& b) {
  a.same_field(b);
  same_field(a);
  if (auto r = std::get_if<Residue>(&v_)) {
    r->r = (r->r + std::get<Residue>(a.v_).r * std::get<Residue>(b.v_).r) % r->p;
  } else {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), std::get<mpq_class>(a.v_).get_mpq_t(), std::get<mpq_class>(b.v_).get_mpq_t());
    std::get<mpq_class>(v_) += tmp;
  }
}

void Scalar::sub_mul(const Scalar& a, const Scalar& b) {
  a.same_field(b);
  same_field(a);
  if (auto r = std::get_if<Residue>(&v_)) {
    std::uint64_t t = std::get<Residue>(a.v_).r * std::get<Residue>(b.v_).r % r->p;
    r->r = (r->r + r->p - t) % r->p;
  } else {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), std::get<mpq_class>(a.v_).get_mpq_t(), std::get<mpq_class>(b.v_).get_mpq_t());
    std::get<mpq_class>(v_) -= tmp;
  }
}

bool Scalar::operator==(const Scalar& o) const {
  if (v_.index() != o.v_.index()) return false;
  return v_ == o.v_;
}

std::string Scalar::to_string() const {
  if (auto r = std::get_if<Residue>(&v_)) return std::to_string(r->r);
  return std::get<mpq_class>(v_).get_str();
}

}  // namespace braidkit::exact

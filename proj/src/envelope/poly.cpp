#include "braidkit/envelope/poly.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>

namespace braidkit::envelope {

Poly Poly::monomial(const Field& f, const Word& w, const Scalar& c) {
  Poly p(f);
  p.add(w, c);
  return p;
}

Poly Poly::from_vector(const Field& f, std::size_t d, std::size_t n, const SparseVec& v) {
  Poly p(f);
  for (std::size_t k = 0; k < v.idx.size(); ++k) p.add(braided::word_at(v.idx[k], d, n), v.val[k]);
  return p;
}

std::size_t Poly::degree() const {
  std::size_t n = 0;
  for (const auto& [w, c] : terms_) n = std::max(n, w.size());
  return n;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  std::size_t n = terms_.begin()->first.size();
  for (const auto& [w, c] : terms_)
    if (w.size() != n) return false;
  return true;
}

Poly Poly::part(std::size_t n) const {
  Poly p(field_);
  for (const auto& [w, c] : terms_)
    if (w.size() == n) p.terms_.emplace(w, c);
  return p;
}

SparseVec Poly::component(std::size_t n, std::size_t d) const {
  std::vector<std::pair<std::uint32_t, Scalar>> items;
  for (const auto& [w, c] : terms_)
    if (w.size() == n) items.emplace_back(braided::word_index(w, d), c);
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec v;
  for (auto& [i, c] : items) v.push_back(i, c);
  return v;
}

void Poly::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly p(field_);
  for (const auto& [w, x] : terms_) p.add(w, x * c);
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly p(a.field_);
  for (const auto& [u, x] : a.terms_)
    for (const auto& [v, y] : b.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      p.add(w, x * y);
    }
  return p;
}

std::string Poly::to_string(const std::vector<std::string>& labels) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Word, Scalar>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [w, c] : items) {
    std::string cs = c.to_string();
    bool neg = c.is_rational() && cs.front() == '-';
    if (neg) cs.erase(cs.begin());
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (w.empty()) {
      out += cs;
    } else {
      if (cs != "1") out += cs + " ";
      out += braided::word_string(w, labels);
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view t, const std::vector<std::string>& labels, const Field& f) : t_(t), labels_(labels), f_(f) {}

  Poly parse() {
    Poly out(f_);
    skip();
    if (at_end()) throw error("empty expression");
    bool first = true;
    while (!at_end()) {
      Scalar sign = Scalar::one(f_);
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -sign;
        ++pos_;
        skip();
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      first = false;
      out += term().scaled(sign);
      skip();
    }
    return out;
  }

 private:
  std::runtime_error error(const std::string& what) const {
    return std::runtime_error("cannot parse '" + std::string(t_) + "' at position " + std::to_string(pos_) + ": " + what);
  }
  bool at_end() const { return pos_ >= t_.size(); }
  char peek() const { return t_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::optional<std::string> number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) return std::nullopt;
    std::string s(t_.substr(start, pos_ - start));
    if (!at_end() && peek() == '/') {
      ++pos_;
      std::size_t s2 = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (s2 == pos_) throw error("expected denominator");
      s += "/" + std::string(t_.substr(s2, pos_ - s2));
    }
    return s;
  }

  std::optional<int> label() {
    int best = -1;
    std::size_t len = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      const auto& l = labels_[i];
      if (l.size() > len && t_.substr(pos_, l.size()) == l) {
        best = static_cast<int>(i);
        len = l.size();
      }
    }
    if (best < 0) return std::nullopt;
    pos_ += len;
    return best;
  }

  Poly term() {
    Scalar coef = Scalar::one(f_);
    bool any = false;
    if (!at_end() && peek() == '(') {
      ++pos_;
      skip();
      Scalar sign = Scalar::one(f_);
      if (!at_end() && (peek() == '-' || peek() == '+')) {
        if (peek() == '-') sign = -sign;
        ++pos_;
      }
      auto n = number();
      if (!n) throw error("expected number");
      skip();
      if (at_end() || peek() != ')') throw error("expected ')'");
      ++pos_;
      coef = Scalar::parse(f_, *n) * sign;
      any = true;
    } else if (auto n = number()) {
      coef = Scalar::parse(f_, *n);
      any = true;
    }
    Word w;
    for (;;) {
      skip();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip();
      }
      auto l = label();
      if (!l) break;
      int times = 1;
      if (!at_end() && peek() == '^') {
        ++pos_;
        auto e = number();
        if (!e || e->find('/') != std::string::npos) throw error("expected exponent");
        times = std::stoi(*e);
      }
      for (int k = 0; k < times; ++k) w.push_back(*l);
      any = true;
    }
    if (!any) throw error("expected a term");
    return Poly::monomial(f_, w, coef);
  }

  std::string_view t_;
  const std::vector<std::string>& labels_;
  Field f_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const std::vector<std::string>& labels, const Field& f) {
  return Parser(text, labels, f).parse();
}

}  // namespace braidkit::envelope

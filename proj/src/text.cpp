#include "drincm/text.hpp"

#include <cctype>

#include "drincm/errors.hpp"

namespace dcm::text {
namespace {

long long mod(long long v, long long m) {
  v %= m;
  return v < 0 ? v + m : v;
}

class Parser {
 public:
  Parser(const std::string& s, long long m) : m_(m) {
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
  }

  ZPoly run() {
    if (src_.empty()) throw ParseError("empty expression");
    ZPoly r = sum();
    if (pos_ != src_.size())
      throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "' in '" + src_ + "'");
    return r;
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  ZPoly sum() {
    ZPoly acc;
    bool first = true;
    while (true) {
      long long sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      ZPoly term = product();
      for (auto& [mono, c] : term) add_to(acc, mono, sign * c);
      first = false;
      if (peek() != '+' && peek() != '-') break;
    }
    return acc;
  }

  ZPoly product() {
    ZPoly acc = power();
    while (true) {
      if (peek() == '*') {
        ++pos_;
      } else if (!(std::isalnum(static_cast<unsigned char>(peek())) || peek() == '(')) {
        break;  // implicit multiplication like "2t" or "(x+1)t"
      }
      acc = mul(acc, power());
    }
    return acc;
  }

  ZPoly power() {
    ZPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("exponent must be a non-negative integer in '" + src_ + "'");
      long long e = number();
      ZPoly r{{Monomial{0, 0, 0}, 1}};
      for (long long i = 0; i < e; ++i) r = mul(r, base);
      return r;
    }
    return base;
  }

  ZPoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      ZPoly r = sum();
      if (peek() != ')') throw ParseError("missing ')' in '" + src_ + "'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ZPoly r;
      add_to(r, {0, 0, 0}, number());
      return r;
    }
    if (c == 'x' || c == 'y' || c == 't') {
      ++pos_;
      Monomial m{0, 0, 0};
      m[c == 'x' ? 0 : c == 'y' ? 1 : 2] = 1;
      return ZPoly{{m, 1}};
    }
    throw ParseError(c ? "unexpected '" + std::string(1, c) + "' in '" + src_ + "'"
                       : "unexpected end of '" + src_ + "'");
  }

  long long number() {
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (src_[pos_++] - '0');
      if (v > (1LL << 40)) throw ParseError("integer too large in '" + src_ + "'");
    }
    return v;
  }

  void add_to(ZPoly& acc, const Monomial& m, long long c) {
    long long v = mod(acc[m] + mod(c, m_), m_);
    if (v == 0)
      acc.erase(m);
    else
      acc[m] = v;
  }

  ZPoly mul(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    for (auto& [ma, ca] : a)
      for (auto& [mb, cb] : b)
        add_to(r, {ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, mod(ca * cb, m_));
    return r;
  }

  std::string src_;
  std::size_t pos_ = 0;
  long long m_;
};

}  // namespace

ZPoly parse(const std::string& s, long long modulus) { return Parser(s, modulus).run(); }

}  // namespace dcm::text

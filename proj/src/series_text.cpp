#include <cctype>

#include "drincm/errors.hpp"
#include "drincm/series.hpp"

namespace dcm {

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("bad rational '" + s + "'");
  }
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(i) + " in '" + s + "'");
  }
  void expect(const std::string& word) {
    skip();
    if (s.compare(i, word.size(), word) != 0) throw ParseError("expected '" + word + "' in '" + s + "'");
    i += word.size();
  }
  std::int64_t integer() {
    skip();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    try {
      return std::stoll(s.substr(start, i - start));
    } catch (const std::exception&) {
      throw ParseError("expected an integer at offset " + std::to_string(start) + " in '" + s + "'");
    }
  }
  // Text up to the ')' closing the current group, honouring nested parentheses.
  std::string group_body() {
    std::size_t start = i;
    int depth = 0;
    for (; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      else if (s[i] == ')' && depth-- == 0) break;
    }
    if (i >= s.size()) throw ParseError("unbalanced parentheses in '" + s + "'");
    return s.substr(start, i - start);
  }
};

}  // namespace

LaurentSeries parse_series(FieldRef f, const std::string& s) {
  Cursor c{s};
  c.expect("q^(");
  std::string mag = c.group_body();
  c.expect(')');
  c.expect('[');
  std::vector<std::pair<std::int64_t, Elem>> terms;
  if (!c.eat(']')) {
    do {
      c.expect('(');
      std::int64_t exp = c.integer();
      c.expect(',');
      Elem v = f->parse(c.group_body());
      c.expect(')');
      terms.emplace_back(exp, v);
    } while (c.eat(','));
    c.expect(']');
  }
  c.expect("e=");
  const int e = static_cast<int>(c.integer());
  c.expect("prec=");
  const std::int64_t prec = c.integer();
  c.skip();
  if (c.i != s.size()) throw ParseError("trailing text in '" + s + "'");
  if (e != 1 && e != 2) throw ParseError("e must be 1 or 2");

  LaurentSeries out;
  if (terms.empty()) {
    out = LaurentSeries::zero(f, e, prec);
  } else {
    std::int64_t lo = terms[0].first, hi = terms[0].first;
    for (auto& [k, v] : terms) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    if (hi >= prec) throw ParseError("term beyond the stated precision in '" + s + "'");
    LaurentSeries::Coeffs cs(static_cast<std::size_t>(hi - lo + 1), 0);
    for (auto& [k, v] : terms) cs[static_cast<std::size_t>(k - lo)] = f->add(cs[static_cast<std::size_t>(k - lo)], v);
    out = LaurentSeries::from_coeffs(f, e, lo, std::move(cs), prec);
  }
  if (out.abs().to_string() != "q^(" + mag + ")") throw ParseError("magnitude q^(" + mag + ") disagrees with the terms");
  return out;
}

}  // namespace dcm

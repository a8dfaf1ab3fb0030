#include "conepave/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace conepave {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(const std::string& s) {
  std::string body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  if (!all_digits(body)) {
    throw std::invalid_argument("malformed integer: '" + s + "'");
  }
  Integer value(body);
  return neg ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    return Rational(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (!all_digits(frac)) {
      throw std::invalid_argument("malformed decimal: '" + text + "'");
    }
    bool neg = false;
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
      neg = head[0] == '-';
      head = head.substr(1);
    }
    if (head.empty()) head = "0";
    if (!all_digits(head)) {
      throw std::invalid_argument("malformed decimal: '" + text + "'");
    }
    Integer scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer num = Integer(head) * scale + Integer(frac);
    Rational q(num, scale);
    return neg ? Rational(-q) : q;
  }

  return Rational(parse_integer(s));
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace conepave

#include "ncineq/rational.hpp"

#include <cctype>
#include <cstdio>

#include "ncineq/errors.hpp"
#include "ncineq/format.hpp"

namespace ncineq {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat parse_fraction(std::string_view text) {
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }

  std::string_view digits = num;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) {
    throw ParseError("bad fraction '" + std::string(text) +
                     "': numerator must be an optionally signed integer");
  }

  Int n{std::string(digits)};
  if (negative) n = -n;
  if (den.data() == nullptr) return Rat(n);

  if (!all_digits(den)) {
    throw ParseError("bad fraction '" + std::string(text) +
                     "': denominator must be a positive integer");
  }
  Int d{std::string(den)};
  if (d == 0) {
    throw ParseError("bad fraction '" + std::string(text) +
                     "': denominator is zero");
  }
  return Rat(n, d);
}

std::string format_fraction(const Rat& value) {
  // cpp_rational::str() already prints the reduced "p/q" form and drops
  // the "/1" on integers.
  return value.str();
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

}  // namespace ncineq

#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "unicrit/numfmt.hpp"
#include "unicrit/power_series.hpp"

namespace unicrit {

// Function-spec grammar:
//   identity | koebe | halfplane
//   poly-p:<c1>,<c2>,...     p = 1 + c1 z + c2 z^2 + ...
//   poly-f:<a2>,<a3>,...     f = z + a2 z^2 + ...
//   omega:<c1>,<c2>,...      omega = c1 z + ...
// Complex literals are <re> or <re>+<im>i / <re>-<im>i with a decimal (and
// optional exponent) real syntax; no whitespace anywhere.

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected)
      : Error(Errc::ParseError,
              "at byte " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

namespace detail {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool at_end() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  bool consume(char c) {
    if (!at_end() && peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

// unsigned decimal with optional fraction and exponent; leading digit required
inline double parse_unsigned_real(Cursor& cur) {
  const std::size_t start = cur.pos;
  if (cur.at_end() || !is_digit(cur.peek())) throw ParseError(cur.pos, "digit");
  while (!cur.at_end() && is_digit(cur.peek())) ++cur.pos;
  if (!cur.at_end() && cur.peek() == '.') {
    ++cur.pos;
    if (cur.at_end() || !is_digit(cur.peek())) throw ParseError(cur.pos, "digit");
    while (!cur.at_end() && is_digit(cur.peek())) ++cur.pos;
  }
  if (!cur.at_end() && (cur.peek() == 'e' || cur.peek() == 'E')) {
    ++cur.pos;
    if (!cur.at_end() && (cur.peek() == '+' || cur.peek() == '-')) ++cur.pos;
    if (cur.at_end() || !is_digit(cur.peek())) throw ParseError(cur.pos, "digit");
    while (!cur.at_end() && is_digit(cur.peek())) ++cur.pos;
  }
  double value = 0.0;
  const auto res = std::from_chars(cur.text.data() + start, cur.text.data() + cur.pos, value);
  if (res.ec == std::errc::result_out_of_range || !std::isfinite(value))
    throw ParseError(start, "finite number");
  return value;
}

inline Complex parse_complex(Cursor& cur) {
  double re_sign = 1.0;
  if (!cur.at_end() && (cur.peek() == '+' || cur.peek() == '-')) {
    if (cur.peek() == '-') re_sign = -1.0;
    ++cur.pos;
  }
  const double re = re_sign * parse_unsigned_real(cur);
  if (!cur.at_end() && (cur.peek() == '+' || cur.peek() == '-')) {
    const double im_sign = cur.peek() == '-' ? -1.0 : 1.0;
    ++cur.pos;
    const double im = parse_unsigned_real(cur);
    if (!cur.consume('i')) throw ParseError(cur.pos, "'i'");
    return Complex(re, im_sign * im);
  }
  return Complex(re, 0.0);
}

inline std::vector<Complex> parse_coeff_list(Cursor& cur) {
  std::vector<Complex> out;
  out.push_back(parse_complex(cur));
  while (!cur.at_end()) {
    if (!cur.consume(',')) throw ParseError(cur.pos, "',' or end of input");
    out.push_back(parse_complex(cur));
  }
  return out;
}

// Longest common prefix against the keyword set locates the first byte that
// cannot start any valid spec.
inline std::size_t keyword_mismatch_offset(std::string_view text) {
  static constexpr std::string_view kKeywords[] = {"identity", "koebe",  "halfplane",
                                                   "poly-p",   "poly-f", "omega"};
  std::size_t best = 0;
  for (std::string_view kw : kKeywords) {
    std::size_t i = 0;
    while (i < text.size() && i < kw.size() && text[i] == kw[i]) ++i;
    best = std::max(best, i);
  }
  return best;
}

}  // namespace detail

// Parses a function spec; named families expand to `family_order`.
inline PowerSeries parse_function(std::string_view text, int family_order = 64) {
  detail::Cursor cur{text, 0};
  auto starts_with = [&](std::string_view kw) {
    return text.size() >= kw.size() && text.substr(0, kw.size()) == kw;
  };

  if (starts_with("identity") || starts_with("koebe") || starts_with("halfplane")) {
    const std::size_t len = starts_with("identity") ? 8 : (starts_with("koebe") ? 5 : 9);
    if (text.size() != len) throw ParseError(len, "end of input");
    if (text[0] == 'i') return PowerSeries::identity(family_order);
    if (text[0] == 'k') return PowerSeries::koebe(family_order);
    return PowerSeries::halfplane_p(family_order);
  }

  for (std::string_view kw : {std::string_view("poly-p"), std::string_view("poly-f"),
                              std::string_view("omega")}) {
    if (!starts_with(kw)) continue;
    cur.pos = kw.size();
    if (!cur.consume(':')) throw ParseError(cur.pos, "':'");
    std::vector<Complex> coeffs = detail::parse_coeff_list(cur);
    if (kw == "poly-p") return PowerSeries::poly_p(coeffs);
    if (kw == "poly-f") return PowerSeries::poly_f(coeffs);
    return PowerSeries::schwarz_poly(coeffs);
  }

  throw ParseError(detail::keyword_mismatch_offset(text),
                   "one of identity, koebe, halfplane, poly-p:, poly-f:, omega:");
}

// Canonical text for a parseable series; parse / print / parse is stable.
inline std::string print_function(const PowerSeries& s) {
  switch (s.family()) {
    case FamilyKind::Identity: return "identity";
    case FamilyKind::Koebe: return "koebe";
    case FamilyKind::HalfplaneP: return "halfplane";
    default: break;
  }
  std::string prefix;
  int first = 0;
  if (s.normalization() == Normalization::ClassP) {
    prefix = "poly-p:";
    first = 1;
  } else if (s.normalization() == Normalization::ClassA) {
    prefix = "poly-f:";
    first = 2;
  } else if (s.coeff(0) == Complex(0.0, 0.0) && s.order() >= 1) {
    prefix = "omega:";
    first = 1;
  } else {
    throw std::invalid_argument("print_function: series has no spec form");
  }
  std::string out = prefix;
  const int last = std::max(s.order(), first);
  for (int k = first; k <= last; ++k) {
    if (k > first) out += ',';
    out += format_complex(s.coeff(k));
  }
  return out;
}

}  // namespace unicrit

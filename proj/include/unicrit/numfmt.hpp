#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <string>

namespace unicrit {

// Shortest decimal representation that round-trips through from_chars.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// "<re>" or "<re>+<im>i" / "<re>-<im>i"; a zero imaginary part is omitted.
inline std::string format_complex(std::complex<double> c) {
  std::string out = format_double(c.real());
  if (c.imag() != 0.0) {
    out += std::signbit(c.imag()) ? '-' : '+';
    out += format_double(std::fabs(c.imag()));
    out += 'i';
  }
  return out;
}

}  // namespace unicrit

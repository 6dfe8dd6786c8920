#include "unicrit/parse.hpp"

#include <gtest/gtest.h>

#include <utility>
#include <vector>

namespace {

using unicrit::Complex;
using unicrit::ParseError;
using unicrit::PowerSeries;

TEST(Parse, NamedFamilies) {
  const PowerSeries id = unicrit::parse_function("identity");
  EXPECT_EQ(id.family(), unicrit::FamilyKind::Identity);
  EXPECT_EQ(id.normalization(), unicrit::Normalization::ClassA);

  const PowerSeries k = unicrit::parse_function("koebe", 32);
  EXPECT_EQ(k.order(), 32);
  EXPECT_EQ(k.coeff(7), Complex(7, 0));

  const PowerSeries h = unicrit::parse_function("halfplane", 16);
  EXPECT_EQ(h.coeff(0), Complex(1, 0));
  EXPECT_EQ(h.coeff(16), Complex(2, 0));
}

TEST(Parse, PolynomialSpecs) {
  const PowerSeries p = unicrit::parse_function("poly-p:0.5");
  EXPECT_EQ(p.normalization(), unicrit::Normalization::ClassP);
  EXPECT_EQ(p.order(), 1);
  EXPECT_EQ(p.coeff(1), Complex(0.5, 0));

  const PowerSeries f = unicrit::parse_function("poly-f:0+0.3i");
  EXPECT_EQ(f.normalization(), unicrit::Normalization::ClassA);
  EXPECT_EQ(f.coeff(2), Complex(0.0, 0.3));

  const PowerSeries w = unicrit::parse_function("omega:1,0.3");
  EXPECT_EQ(w.coeff(0), Complex(0, 0));
  EXPECT_EQ(w.coeff(1), Complex(1, 0));
  EXPECT_EQ(w.coeff(2), Complex(0.3, 0));

  const PowerSeries neg = unicrit::parse_function("poly-p:-0.25-0.5i,1e-3");
  EXPECT_EQ(neg.coeff(1), Complex(-0.25, -0.5));
  EXPECT_EQ(neg.coeff(2), Complex(1e-3, 0));
}

TEST(Parse, PrintRoundTrip) {
  const char* specs[] = {"identity",          "koebe",
                         "halfplane",         "poly-p:0.5",
                         "poly-p:0,0.3",      "poly-f:0+0.3i,-1.5",
                         "omega:1,0.3",       "poly-p:-0.25-0.5i,0.001",
                         "poly-p:1e-20",      "poly-f:0.1,0,0,0.2"};
  for (const char* text : specs) {
    const PowerSeries once = unicrit::parse_function(text, 16);
    const std::string printed = unicrit::print_function(once);
    const PowerSeries twice = unicrit::parse_function(printed, 16);
    EXPECT_EQ(unicrit::print_function(twice), printed) << text;
    EXPECT_EQ(once.order(), twice.order()) << text;
    for (int k = 0; k <= once.order(); ++k) EXPECT_EQ(once.coeff(k), twice.coeff(k)) << text;
  }
}

// every malformed spec reports the first offending byte
TEST(Parse, MalformedCorpusOffsets) {
  const std::vector<std::pair<const char*, std::size_t>> corpus = {
      {"", 0},                   // empty input
      {"identit", 7},            // truncated keyword
      {"identityy", 8},          // trailing garbage after a family name
      {"identity:", 8},          // named family takes no list
      {"kebab", 1},              // diverges from koebe after 'k'
      {"halfplan", 8},           // truncated keyword
      {"xyz", 0},                // matches nothing
      {"POLY-P:1", 0},           // case-sensitive
      {"poly-q:1", 5},           // diverges inside poly- prefix
      {"poly-p", 6},             // missing ':'
      {"poly-p;1", 6},           // wrong separator
      {"poly-p:", 7},            // empty coefficient list
      {"poly-p:abc", 7},         // not a number
      {"poly-p:.5", 7},          // leading digit required
      {"poly-p:+", 8},           // sign without digits
      {"poly-p:0.5,", 11},       // dangling comma
      {"poly-p:0.5,,1", 11},     // empty list entry
      {"poly-p:1.", 9},          // fraction needs digits
      {"poly-p:1e", 9},          // exponent needs digits
      {"poly-p:1e+", 10},        // signed exponent needs digits
      {"poly-p:1+2", 10},        // imaginary part needs 'i'
      {"poly-p:1+2j", 10},       // wrong imaginary suffix
      {"poly-p:1+i", 9},         // imaginary part needs digits
      {"poly-p:1.2.3", 10},      // second dot after a full literal
      {"poly-p:0.5 ,1", 10},     // whitespace is not part of the grammar
      {"omega:", 6},             // empty list
      {"omega:1,0.3,", 12},      // dangling comma
  };
  for (const auto& [text, offset] : corpus) {
    try {
      unicrit::parse_function(text);
      FAIL() << "expected a parse error for '" << text << "'";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.offset(), offset) << "'" << text << "' -> " << e.expected();
    }
  }
}

TEST(Print, RejectsUnrepresentableSeries) {
  const PowerSeries raw({Complex(2, 0), Complex(1, 0)});
  EXPECT_THROW(unicrit::print_function(raw), std::invalid_argument);
}

TEST(Print, ShortestDigits) {
  const PowerSeries p = unicrit::parse_function("poly-p:0.1,2,3.25");
  EXPECT_EQ(unicrit::print_function(p), "poly-p:0.1,2,3.25");
}

}  // namespace

#pragma once

#include <stdexcept>
#include <string>

namespace unicrit {

// Failure codes surfaced by library operations. The CLI prints these names
// verbatim in diagnostics.
enum class Errc {
  EvalOutOfDisk,
  ZeroConstantTerm,
  NonzeroConstantTerm,
  SingularSample,
  BadAlpha,
  BadDomain,
  AllSingular,
  OmegaVanishes,
  InputKindMismatch,
  BadConfig,
  ParseError,
};

inline const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::EvalOutOfDisk: return "EVAL_OUT_OF_DISK";
    case Errc::ZeroConstantTerm: return "ZERO_CONSTANT_TERM";
    case Errc::NonzeroConstantTerm: return "NONZERO_CONSTANT_TERM";
    case Errc::SingularSample: return "SINGULAR_SAMPLE";
    case Errc::BadAlpha: return "BAD_ALPHA";
    case Errc::BadDomain: return "BAD_DOMAIN";
    case Errc::AllSingular: return "ALL_SINGULAR";
    case Errc::OmegaVanishes: return "OMEGA_VANISHES";
    case Errc::InputKindMismatch: return "INPUT_KIND_MISMATCH";
    case Errc::BadConfig: return "BAD_CONFIG";
    case Errc::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace unicrit

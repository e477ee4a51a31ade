#include "catenae/error.hpp"

#include <fmt/format.h>

namespace catenae {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kDecode: return "decode error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kLookup: return "lookup error";
    case ErrorKind::kNoOccurrence: return "no-occurrence error";
    case ErrorKind::kInsufficientEvidence: return "insufficient-evidence error";
    case ErrorKind::kDogmaticConflict: return "dogmatic-conflict error";
    case ErrorKind::kUndefinedMetric: return "undefined-metric error";
    case ErrorKind::kBuild: return "build error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : Error(ErrorKind::kParse, fmt::format("{}:{}: {}", source, line, message)),
      source_(std::move(source)),
      line_(line) {}

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::kParameter ? 1 : 2;
}

}  // namespace catenae

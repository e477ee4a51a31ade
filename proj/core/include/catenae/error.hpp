#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace catenae {

/// Error classes shared by every module. Each kind maps onto one CLI exit
/// code class (see exit_code_for).
enum class ErrorKind {
  kParameter,            // argument outside its documented range
  kDecode,               // input text is not valid UTF-8
  kParse,                // malformed line in an input file
  kValidation,           // well-formed input that violates a constraint
  kDomain,               // operation undefined for this input
  kLookup,               // unknown key (entity, term, doc id)
  kNoOccurrence,         // phrase never occurs in the corpus
  kInsufficientEvidence, // no perturbation has corpus support
  kDogmaticConflict,     // consensus of two dogmatic opinions
  kUndefinedMetric,      // metric has no value for this input
  kBuild,                // index construction failed (e.g. duplicate doc id)
  kIo,                   // file missing or unreadable
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define CATENAE_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& message) : Error(Kind, message) {}   \
  };

CATENAE_DEFINE_ERROR(ParameterError, ErrorKind::kParameter)
CATENAE_DEFINE_ERROR(ValidationError, ErrorKind::kValidation)
CATENAE_DEFINE_ERROR(DomainError, ErrorKind::kDomain)
CATENAE_DEFINE_ERROR(LookupError, ErrorKind::kLookup)
CATENAE_DEFINE_ERROR(NoOccurrenceError, ErrorKind::kNoOccurrence)
CATENAE_DEFINE_ERROR(InsufficientEvidenceError, ErrorKind::kInsufficientEvidence)
CATENAE_DEFINE_ERROR(DogmaticConflictError, ErrorKind::kDogmaticConflict)
CATENAE_DEFINE_ERROR(UndefinedMetricError, ErrorKind::kUndefinedMetric)
CATENAE_DEFINE_ERROR(BuildError, ErrorKind::kBuild)
CATENAE_DEFINE_ERROR(IoError, ErrorKind::kIo)

#undef CATENAE_DEFINE_ERROR

/// Invalid UTF-8; carries the byte offset of the first bad sequence.
class DecodeError : public Error {
 public:
  DecodeError(std::size_t byte_offset, const std::string& message)
      : Error(ErrorKind::kDecode, message), byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Malformed input line; line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// 1 for parameter (usage) errors, 2 for every data or validation error.
int exit_code_for(ErrorKind kind);

}  // namespace catenae

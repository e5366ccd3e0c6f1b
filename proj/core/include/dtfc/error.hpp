#ifndef DTFC_ERROR_HPP
#define DTFC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dtfc {

enum class ErrorKind {
  IoError,
  FormatError,
  DataError,
  ParamError,
  DegenerateInput,
  LevelMismatch,
  SizeError,
  EdgeMismatch,
  EmptyHistogram,
  TooFewLevels,
  CorruptPayload,
};

inline const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError: return "io-error";
    case ErrorKind::FormatError: return "format-error";
    case ErrorKind::DataError: return "data-error";
    case ErrorKind::ParamError: return "param-error";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::LevelMismatch: return "level-mismatch";
    case ErrorKind::SizeError: return "size-error";
    case ErrorKind::EdgeMismatch: return "edge-mismatch";
    case ErrorKind::EmptyHistogram: return "empty-histogram";
    case ErrorKind::TooFewLevels: return "too-few-levels";
    case ErrorKind::CorruptPayload: return "corrupt-payload";
  }
  return "unknown-error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace dtfc

#endif

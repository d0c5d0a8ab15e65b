// Error types shared by every chordgen module.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chordgen {

enum class ErrorKind {
  OutOfMidiRange,
  UnspellableNote,
  InvalidDegreeToken,
  InvalidProgression,
  MalformedTable,
  Overflow,
  SinkFailure,
  InvalidArgument,
};

std::string_view toString(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& message) : Error(K, message) {}
};

using OutOfMidiRange = KindedError<ErrorKind::OutOfMidiRange>;
using UnspellableNote = KindedError<ErrorKind::UnspellableNote>;
using InvalidDegreeToken = KindedError<ErrorKind::InvalidDegreeToken>;
using InvalidProgression = KindedError<ErrorKind::InvalidProgression>;
using MalformedTable = KindedError<ErrorKind::MalformedTable>;
using Overflow = KindedError<ErrorKind::Overflow>;
using SinkFailure = KindedError<ErrorKind::SinkFailure>;
using InvalidArgument = KindedError<ErrorKind::InvalidArgument>;

}  // namespace chordgen

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace viscat {

// Contract violations throw; analysis findings (junk, redundancy, failed
// commutes) are report data and never throw.
enum class ErrorKind {
  EmptyIdentifier,
  BadToken,
  DuplicateElement,
  MissingSource,
  DuplicateSource,
  SourceNotInDomain,
  TargetNotInCodomain,
  ElementNotInDomain,
  NonComposable,
  NotBijective,
  UnknownObject,
  UnknownMorphism,
  DuplicateId,
  DanglingEquality,
  MissingRole,
  SignatureMismatch,
  PartialIntension,
  NoIntension,
  MissingDerivations,
  UnparsableAtom,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmptyIdentifier: return "EmptyIdentifier";
    case ErrorKind::BadToken: return "BadToken";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::MissingSource: return "MissingSource";
    case ErrorKind::DuplicateSource: return "DuplicateSource";
    case ErrorKind::SourceNotInDomain: return "SourceNotInDomain";
    case ErrorKind::TargetNotInCodomain: return "TargetNotInCodomain";
    case ErrorKind::ElementNotInDomain: return "ElementNotInDomain";
    case ErrorKind::NonComposable: return "NonComposable";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::UnknownMorphism: return "UnknownMorphism";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::DanglingEquality: return "DanglingEquality";
    case ErrorKind::MissingRole: return "MissingRole";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::PartialIntension: return "PartialIntension";
    case ErrorKind::NoIntension: return "NoIntension";
    case ErrorKind::MissingDerivations: return "MissingDerivations";
    case ErrorKind::UnparsableAtom: return "UnparsableAtom";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string subject = {})
      : std::runtime_error(std::move(message)),
        kind_(kind),
        subject_(std::move(subject)) {}

  ErrorKind kind() const { return kind_; }

  // The offending token or identifier, when one exists. The DSL front end
  // uses it to map an error back to a source position.
  const std::string& subject() const { return subject_; }

 private:
  ErrorKind kind_;
  std::string subject_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string message,
                              std::string subject = {}) {
  throw Error(kind, std::move(message), std::move(subject));
}

}  // namespace viscat

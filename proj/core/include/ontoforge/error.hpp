#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ontoforge {

// Failure taxonomy shared by every pipeline stage. The CLI maps these onto
// process exit codes, so new kinds must be added to exit_code_for() as well.
enum class ErrorKind {
  CorpusEmpty,
  IngestError,
  DocumentEmpty,
  DegenerateDocument,
  NumericError,
  ConvergenceError,
  BadRank,
  BadHyperparam,
  ShapeError,
  BadTopic,
  EmptyOntology,
  ModelUntrained,
  InvalidGraph,
  IoError,
  ParseError,
  VersionError,
  NoPath,
  BadMembership,
  QueryEmpty,
  BadWeights,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace ontoforge

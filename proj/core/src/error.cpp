#include "ontoforge/error.hpp"

namespace ontoforge {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CorpusEmpty: return "CorpusEmpty";
    case ErrorKind::IngestError: return "IngestError";
    case ErrorKind::DocumentEmpty: return "DocumentEmpty";
    case ErrorKind::DegenerateDocument: return "DegenerateDocument";
    case ErrorKind::NumericError: return "NumericError";
    case ErrorKind::ConvergenceError: return "ConvergenceError";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::BadHyperparam: return "BadHyperparam";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::BadTopic: return "BadTopic";
    case ErrorKind::EmptyOntology: return "EmptyOntology";
    case ErrorKind::ModelUntrained: return "ModelUntrained";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VersionError: return "VersionError";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::BadMembership: return "BadMembership";
    case ErrorKind::QueryEmpty: return "QueryEmpty";
    case ErrorKind::BadWeights: return "BadWeights";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace ontoforge

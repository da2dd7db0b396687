#pragma once

#include <stdexcept>
#include <string>

namespace w2vrec {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Input did not match the expected layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters; detected before any work is done.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class EmptyVocabularyError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// Token not present in a vocabulary or index.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Cosine similarity is undefined (zero-norm query).
class SimilarityError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace w2vrec

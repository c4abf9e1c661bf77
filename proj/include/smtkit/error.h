#ifndef SMTKIT_ERROR_H_
#define SMTKIT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smtkit {

// Problems with user-supplied data or parameters. The command-line front end
// maps these to exit status 2; anything else escaping a command is status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyDictionary : public InputError {
 public:
  EmptyDictionary() : InputError("dictionary is empty") {}
};

class EncodingError : public InputError {
 public:
  EncodingError(const std::string& what, std::size_t position)
      : InputError(what + " at byte " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnmappableCharacter : public EncodingError {
 public:
  UnmappableCharacter(char32_t code_point, std::size_t position);
  char32_t code_point() const { return code_point_; }

 private:
  char32_t code_point_;
};

class MalformedXml : public InputError {
 public:
  MalformedXml(const std::string& what, std::size_t line)
      : InputError("malformed XML (line " + std::to_string(line) + "): " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DegenerateCounts : public InputError {
 public:
  using InputError::InputError;
};

class WeightError : public InputError {
 public:
  using InputError::InputError;
};

class ArpaFormatError : public InputError {
 public:
  ArpaFormatError(const std::string& what, std::size_t line)
      : InputError("ARPA line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyCorpus : public InputError {
 public:
  EmptyCorpus() : InputError("corpus is empty") {}
};

class EmptyReference : public InputError {
 public:
  EmptyReference() : InputError("reference has no tokens") {}
};

class LineCountMismatch : public InputError {
 public:
  LineCountMismatch(std::size_t expected, std::size_t actual, const std::string& what)
      : InputError(what + ": expected " + std::to_string(expected) + " lines, found " +
                   std::to_string(actual)) {}
};

class ParseError : public InputError {
 public:
  explicit ParseError(const std::string& token)
      : InputError("cannot parse alignment token '" + token + "'"), token_(token) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class IndexOutOfRange : public InputError {
 public:
  IndexOutOfRange(std::size_t i, std::size_t j)
      : InputError("alignment link " + std::to_string(i) + "-" + std::to_string(j) +
                   " out of range"),
        i_(i), j_(j) {}
  std::size_t source_index() const { return i_; }
  std::size_t target_index() const { return j_; }

 private:
  std::size_t i_, j_;
};

class DimensionMismatch : public InputError {
 public:
  DimensionMismatch() : InputError("alignment matrices differ in dimensions") {}
};

class SeedNotSubset : public InputError {
 public:
  SeedNotSubset() : InputError("seed alignment is not a subset of the candidates") {}
};

}  // namespace smtkit

#endif  // SMTKIT_ERROR_H_

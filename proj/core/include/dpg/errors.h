#ifndef DPG_ERRORS_H_
#define DPG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dpg {

// Base class for every error raised by the library. The CLI maps any Error
// to exit code 2 (data error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (JSON syntax, missing keys, wrong value types).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that breaks a model or dataset invariant.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A sample could not be routed through a tree.
class TraversalError : public Error {
 public:
  using Error::Error;
};

// Dataset problems: ragged rows, unparseable cells, missing labels.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace dpg

#endif  // DPG_ERRORS_H_

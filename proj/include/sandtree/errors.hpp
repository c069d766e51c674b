#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace sandtree {

// Byte range into an input buffer, used by parser diagnostics.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in the textual tree DSL.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : Error(message + " at byte " + std::to_string(span.begin)), span_(span) {}

  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

// Schema violation in a JSON input; path is a JSON pointer to the bad node.
class JsonSchemaError : public Error {
 public:
  JsonSchemaError(const std::string& message, std::string path)
      : Error(message + " (at " + (path.empty() ? "/" : path) + ")"),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A configured size cap (graph-set members, term nodes) would be exceeded.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

class NotStandardTreeError : public Error {
 public:
  using Error::Error;
};

class EmptyGraphSetError : public Error {
 public:
  using Error::Error;
};

// Raw graph fails the source-sink invariants (unique source and sink,
// source != sink, edge endpoints in range).
class MalformedGraphError : public Error {
 public:
  using Error::Error;
};

// Series/parallel reduction stalled before reaching a single edge.
class NotSeriesParallelError : public Error {
 public:
  using Error::Error;
};

class MissingAssignmentError : public Error {
 public:
  explicit MissingAssignmentError(std::string label)
      : Error("no assignment for basic action '" + label + "'"),
        label_(std::move(label)) {}

  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class UnknownDomainError : public Error {
 public:
  explicit UnknownDomainError(std::string name)
      : Error("unknown attribute domain '" + name + "'"), name_(std::move(name)) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace sandtree

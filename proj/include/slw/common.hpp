#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: text that does not parse, violated preconditions, sort errors.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (states, enumeration size, candidates) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Resource caps shared by every exponential construction.
struct Caps {
  std::size_t max_states = 1000000;      // per automaton / determinization
  std::size_t max_enum_vertices = 6;     // oracle enumerations
  std::size_t max_enum_edges = 10;
  std::size_t max_candidates = 200000;   // synthesis candidate places
};

/// Ordered set of transition labels (the alphabet T).
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  /// Index of `n`, or -1.
  int find(const std::string& n) const;
  int at(const std::string& n) const;

  bool operator==(const LabelSet&) const = default;

  /// "a,b,c"
  std::string to_string() const;
  static LabelSet parse(const std::string& csv);

 private:
  std::vector<std::string> names_;
};

}  // namespace slw

#ifndef WRB_ERRORS_H
#define WRB_ERRORS_H

#include <stdexcept>
#include <string>

namespace wrb {

// Mathematical precondition violated by the caller (bad subgroup, wrong parent, ...).
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured size bound was exceeded (subgroup enumeration, module dimension, ...).
class resource_error : public std::runtime_error {
public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Hypotheses of a verification routine do not hold for the given input.
class precondition_error : public std::runtime_error {
public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed; indicates a bug, not a user error.
class internal_error : public std::logic_error {
public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Text input (catalog files, cycle notation) failed to parse.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, int line, int column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line(line), column(column) {}
  int line;
  int column;
};

} // namespace wrb

#endif

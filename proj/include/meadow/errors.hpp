#ifndef MEADOW_ERRORS_HPP
#define MEADOW_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace meadow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             std::string found)
      : Error(format(line, column, expected, found)),
        line_(line),
        column_(column),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::vector<std::string>& expected, const std::string& found) {
    std::string msg = std::to_string(line) + ":" + std::to_string(column) + ": expected ";
    if (expected.size() == 1) {
      msg += expected.front();
    } else {
      msg += "one of {";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += ", ";
        msg += expected[i];
      }
      msg += "}";
    }
    return msg + ", found " + found;
  }

  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// `bot` used where only the plain signature is allowed.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// A term or formula does not fit the structure it is interpreted in.
class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class InvalidStructure : public Error {
 public:
  using Error::Error;
};

class AlreadyTotal : public Error {
 public:
  using Error::Error;
};

class AlreadyEnlarged : public Error {
 public:
  using Error::Error;
};

class NotEnlarged : public Error {
 public:
  using Error::Error;
};

class CarrierTooSmall : public Error {
 public:
  using Error::Error;
};

class InfiniteCarrier : public Error {
 public:
  using Error::Error;
};

/// Three-valued satisfaction asked of a ⊥-enlarged structure.
class EnlargedStructure : public Error {
 public:
  using Error::Error;
};

/// Classical evaluation asked of a structure with partial division.
class NotTotalStructure : public Error {
 public:
  using Error::Error;
};

}  // namespace meadow

#endif  // MEADOW_ERRORS_HPP

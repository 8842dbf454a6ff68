#pragma once

#include <stdexcept>
#include <string>

namespace msac {

// Base for every failure the library reports about its inputs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The greedy scan ran out of side-information before consuming the source.
class NotSubsequence : public Error {
 public:
  NotSubsequence() : Error("source is not a subsequence of the side-information") {}
};

// A raw bit file or message header that cannot be parsed.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A file that cannot be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// An edit description that does not fit the sequence it is applied to.
class InvalidDescription : public Error {
 public:
  using Error::Error;
};

// A coded stream that ended early or decodes to something impossible.
class CorruptStream : public Error {
 public:
  using Error::Error;
};

// A message that failed to decode; section() names where it broke.
class CorruptMessage : public Error {
 public:
  CorruptMessage(std::string section, const std::string& detail)
      : Error("corrupt message in section '" + section + "': " + detail),
        section_(std::move(section)) {}

  const std::string& section() const noexcept { return section_; }

 private:
  std::string section_;
};

}  // namespace msac

#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

// A sampled grid, table, or cache does not cover the requested range.
// what() names the missing range so callers can size a rebuild.
class coverage_error : public std::runtime_error {
 public:
  explicit coverage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A truncation length cannot reach the documented accuracy target.
class accuracy_error : public std::runtime_error {
 public:
  explicit accuracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A persisted cache file is unreadable: bad magic, truncation, or a
// header that disagrees with the payload size.
class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Another process holds the cache-directory lock.
class lock_error : public std::runtime_error {
 public:
  explicit lock_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace zetalab

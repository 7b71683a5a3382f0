#pragma once

#include <stdexcept>
#include <string>

namespace probe {

/// Invalid or inconsistent configuration; carries the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& reason)
      : std::runtime_error("config field '" + field + "': " + reason),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Unreadable, unwritable or malformed file.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace probe

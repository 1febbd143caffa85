// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lidarplace {

enum class ErrorCode {
  kUsage = 2,
  kSchema = 3,
  kIo = 4,
  kInvalidArgument = 5,
  kInternal = 6,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lidarplace

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccsched {

enum class ErrorKind {
  kRejectedParameters,
  kMalformedTable,
  kInfeasibleM,
  kNoDonor,
  kSearchFailure,
  kConstructionFailure,
  kAssemblyFailure,
  kNullityDeficient,
  kVerificationFailure,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit status and a machine-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ccsched

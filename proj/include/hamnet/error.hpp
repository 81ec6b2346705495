// Copyright 2026 The hamnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hamnet {

// Process exit codes used by the command-line tool. Each error class maps to
// exactly one of them.
enum class ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDomain = 3,
  kResource = 4,
  kInvariant = 5,
  kIo = 6,
  kConvergence = 7,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Invalid command-line usage.
class UsageError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kUsage; }
};

// Bad arguments: out-of-range indices, malformed inputs, preconditions.
class DomainError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kDomain; }
};

// Exact integer result does not fit in 64 bits.
class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Conditioning on an event of zero probability (e.g. the Hong-Ou-Mandel dip
// leaves no collision-free mass).
class DegenerateDistributionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Enumeration or sampling budget exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kResource; }
};

class InvariantError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kInvariant; }
};

class IoError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kIo; }
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  ExitCode exit_code() const noexcept override { return ExitCode::kConvergence; }
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace hamnet

// Copyright 2026 The mvh Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mvh {

// Exception hierarchy. The CLI maps each kind to its own exit code.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    virtual const char *kind() const noexcept { return "error"; }
};

// Precondition on a numeric argument violated (count out of range, k < 1, ...).
class DomainError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "domain"; }
};

// Problem too large for the requested method (exhaustive limit, simplex cap).
class CapacityError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "capacity"; }
};

// Malformed input file or inconsistent data.
class FormatError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "format"; }
};

class IoError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "io"; }
};

}  // namespace mvh

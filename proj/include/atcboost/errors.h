// Copyright (c) 2026 The atcboost Authors
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

#ifndef ATCBOOST_ERRORS_H_
#define ATCBOOST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace atcboost {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed files, incompatible symbol tables, missing paths.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& msg) : Error(msg) {}
};

// Unparseable text; the message names the offending span.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// An augmentation action that cannot be applied to the given utterance.
// Callers are expected to catch this and pick another action.
class InapplicableActionError : public Error {
 public:
  explicit InapplicableActionError(const std::string& msg) : Error(msg) {}
};

}  // namespace atcboost

#endif  // ATCBOOST_ERRORS_H_

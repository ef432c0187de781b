// Copyright 2026 The Aphorist Authors.
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

#ifndef APHORIST_ERROR_HPP_
#define APHORIST_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace aphorist {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user input: unreadable files, malformed configs, invalid parameters.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

/// No order's context matched the generation history. Callers restart.
class DeadEndError : public Error {
 public:
  DeadEndError() : Error("dead end") {}
};

/// Generation gave up after exhausting its retry budget.
class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& what) : Error(what) {}
};

/// The HTTP article fetcher could not reach or parse its source.
/// Callers treat this as "skip news insertion".
class FetchError : public Error {
 public:
  explicit FetchError(const std::string& what) : Error(what) {}
};

}  // namespace aphorist

#endif  // APHORIST_ERROR_HPP_

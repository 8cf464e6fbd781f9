// Copyright 2026 The smartgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smartgen {

// Base for every recoverable error raised by the library. CLI maps these to
// exit code 1; anything else (std::logic_error and friends) maps to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A sampled configuration violates a family invariant; the generator resamples.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class AmbiguityError : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

class InfeasibleError : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  GenerationError(int root_id, std::uint64_t seed, const std::string& what)
      : Error(what), root_id_(root_id), seed_(seed) {}
  int root_id() const { return root_id_; }
  std::uint64_t seed() const { return seed_; }

 private:
  int root_id_;
  std::uint64_t seed_;
};

class TemplateError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class TypeMismatchError : public EvalError {
 public:
  using EvalError::EvalError;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace smartgen

/*
   Copyright 2026 The lamplighter-subgroups Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lamplighter {

/// Operands live over different primes, or the modulus itself is invalid.
class context_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold for the input.
class precondition_error : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// An exhaustive enumeration would exceed its candidate budget.
class resource_error : public std::runtime_error {
   public:
    resource_error(const std::string& what, unsigned long long requested)
        : std::runtime_error(what + " (requested " + std::to_string(requested) + ")"), requested_(requested) {}
    unsigned long long requested() const noexcept { return requested_; }

   private:
    unsigned long long requested_;
};

/// A computed object contradicts a proven structural property.
class consistency_error : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Malformed text input; carries the 1-based line number when known.
class parse_error : public std::runtime_error {
   public:
    explicit parse_error(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

}  // namespace lamplighter

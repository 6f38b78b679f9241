// Copyright 2026 The photonmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace photonmux {

/// Raised when an operation's precondition is violated or a model cannot be evaluated.
class ModelError : public std::runtime_error {
   public:
    explicit ModelError(const std::string &what) : std::runtime_error(what) {
    }
};

/// Raised for malformed or out-of-range configuration values.
class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace photonmux

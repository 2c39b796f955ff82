// Copyright 2026 The immrate Authors
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

#ifndef IMMRATE_ERRORS_H
#define IMMRATE_ERRORS_H

#include <stdexcept>
#include <string>

namespace immrate {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's mathematical domain (wrong sizes, n > m, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A factorial/combinatorial guard was exceeded.
struct SizeLimitError : Error {
    using Error::Error;
};

/// A computed quantity violated a numerical invariant beyond tolerance.
struct NumericalError : Error {
    using Error::Error;
};

/// An operation's precondition on its inputs does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

/// Malformed configuration or input file.
struct ConfigError : Error {
    using Error::Error;
};

/// Should be unreachable.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace immrate

#endif

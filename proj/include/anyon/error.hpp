// Copyright 2026 The Anyonic Interferometry Authors
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

namespace anyon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Model construction.
class MissingVacuum : public Error {
   public:
    using Error::Error;
};
class NonMultiplicityFree : public Error {
   public:
    using Error::Error;
};
class UnknownCharge : public Error {
   public:
    using Error::Error;
};

// Interferometry.
class ForbiddenConnectingCharge : public Error {
   public:
    using Error::Error;
};
class UnsupportedBasisChange : public Error {
   public:
    using Error::Error;
};
class ZeroProbability : public Error {
   public:
    using Error::Error;
};
class DegenerateTuning : public Error {
   public:
    using Error::Error;
};
class InvalidState : public Error {
   public:
    using Error::Error;
};
class InvalidConfig : public Error {
   public:
    using Error::Error;
};
class UnitarityViolation : public InvalidConfig {
   public:
    using InvalidConfig::InvalidConfig;
};

// Surgery calculus.
class NonAbelianSlide : public Error {
   public:
    using Error::Error;
};
class InvalidCore : public Error {
   public:
    using Error::Error;
};

// Input files.
class ParseError : public Error {
   public:
    using Error::Error;
};

}  // namespace anyon

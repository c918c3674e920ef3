// Copyright 2026 The vmscout Authors
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

#ifndef VMSCOUT_ERRORS_HPP_
#define VMSCOUT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace vmscout {

/// Base class for all vmscout errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: unknown keys, out-of-domain values, incompatible
/// method/stopping combinations. CLI exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Invalid measurement data: CSV schema violations, duplicate keys,
/// non-finite numerics, inconsistent catalogs. CLI exit code 3.
class DataError : public Error {
public:
    using Error::Error;
};

/// Misuse of a stateful object (predicting with an unfitted model, pairwise
/// training with fewer than two measurements, empty fit sets).
class StateError : public Error {
public:
    using Error::Error;
};

/// A black-box evaluation failed (e.g. the (workload, vm) pair is marked
/// failed in the replay table). The optimizer translates this according to
/// its fail policy.
class EvaluationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace vmscout

#endif  // VMSCOUT_ERRORS_HPP_

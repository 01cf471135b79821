// Copyright 2026 The efxgraph Authors
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

namespace efx {

/// Malformed instance or allocation input (bad JSON, bad weights, bad ids).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The instance does not have the graph structure a solver requires.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive search would exceed the configured state budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An algorithm invariant failed at run time. Always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace efx

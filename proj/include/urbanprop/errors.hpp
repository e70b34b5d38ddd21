// SPDX-License-Identifier: Apache-2.0
//
// urbanprop: geometry map-based radio propagation modelling for urban scenarios
// Copyright (C) 2026 The urbanprop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef URBANPROP_ERRORS_HPP
#define URBANPROP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace urbanprop
{
    // Malformed or inconsistent input: files, config, map validation. CLI exit code 2.
    class InputError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Series or tables whose shapes do not line up. CLI exit code 3.
    class ShapeError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Argument outside the mathematical domain of an operation. CLI exit code 4.
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Geometry that admits no well-defined answer (e.g. no usable breakpoint corner).
    class DegenerateGeometryError : public DomainError
    {
    public:
        using DomainError::DomainError;
    };
}

#endif

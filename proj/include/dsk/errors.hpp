// SPDX-License-Identifier: Apache-2.0
//
// dsklink: link-level simulator for differential space-shift keying over distributed arrays
// Copyright (C) 2026 The dsklink authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace dsk
{
    // Exception hierarchy. CLI maps ConfigError to exit 1 and NumericFailure to exit 2.

    struct InvalidArgument : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Query lies outside the validity regime of the model (e.g. step >= d).
    struct OutOfRegime : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    struct DelayOutOfWindow : std::out_of_range
    {
        using std::out_of_range::out_of_range;
    };

    struct NumericFailure : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct NoCrossing : NumericFailure
    {
        using NumericFailure::NumericFailure;
    };

    struct DegenerateReference : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct InternalConsistency : std::logic_error
    {
        using std::logic_error::logic_error;
    };

    struct ConfigError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };
}

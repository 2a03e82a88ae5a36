// SPDX-License-Identifier: Apache-2.0
//
// chanlab: outdoor urban channel modelling toolkit (0.5-100 GHz)
// Copyright (C) 2026 The chanlab authors
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

#ifndef CHANLAB_ERROR_HPP
#define CHANLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace chanlab {

// Bad input: out-of-domain arguments, malformed files, inconsistent configs.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical failure: rank-deficient or otherwise unidentifiable fits.
class SingularFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace chanlab

#endif

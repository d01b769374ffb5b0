// SPDX-License-Identifier: Apache-2.0
//
// mrc-bounds  C++ library for capacity bounds and relay placement in Gaussian multicast relay channels
// Copyright (C) 2026 The mrc-bounds authors
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

#include "mrc/claims.hpp"
#include "mrc/geometry.hpp"
#include "mrc/linalg.hpp"
#include "mrc/optimize.hpp"
#include "mrc/qc_verify.hpp"
#include "mrc/rates.hpp"
#include "mrc/rng.hpp"
#include "mrc/scenario.hpp"
#include "mrc/sweep_csv.hpp"

namespace mrc {
inline constexpr const char* version = "0.1.0";
}

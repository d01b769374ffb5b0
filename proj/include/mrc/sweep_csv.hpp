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
//
// CSV export of grid sweeps. Format: header `x[,y[,z]],value,status`, one
// row per cell in row-major order, comma separators, LF line endings, 12
// significant digits. Invalid cells print `nan` with status `invalid`.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "mrc/optimize.hpp"

namespace mrc {

inline std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline void write_sweep_csv(std::ostream& out, const SweepGrid& grid) {
    static const char* axis_names[] = {"x", "y", "z"};
    for (int a = 0; a < grid.dim(); ++a) out << axis_names[a] << ',';
    out << "value,status\n";
    const long cells = grid.n_cells();
    for (long flat = 0; flat < cells; ++flat) {
        const std::vector<double> p = grid.cell_position(flat);
        for (int a = 0; a < grid.dim(); ++a) out << format_sig12(p[a]) << ',';
        if (grid.ok[flat])
            out << format_sig12(grid.value[flat]) << ",ok\n";
        else
            out << "nan,invalid\n";
    }
}

}  // namespace mrc

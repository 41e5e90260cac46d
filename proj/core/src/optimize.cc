// Copyright 2026 The QTap Authors
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

#include "qtap/optimize.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtap {

ScalarMaximum maximize_scalar(const std::function<double(double)> &f, double lo, double hi, int grid_points,
                              double tolerance) {
    if (!(lo < hi)) {
        throw std::invalid_argument("maximize_scalar: empty interval");
    }
    if (grid_points < 3) {
        throw std::invalid_argument("maximize_scalar: need at least 3 grid points");
    }

    const double step = (hi - lo) / (grid_points - 1);
    int best = 0;
    double best_value = f(lo);
    for (int k = 1; k < grid_points; k++) {
        const double v = f(lo + k * step);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }

    double a = lo + std::max(best - 1, 0) * step;
    double b = lo + std::min(best + 1, grid_points - 1) * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tolerance) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }

    ScalarMaximum out{0.5 * (a + b), 0.0};
    out.value = f(out.argmax);
    // Grid endpoint can beat the interior when the maximum sits on the boundary.
    if (best_value > out.value) {
        out = ScalarMaximum{lo + best * step, best_value};
    }
    return out;
}

}  // namespace qtap

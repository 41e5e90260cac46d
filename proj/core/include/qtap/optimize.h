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

#ifndef QTAP_OPTIMIZE_H
#define QTAP_OPTIMIZE_H

#include <functional>

namespace qtap {

struct ScalarMaximum {
    double argmax = 0.0;
    double value = 0.0;
};

/// Maximizes `f` on [lo, hi]: a uniform grid pre-scan of `grid_points` points
/// picks the best bracket, then golden-section search narrows it until its
/// width is below `tolerance`.
///
/// The pre-scan makes the result robust for functions that are unimodal but
/// nearly flat over most of the interval.
ScalarMaximum maximize_scalar(const std::function<double(double)> &f, double lo, double hi, int grid_points = 1001,
                              double tolerance = 1e-10);

}  // namespace qtap

#endif

// Copyright 2026 The HQC Authors
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

#ifndef HQC_TESTS_METRICS_FIXTURE_H
#define HQC_TESTS_METRICS_FIXTURE_H

#include <cstddef>
#include <vector>

namespace metrics_fixture {

struct Fixture {
    std::vector<int> actual;
    std::vector<int> predicted;
    std::vector<std::vector<std::size_t>> confusion;
    double accuracy;
    double macro_precision;
    double macro_recall;
    double macro_f1;
};

// Ten predictions worked by hand.
//   confusion rows (true) x cols (predicted):
//     2 1 0 0 | 0 1 1 0 | 1 0 2 0 | 0 1 0 1
//   precision 2/3, 1/3, 2/3, 1   -> macro 2/3
//   recall    2/3, 1/2, 2/3, 1/2 -> macro 7/12
//   f1        2/3, 2/5, 2/3, 2/3 -> macro 3/5
inline const Fixture &mixed() {
    static const Fixture fx{
        {0, 0, 0, 1, 1, 2, 2, 2, 3, 3},
        {0, 1, 0, 1, 2, 2, 2, 0, 3, 1},
        {{2, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 2, 0}, {0, 1, 0, 1}},
        0.6,
        2.0 / 3.0,
        7.0 / 12.0,
        0.6,
    };
    return fx;
}

}  // namespace metrics_fixture

#endif  // HQC_TESTS_METRICS_FIXTURE_H

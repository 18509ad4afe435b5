// Copyright 2026 The fockmzi Authors
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

#pragma once

/// Legendre polynomials by the three-term recurrence
///   (n+1) P_{n+1}(x) = (2n+1) x P_n(x) - n P_{n-1}(x).

namespace fockmzi {

template <typename T>
T legendre_p(int n, T x) {
    if (n <= 0) {
        return T(1);
    }
    T prev = T(1);
    T curr = x;
    for (int l = 1; l < n; ++l) {
        T next = (T(2 * l + 1) * x * curr - T(l) * prev) / T(l + 1);
        prev = curr;
        curr = next;
    }
    return curr;
}

}  // namespace fockmzi

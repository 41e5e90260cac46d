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

#ifndef QTAP_TOOLS_PARALLEL_H
#define QTAP_TOOLS_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qtap::cli {

/// Evaluates fn(0..n-1) on up to `workers` threads; results keep index order.
/// The first exception thrown by any call is rethrown on the caller's thread.
template <typename T, typename Fn>
std::vector<T> parallel_map(size_t n, unsigned workers, Fn &&fn) {
    std::vector<T> out(n);
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const unsigned count = static_cast<unsigned>(std::min<size_t>(std::max(workers, 1u), std::max<size_t>(n, 1)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < count; w++) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace qtap::cli

#endif

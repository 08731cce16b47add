#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace acute {

// Runs body(chunk) for chunk in [0, chunks) on up to `threads` workers.
// Chunks are handed out in increasing order; callers reduce per-chunk results
// in chunk order, so output never depends on the worker count.
template <class F>
void parallel_chunks(std::size_t chunks, unsigned threads, F&& body)
{
    threads = std::max(1u, threads);
    if (threads == 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::mutex m;
    std::size_t next = 0;
    std::exception_ptr err;
    auto worker = [&] {
        for (;;) {
            std::size_t c;
            {
                std::lock_guard<std::mutex> lk(m);
                if (next >= chunks || err) return;
                c = next++;
            }
            try {
                body(c);
            } catch (...) {
                std::lock_guard<std::mutex> lk(m);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace acute

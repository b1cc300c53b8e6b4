#include "biotsplit/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace biotsplit {

int assembly_threads()
{
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("BIOT_SPLIT_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap > 0) n = std::min(n, cap);
        } catch (const std::exception&) {
            // ignored: malformed values leave the default in place
        }
    }
    return n;
}

void parallel_chunks(std::size_t n, int chunks, const std::function<void(int, std::size_t, std::size_t)>& body)
{
    chunks = std::max(1, chunks);
    const auto range = [&](int c) { return n * static_cast<std::size_t>(c) / static_cast<std::size_t>(chunks); };
    if (chunks == 1) {
        body(0, 0, n);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
    workers.reserve(static_cast<std::size_t>(chunks));
    for (int c = 0; c < chunks; ++c) {
        workers.emplace_back([&, c] {
            try {
                body(c, range(c), range(c + 1));
            } catch (...) {
                errors[static_cast<std::size_t>(c)] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace biotsplit

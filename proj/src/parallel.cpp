#include "qphase/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qphase {

int thread_count() {
    static const int n = [] {
        const char* env = std::getenv("QPHASE_THREADS");
        long v = 0;
        if (env && *env) {
            char* end = nullptr;
            v = std::strtol(env, &end, 10);
            if (end == env || v < 0) v = 0;  // malformed or negative: auto
        }
        if (v == 0) v = static_cast<long>(std::thread::hardware_concurrency());
        if (v < 1) v = 1;
        if (v > 256) v = 256;
        return static_cast<int>(v);
    }();
    return n;
}

void parallel_for_rows(int n, const std::function<void(int, int)>& fn) {
    int workers = thread_count();
    if (workers > n) workers = n;
    if (workers <= 1 || n <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    int base = n / workers, extra = n % workers;
    int begin = 0;
    for (int w = 0; w < workers; ++w) {
        int len = base + (w < extra ? 1 : 0);
        int end = begin + len;
        if (w == workers - 1) {
            fn(begin, end);  // run the last chunk on the calling thread
        } else {
            pool.emplace_back(fn, begin, end);
        }
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace qphase

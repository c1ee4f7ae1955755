#include "vlll/exec.hpp"

#include <cstdlib>
#include <string>

namespace vlll {

namespace {
int resolve_env_threads() {
    const char* env = std::getenv("LLL_THREADS");
    if (!env) return 0;
    try {
        int n = std::stoi(env);
        return n > 0 ? n : 0;
    } catch (...) {
        return 0;
    }
}
int g_threads = resolve_env_threads();
} // namespace

int worker_threads() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

void set_worker_threads(int n) { g_threads = n > 0 ? n : 0; }

} // namespace vlll

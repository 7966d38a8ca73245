// SPDX-License-Identifier: Apache-2.0
#include "catcode/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace catcode::kernels {

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

namespace {

const KernelTable* resolve(const std::string& name) {
    if (name == "scalar") return &scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (!avx2_supported()) throw std::runtime_error("avx2 backend requested but unsupported");
        return &avx2_table();
    }
#endif
    if (name == "auto" || name.empty()) {
#if defined(__x86_64__) || defined(_M_X64)
        if (avx2_supported()) return &avx2_table();
#endif
        return &scalar_table();
    }
    throw std::runtime_error("unknown kernel backend: " + name);
}

std::atomic<const KernelTable*> g_table{nullptr};

const KernelTable* init_from_env() {
    const char* env = std::getenv("CATCODE_SIMD");
    return resolve(env ? std::string(env) : std::string("auto"));
}

} // namespace

const KernelTable& active() {
    const KernelTable* t = g_table.load(std::memory_order_acquire);
    if (!t) {
        t = init_from_env();
        g_table.store(t, std::memory_order_release);
    }
    return *t;
}

std::string backend_name() { return active().name; }

void set_backend(const std::string& name) {
    g_table.store(resolve(name), std::memory_order_release);
}

} // namespace catcode::kernels

#include <cstring>

#include "chns/kernels.hpp"

namespace chns::kern {
namespace {

const Ops* g_active = nullptr;
const char* g_name = "scalar";

void init_once() {
    if (g_active) return;
    if (avx2_available()) {
        g_active = &avx2_ops;
        g_name = "avx2";
    } else {
        g_active = &scalar_ops;
        g_name = "scalar";
    }
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& ops() {
    init_once();
    return *g_active;
}

const char* backend_name() {
    init_once();
    return g_name;
}

bool select_backend(const char* name) {
    if (std::strcmp(name, "scalar") == 0) {
        g_active = &scalar_ops;
        g_name = "scalar";
        return true;
    }
    if (std::strcmp(name, "avx2") == 0 && avx2_available()) {
        g_active = &avx2_ops;
        g_name = "avx2";
        return true;
    }
    return false;
}

}  // namespace chns::kern

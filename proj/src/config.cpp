#include "wrb/config.hpp"

#include <cstdlib>
#include <string>

namespace wrb::config {

namespace {

std::size_t initial_max_dim() {
  if (const char* env = std::getenv("WREATH_BRAUER_MAX_DIM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4096;
}

std::size_t g_max_dim = initial_max_dim();

} // namespace

std::size_t max_module_dim() { return g_max_dim; }

void set_max_module_dim(std::size_t dim) { g_max_dim = dim; }

} // namespace wrb::config

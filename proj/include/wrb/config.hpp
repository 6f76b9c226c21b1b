#ifndef WRB_CONFIG_H
#define WRB_CONFIG_H

#include <cstddef>

namespace wrb {

// Runtime limits. Defaults are desk-scale; the module-dimension cap can be raised
// through the WREATH_BRAUER_MAX_DIM environment variable or the --max-dim CLI flag.
namespace config {

// Largest permutation-module dimension (= subgroup index) we will materialize.
std::size_t max_module_dim();
void set_max_module_dim(std::size_t dim);

// Largest group order subgroup enumeration will walk.
constexpr std::size_t max_subgroup_enum_order = 1u << 14;

} // namespace config
} // namespace wrb

#endif

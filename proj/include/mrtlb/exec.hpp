#pragma once

#include <cstddef>

namespace mrtlb {

/// Selects the serial reference kernels or their OpenMP counterparts.
enum class Exec { serial, parallel };

/// Below this many work items the OpenMP kernels stay on one thread.
inline constexpr std::ptrdiff_t kParallelThreshold = 4096;

}  // namespace mrtlb

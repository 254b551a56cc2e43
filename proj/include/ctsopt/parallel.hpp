#pragma once

#include <cstddef>
#include <functional>

namespace ctsopt {

/// Runs job(0..count-1) on up to `workers` threads; serial when workers <= 1.
/// The first exception raised by any job is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& job);

}  // namespace ctsopt

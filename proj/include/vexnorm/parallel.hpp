#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace vexnorm {

/// Worker count: VEXNORM_THREADS if set and positive, else the hardware concurrency.
unsigned thread_count();

/// Run body(i) for i in [0, n). Each index writes only its own slot, so
/// results do not depend on the number of workers. The first exception
/// (lowest index) is rethrown after all workers finish. Calls made from
/// inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace vexnorm

#include "parallel.hpp"

#include <cstdlib>
#include <string>

namespace halfline::detail {

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HALFLINE_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (...) {
      // Unparsable values fall back to the hardware count.
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace halfline::detail

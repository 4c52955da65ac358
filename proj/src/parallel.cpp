#include "supergerbe/parallel.hpp"

#include <cstdlib>
#include <string>

namespace supergerbe {

Exec Exec::from_env() {
  Exec e;
  if (const char* v = std::getenv("SUPERGERBE_PARALLEL")) {
    try {
      long n = std::stol(v);
      if (n > 0) e.workers = static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return e;
}

}  // namespace supergerbe

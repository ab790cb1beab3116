#include "hflab/limits.hpp"

#include <cstdlib>

namespace hflab {

Limits Limits::from_env() {
  Limits l;
  if (const char* v = std::getenv("HFF_RESOURCE_LIMIT")) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) l.max_nodes = n;
  }
  return l;
}

}  // namespace hflab

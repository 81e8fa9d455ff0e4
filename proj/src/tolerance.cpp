#include "hyperderiv/tolerance.hpp"

#include <atomic>

namespace hyperderiv {
namespace {
std::atomic<double> g_relative{1e-9};
std::atomic<double> g_absolute{1e-12};
}  // namespace

Tolerance default_tolerance() {
  return Tolerance{g_relative.load(std::memory_order_relaxed),
                   g_absolute.load(std::memory_order_relaxed)};
}

void set_default_tolerance(Tolerance tol) {
  g_relative.store(tol.relative, std::memory_order_relaxed);
  g_absolute.store(tol.absolute, std::memory_order_relaxed);
}

}  // namespace hyperderiv

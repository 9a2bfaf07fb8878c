#pragma once

// Index-parallel evaluation. Every kernel writes result k from input k
// only, so the serial reference path and the OpenMP path produce
// bit-identical output; reductions are folded afterwards in index order.

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#include "crflow/mp.hpp"

namespace crflow {

enum class Exec { kSerial, kParallel };

/// out[k] = fn(k) for k in [0, n). Worker threads run at `bits` working
/// precision. If any call throws, the exception of the lowest failing index
/// is rethrown after all workers finish.
template <class Fn>
auto map_indexed(std::size_t n, Fn&& fn, Exec exec, int bits)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using T = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  if (exec == Exec::kSerial) {
    ScopedPrecision guard(bits);
    for (std::size_t k = 0; k < n; ++k) {
      try {
        out[k] = fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  } else {
    const auto count = static_cast<long>(n);
#pragma omp parallel
    {
      ScopedPrecision guard(bits);
#pragma omp for schedule(static)
      for (long k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        try {
          out[idx] = fn(idx);
        } catch (...) {
          errors[idx] = std::current_exception();
        }
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Number of OpenMP worker threads (1 without OpenMP).
int worker_threads();

}  // namespace crflow

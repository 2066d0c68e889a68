#pragma once

/**
 * @file parallel.hpp
 * @brief Data-parallel loops over trial/instance indices.
 *
 * Every kernel has a serial reference version; the OpenMP version returns
 * identical results for any thread count because results are keyed by index
 * and ties are broken toward the smallest index.
 */

#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <vector>

#include <omp.h>

namespace incidence {

enum class Exec { serial, parallel };

/// Deterministic per-index seed derivation (splitmix64 finalizer).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1) + 0xBF58476D1CE4E5B9ULL * stream;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace detail {

class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace detail

/// Smallest index i < n with failed(i), or nullopt.
template <class Pred>
std::optional<std::uint64_t> first_index_serial(std::uint64_t n, Pred&& failed) {
  for (std::uint64_t i = 0; i < n; ++i) {
    if (failed(i)) return i;
  }
  return std::nullopt;
}

/// Parallel version of first_index_serial. Works through blocks so an early
/// hit stops the scan without losing determinism.
template <class Pred>
std::optional<std::uint64_t> first_index_parallel(std::uint64_t n, Pred&& failed,
                                                  std::uint64_t block = 4096) {
  detail::ExceptionSlot errors;
  for (std::uint64_t start = 0; start < n; start += block) {
    const std::uint64_t end = start + block < n ? start + block : n;
    std::uint64_t best = end;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
    for (std::int64_t i = static_cast<std::int64_t>(start); i < static_cast<std::int64_t>(end); ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      if (idx >= best) continue;
      bool hit = false;
      errors.run([&] { hit = failed(idx); });
      if (hit && idx < best) best = idx;
    }
    errors.rethrow();
    if (best < end) return best;
  }
  return std::nullopt;
}

template <class Pred>
std::optional<std::uint64_t> first_index(Exec exec, std::uint64_t n, Pred&& failed) {
  if (exec == Exec::serial) return first_index_serial(n, failed);
  return first_index_parallel(n, failed);
}

/// results[i] = f(i) for i < n.
template <class R, class F>
std::vector<R> map_indices_serial(std::uint64_t n, F&& f) {
  std::vector<R> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

template <class R, class F>
std::vector<R> map_indices_parallel(std::uint64_t n, F&& f) {
  std::vector<std::optional<R>> slots(n);
  detail::ExceptionSlot errors;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    errors.run([&] { slots[static_cast<std::size_t>(i)].emplace(f(static_cast<std::uint64_t>(i))); });
  }
  errors.rethrow();
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

template <class R, class F>
std::vector<R> map_indices(Exec exec, std::uint64_t n, F&& f) {
  if (exec == Exec::serial) return map_indices_serial<R>(n, f);
  return map_indices_parallel<R>(n, f);
}

}  // namespace incidence

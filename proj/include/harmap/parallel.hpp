#pragma once

// Deterministic parallel reductions over sample indices. Results never depend
// on how the index range is split: ties resolve to the lowest index and a
// failure is always reported at the lowest failing index.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace harmap::detail {

/// Worker count for a job of `work` items, capped by HARMONIC_THREADS.
inline unsigned worker_count(std::size_t work) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HARMONIC_THREADS")) {
    const long requested = std::strtol(env, nullptr, 10);
    if (requested > 0) workers = std::min(workers, static_cast<unsigned>(requested));
  }
  constexpr std::size_t kMinChunk = 512;
  const auto useful = static_cast<unsigned>(std::max<std::size_t>(1, work / kMinChunk));
  return std::min(workers, useful);
}

struct Failure {
  std::size_t index = 0;
  std::string message;
};

/// Runs body(i) for i in [0, n) over contiguous chunks. body returns false or
/// throws to signal failure at i; the lowest failing index is reported.
template <class Body>
std::optional<Failure> parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = worker_count(n);
  std::vector<std::optional<Failure>> failures(workers);
  auto run_chunk = [&](unsigned w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      try {
        body(i);
      } catch (const std::exception& e) {
        failures[w] = Failure{i, e.what()};
        return;
      }
    }
  };
  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run_chunk, w);
    for (auto& t : threads) t.join();
  }
  for (auto& f : failures) {
    if (f) return f;  // chunks are ordered, so the first hit is the lowest index
  }
  return std::nullopt;
}

/// Evaluates fn over [0, n) into a vector; non-finite results count as failures.
template <class T, class Fn>
std::optional<Failure> parallel_map(std::size_t n, std::vector<T>& out, Fn&& fn) {
  out.assign(n, T{});
  return parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
}

struct Extremum {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::size_t index = 0;
  std::optional<Failure> failure;
};

/// Minimum of fn over [0, n); ties go to the lowest index. NaN is a failure.
template <class Fn>
Extremum parallel_argmin(std::size_t n, Fn&& fn) {
  std::vector<double> values;
  Extremum out;
  out.failure = parallel_map(n, values, [&](std::size_t i) {
    const double v = fn(i);
    if (std::isnan(v)) throw std::domain_error("evaluation produced NaN");
    return v;
  });
  if (out.failure || n == 0) return out;
  const auto it = std::min_element(values.begin(), values.end());
  out.value = *it;
  out.index = static_cast<std::size_t>(it - values.begin());
  return out;
}

template <class Fn>
Extremum parallel_argmax(std::size_t n, Fn&& fn) {
  auto out = parallel_argmin(n, [&](std::size_t i) { return -fn(i); });
  out.value = -out.value;
  return out;
}

}  // namespace harmap::detail

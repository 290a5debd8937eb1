#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

namespace qtl {

/// How an exhaustive verification kernel walks its cases. `Serial` is the
/// reference path; `Parallel` must produce the identical result.
enum class Execution { Serial, Parallel };

/// Runs `check(i)` for i in [0, count) and returns the failure with the
/// smallest index, if any. `check` returns std::optional<Failure>.
///
/// The parallel path evaluates every case (OpenMP, dynamic schedule) and then
/// picks the lowest failing index, so both paths report the same
/// counterexample. An exception thrown by a case is rethrown for the lowest
/// index that threw, unless a lower index already failed.
template <class Check>
auto first_failure(std::size_t count, Execution exec, Check&& check) -> decltype(check(std::size_t{0})) {
  using Result = decltype(check(std::size_t{0}));
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i)
      if (auto r = check(i)) return r;
    return Result{};
  }
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < n; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = check(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    if (results[i]) return results[i];
  }
  return Result{};
}

/// Maps `fn` over [0, count) into a vector, in parallel when requested.
template <class Fn>
auto parallel_map(std::size_t count, Execution exec, Fn&& fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  std::vector<decltype(fn(std::size_t{0}))> out(count);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace qtl

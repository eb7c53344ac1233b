#pragma once

#include <chrono>

namespace wg {

/// Wall-clock stopwatch.
class Stopwatch {
public:
  Stopwatch() : start_(Clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  void reset() { start_ = Clock::now(); }

private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_;
};

}  // namespace wg

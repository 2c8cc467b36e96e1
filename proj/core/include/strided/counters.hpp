#pragma once

#include <cstdint>

namespace strided {

/// Snapshot of instrumentation counters.
struct CounterReport {
    std::uint64_t scalar_ops = 0;         // per-element arithmetic operations executed
    std::uint64_t buffers_allocated = 0;  // heap byte stores created
    std::uint64_t bytes_allocated = 0;    // total size of those stores

    friend bool operator==(const CounterReport&, const CounterReport&) = default;
};

/// Scoped counting session. While a session is alive, kernels and heap
/// allocations on the same thread are tallied into it. Sessions nest: an
/// inner session's counts also flow to the enclosing one. Sessions on
/// different threads are independent.
///
///     CounterSession session;
///     auto y = elementwise_unary(UnaryOp::square, x);
///     session.report().scalar_ops;  // == x.size()
///
/// File-mapped and foreign buffers are not heap allocations and are not
/// counted.
class CounterSession {
public:
    CounterSession() noexcept;
    ~CounterSession();

    CounterSession(const CounterSession&) = delete;
    CounterSession& operator=(const CounterSession&) = delete;

    [[nodiscard]] CounterReport report() const noexcept { return report_; }
    void reset() noexcept { report_ = {}; }

private:
    friend void count_scalar_ops(std::uint64_t n) noexcept;
    friend void count_allocation(std::uint64_t bytes) noexcept;

    CounterReport report_;
    CounterSession* parent_;
};

void count_scalar_ops(std::uint64_t n) noexcept;
void count_allocation(std::uint64_t bytes) noexcept;

}  // namespace strided

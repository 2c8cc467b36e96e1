#include "strided/counters.hpp"

namespace strided {

namespace {
thread_local CounterSession* current_session = nullptr;
}

CounterSession::CounterSession() noexcept : parent_(current_session) { current_session = this; }

// Sessions are expected to be destroyed in LIFO order on their own thread.
CounterSession::~CounterSession() { current_session = parent_; }

void count_scalar_ops(std::uint64_t n) noexcept {
    for (CounterSession* s = current_session; s != nullptr; s = s->parent_) {
        s->report_.scalar_ops += n;
    }
}

void count_allocation(std::uint64_t bytes) noexcept {
    for (CounterSession* s = current_session; s != nullptr; s = s->parent_) {
        s->report_.buffers_allocated += 1;
        s->report_.bytes_allocated += bytes;
    }
}

}  // namespace strided

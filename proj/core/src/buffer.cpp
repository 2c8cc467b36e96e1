#include "strided/buffer.hpp"

#include <atomic>
#include <cstring>
#include <new>
#include <string>

#include "strided/counters.hpp"
#include "strided/error.hpp"

namespace strided {

namespace {

std::uint64_t next_buffer_id() noexcept {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
}

class HeapBuffer final : public Buffer {
public:
    HeapBuffer(std::unique_ptr<std::byte[]> storage, std::size_t size) noexcept
        : Buffer(storage.get(), size, Backing::heap, false), storage_(std::move(storage)) {}

private:
    std::unique_ptr<std::byte[]> storage_;
};

class ForeignBuffer final : public Buffer {
public:
    ForeignBuffer(std::byte* data, std::size_t size, bool read_only) noexcept
        : Buffer(data, size, Backing::foreign, read_only) {}
};

}  // namespace

Buffer::Buffer(std::byte* data, std::size_t size, Backing backing, bool read_only) noexcept
    : data_(data), size_(size), backing_(backing), read_only_(read_only), id_(next_buffer_id()) {}

void Buffer::flush() { fail(Errc::not_mapped, "flush requires a file-mapped array"); }

std::shared_ptr<Buffer> Buffer::allocate(std::size_t size) {
    std::unique_ptr<std::byte[]> storage;
    try {
        // value-initialized: zero-filled
        storage.reset(new std::byte[size == 0 ? 1 : size]());
    } catch (const std::bad_alloc&) {
        fail(Errc::allocation, "cannot allocate " + std::to_string(size) + " bytes");
    }
    count_allocation(size);
    return std::make_shared<HeapBuffer>(std::move(storage), size);
}

std::shared_ptr<Buffer> Buffer::wrap_foreign(std::byte* data, std::size_t size, bool read_only) {
    return std::make_shared<ForeignBuffer>(data, size, read_only);
}

}  // namespace strided

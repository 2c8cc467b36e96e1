#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>

namespace strided {

enum class Backing { heap, file_mapped, foreign };

/// Fixed-length byte store shared by every array view over it.
///
/// Concurrent reads are safe. Writers need external exclusivity over the
/// whole buffer; the library does not synchronize them.
class Buffer {
public:
    virtual ~Buffer() = default;

    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;

    [[nodiscard]] std::byte* data() const noexcept { return data_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::span<std::byte> bytes() const noexcept { return {data_, size_}; }
    [[nodiscard]] Backing backing() const noexcept { return backing_; }
    [[nodiscard]] bool read_only() const noexcept { return read_only_; }
    [[nodiscard]] std::uint64_t id() const noexcept { return id_; }

    /// Makes pending writes durable. Only file-mapped buffers support this;
    /// others throw Errc::not_mapped.
    virtual void flush();

    /// Zero-filled heap buffer. Counted by the active CounterSession.
    static std::shared_ptr<Buffer> allocate(std::size_t size);

    /// Non-owning view of memory owned by someone else. The owner must
    /// outlive every array created over it.
    static std::shared_ptr<Buffer> wrap_foreign(std::byte* data, std::size_t size, bool read_only);

protected:
    Buffer(std::byte* data, std::size_t size, Backing backing, bool read_only) noexcept;

private:
    std::byte* data_;
    std::size_t size_;
    Backing backing_;
    bool read_only_;
    std::uint64_t id_;
};

}  // namespace strided

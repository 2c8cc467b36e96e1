#include "strided/storage.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

namespace strided {

namespace {

[[noreturn]] void fail_errno(const std::string& what, const std::filesystem::path& path, int err) {
    const std::string text = what + " '" + path.string() + "': " + std::strerror(err);
    if (err == ENOENT) fail(Errc::file_not_found, text);
    if (err == EACCES || err == EPERM || err == EROFS) fail(Errc::permission_denied, text);
    fail(Errc::io, text);
}

class MappedBuffer final : public Buffer {
public:
    MappedBuffer(std::byte* data, std::size_t size, bool read_only, int fd,
                 std::filesystem::path path) noexcept
        : Buffer(data, size, Backing::file_mapped, read_only), fd_(fd), path_(std::move(path)) {}

    ~MappedBuffer() override {
        if (size() > 0) ::munmap(data(), size());
        ::close(fd_);
    }

    void flush() override {
        if (size() > 0 && ::msync(data(), size(), MS_SYNC) != 0) {
            fail_errno("cannot flush mapping of", path_, errno);
        }
    }

private:
    int fd_;
    std::filesystem::path path_;
};

class FileDescriptor {
public:
    explicit FileDescriptor(int fd) noexcept : fd_(fd) {}
    ~FileDescriptor() {
        if (fd_ >= 0) ::close(fd_);
    }
    FileDescriptor(const FileDescriptor&) = delete;
    FileDescriptor& operator=(const FileDescriptor&) = delete;

    [[nodiscard]] int get() const noexcept { return fd_; }
    int release() noexcept { return std::exchange(fd_, -1); }

private:
    int fd_;
};

std::uint64_t checked_bytes(const Shape& shape, const DType& dtype) {
    for (std::int64_t extent : shape) {
        if (extent < 0) fail(Errc::shape, "negative extent in memmap shape");
    }
    return static_cast<std::uint64_t>(element_count(shape)) * dtype.itemsize();
}

}  // namespace

MemmapMode parse_memmap_mode(std::string_view token) {
    if (token == "write" || token == "w+") return MemmapMode::write;
    if (token == "r+") return MemmapMode::read_write;
    if (token == "r") return MemmapMode::read_only;
    fail(Errc::invalid_argument,
         "unknown memmap mode '" + std::string(token) + "' (expected write, r+ or r)");
}

std::string_view to_string(MemmapMode mode) noexcept {
    switch (mode) {
        case MemmapMode::write: return "write";
        case MemmapMode::read_write: return "r+";
        case MemmapMode::read_only: return "r";
    }
    return "?";
}

ArrayView memmap_open(const std::filesystem::path& path, MemmapMode mode, const Shape& shape,
                      const DType& dtype) {
    if (dtype.has_big_endian()) {
        fail(Errc::unsupported_byte_order, "cannot map big-endian data");
    }
    const std::uint64_t bytes = checked_bytes(shape, dtype);
    const bool read_only = mode == MemmapMode::read_only;

    int flags = read_only ? O_RDONLY : O_RDWR;
    if (mode == MemmapMode::write) flags |= O_CREAT | O_TRUNC;
    FileDescriptor fd(::open(path.c_str(), flags | O_CLOEXEC, 0644));
    if (fd.get() < 0) fail_errno("cannot open", path, errno);

    if (mode == MemmapMode::write) {
        if (::ftruncate(fd.get(), static_cast<off_t>(bytes)) != 0) {
            fail_errno("cannot size", path, errno);
        }
    } else {
        struct stat st {};
        if (::fstat(fd.get(), &st) != 0) fail_errno("cannot stat", path, errno);
        if (static_cast<std::uint64_t>(st.st_size) < bytes) {
            fail(Errc::size_mismatch, "file '" + path.string() + "' holds " +
                                          std::to_string(st.st_size) + " bytes but shape and dtype need " +
                                          std::to_string(bytes));
        }
    }

    std::byte* data = nullptr;
    if (bytes > 0) {
        const int prot = read_only ? PROT_READ : PROT_READ | PROT_WRITE;
        void* addr = ::mmap(nullptr, bytes, prot, MAP_SHARED, fd.get(), 0);
        if (addr == MAP_FAILED) fail_errno("cannot map", path, errno);
        data = static_cast<std::byte*>(addr);
    }
    auto buffer = std::make_shared<MappedBuffer>(data, bytes, read_only, fd.release(), path);
    return ArrayView(std::move(buffer), 0, shape, contiguous_strides(shape, dtype.itemsize()), dtype,
                     !read_only, false);
}

void flush(const ArrayView& v) { v.buffer()->flush(); }

ArrayView from_interface(const ArrayInterfaceDescriptor& desc) {
    const DType dtype = parse_typestr(desc.typestr);
    if (desc.data.address == nullptr) {
        fail(Errc::interface, "array interface data address is null");
    }
    for (std::int64_t extent : desc.shape) {
        if (extent < 0) fail(Errc::interface, "array interface shape has a negative extent");
    }
    Strides strides = desc.strides.value_or(contiguous_strides(desc.shape, dtype.itemsize()));
    if (strides.size() != desc.shape.size()) {
        fail(Errc::interface, "array interface strides and shape differ in rank");
    }
    // The exported block spans [lo, hi) relative to the data address.
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    if (element_count(desc.shape) > 0) {
        for (std::size_t k = 0; k < strides.size(); ++k) {
            const std::int64_t span = (desc.shape[k] - 1) * strides[k];
            (span < 0 ? lo : hi) += span;
        }
        hi += static_cast<std::int64_t>(dtype.itemsize());
    }
    auto* origin = static_cast<std::byte*>(desc.data.address);
    auto buffer = Buffer::wrap_foreign(origin + lo, static_cast<std::size_t>(hi - lo),
                                       desc.data.read_only);
    return ArrayView(std::move(buffer), -lo, desc.shape, std::move(strides), dtype,
                     !desc.data.read_only, true);
}

ArrayInterfaceDescriptor to_interface(const ArrayView& v) {
    ArrayInterfaceDescriptor desc;
    desc.shape = v.shape();
    desc.data.address = v.data();
    desc.data.read_only = !v.flags().writeable;
    desc.typestr = format_typestr(v.dtype());
    if (!v.flags().c_contiguous) desc.strides = v.strides();
    return desc;
}

std::string interface_to_json(const ArrayInterfaceDescriptor& desc) {
    nlohmann::json j;
    j["shape"] = desc.shape;
    j["data"] = nlohmann::json::array(
        {reinterpret_cast<std::uintptr_t>(desc.data.address), desc.data.read_only});
    j["typestr"] = desc.typestr;
    if (desc.strides) j["strides"] = *desc.strides;
    return j.dump();
}

ArrayInterfaceDescriptor interface_from_json(std::string_view json) {
    ArrayInterfaceDescriptor desc;
    try {
        const nlohmann::json j = nlohmann::json::parse(json);
        desc.shape = j.at("shape").get<Shape>();
        const nlohmann::json& data = j.at("data");
        if (!data.is_array() || data.size() != 2) {
            fail(Errc::interface, "\"data\" must be an [address, read_only] pair");
        }
        desc.data.address = reinterpret_cast<void*>(data[0].get<std::uintptr_t>());
        desc.data.read_only = data[1].get<bool>();
        desc.typestr = j.at("typestr").get<std::string>();
        if (j.contains("strides") && !j["strides"].is_null()) {
            desc.strides = j["strides"].get<Strides>();
        }
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::interface, std::string("malformed array interface: ") + e.what());
    }
    return desc;
}

ArrayView fromfile(const std::filesystem::path& path, const DType& dtype) {
    if (dtype.has_big_endian()) fail(Errc::unsupported_byte_order, "cannot read big-endian data");
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) {
        if (ec == std::errc::no_such_file_or_directory) {
            fail(Errc::file_not_found, "cannot read '" + path.string() + "': no such file");
        }
        fail(Errc::io, "cannot read '" + path.string() + "': " + ec.message());
    }
    if (size % dtype.itemsize() != 0) {
        fail(Errc::format, "file '" + path.string() + "' holds " + std::to_string(size) +
                               " bytes, not a multiple of the " + std::to_string(dtype.itemsize()) +
                               "-byte record (remainder " +
                               std::to_string(size % dtype.itemsize()) + ")");
    }
    ArrayView out = create({static_cast<std::int64_t>(size / dtype.itemsize())}, dtype);
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_errno("cannot open", path, errno);
    in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(size));
    if (static_cast<std::uintmax_t>(in.gcount()) != size) {
        fail(Errc::io, "short read from '" + path.string() + "'");
    }
    return out;
}

void tofile(const ArrayView& v, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail_errno("cannot create", path, errno);
    const auto* base = reinterpret_cast<const char*>(v.buffer()->data());
    const auto n = static_cast<std::streamsize>(v.itemsize());
    if (v.flags().c_contiguous) {
        out.write(base + v.base_offset(), n * v.size());
    } else {
        for_each_offset(v, [&](std::int64_t o) { out.write(base + o, n); });
    }
    out.flush();
    if (!out) fail(Errc::io, "write to '" + path.string() + "' failed");
}

}  // namespace strided

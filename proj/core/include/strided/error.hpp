#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strided {

/// Category of a library failure. Every exception thrown by the library is a
/// strided::Error carrying one of these codes.
enum class Errc {
    parse,                   // malformed typestr
    unsupported_byte_order,  // big-endian data
    unsupported_dtype,       // kind/size pair outside the supported set
    not_representable,       // structured dtype has no typestr
    invalid_dtype,           // empty or duplicate-name structured spec
    field_not_found,
    index_out_of_range,
    permission,              // write to a non-writeable array or buffer
    shape,                   // element-count or rank mismatch
    broadcast,
    inplace_shape,           // in-place op would expand its target
    casting,                 // in-place result does not fit the target dtype
    reinterpret,
    invalid_argument,
    allocation,
    divide_by_zero,
    file_not_found,
    size_mismatch,
    permission_denied,       // OS-level access failure
    not_mapped,
    format,
    io,
    interface,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace strided

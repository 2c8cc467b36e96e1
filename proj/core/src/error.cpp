#include "strided/error.hpp"

namespace strided {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::parse: return "parse";
        case Errc::unsupported_byte_order: return "unsupported-byte-order";
        case Errc::unsupported_dtype: return "unsupported-dtype";
        case Errc::not_representable: return "not-representable";
        case Errc::invalid_dtype: return "invalid-dtype";
        case Errc::field_not_found: return "field-not-found";
        case Errc::index_out_of_range: return "index";
        case Errc::permission: return "permission";
        case Errc::shape: return "shape";
        case Errc::broadcast: return "broadcast";
        case Errc::inplace_shape: return "inplace-shape";
        case Errc::casting: return "casting";
        case Errc::reinterpret: return "reinterpret";
        case Errc::invalid_argument: return "invalid-argument";
        case Errc::allocation: return "allocation";
        case Errc::divide_by_zero: return "divide-by-zero";
        case Errc::file_not_found: return "file-not-found";
        case Errc::size_mismatch: return "size-mismatch";
        case Errc::permission_denied: return "permission-denied";
        case Errc::not_mapped: return "not-mapped";
        case Errc::format: return "format";
        case Errc::io: return "io";
        case Errc::interface: return "interface";
    }
    return "unknown";
}

}  // namespace strided

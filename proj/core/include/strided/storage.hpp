#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "strided/array.hpp"

namespace strided {

enum class MemmapMode {
    write,       // "write": create or truncate, read-write
    read_write,  // "r+": open existing, read-write
    read_only,   // "r": open existing, read-only
};

/// Accepts the mode tokens "write", "r+" and "r".
MemmapMode parse_memmap_mode(std::string_view token);
std::string_view to_string(MemmapMode mode) noexcept;

/// Maps a raw array file: packed little-endian elements in C order, no
/// header. Shape and dtype are supplied by the caller. Write mode creates a
/// zero-filled file of exactly the required size; read modes need a file at
/// least that large.
ArrayView memmap_open(const std::filesystem::path& path, MemmapMode mode, const Shape& shape,
                      const DType& dtype);

/// Writes pending modifications of a file-mapped array back to its file.
void flush(const ArrayView& v);

/// Foreign-memory exchange record, mirroring the `__array_interface__`
/// dictionary: "shape", "data" (address, read-only flag), "typestr" and
/// optional "strides".
struct ArrayInterfaceDescriptor {
    struct Data {
        void* address = nullptr;
        bool read_only = false;
    };

    Shape shape;
    Data data;
    std::string typestr;
    std::optional<Strides> strides;  // absent: C-contiguous
};

/// Zero-copy view over memory owned by the exporter, which must outlive the
/// returned array and every view derived from it.
ArrayView from_interface(const ArrayInterfaceDescriptor& desc);

/// Describes an existing scalar-typed array for export.
ArrayInterfaceDescriptor to_interface(const ArrayView& v);

/// JSON text of a descriptor with the field names above; the address is
/// written as an integer.
std::string interface_to_json(const ArrayInterfaceDescriptor& desc);
ArrayInterfaceDescriptor interface_from_json(std::string_view json);

/// Reads a raw array file into a fresh 1-D heap array of records.
ArrayView fromfile(const std::filesystem::path& path, const DType& dtype);

/// Writes v's logical elements in C order as packed little-endian bytes.
void tofile(const ArrayView& v, const std::filesystem::path& path);

}  // namespace strided

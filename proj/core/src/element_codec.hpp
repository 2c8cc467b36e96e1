#pragma once

#include <cstring>

#include "strided/dtype.hpp"
#include "strided/error.hpp"
#include "strided/value.hpp"

namespace strided::detail {

template <class T>
T load(const std::byte* p) noexcept {
    T v;
    std::memcpy(&v, p, sizeof(T));
    return v;
}

template <class T>
void store(std::byte* p, T v) noexcept {
    std::memcpy(p, &v, sizeof(T));
}

inline Value decode(const std::byte* p, const DType& dt) {
    switch (dt.kind()) {
        case Kind::boolean:
            return Value(load<std::uint8_t>(p) != 0);
        case Kind::signed_int:
            switch (dt.itemsize()) {
                case 1: return Value(std::int64_t{load<std::int8_t>(p)});
                case 2: return Value(std::int64_t{load<std::int16_t>(p)});
                case 4: return Value(std::int64_t{load<std::int32_t>(p)});
                default: return Value(load<std::int64_t>(p));
            }
        case Kind::unsigned_int:
            switch (dt.itemsize()) {
                case 1: return Value(std::uint64_t{load<std::uint8_t>(p)});
                case 2: return Value(std::uint64_t{load<std::uint16_t>(p)});
                case 4: return Value(std::uint64_t{load<std::uint32_t>(p)});
                default: return Value(load<std::uint64_t>(p));
            }
        case Kind::floating:
            return dt.itemsize() == 4 ? Value(double{load<float>(p)}) : Value(load<double>(p));
        case Kind::structured: {
            Record record;
            record.reserve(dt.fields().size());
            for (const Field& f : dt.fields()) {
                record.push_back(NamedValue{f.name, decode(p + f.offset, f.dtype)});
            }
            return Value(std::move(record));
        }
    }
    return Value();
}

/// Integers wrap modulo 2^bits; floats convert with C++ semantics.
inline void encode(std::byte* p, const DType& dt, const Value& v) {
    switch (dt.kind()) {
        case Kind::boolean:
            store<std::uint8_t>(p, v.as_bool() ? 1 : 0);
            return;
        case Kind::signed_int:
        case Kind::unsigned_int: {
            std::uint64_t bits = v.as_uint();
            if (v.is_floating() && (dt.kind() == Kind::signed_int || v.as_double() < 0)) {
                bits = static_cast<std::uint64_t>(v.as_int());
            }
            switch (dt.itemsize()) {
                case 1: store(p, static_cast<std::uint8_t>(bits)); return;
                case 2: store(p, static_cast<std::uint16_t>(bits)); return;
                case 4: store(p, static_cast<std::uint32_t>(bits)); return;
                default: store(p, bits); return;
            }
        }
        case Kind::floating:
            if (dt.itemsize() == 4) store(p, static_cast<float>(v.as_double()));
            else store(p, v.as_double());
            return;
        case Kind::structured: {
            if (!v.is_record()) {
                fail(Errc::invalid_argument, "structured element needs a record value");
            }
            const Record& r = v.as_record();
            if (r.size() != dt.fields().size()) {
                fail(Errc::invalid_argument,
                     "record has " + std::to_string(r.size()) + " values for " +
                         std::to_string(dt.fields().size()) + " fields");
            }
            for (std::size_t i = 0; i < r.size(); ++i) {
                const Field& f = dt.fields()[i];
                if (!r[i].name.empty() && r[i].name != f.name) {
                    fail(Errc::field_not_found,
                         "record value '" + r[i].name + "' does not match field '" + f.name + "'");
                }
                encode(p + f.offset, f.dtype, r[i].value);
            }
            return;
        }
    }
}

}  // namespace strided::detail

#include "strided/dtype.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "strided/error.hpp"

namespace strided {

namespace {

const std::vector<Field>& no_fields() {
    static const std::vector<Field> empty;
    return empty;
}

bool supported_size(Kind kind, std::size_t size) {
    switch (kind) {
        case Kind::signed_int:
        case Kind::unsigned_int:
            return size == 1 || size == 2 || size == 4 || size == 8;
        case Kind::floating:
            return size == 4 || size == 8;
        case Kind::boolean:
            return size == 1;
        case Kind::structured:
            return false;
    }
    return false;
}

char kind_letter(Kind kind) {
    switch (kind) {
        case Kind::signed_int: return 'i';
        case Kind::unsigned_int: return 'u';
        case Kind::floating: return 'f';
        case Kind::boolean: return 'b';
        case Kind::structured: break;
    }
    return 'V';
}

}  // namespace

DType::DType(Kind kind, std::size_t itemsize, ByteOrder order,
             std::shared_ptr<const std::vector<Field>> fields)
    : kind_(kind), itemsize_(itemsize), order_(order), fields_(std::move(fields)) {}

DType DType::scalar(Kind kind, std::size_t itemsize, ByteOrder order) {
    if (!supported_size(kind, itemsize)) {
        fail(Errc::unsupported_dtype, "unsupported scalar dtype: kind '" +
                                          std::string(1, kind_letter(kind)) + "' with itemsize " +
                                          std::to_string(itemsize));
    }
    if (itemsize == 1 || kind == Kind::boolean) {
        order = ByteOrder::not_applicable;
    } else if (order == ByteOrder::not_applicable) {
        order = ByteOrder::little;
    }
    return DType(kind, itemsize, order, nullptr);
}

const std::vector<Field>& DType::fields() const noexcept { return fields_ ? *fields_ : no_fields(); }

bool DType::has_big_endian() const noexcept {
    if (order_ == ByteOrder::big) return true;
    return std::any_of(fields().begin(), fields().end(),
                       [](const Field& f) { return f.dtype.has_big_endian(); });
}

std::string DType::name() const {
    switch (kind_) {
        case Kind::signed_int: return "int" + std::to_string(itemsize_ * 8);
        case Kind::unsigned_int: return "uint" + std::to_string(itemsize_ * 8);
        case Kind::floating: return "float" + std::to_string(itemsize_ * 8);
        case Kind::boolean: return "bool";
        case Kind::structured: break;
    }
    std::string out = "[";
    for (std::size_t i = 0; i < fields().size(); ++i) {
        if (i) out += ", ";
        out += "('" + fields()[i].name + "', " + fields()[i].dtype.name() + ")";
    }
    return out + "]";
}

bool operator==(const DType& a, const DType& b) noexcept {
    return a.kind_ == b.kind_ && a.itemsize_ == b.itemsize_ && a.order_ == b.order_ &&
           a.fields() == b.fields();
}

DType parse_typestr(std::string_view s, TypestrOptions options) {
    if (s.empty()) fail(Errc::parse, "empty typestr");

    const char order_char = s[0];
    if (order_char != '<' && order_char != '>' && order_char != '|') {
        fail(Errc::parse, "invalid byte-order character '" + std::string(1, order_char) +
                              "' at position 0 of typestr \"" + std::string(s) + "\"");
    }
    if (s.size() < 2) fail(Errc::parse, "typestr \"" + std::string(s) + "\" is missing a kind");

    Kind kind{};
    switch (s[1]) {
        case 'i': kind = Kind::signed_int; break;
        case 'u': kind = Kind::unsigned_int; break;
        case 'f': kind = Kind::floating; break;
        case 'b': kind = Kind::boolean; break;
        default:
            fail(Errc::parse, "invalid kind character '" + std::string(1, s[1]) +
                                  "' at position 1 of typestr \"" + std::string(s) + "\"");
    }

    const std::string_view digits = s.substr(2);
    if (digits.empty()) fail(Errc::parse, "typestr \"" + std::string(s) + "\" is missing a size");
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < '0' || digits[i] > '9') {
            fail(Errc::parse, "invalid size character '" + std::string(1, digits[i]) +
                                  "' at position " + std::to_string(i + 2) + " of typestr \"" +
                                  std::string(s) + "\"");
        }
    }
    if (digits.size() > 1 && digits[0] == '0') {
        fail(Errc::parse, "size in typestr \"" + std::string(s) + "\" has a leading zero");
    }
    std::size_t size = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), size);
    if (ec != std::errc{} || size == 0) {
        fail(Errc::parse, "invalid size in typestr \"" + std::string(s) + "\"");
    }
    if (!supported_size(kind, size)) {
        fail(Errc::unsupported_dtype, "unsupported typestr \"" + std::string(s) + "\"");
    }

    const bool order_free = size == 1 || kind == Kind::boolean;
    if (order_free != (order_char == '|')) {
        fail(Errc::parse, "byte-order character '" + std::string(1, order_char) +
                              "' does not match typestr \"" + std::string(s) + "\"");
    }
    if (order_char == '>' && !options.allow_big_endian) {
        fail(Errc::unsupported_byte_order,
             "big-endian typestr \"" + std::string(s) + "\" is not supported");
    }
    return DType::scalar(kind, size, order_char == '>' ? ByteOrder::big : ByteOrder::little);
}

std::string format_typestr(const DType& dt) {
    if (dt.is_structured()) {
        fail(Errc::not_representable, "structured dtype " + dt.name() + " has no typestr");
    }
    char order = '|';
    if (dt.byteorder() == ByteOrder::little) order = '<';
    if (dt.byteorder() == ByteOrder::big) order = '>';
    return std::string{order, kind_letter(dt.kind())} + std::to_string(dt.itemsize());
}

DType make_struct_dtype(const StructSpec& spec) {
    if (spec.empty()) fail(Errc::invalid_dtype, "structured dtype needs at least one field");

    auto fields = std::make_shared<std::vector<Field>>();
    std::set<std::string, std::less<>> seen;
    std::size_t offset = 0;
    for (const FieldSpec& entry : spec) {
        if (entry.name.empty()) fail(Errc::invalid_dtype, "field names must be non-empty");
        if (!seen.insert(entry.name).second) {
            fail(Errc::invalid_dtype, "duplicate field name '" + entry.name + "'");
        }
        DType field_type = std::holds_alternative<DType>(entry.type)
                               ? std::get<DType>(entry.type)
                               : make_struct_dtype(std::get<StructSpec>(entry.type));
        const std::size_t size = field_type.itemsize();
        fields->push_back(Field{entry.name, std::move(field_type), offset});
        offset += size;
    }
    return DType(Kind::structured, offset, ByteOrder::not_applicable, std::move(fields));
}

std::pair<std::size_t, DType> field_lookup(const DType& dt, std::string_view name) {
    if (!dt.is_structured()) {
        fail(Errc::field_not_found,
             "dtype " + dt.name() + " has no fields (looking up '" + std::string(name) + "')");
    }
    std::string available;
    for (const Field& f : dt.fields()) {
        if (f.name == name) return {f.offset, f.dtype};
        if (!available.empty()) available += ", ";
        available += f.name;
    }
    fail(Errc::field_not_found,
         "no field named '" + std::string(name) + "'; available: " + available);
}

}  // namespace strided

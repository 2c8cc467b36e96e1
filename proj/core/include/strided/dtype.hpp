#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace strided {

enum class Kind { signed_int, unsigned_int, floating, boolean, structured };
enum class ByteOrder { little, big, not_applicable };

struct Field;
class DType;

/// Entry in a structured dtype specification: a name paired with either a
/// scalar dtype or a nested list of entries.
struct FieldSpec;
using StructSpec = std::vector<FieldSpec>;

/// Element descriptor. Scalar dtypes are one of i1/i2/i4/i8, u1/u2/u4/u8,
/// f4/f8 or b1. Structured dtypes hold an ordered list of packed fields, each
/// of which is itself a DType, so records nest.
///
/// DType is an immutable value; copies share their field table.
class DType {
public:
    /// Checked scalar constructor. Rejects kind/size pairs outside the
    /// supported set and forces byte order to not-applicable for 1-byte and
    /// bool types.
    static DType scalar(Kind kind, std::size_t itemsize, ByteOrder order = ByteOrder::little);

    static DType int8() { return scalar(Kind::signed_int, 1); }
    static DType int16() { return scalar(Kind::signed_int, 2); }
    static DType int32() { return scalar(Kind::signed_int, 4); }
    static DType int64() { return scalar(Kind::signed_int, 8); }
    static DType uint8() { return scalar(Kind::unsigned_int, 1); }
    static DType uint16() { return scalar(Kind::unsigned_int, 2); }
    static DType uint32() { return scalar(Kind::unsigned_int, 4); }
    static DType uint64() { return scalar(Kind::unsigned_int, 8); }
    static DType float32() { return scalar(Kind::floating, 4); }
    static DType float64() { return scalar(Kind::floating, 8); }
    static DType boolean() { return scalar(Kind::boolean, 1); }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t itemsize() const noexcept { return itemsize_; }
    [[nodiscard]] ByteOrder byteorder() const noexcept { return order_; }
    [[nodiscard]] const std::vector<Field>& fields() const noexcept;

    [[nodiscard]] bool is_structured() const noexcept { return kind_ == Kind::structured; }
    [[nodiscard]] bool is_integer() const noexcept {
        return kind_ == Kind::signed_int || kind_ == Kind::unsigned_int;
    }
    [[nodiscard]] bool is_numeric() const noexcept { return !is_structured(); }

    /// True if this dtype or any nested field is big-endian.
    [[nodiscard]] bool has_big_endian() const noexcept;

    /// Short human-readable name: "int64", "uint8", "bool", or a field list.
    [[nodiscard]] std::string name() const;

    friend bool operator==(const DType& a, const DType& b) noexcept;

private:
    friend DType make_struct_dtype(const StructSpec& spec);

    DType(Kind kind, std::size_t itemsize, ByteOrder order,
          std::shared_ptr<const std::vector<Field>> fields);

    Kind kind_;
    std::size_t itemsize_;
    ByteOrder order_;
    std::shared_ptr<const std::vector<Field>> fields_;
};

struct Field {
    std::string name;
    DType dtype;
    std::size_t offset;

    friend bool operator==(const Field&, const Field&) = default;
};

struct FieldSpec {
    FieldSpec(std::string n, DType dt) : name(std::move(n)), type(std::move(dt)) {}
    FieldSpec(std::string n, StructSpec nested) : name(std::move(n)), type(std::move(nested)) {}

    std::string name;
    std::variant<DType, StructSpec> type;
};

struct TypestrOptions {
    /// When false (the default) a '>' order with itemsize > 1 is rejected.
    bool allow_big_endian = false;
};

/// Parses `<order><kind><size>`, e.g. "<f8" or "|u1". Order '|' is only valid
/// for 1-byte and bool types, and '<'/'>' only for the others, so every
/// accepted string is canonical.
DType parse_typestr(std::string_view s, TypestrOptions options = {});

/// Inverse of parse_typestr for scalar dtypes.
std::string format_typestr(const DType& dt);

/// Builds a packed structured dtype; nested specs recurse.
DType make_struct_dtype(const StructSpec& spec);

/// Offset and dtype of the named field of a structured dtype.
std::pair<std::size_t, DType> field_lookup(const DType& dt, std::string_view name);

}  // namespace strided

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace strided {

struct NamedValue;

/// Decoded structured element: (field name, value) pairs in declaration order.
using Record = std::vector<NamedValue>;

/// A single decoded element. Integers keep their signedness so that uint64
/// values survive a round trip; structured elements decode to a Record.
class Value {
public:
    using Storage = std::variant<bool, std::int64_t, std::uint64_t, double, Record>;

    Value() : data_(std::int64_t{0}) {}
    Value(bool v) : data_(v) {}
    Value(int v) : data_(std::int64_t{v}) {}
    Value(long v) : data_(static_cast<std::int64_t>(v)) {}
    Value(long long v) : data_(static_cast<std::int64_t>(v)) {}
    Value(unsigned v) : data_(std::uint64_t{v}) {}
    Value(unsigned long v) : data_(static_cast<std::uint64_t>(v)) {}
    Value(unsigned long long v) : data_(static_cast<std::uint64_t>(v)) {}
    Value(double v) : data_(v) {}
    Value(Record r);

    [[nodiscard]] const Storage& storage() const noexcept { return data_; }

    [[nodiscard]] bool is_record() const noexcept { return std::holds_alternative<Record>(data_); }
    [[nodiscard]] bool is_floating() const noexcept { return std::holds_alternative<double>(data_); }

    /// Numeric conversions; throw Errc::invalid_argument on records.
    [[nodiscard]] double as_double() const;
    [[nodiscard]] std::int64_t as_int() const;
    [[nodiscard]] std::uint64_t as_uint() const;
    [[nodiscard]] bool as_bool() const;
    [[nodiscard]] const Record& as_record() const;

    /// Field of a record value by name.
    [[nodiscard]] const Value& operator[](const std::string& name) const;

    friend bool operator==(const Value& a, const Value& b);

private:
    Storage data_;
};

struct NamedValue {
    std::string name;
    Value value;

    friend bool operator==(const NamedValue&, const NamedValue&) = default;
};

inline Value::Value(Record r) : data_(std::move(r)) {}

/// Python-like text: integers plainly, floats in shortest round-trip form
/// ("0.5", "5.5", "2.0"), records as "(1, (0.0, 0.5))".
std::string to_string(const Value& v);

}  // namespace strided

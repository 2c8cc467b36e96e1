#include "strided/value.hpp"

#include <charconv>
#include <cmath>

#include "strided/error.hpp"

namespace strided {

namespace {

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

[[noreturn]] void not_numeric() { fail(Errc::invalid_argument, "record value used as a number"); }

}  // namespace

double Value::as_double() const {
    return std::visit(overloaded{[](bool b) { return b ? 1.0 : 0.0; },
                                 [](std::int64_t i) { return static_cast<double>(i); },
                                 [](std::uint64_t u) { return static_cast<double>(u); },
                                 [](double d) { return d; },
                                 [](const Record&) -> double { not_numeric(); }},
                      data_);
}

std::int64_t Value::as_int() const {
    return std::visit(overloaded{[](bool b) -> std::int64_t { return b ? 1 : 0; },
                                 [](std::int64_t i) { return i; },
                                 [](std::uint64_t u) { return static_cast<std::int64_t>(u); },
                                 [](double d) { return static_cast<std::int64_t>(d); },
                                 [](const Record&) -> std::int64_t { not_numeric(); }},
                      data_);
}

std::uint64_t Value::as_uint() const {
    return std::visit(overloaded{[](bool b) -> std::uint64_t { return b ? 1 : 0; },
                                 [](std::int64_t i) { return static_cast<std::uint64_t>(i); },
                                 [](std::uint64_t u) { return u; },
                                 [](double d) { return static_cast<std::uint64_t>(d); },
                                 [](const Record&) -> std::uint64_t { not_numeric(); }},
                      data_);
}

bool Value::as_bool() const {
    return std::visit(overloaded{[](bool b) { return b; },
                                 [](std::int64_t i) { return i != 0; },
                                 [](std::uint64_t u) { return u != 0; },
                                 [](double d) { return d != 0.0; },
                                 [](const Record&) -> bool { not_numeric(); }},
                      data_);
}

const Record& Value::as_record() const {
    if (!is_record()) fail(Errc::invalid_argument, "value is not a record");
    return std::get<Record>(data_);
}

const Value& Value::operator[](const std::string& name) const {
    for (const NamedValue& nv : as_record()) {
        if (nv.name == name) return nv.value;
    }
    fail(Errc::field_not_found, "record has no field '" + name + "'");
}

bool operator==(const Value& a, const Value& b) {
    if (a.is_record() || b.is_record()) {
        return a.is_record() && b.is_record() && a.as_record() == b.as_record();
    }
    if (a.is_floating() || b.is_floating()) return a.as_double() == b.as_double();
    const bool a_neg = std::holds_alternative<std::int64_t>(a.data_) && a.as_int() < 0;
    const bool b_neg = std::holds_alternative<std::int64_t>(b.data_) && b.as_int() < 0;
    if (a_neg != b_neg) return false;
    return a.as_uint() == b.as_uint();
}

std::string to_string(const Value& v) {
    return std::visit(
        overloaded{[](bool b) -> std::string { return b ? "True" : "False"; },
                   [](std::int64_t i) { return std::to_string(i); },
                   [](std::uint64_t u) { return std::to_string(u); },
                   [](double d) -> std::string {
                       if (std::isnan(d)) return "nan";
                       if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
                       char buf[64];
                       auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
                       std::string s(buf, end);
                       if (s.find_first_of(".e") == std::string::npos) s += ".0";
                       return s;
                   },
                   [](const Record& r) {
                       std::string s = "(";
                       for (std::size_t i = 0; i < r.size(); ++i) {
                           if (i) s += ", ";
                           s += to_string(r[i].value);
                       }
                       return s + ")";
                   }},
        v.storage());
}

}  // namespace strided

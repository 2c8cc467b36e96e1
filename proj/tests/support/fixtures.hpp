#pragma once

#include <chrono>
#include <filesystem>
#include <random>
#include <string>

#include "strided/strided.hpp"

namespace strided::testing {

/// Unique scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("strided-test-" + std::to_string(rd()) + "-" +
                 std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] std::filesystem::path file(const std::string& name) const { return path_ / name; }
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline DType measurement_dtype() {
    return make_struct_dtype({{"time", DType::uint64()},
                              {"pos", StructSpec{{"x", DType::float64()}, {"y", DType::float64()}}}});
}

inline Value measurement(std::uint64_t time, double x, double y) {
    return Value(Record{{"time", Value(time)}, {"pos", Value(Record{{"x", Value(x)}, {"y", Value(y)}})}});
}

/// The three-record dataset used throughout the structured-array examples.
inline ArrayView measurement_dataset() {
    ArrayView x = create({3}, measurement_dtype());
    set_element(x, {0}, measurement(1, 0.0, 0.5));
    set_element(x, {1}, measurement(2, 0.0, 10.3));
    set_element(x, {2}, measurement(3, 5.5, 1.1));
    return x;
}

/// Stand-in for an object exporting a mutable byte string.
struct MutableString {
    std::string text;

    [[nodiscard]] ArrayInterfaceDescriptor interface() {
        ArrayInterfaceDescriptor d;
        d.shape = {static_cast<std::int64_t>(text.size())};
        d.data = {text.data(), false};
        d.typestr = "|u1";
        return d;
    }
};

}  // namespace strided::testing

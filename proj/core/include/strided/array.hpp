#pragma once

#include <cstdint>
#include <cstring>
#include <memory>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "strided/buffer.hpp"
#include "strided/dtype.hpp"
#include "strided/error.hpp"
#include "strided/value.hpp"

namespace strided {

using Shape = std::vector<std::int64_t>;
using Strides = std::vector<std::int64_t>;
using Index = std::vector<std::int64_t>;

struct Flags {
    bool writeable = true;
    bool c_contiguous = true;
    bool f_contiguous = true;
    bool is_view = false;

    friend bool operator==(const Flags&, const Flags&) = default;
};

/// One axis of a slice: Python `start:stop:step` with optional bounds.
struct Slice {
    std::optional<std::int64_t> start;
    std::optional<std::int64_t> stop;
    std::int64_t step = 1;

    static Slice all() { return {}; }
    static Slice every(std::int64_t step) { return {std::nullopt, std::nullopt, step}; }
    static Slice from(std::int64_t start) { return {start, std::nullopt, 1}; }
    static Slice until(std::int64_t stop) { return {std::nullopt, stop, 1}; }
    static Slice range(std::int64_t start, std::int64_t stop, std::int64_t step = 1) {
        return {start, stop, step};
    }
};

/// Array header: a buffer reference plus base offset, shape, strides and
/// dtype. Every array is a view; copying an ArrayView copies the header and
/// shares the buffer.
class ArrayView {
public:
    ArrayView(std::shared_ptr<Buffer> buffer, std::int64_t base_offset, Shape shape, Strides strides,
              DType dtype, bool writeable, bool is_view);

    [[nodiscard]] const std::shared_ptr<Buffer>& buffer() const noexcept { return buffer_; }
    [[nodiscard]] std::int64_t base_offset() const noexcept { return base_offset_; }
    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] const Strides& strides() const noexcept { return strides_; }
    [[nodiscard]] const DType& dtype() const noexcept { return dtype_; }
    [[nodiscard]] const Flags& flags() const noexcept { return flags_; }
    [[nodiscard]] std::size_t rank() const noexcept { return shape_.size(); }
    [[nodiscard]] std::int64_t size() const noexcept;
    [[nodiscard]] std::size_t itemsize() const noexcept { return dtype_.itemsize(); }

    /// Address of element (0, ..., 0).
    [[nodiscard]] std::byte* data() const noexcept { return buffer_->data() + base_offset_; }

    /// Same header with the writeable flag cleared.
    [[nodiscard]] ArrayView as_readonly() const;

    /// Headers are equal when they describe the same bytes the same way and
    /// agree on writeability. How the view was produced (is_view) is ignored.
    friend bool same_header(const ArrayView& a, const ArrayView& b) noexcept;

private:
    std::shared_ptr<Buffer> buffer_;
    std::int64_t base_offset_;
    Shape shape_;
    Strides strides_;
    DType dtype_;
    Flags flags_;
};

/// Row-major strides: the last axis steps by itemsize.
Strides contiguous_strides(std::span<const std::int64_t> shape, std::size_t itemsize);

/// Column-major analogue of contiguous_strides.
Strides fortran_strides(std::span<const std::int64_t> shape, std::size_t itemsize);

/// Product of extents; 1 for rank 0.
std::int64_t element_count(std::span<const std::int64_t> shape);

/// Fresh zero-filled C-contiguous heap array.
ArrayView create(const Shape& shape, const DType& dtype);

/// 1-D array start, start+step, ... below stop (above it for negative step).
ArrayView arange(double start, double stop, double step = 1.0, const DType& dtype = DType::int64());

/// Byte offset of an element relative to the start of the buffer.
std::int64_t element_offset(const ArrayView& v, std::span<const std::int64_t> idx);

Value get_element(const ArrayView& v, std::span<const std::int64_t> idx);
void set_element(const ArrayView& v, std::span<const std::int64_t> idx, const Value& value);

inline Value get_element(const ArrayView& v, std::initializer_list<std::int64_t> idx) {
    return get_element(v, std::span<const std::int64_t>(idx.begin(), idx.size()));
}
inline void set_element(const ArrayView& v, std::initializer_list<std::int64_t> idx,
                        const Value& value) {
    set_element(v, std::span<const std::int64_t>(idx.begin(), idx.size()), value);
}

/// Zero-copy slice. Axes beyond the spec pass through whole. Bounds follow
/// Python's half-open convention: negatives count from the end and
/// out-of-range bounds clamp.
ArrayView slice_view(const ArrayView& v, std::span<const Slice> spec);
inline ArrayView slice_view(const ArrayView& v, std::initializer_list<Slice> spec) {
    return slice_view(v, std::span<const Slice>(spec.begin(), spec.size()));
}

/// Zero-copy integer index on one axis; the axis is removed.
ArrayView select(const ArrayView& v, std::size_t axis, std::int64_t index);

/// Zero-copy: shape and strides reversed.
ArrayView transpose(const ArrayView& v);

/// Zero-copy on C-contiguous input; otherwise copies in C order into a fresh
/// buffer (the result then has is_view == false).
ArrayView reshape(const ArrayView& v, const Shape& new_shape);

/// Views the same bytes with a different dtype by rescaling the last axis.
ArrayView reinterpret_dtype(const ArrayView& v, const DType& new_dtype);

/// Assigns `values` in C-order traversal of v regardless of v's strides.
void fill_flat(const ArrayView& v, const ArrayView& values);

/// Fresh C-contiguous copy of v's logical elements.
ArrayView copy(const ArrayView& v);

Flags recompute_flags(const ArrayView& v);

/// Calls f(byte_offset) for every element in C order. Offsets are relative to
/// the start of the buffer.
template <class F>
void for_each_offset(const ArrayView& v, F&& f) {
    const std::size_t rank = v.rank();
    if (v.size() == 0) return;
    if (rank == 0) {
        f(v.base_offset());
        return;
    }
    Index idx(rank, 0);
    std::int64_t offset = v.base_offset();
    const auto& shape = v.shape();
    const auto& strides = v.strides();
    const std::int64_t inner = shape[rank - 1];
    const std::int64_t inner_stride = strides[rank - 1];
    for (;;) {
        std::int64_t o = offset;
        for (std::int64_t i = 0; i < inner; ++i, o += inner_stride) f(o);
        std::size_t axis = rank - 1;
        for (;;) {
            if (axis == 0) return;
            --axis;
            offset += strides[axis];
            if (++idx[axis] < shape[axis]) break;
            offset -= strides[axis] * shape[axis];
            idx[axis] = 0;
        }
    }
}

namespace detail {

template <class T>
DType dtype_of() {
    if constexpr (std::is_same_v<T, bool>) return DType::boolean();
    else if constexpr (std::is_floating_point_v<T>) return DType::scalar(Kind::floating, sizeof(T));
    else if constexpr (std::is_signed_v<T>) return DType::scalar(Kind::signed_int, sizeof(T));
    else return DType::scalar(Kind::unsigned_int, sizeof(T));
}

}  // namespace detail

/// C-contiguous array holding a copy of `values`, dtype deduced from T.
template <class T>
ArrayView from_values(std::span<const T> values, Shape shape = {}) {
    if (shape.empty()) shape = {static_cast<std::int64_t>(values.size())};
    if (element_count(shape) != static_cast<std::int64_t>(values.size())) {
        fail(Errc::shape, "from_values: " + std::to_string(values.size()) +
                              " values do not fill the requested shape");
    }
    ArrayView out = create(shape, detail::dtype_of<T>());
    if (!values.empty()) std::memcpy(out.data(), values.data(), values.size() * sizeof(T));
    return out;
}

template <class T>
ArrayView from_values(const std::vector<T>& values, Shape shape = {}) {
    return from_values(std::span<const T>(values), std::move(shape));
}

/// Logical elements of a scalar-typed array in C order, converted to T.
template <class T>
std::vector<T> to_vector(const ArrayView& v) {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(v.size()));
    const std::int64_t n = v.size();
    // Unravel through get_element to keep decoding in one place.
    Index idx(v.rank(), 0);
    for (std::int64_t linear = 0; linear < n; ++linear) {
        const Value value = get_element(v, idx);
        if constexpr (std::is_same_v<T, bool>) out.push_back(value.as_bool());
        else if constexpr (std::is_floating_point_v<T>) out.push_back(static_cast<T>(value.as_double()));
        else if constexpr (std::is_signed_v<T>) out.push_back(static_cast<T>(value.as_int()));
        else out.push_back(static_cast<T>(value.as_uint()));
        for (std::size_t axis = v.rank(); axis-- > 0;) {
            if (++idx[axis] < v.shape()[axis]) break;
            idx[axis] = 0;
        }
    }
    return out;
}

}  // namespace strided

#include "strided/array.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "strided/format.hpp"

#include "element_codec.hpp"

namespace strided {

static_assert(std::endian::native == std::endian::little,
              "element encoding assumes a little-endian host");

namespace {

bool strides_match(std::span<const std::int64_t> shape, std::span<const std::int64_t> strides,
                   const Strides& expected) {
    for (std::size_t k = 0; k < shape.size(); ++k) {
        if (shape[k] != 1 && strides[k] != expected[k]) return false;
    }
    return true;
}

}  // namespace

ArrayView::ArrayView(std::shared_ptr<Buffer> buffer, std::int64_t base_offset, Shape shape,
                     Strides strides, DType dtype, bool writeable, bool is_view)
    : buffer_(std::move(buffer)),
      base_offset_(base_offset),
      shape_(std::move(shape)),
      strides_(std::move(strides)),
      dtype_(std::move(dtype)) {
    if (!buffer_) fail(Errc::invalid_argument, "array header needs a buffer");
    if (shape_.size() != strides_.size()) {
        fail(Errc::shape, "shape " + format_tuple(shape_) + " and strides " + format_tuple(strides_) +
                              " differ in rank");
    }
    if (dtype_.has_big_endian()) {
        fail(Errc::unsupported_byte_order,
             "arrays over big-endian data are not supported (dtype " + format_typestr(dtype_) + ")");
    }
    for (std::size_t k = 0; k < shape_.size(); ++k) {
        if (shape_[k] < 0) fail(Errc::shape, "negative extent in shape " + format_tuple(shape_));
    }
    if (size() > 0) {
        std::int64_t lo = base_offset_;
        std::int64_t hi = base_offset_;
        for (std::size_t k = 0; k < shape_.size(); ++k) {
            const std::int64_t span = (shape_[k] - 1) * strides_[k];
            (span < 0 ? lo : hi) += span;
        }
        const auto limit = static_cast<std::int64_t>(buffer_->size()) -
                           static_cast<std::int64_t>(dtype_.itemsize());
        if (lo < 0 || hi > limit) {
            fail(Errc::invalid_argument, "array header addresses bytes outside its " +
                                             std::to_string(buffer_->size()) + "-byte buffer");
        }
    }
    flags_.writeable = writeable && !buffer_->read_only();
    flags_.is_view = is_view;
    const Flags layout = recompute_flags(*this);
    flags_.c_contiguous = layout.c_contiguous;
    flags_.f_contiguous = layout.f_contiguous;
}

std::int64_t ArrayView::size() const noexcept { return element_count(shape_); }

ArrayView ArrayView::as_readonly() const {
    ArrayView out = *this;
    out.flags_.writeable = false;
    return out;
}

bool same_header(const ArrayView& a, const ArrayView& b) noexcept {
    return a.buffer_ == b.buffer_ && a.base_offset_ == b.base_offset_ && a.shape_ == b.shape_ &&
           a.strides_ == b.strides_ && a.dtype_ == b.dtype_ &&
           a.flags_.writeable == b.flags_.writeable;
}

Strides contiguous_strides(std::span<const std::int64_t> shape, std::size_t itemsize) {
    Strides strides(shape.size());
    auto step = static_cast<std::int64_t>(itemsize);
    for (std::size_t k = shape.size(); k-- > 0;) {
        strides[k] = step;
        step *= std::max<std::int64_t>(shape[k], 1);
    }
    return strides;
}

Strides fortran_strides(std::span<const std::int64_t> shape, std::size_t itemsize) {
    Strides strides(shape.size());
    auto step = static_cast<std::int64_t>(itemsize);
    for (std::size_t k = 0; k < shape.size(); ++k) {
        strides[k] = step;
        step *= std::max<std::int64_t>(shape[k], 1);
    }
    return strides;
}

std::int64_t element_count(std::span<const std::int64_t> shape) {
    std::int64_t n = 1;
    for (std::int64_t extent : shape) n *= extent;
    return n;
}

Flags recompute_flags(const ArrayView& v) {
    Flags out = v.flags();
    if (v.size() == 0) {
        out.c_contiguous = out.f_contiguous = true;
        return out;
    }
    out.c_contiguous =
        strides_match(v.shape(), v.strides(), contiguous_strides(v.shape(), v.itemsize()));
    out.f_contiguous =
        strides_match(v.shape(), v.strides(), fortran_strides(v.shape(), v.itemsize()));
    return out;
}

ArrayView create(const Shape& shape, const DType& dtype) {
    std::uint64_t count = 1;
    for (std::int64_t extent : shape) {
        if (extent < 0) fail(Errc::shape, "negative extent in shape " + format_tuple(shape));
        if (extent != 0 && count > std::numeric_limits<std::int64_t>::max() /
                                       static_cast<std::uint64_t>(extent)) {
            fail(Errc::allocation, "shape " + format_tuple(shape) + " overflows the element count");
        }
        count *= static_cast<std::uint64_t>(extent);
    }
    if (count > std::numeric_limits<std::int64_t>::max() / dtype.itemsize()) {
        fail(Errc::allocation, "shape " + format_tuple(shape) + " overflows the byte size");
    }
    auto buffer = Buffer::allocate(count * dtype.itemsize());
    return ArrayView(std::move(buffer), 0, shape, contiguous_strides(shape, dtype.itemsize()), dtype,
                     true, false);
}

ArrayView arange(double start, double stop, double step, const DType& dtype) {
    if (step == 0.0) fail(Errc::invalid_argument, "arange step must be non-zero");
    const double span = std::ceil((stop - start) / step);
    const auto count = span > 0 ? static_cast<std::int64_t>(span) : 0;
    ArrayView out = create({count}, dtype);
    std::byte* p = out.data();
    for (std::int64_t i = 0; i < count; ++i, p += dtype.itemsize()) {
        const double x = start + static_cast<double>(i) * step;
        if (dtype.is_integer()) {
            detail::encode(p, dtype, Value(static_cast<std::int64_t>(x)));
        } else {
            detail::encode(p, dtype, Value(x));
        }
    }
    return out;
}

std::int64_t element_offset(const ArrayView& v, std::span<const std::int64_t> idx) {
    if (idx.size() != v.rank()) {
        fail(Errc::index_out_of_range, "index has " + std::to_string(idx.size()) +
                                           " entries for an array of rank " +
                                           std::to_string(v.rank()));
    }
    std::int64_t offset = v.base_offset();
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] < 0 || idx[k] >= v.shape()[k]) {
            fail(Errc::index_out_of_range, "index " + std::to_string(idx[k]) +
                                               " is out of bounds for axis " + std::to_string(k) +
                                               " with extent " + std::to_string(v.shape()[k]));
        }
        offset += idx[k] * v.strides()[k];
    }
    return offset;
}

Value get_element(const ArrayView& v, std::span<const std::int64_t> idx) {
    return detail::decode(v.buffer()->data() + element_offset(v, idx), v.dtype());
}

void set_element(const ArrayView& v, std::span<const std::int64_t> idx, const Value& value) {
    const std::int64_t offset = element_offset(v, idx);
    if (!v.flags().writeable) fail(Errc::permission, "array is not writeable");
    detail::encode(v.buffer()->data() + offset, v.dtype(), value);
}

ArrayView slice_view(const ArrayView& v, std::span<const Slice> spec) {
    if (spec.size() > v.rank()) {
        fail(Errc::index_out_of_range, "too many slice entries (" + std::to_string(spec.size()) +
                                           ") for an array of rank " + std::to_string(v.rank()));
    }
    Shape shape = v.shape();
    Strides strides = v.strides();
    std::int64_t offset = v.base_offset();
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const Slice& s = spec[k];
        const std::int64_t n = shape[k];
        const std::int64_t step = s.step;
        if (step == 0) fail(Errc::invalid_argument, "slice step must be non-zero (axis " +
                                                        std::to_string(k) + ")");
        auto normalize = [n](std::int64_t bound, std::int64_t lo, std::int64_t hi) {
            if (bound < 0) bound += n;
            return std::clamp(bound, lo, hi);
        };
        std::int64_t start = 0;
        std::int64_t stop = 0;
        std::int64_t length = 0;
        if (step > 0) {
            start = s.start ? normalize(*s.start, 0, n) : 0;
            stop = s.stop ? normalize(*s.stop, 0, n) : n;
            length = stop > start ? (stop - start - 1) / step + 1 : 0;
        } else {
            start = s.start ? normalize(*s.start, -1, n - 1) : n - 1;
            stop = s.stop ? normalize(*s.stop, -1, n - 1) : -1;
            length = start > stop ? (start - stop - 1) / (-step) + 1 : 0;
        }
        if (length > 0) offset += start * strides[k];
        shape[k] = length;
        strides[k] *= step;
    }
    return ArrayView(v.buffer(), offset, std::move(shape), std::move(strides), v.dtype(),
                     v.flags().writeable, true);
}

ArrayView select(const ArrayView& v, std::size_t axis, std::int64_t index) {
    if (axis >= v.rank()) {
        fail(Errc::index_out_of_range, "axis " + std::to_string(axis) +
                                           " is out of range for an array of rank " +
                                           std::to_string(v.rank()));
    }
    const std::int64_t n = v.shape()[axis];
    const std::int64_t i = index < 0 ? index + n : index;
    if (i < 0 || i >= n) {
        fail(Errc::index_out_of_range, "index " + std::to_string(index) +
                                           " is out of bounds for axis " + std::to_string(axis) +
                                           " with extent " + std::to_string(n));
    }
    Shape shape = v.shape();
    Strides strides = v.strides();
    const std::int64_t offset = v.base_offset() + i * strides[axis];
    shape.erase(shape.begin() + static_cast<std::ptrdiff_t>(axis));
    strides.erase(strides.begin() + static_cast<std::ptrdiff_t>(axis));
    return ArrayView(v.buffer(), offset, std::move(shape), std::move(strides), v.dtype(),
                     v.flags().writeable, true);
}

ArrayView transpose(const ArrayView& v) {
    Shape shape(v.shape().rbegin(), v.shape().rend());
    Strides strides(v.strides().rbegin(), v.strides().rend());
    return ArrayView(v.buffer(), v.base_offset(), std::move(shape), std::move(strides), v.dtype(),
                     v.flags().writeable, true);
}

ArrayView reshape(const ArrayView& v, const Shape& new_shape) {
    for (std::int64_t extent : new_shape) {
        if (extent < 0) fail(Errc::shape, "negative extent in shape " + format_tuple(new_shape));
    }
    if (element_count(new_shape) != v.size()) {
        fail(Errc::shape, "cannot reshape array of shape " + format_tuple(v.shape()) + " (" +
                              std::to_string(v.size()) + " elements) into shape " +
                              format_tuple(new_shape));
    }
    if (v.flags().c_contiguous) {
        return ArrayView(v.buffer(), v.base_offset(), new_shape,
                         contiguous_strides(new_shape, v.itemsize()), v.dtype(),
                         v.flags().writeable, true);
    }
    const ArrayView dense = copy(v);
    return ArrayView(dense.buffer(), 0, new_shape, contiguous_strides(new_shape, v.itemsize()),
                     v.dtype(), true, false);
}

ArrayView reinterpret_dtype(const ArrayView& v, const DType& new_dtype) {
    if (v.rank() == 0) fail(Errc::reinterpret, "cannot reinterpret the dtype of a 0-d array");
    const auto old_size = static_cast<std::int64_t>(v.itemsize());
    const auto new_size = static_cast<std::int64_t>(new_dtype.itemsize());
    const std::size_t last = v.rank() - 1;
    const std::int64_t extent = v.shape()[last];
    if (extent > 1 && v.strides()[last] != old_size) {
        fail(Errc::reinterpret, "last axis must be contiguous (stride " +
                                    std::to_string(v.strides()[last]) + ", itemsize " +
                                    std::to_string(old_size) + ")");
    }
    if ((extent * old_size) % new_size != 0) {
        fail(Errc::reinterpret, "last axis spans " + std::to_string(extent * old_size) +
                                    " bytes, not divisible by the new itemsize " +
                                    std::to_string(new_size));
    }
    Shape shape = v.shape();
    Strides strides = v.strides();
    shape[last] = extent * old_size / new_size;
    strides[last] = new_size;
    return ArrayView(v.buffer(), v.base_offset(), std::move(shape), std::move(strides), new_dtype,
                     v.flags().writeable, true);
}

void fill_flat(const ArrayView& v, const ArrayView& values) {
    if (!v.flags().writeable) fail(Errc::permission, "fill target is not writeable");
    if (values.size() != v.size()) {
        fail(Errc::shape, "fill source has " + std::to_string(values.size()) +
                              " elements but the target has " + std::to_string(v.size()));
    }
    std::vector<std::int64_t> sources;
    sources.reserve(static_cast<std::size_t>(values.size()));
    for_each_offset(values, [&](std::int64_t o) { sources.push_back(o); });

    const std::byte* src = values.buffer()->data();
    std::byte* dst = v.buffer()->data();
    std::size_t i = 0;
    if (values.dtype() == v.dtype()) {
        const std::size_t n = v.itemsize();
        for_each_offset(v, [&](std::int64_t o) { std::memmove(dst + o, src + sources[i++], n); });
    } else {
        for_each_offset(v, [&](std::int64_t o) {
            detail::encode(dst + o, v.dtype(), detail::decode(src + sources[i++], values.dtype()));
        });
    }
}

ArrayView copy(const ArrayView& v) {
    ArrayView out = create(v.shape(), v.dtype());
    const std::byte* src = v.buffer()->data();
    std::byte* dst = out.data();
    const std::size_t n = v.itemsize();
    for_each_offset(v, [&](std::int64_t o) {
        std::memcpy(dst, src + o, n);
        dst += n;
    });
    return out;
}

}  // namespace strided

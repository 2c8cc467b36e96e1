#include "strided/format.hpp"

namespace strided {

namespace {

void append_axis(std::string& out, const ArrayView& v, Index& idx, std::size_t axis) {
    if (axis == v.rank()) {
        out += to_string(get_element(v, idx));
        return;
    }
    out += '[';
    for (std::int64_t i = 0; i < v.shape()[axis]; ++i) {
        if (i) out += ", ";
        idx[axis] = i;
        append_axis(out, v, idx, axis + 1);
    }
    out += ']';
}

}  // namespace

std::string format_tuple(std::span<const std::int64_t> values) {
    std::string s = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(values[i]);
    }
    if (values.size() == 1) s += ",";
    return s + ")";
}

std::string format_array(const ArrayView& v) {
    std::string out;
    Index idx(v.rank(), 0);
    append_axis(out, v, idx, 0);
    return out;
}

}  // namespace strided

#include "strided/broadcast.hpp"

#include <algorithm>
#include <string>

#include "strided/format.hpp"

namespace strided {

namespace {

// Strides of `shape`/`strides` aligned to `target`, or Errc::broadcast.
Strides aligned_strides(std::span<const std::int64_t> shape, std::span<const std::int64_t> strides,
                        std::span<const std::int64_t> target) {
    if (shape.size() > target.size()) {
        fail(Errc::broadcast, "cannot broadcast shape " + format_tuple(shape) +
                                  " to lower-rank shape " + format_tuple(target));
    }
    const std::size_t lead = target.size() - shape.size();
    Strides out(target.size(), 0);
    for (std::size_t k = 0; k < shape.size(); ++k) {
        const std::int64_t from = shape[k];
        const std::int64_t to = target[lead + k];
        if (from == to && from != 1) {
            out[lead + k] = strides[k];
        } else if (from != 1) {
            fail(Errc::broadcast, "cannot broadcast shape " + format_tuple(shape) + " to " +
                                      format_tuple(target) + ": axis " + std::to_string(lead + k) +
                                      " has extent " + std::to_string(from) + " vs " +
                                      std::to_string(to));
        }
    }
    return out;
}

}  // namespace

Shape broadcast_shapes(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    const std::size_t rank = std::max(a.size(), b.size());
    Shape out(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        // k counts from the right
        const std::int64_t ea = k < a.size() ? a[a.size() - 1 - k] : 1;
        const std::int64_t eb = k < b.size() ? b[b.size() - 1 - k] : 1;
        if (ea != eb && ea != 1 && eb != 1) {
            fail(Errc::broadcast, "shapes " + format_tuple(a) + " and " + format_tuple(b) +
                                      " do not broadcast: axis " + std::to_string(rank - 1 - k) +
                                      " has extents " + std::to_string(ea) + " and " +
                                      std::to_string(eb));
        }
        out[rank - 1 - k] = ea == 1 ? eb : ea;
    }
    return out;
}

BroadcastPlan plan_broadcast(std::span<const ArrayView> operands) {
    BroadcastPlan plan;
    for (const ArrayView& op : operands) {
        plan.output_shape = broadcast_shapes(plan.output_shape, op.shape());
    }
    plan.operand_strides.reserve(operands.size());
    for (const ArrayView& op : operands) {
        plan.operand_strides.push_back(aligned_strides(op.shape(), op.strides(), plan.output_shape));
    }
    return plan;
}

ArrayView broadcast_view(const ArrayView& v, const Shape& target) {
    Strides strides = aligned_strides(v.shape(), v.strides(), target);
    return ArrayView(v.buffer(), v.base_offset(), target, std::move(strides), v.dtype(), false, true);
}

ArrayView newaxis_view(const ArrayView& v, std::size_t axis) {
    if (axis > v.rank()) {
        fail(Errc::index_out_of_range, "newaxis position " + std::to_string(axis) +
                                           " is out of range for an array of rank " +
                                           std::to_string(v.rank()));
    }
    Shape shape = v.shape();
    Strides strides = v.strides();
    shape.insert(shape.begin() + static_cast<std::ptrdiff_t>(axis), 1);
    strides.insert(strides.begin() + static_cast<std::ptrdiff_t>(axis), 0);
    return ArrayView(v.buffer(), v.base_offset(), std::move(shape), std::move(strides), v.dtype(),
                     v.flags().writeable, true);
}

}  // namespace strided

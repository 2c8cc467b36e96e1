#pragma once

#include <span>
#include <vector>

#include "strided/array.hpp"

namespace strided {

/// Output shape plus, for each operand, strides aligned to the output rank
/// with 0 on every axis the operand is repeated along.
struct BroadcastPlan {
    Shape output_shape;
    std::vector<Strides> operand_strides;
};

/// Right-aligns the shapes and combines them axis by axis. Extents match when
/// equal or when either is 1 or absent. Throws Errc::broadcast otherwise.
Shape broadcast_shapes(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

BroadcastPlan plan_broadcast(std::span<const ArrayView> operands);

/// Zero-copy expansion of v to `target` using zero strides. The result is
/// read-only: a write through a zero stride would land on many logical
/// elements at once.
ArrayView broadcast_view(const ArrayView& v, const Shape& target);

/// Inserts an extent-1 axis with stride 0 before position `axis`.
ArrayView newaxis_view(const ArrayView& v, std::size_t axis);

}  // namespace strided

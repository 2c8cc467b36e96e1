#include <gtest/gtest.h>

#include "strided/array.hpp"
#include "strided/broadcast.hpp"
#include "strided/counters.hpp"
#include "support/expect_error.hpp"

namespace strided {
namespace {

using I64 = std::vector<std::int64_t>;

TEST(BroadcastShapes, SidebarTable) {
    EXPECT_EQ(broadcast_shapes(I64{2, 4, 3}, I64{4, 1}), (Shape{2, 4, 3}));
    EXPECT_EQ(broadcast_shapes(I64{4, 1}, I64{2, 4, 3}), (Shape{2, 4, 3}));
    EXPECT_EQ(broadcast_shapes(I64{3}, I64{2, 3}), (Shape{2, 3}));
    EXPECT_EQ(broadcast_shapes(I64{5, 6}, I64{}), (Shape{5, 6}));
}

TEST(BroadcastShapes, ZeroExtents) {
    EXPECT_EQ(broadcast_shapes(I64{0, 3}, I64{1, 3}), (Shape{0, 3}));
    EXPECT_EQ(broadcast_shapes(I64{0}, I64{0}), (Shape{0}));
    EXPECT_STRIDED_ERROR(broadcast_shapes(I64{0}, I64{2}), Errc::broadcast);
}

TEST(BroadcastShapes, MismatchNamesAxis) {
    try {
        broadcast_shapes(I64{2, 3}, I64{2, 4});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::broadcast);
        const std::string msg = e.what();
        EXPECT_NE(msg.find("3"), std::string::npos);
        EXPECT_NE(msg.find("4"), std::string::npos);
    }
}

TEST(PlanBroadcast, OperandStrides) {
    const ArrayView a = create({2, 4, 3}, DType::int64());
    const ArrayView b = create({4, 1}, DType::int64());
    const ArrayView ops[] = {a, b};
    const BroadcastPlan plan = plan_broadcast(ops);
    EXPECT_EQ(plan.output_shape, (Shape{2, 4, 3}));
    EXPECT_EQ(plan.operand_strides[0], (Strides{96, 24, 8}));
    EXPECT_EQ(plan.operand_strides[1], (Strides{0, 8, 0}));
}

TEST(BroadcastView, ZeroStrides) {
    const ArrayView v = create({4, 1}, DType::int64());
    CounterSession session;
    const ArrayView b = broadcast_view(v, {2, 4, 3});
    EXPECT_EQ(b.shape(), (Shape{2, 4, 3}));
    EXPECT_EQ(b.strides(), (Strides{0, 8, 0}));
    EXPECT_FALSE(b.flags().writeable);
    EXPECT_EQ(session.report().buffers_allocated, 0u);
    EXPECT_STRIDED_ERROR(set_element(b, {0, 0, 0}, Value(1)), Errc::permission);
}

TEST(BroadcastView, OwnShapeKeepsHeader) {
    const ArrayView v = create({2, 3}, DType::float64());
    const ArrayView b = broadcast_view(v, {2, 3});
    EXPECT_EQ(b.strides(), v.strides());
    EXPECT_EQ(b.base_offset(), v.base_offset());
    EXPECT_FALSE(b.flags().writeable);
}

TEST(BroadcastView, LargeRowVectorAllocatesNothing) {
    const ArrayView v = create({200, 1, 1}, DType::int64());
    CounterSession session;
    const ArrayView b = broadcast_view(v, {200, 200, 200});
    EXPECT_EQ(b.size(), 8000000);
    EXPECT_EQ(session.report().buffers_allocated, 0u);
}

TEST(BroadcastView, Incompatible) {
    EXPECT_STRIDED_ERROR(broadcast_view(create({3}, DType::int64()), {4}), Errc::broadcast);
    // broadcasting may not shrink the target
    EXPECT_STRIDED_ERROR(broadcast_view(create({2, 3}, DType::int64()), {3}), Errc::broadcast);
}

TEST(NewaxisView, Examples) {
    const ArrayView m = create({5, 3}, DType::float64());
    const ArrayView col = select(m, 1, 2);
    const ArrayView n = newaxis_view(col, 1);
    EXPECT_EQ(n.shape(), (Shape{5, 1}));
    EXPECT_EQ(n.strides()[1], 0);
    EXPECT_EQ(newaxis_view(create({3}, DType::int64()), 0).shape(), (Shape{1, 3}));
    EXPECT_STRIDED_ERROR(newaxis_view(create({3}, DType::int64()), 5), Errc::index_out_of_range);
}

}  // namespace
}  // namespace strided

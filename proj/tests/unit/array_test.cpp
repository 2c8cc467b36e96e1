#include <gtest/gtest.h>

#include <vector>

#include "strided/array.hpp"
#include "strided/counters.hpp"
#include "strided/format.hpp"
#include "support/expect_error.hpp"

namespace strided {
namespace {

using I64 = std::vector<std::int64_t>;

ArrayView nine() { return reshape(arange(0, 9), {3, 3}); }

TEST(ContiguousStrides, Examples) {
    EXPECT_EQ(contiguous_strides(I64{3, 3}, 8), (Strides{24, 8}));
    EXPECT_EQ(contiguous_strides(I64{10, 10}, 1), (Strides{10, 1}));
    EXPECT_EQ(contiguous_strides(I64{5}, 8), (Strides{8}));
    EXPECT_TRUE(contiguous_strides(I64{}, 8).empty());
    EXPECT_EQ(fortran_strides(I64{3, 3}, 8), (Strides{8, 24}));
}

TEST(Create, ThreeByThree) {
    const ArrayView v = create({3, 3}, DType::int64());
    EXPECT_EQ(v.strides(), (Strides{24, 8}));
    EXPECT_EQ(v.buffer()->size(), 72u);
    EXPECT_TRUE(v.flags().writeable);
    EXPECT_FALSE(v.flags().is_view);
    EXPECT_EQ(to_vector<std::int64_t>(v), I64(9, 0));
}

TEST(Create, EmptyAndStructured) {
    const ArrayView e = create({0}, DType::float64());
    EXPECT_EQ(e.size(), 0);
    EXPECT_EQ(e.buffer()->size(), 0u);
    const DType rec = make_struct_dtype(
        {{"time", DType::uint64()}, {"pos", StructSpec{{"x", DType::float64()}, {"y", DType::float64()}}}});
    EXPECT_EQ(create({2, 2}, rec).buffer()->size(), 96u);
}

TEST(Create, Errors) {
    EXPECT_STRIDED_ERROR(create({-1}, DType::int64()), Errc::shape);
    EXPECT_STRIDED_ERROR(create({std::int64_t{1} << 40, std::int64_t{1} << 40}, DType::int64()),
                         Errc::allocation);
}

TEST(Arange, Examples) {
    EXPECT_EQ(to_vector<std::int64_t>(arange(0, 10, 2)), (I64{0, 2, 4, 6, 8}));
    EXPECT_EQ(to_vector<std::int64_t>(arange(0, 9)), (I64{0, 1, 2, 3, 4, 5, 6, 7, 8}));
    EXPECT_EQ(arange(5, 5).size(), 0);
    EXPECT_EQ(to_vector<std::int64_t>(arange(5, 0, -2)), (I64{5, 3, 1}));
    EXPECT_EQ(to_vector<double>(arange(0, 1, 0.25, DType::float64())),
              (std::vector<double>{0.0, 0.25, 0.5, 0.75}));
    EXPECT_STRIDED_ERROR(arange(0, 3, 0), Errc::invalid_argument);
}

TEST(ElementOffset, Examples) {
    const ArrayView v = create({3, 3}, DType::int64());
    EXPECT_EQ(element_offset(v, I64{1, 2}), 40);
    EXPECT_EQ(element_offset(v, I64{0, 0}), v.base_offset());
    EXPECT_STRIDED_ERROR(element_offset(v, I64{3, 0}), Errc::index_out_of_range);
    EXPECT_STRIDED_ERROR(element_offset(v, I64{0}), Errc::index_out_of_range);
    EXPECT_STRIDED_ERROR(element_offset(v, I64{0, -1}), Errc::index_out_of_range);
}

TEST(ElementOffset, ErrorNamesAxisAndExtent) {
    const ArrayView v = create({3, 4}, DType::int64());
    try {
        element_offset(v, I64{0, 4});
        FAIL();
    } catch (const Error& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("axis 1"), std::string::npos) << msg;
        EXPECT_NE(msg.find("4"), std::string::npos) << msg;
    }
}

TEST(SliceView, StepTwoBothAxes) {
    const ArrayView x = nine();
    const ArrayView y = slice_view(x, {Slice::every(2), Slice::every(2)});
    EXPECT_EQ(y.shape(), (Shape{2, 2}));
    EXPECT_EQ(y.strides(), (Strides{48, 16}));
    EXPECT_EQ(to_vector<std::int64_t>(y), (I64{0, 2, 6, 8}));
    EXPECT_TRUE(y.flags().is_view);
    EXPECT_EQ(y.buffer(), x.buffer());
}

TEST(SliceView, AliasedWrite) {
    const ArrayView x = nine();
    const ArrayView y = slice_view(x, {Slice::every(2), Slice::every(2)});
    set_element(y, {0, 0}, Value(100));
    EXPECT_EQ(get_element(x, {0, 0}).as_int(), 100);
    set_element(y, {1, 1}, Value(-7));
    EXPECT_EQ(get_element(x, {2, 2}).as_int(), -7);
}

TEST(SliceView, TailOfVector) {
    const ArrayView y = arange(0, 5);
    const ArrayView t = slice_view(y, {Slice::from(1)});
    EXPECT_EQ(t.shape(), (Shape{4}));
    EXPECT_EQ(t.base_offset(), y.base_offset() + 8);
}

TEST(SliceView, FullSliceIsIdentity) {
    const ArrayView x = nine();
    const ArrayView s = slice_view(x, {Slice::all()});
    EXPECT_EQ(s.shape(), x.shape());
    EXPECT_EQ(s.strides(), x.strides());
    EXPECT_EQ(s.base_offset(), x.base_offset());
}

TEST(SliceView, NegativeStepAndClamping) {
    const ArrayView v = arange(0, 6);
    EXPECT_EQ(to_vector<std::int64_t>(slice_view(v, {Slice::every(-1)})), (I64{5, 4, 3, 2, 1, 0}));
    EXPECT_EQ(to_vector<std::int64_t>(slice_view(v, {Slice::range(-2, 100)})), (I64{4, 5}));
    EXPECT_EQ(to_vector<std::int64_t>(slice_view(v, {Slice::range(4, 0, -2)})), (I64{4, 2}));
    EXPECT_EQ(slice_view(v, {Slice::range(4, 2)}).size(), 0);
    EXPECT_STRIDED_ERROR(slice_view(v, {Slice::every(0)}), Errc::invalid_argument);
    EXPECT_STRIDED_ERROR(slice_view(v, {Slice::all(), Slice::all()}), Errc::index_out_of_range);
}

TEST(Select, DropsAxis) {
    const ArrayView x = nine();
    EXPECT_EQ(to_vector<std::int64_t>(select(x, 0, 1)), (I64{3, 4, 5}));
    EXPECT_EQ(to_vector<std::int64_t>(select(x, 1, -1)), (I64{2, 5, 8}));
    EXPECT_STRIDED_ERROR(select(x, 2, 0), Errc::index_out_of_range);
    EXPECT_STRIDED_ERROR(select(x, 0, 3), Errc::index_out_of_range);
}

TEST(Transpose, Examples) {
    const ArrayView x = nine();
    const ArrayView t = transpose(x);
    EXPECT_EQ(t.strides(), (Strides{8, 24}));
    EXPECT_EQ(get_element(t, {0, 1}).as_int(), 3);
    const ArrayView line = arange(0, 4);
    EXPECT_TRUE(same_header(transpose(line), line));
    EXPECT_TRUE(same_header(transpose(transpose(x)), x));
}

TEST(Reshape, ZeroCopyWhenContiguous) {
    const ArrayView x = nine();
    CounterSession session;
    const ArrayView z = reshape(x, {1, 9});
    EXPECT_EQ(z.strides(), (Strides{72, 8}));
    EXPECT_TRUE(z.flags().is_view);
    EXPECT_EQ(session.report().buffers_allocated, 0u);
    EXPECT_EQ(reshape(arange(0, 9), {3, 3}).strides(), (Strides{24, 8}));
}

TEST(Reshape, CopiesWhenNotContiguous) {
    const ArrayView t = transpose(nine());
    CounterSession session;
    const ArrayView r = reshape(t, {9});
    EXPECT_FALSE(r.flags().is_view);
    EXPECT_NE(r.buffer(), t.buffer());
    EXPECT_EQ(session.report().buffers_allocated, 1u);
    EXPECT_EQ(to_vector<std::int64_t>(r), (I64{0, 3, 6, 1, 4, 7, 2, 5, 8}));
}

TEST(Reshape, CountMismatch) { EXPECT_STRIDED_ERROR(reshape(nine(), {2, 4}), Errc::shape); }

TEST(Reinterpret, Int64AsBytes) {
    const ArrayView x = nine();
    set_element(slice_view(x, {Slice::every(2), Slice::every(2)}), {0, 0}, Value(100));
    const ArrayView z = reshape(x, {1, 9});
    const ArrayView b = reinterpret_dtype(z, DType::uint8());
    EXPECT_EQ(b.shape(), (Shape{1, 72}));
    EXPECT_EQ(b.strides(), (Strides{72, 1}));
    const auto bytes = to_vector<std::uint64_t>(b);
    EXPECT_EQ(bytes[0], 100u);
    EXPECT_EQ(bytes[1], 0u);
    EXPECT_EQ(bytes[8], 1u);
}

TEST(Reinterpret, IdentityAndErrors) {
    const ArrayView u = create({4}, DType::uint8());
    EXPECT_TRUE(same_header(reinterpret_dtype(u, DType::uint8()), u));
    const DType five = make_struct_dtype({{"a", DType::uint8()}, {"b", DType::int32()}});
    ASSERT_EQ(five.itemsize(), 5u);
    EXPECT_STRIDED_ERROR(reinterpret_dtype(create({3}, DType::int64()), five), Errc::reinterpret);
    EXPECT_STRIDED_ERROR(reinterpret_dtype(transpose(nine()), DType::uint8()), Errc::reinterpret);
}

TEST(FillFlat, COrder) {
    const ArrayView v = create({2, 2}, DType::int64());
    fill_flat(v, arange(1, 5));
    EXPECT_EQ(get_element(v, {0, 1}).as_int(), 2);
    EXPECT_EQ(get_element(v, {1, 0}).as_int(), 3);

    const ArrayView big = create({300, 300}, DType::int64());
    fill_flat(big, arange(0, 300 * 300));
    EXPECT_EQ(get_element(big, {0, 299}).as_int(), 299);
    EXPECT_EQ(get_element(big, {1, 0}).as_int(), 300);
    EXPECT_EQ(get_element(big, {1, 298}).as_int(), 598);

    const ArrayView t = transpose(create({2, 2}, DType::int64()));
    fill_flat(t, arange(1, 5));
    EXPECT_EQ(to_vector<std::int64_t>(t), (I64{1, 2, 3, 4}));

    EXPECT_STRIDED_ERROR(fill_flat(v, arange(0, 3)), Errc::shape);
}

TEST(Flags, Contiguity) {
    const ArrayView x = nine();
    EXPECT_TRUE(x.flags().c_contiguous);
    EXPECT_FALSE(x.flags().f_contiguous);
    EXPECT_FALSE(transpose(x).flags().c_contiguous);
    EXPECT_TRUE(transpose(x).flags().f_contiguous);
    const ArrayView odd(Buffer::allocate(8), 0, {1, 1}, {123, -456}, DType::int64(), true, true);
    EXPECT_TRUE(recompute_flags(odd).c_contiguous);
    EXPECT_TRUE(recompute_flags(odd).f_contiguous);
}

TEST(Header, RejectsOutOfBounds) {
    EXPECT_STRIDED_ERROR(ArrayView(Buffer::allocate(16), 8, {2}, {8}, DType::int64(), true, true),
                         Errc::invalid_argument);
    EXPECT_STRIDED_ERROR(ArrayView(Buffer::allocate(16), 0, {2}, {-8}, DType::int64(), true, true),
                         Errc::invalid_argument);
    EXPECT_STRIDED_ERROR(ArrayView(Buffer::allocate(16), 0, {2}, {8}, DType::scalar(Kind::signed_int, 8, ByteOrder::big), true, true),
                         Errc::unsupported_byte_order);
}

TEST(Access, ReadOnlyRejectsWrites) {
    std::int64_t storage[2] = {1, 2};
    auto buf = Buffer::wrap_foreign(reinterpret_cast<std::byte*>(storage), sizeof storage, true);
    const ArrayView v(buf, 0, {2}, {8}, DType::int64(), true, true);
    EXPECT_FALSE(v.flags().writeable);
    EXPECT_STRIDED_ERROR(set_element(v, {0}, Value(5)), Errc::permission);
    EXPECT_STRIDED_ERROR(set_element(nine().as_readonly(), {0, 0}, Value(5)), Errc::permission);
}

TEST(Access, ZeroCopyOperationsAllocateNothing) {
    const ArrayView x = nine();
    CounterSession session;
    (void)slice_view(x, {Slice::every(2)});
    (void)transpose(x);
    (void)reshape(x, {9});
    (void)reinterpret_dtype(x, DType::uint8());
    (void)select(x, 0, 0);
    EXPECT_EQ(session.report().buffers_allocated, 0u);
}

TEST(Format, Text) {
    EXPECT_EQ(format_tuple(Shape{24, 8}), "(24, 8)");
    EXPECT_EQ(format_tuple(Shape{5}), "(5,)");
    EXPECT_EQ(format_tuple(Shape{}), "()");
    EXPECT_EQ(format_array(nine()), "[[0, 1, 2], [3, 4, 5], [6, 7, 8]]");
}

TEST(Access, StructuredElementDecodesRecord) {
    const DType rec = make_struct_dtype(
        {{"time", DType::uint64()}, {"pos", StructSpec{{"x", DType::float64()}, {"y", DType::float64()}}}});
    const ArrayView v = create({1}, rec);
    set_element(v, {0}, Value(Record{{"time", Value(1u)},
                                     {"pos", Value(Record{{"x", Value(0.0)}, {"y", Value(0.5)}})}}));
    const Value e = get_element(v, {0});
    EXPECT_EQ(to_string(e), "(1, (0.0, 0.5))");
    EXPECT_EQ(e["pos"]["y"].as_double(), 0.5);
}

}  // namespace
}  // namespace strided

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "strided/broadcast.hpp"
#include "strided/pipelines.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace strided::pipelines {
namespace {

using I64 = std::vector<std::int64_t>;
using F64 = std::vector<double>;

TEST(Mgrid, Examples) {
    const auto one = mgrid({{0, 3}});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(to_vector<std::int64_t>(one[0]), (I64{0, 1, 2}));
    const auto two = mgrid({{0, 2}, {0, 2}});
    EXPECT_EQ(to_vector<std::int64_t>(two[0]), (I64{0, 0, 1, 1}));
    EXPECT_EQ(to_vector<std::int64_t>(two[1]), (I64{0, 1, 0, 1}));
    EXPECT_NE(two[0].buffer(), two[1].buffer());
    EXPECT_STRIDED_ERROR(mgrid({}), Errc::invalid_argument);
    EXPECT_STRIDED_ERROR(mgrid({{3, 3}}), Errc::invalid_argument);
}

TEST(Mgrid, ThreeFullAxes) {
    CounterSession session;
    const auto g = mgrid({{-100, 100}, {-100, 100}, {-100, 100}});
    for (const auto& a : g) EXPECT_EQ(a.shape(), (Shape{200, 200, 200}));
    EXPECT_EQ(session.report().buffers_allocated, 3u);
    EXPECT_EQ(get_element(g[2], {5, 6, 7}).as_int(), -93);
}

TEST(Ogrid, Shapes) {
    CounterSession session;
    const auto g = ogrid({{-100, 100}, {-100, 100}, {-100, 100}});
    EXPECT_EQ(g[0].shape(), (Shape{200, 1, 1}));
    EXPECT_EQ(g[1].shape(), (Shape{1, 200, 1}));
    EXPECT_EQ(g[2].shape(), (Shape{1, 1, 200}));
    EXPECT_EQ(session.report().bytes_allocated, 3u * 200 * 8);
    EXPECT_EQ(broadcast_shapes(broadcast_shapes(g[0].shape(), g[1].shape()), g[2].shape()),
              (Shape{200, 200, 200}));
    EXPECT_EQ(ogrid({{0, 4}})[0].shape(), (Shape{4}));
}

TEST(CenteredRange, Bounds) {
    EXPECT_EQ(centered_range(200).start, -100);
    EXPECT_EQ(centered_range(200).stop, 100);
    EXPECT_EQ(centered_range(5).start, -2);
    EXPECT_EQ(centered_range(5).stop, 3);
    EXPECT_EQ(centered_range(1).start, 0);
}

TEST(DistanceGrid, MethodsAgreeWithOracle) {
    const auto [dense, dr] = distance_grid(4, GridMethod::dense);
    const auto [bcast, br] = distance_grid(4, GridMethod::broadcast);
    const F64 expect = testing::distance_grid_oracle(4);
    EXPECT_EQ(to_vector<double>(dense), expect);
    EXPECT_EQ(to_vector<double>(bcast), expect);
    EXPECT_EQ(dr.checksum, br.checksum);
}

TEST(DistanceGrid, SinglePoint) {
    const auto [r, report] = distance_grid(1, GridMethod::broadcast);
    EXPECT_EQ(r.shape(), (Shape{1, 1, 1}));
    EXPECT_EQ(to_vector<double>(r), (F64{0.0}));
    EXPECT_STRIDED_ERROR(distance_grid(0, GridMethod::dense), Errc::invalid_argument);
}

TEST(DistanceGrid, CountsAtFifty) {
    const auto dense = distance_grid(50, GridMethod::dense).second;
    const auto bcast = distance_grid(50, GridMethod::broadcast).second;
    EXPECT_EQ(dense.scalar_ops, 750000u);
    EXPECT_EQ(bcast.scalar_ops, 252650u);
    EXPECT_GE(dense.bytes_allocated, 4 * bcast.bytes_allocated);
    EXPECT_EQ(dense.bytes_allocated, estimate_grid_bytes(50, GridMethod::dense));
    EXPECT_EQ(bcast.bytes_allocated, estimate_grid_bytes(50, GridMethod::broadcast));
    EXPECT_NEAR(dense.checksum, bcast.checksum, 1e-9 * std::abs(dense.checksum));
}

TEST(DistanceGrid, EstimateAtFullScale) {
    EXPECT_EQ(estimate_grid_bytes(200, GridMethod::dense), 576000000u);
    EXPECT_EQ(estimate_grid_bytes(200, GridMethod::broadcast), 128329600u);
}

TEST(GridReport, Text) {
    GridReport r;
    r.n = 2;
    r.method = GridMethod::broadcast;
    r.scalar_ops = 26;
    r.buffers_allocated = 9;
    r.bytes_allocated = 208;
    r.checksum = 12.5;
    const std::string text = to_text(r);
    EXPECT_NE(text.find("method=broadcast\n"), std::string::npos) << text;
    EXPECT_NE(text.find("n=2\n"), std::string::npos);
    EXPECT_NE(text.find("scalar_ops=26\n"), std::string::npos);
    EXPECT_NE(text.find("buffers_allocated=9\n"), std::string::npos);
    EXPECT_NE(text.find("bytes_allocated=208\n"), std::string::npos);
    EXPECT_NE(text.find("checksum=12.5"), std::string::npos);
}

class EvaluateF : public ::testing::TestWithParam<EvalStrategy> {};

TEST_P(EvaluateF, SmallInput) {
    EXPECT_EQ(to_vector<std::int64_t>(evaluate_f(arange(0, 3), GetParam())), (I64{4, 2, 2}));
    EXPECT_EQ(to_vector<double>(evaluate_f(arange(0, 3, 1, DType::float64()), GetParam())),
              (F64{4.0, 2.0, 2.0}));
}

TEST_P(EvaluateF, LargeInput) {
    const ArrayView fx = evaluate_f(arange(0, 100000, 1, DType::float64()), GetParam());
    const double last = get_element(fx, {99999}).as_double();
    EXPECT_EQ(last, 99999.0 * 99999.0 - 3.0 * 99999.0 + 4.0);
    EXPECT_NEAR(last, 9.9995e9, 0.00005e9);
}

TEST_P(EvaluateF, Empty) { EXPECT_EQ(evaluate_f(arange(0, 0), GetParam()).size(), 0); }

INSTANTIATE_TEST_SUITE_P(Strategies, EvaluateF,
                         ::testing::Values(EvalStrategy::per_element, EvalStrategy::vectorized,
                                           EvalStrategy::inplace),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(EvaluateFAlloc, VectorizedVersusInplace) {
    const ArrayView x = arange(0, 1000, 1, DType::float64());
    CounterReport vec, inp;
    {
        CounterSession s;
        (void)evaluate_f(x, EvalStrategy::vectorized);
        vec = s.report();
    }
    {
        CounterSession s;
        (void)evaluate_f(x, EvalStrategy::inplace);
        inp = s.report();
    }
    EXPECT_GE(vec.buffers_allocated, 4u);
    EXPECT_EQ(inp.buffers_allocated, 2u);
    EXPECT_EQ(vec.scalar_ops, inp.scalar_ops);
    EXPECT_STRIDED_ERROR(evaluate_f(create({2, 2}, DType::float64()), EvalStrategy::inplace), Errc::shape);
}

TEST(FiniteDiff, FiveSamples) {
    const ArrayView x = arange(0, 10, 2);
    const ArrayView y = elementwise_unary(UnaryOp::square, x);
    EXPECT_EQ(to_vector<std::int64_t>(forward_diff(x, y)), (I64{2, 6, 10, 14}));
    EXPECT_EQ(to_vector<std::int64_t>(central_diff(x, y)), (I64{4, 8, 12}));
}

TEST(FiniteDiff, SixSamples) {
    const ArrayView x = arange(0, 12, 2);
    const ArrayView y = elementwise_unary(UnaryOp::square, x);
    EXPECT_EQ(to_vector<std::int64_t>(forward_diff(x, y)), (I64{2, 6, 10, 14, 18}));
    EXPECT_EQ(to_vector<std::int64_t>(central_diff(x, y)), (I64{4, 8, 12, 16}));
}

TEST(FiniteDiff, ConstantAndLinear) {
    const ArrayView x = arange(0, 10, 2);
    EXPECT_EQ(to_vector<std::int64_t>(forward_diff(x, create({5}, DType::int64()))), (I64{0, 0, 0, 0}));
    const ArrayView y = scalar_binary(BinaryOp::mul, x, 2, ScalarSide::left);
    EXPECT_EQ(to_vector<std::int64_t>(central_diff(x, y)), (I64{2, 2, 2}));
}

TEST(FiniteDiff, LengthErrors) {
    EXPECT_STRIDED_ERROR(forward_diff(arange(0, 1), arange(0, 1)), Errc::shape);
    EXPECT_STRIDED_ERROR(central_diff(arange(0, 2), arange(0, 2)), Errc::shape);
    EXPECT_STRIDED_ERROR(forward_diff(arange(0, 3), arange(0, 4)), Errc::shape);
}

const F64 kCamera{500, 0, 320, 0, 500, 240, 0, 0, 1};

TEST(ProjectPoints, OriginRay) {
    const ArrayView r = project_points(from_values(F64{0, 0, 1}, {1, 3}), from_values(kCamera, {3, 3}));
    EXPECT_EQ(to_vector<double>(r), (F64{320, 240, 1}));
}

TEST(ProjectPoints, IdentityCamera) {
    const F64 pts{1, 2, 4, -3, 6, 2};
    const ArrayView r = project_points(from_values(pts, {2, 3}),
                                       from_values(F64{1, 0, 0, 0, 1, 0, 0, 0, 1}, {3, 3}));
    EXPECT_EQ(to_vector<double>(r), (F64{0.25, 0.5, 1.0, -1.5, 3.0, 1.0}));
}

TEST(ProjectPoints, RandomAgainstOracle) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(0.1, 1.0);
    F64 pts(3000);
    for (auto& p : pts) p = d(rng);
    const auto got = to_vector<double>(project_points(from_values(pts, {1000, 3}), from_values(kCamera, {3, 3})));
    const auto want = testing::project_oracle(pts, kCamera);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        ASSERT_NEAR(got[i], want[i], 1e-12) << i;
        if (i % 3 == 2) { ASSERT_EQ(got[i], 1.0); }
    }
}

TEST(ProjectPoints, ZeroDepthNamesRow) {
    const F64 pts{0, 0, 1, 1, 1, 0};
    try {
        project_points(from_values(pts, {2, 3}), from_values(F64{1, 0, 0, 0, 1, 0, 0, 0, 1}, {3, 3}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::divide_by_zero);
        EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos) << e.what();
    }
    EXPECT_STRIDED_ERROR(project_points(create({2, 2}, DType::float64()), from_values(kCamera, {3, 3})),
                         Errc::shape);
}

}  // namespace
}  // namespace strided::pipelines

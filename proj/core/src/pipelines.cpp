#include "strided/pipelines.hpp"

#include <sstream>

#include "element_codec.hpp"
#include "strided/broadcast.hpp"
#include "strided/kernels.hpp"

namespace strided::pipelines {

namespace {

void check_ranges(const std::vector<AxisRange>& ranges) {
    if (ranges.empty()) fail(Errc::invalid_argument, "grid needs at least one axis range");
    for (std::size_t k = 0; k < ranges.size(); ++k) {
        if (ranges[k].stop <= ranges[k].start) {
            fail(Errc::invalid_argument, "grid axis " + std::to_string(k) + " range [" +
                                             std::to_string(ranges[k].start) + ", " +
                                             std::to_string(ranges[k].stop) + ") is empty");
        }
    }
}

void check_pair(const ArrayView& x, const ArrayView& y, std::int64_t min_length, const char* what) {
    if (x.rank() != 1 || y.rank() != 1 || x.shape()[0] != y.shape()[0]) {
        fail(Errc::shape, std::string(what) + " needs two 1-D arrays of equal length");
    }
    if (x.shape()[0] < min_length) {
        fail(Errc::shape, std::string(what) + " needs at least " + std::to_string(min_length) +
                              " samples, got " + std::to_string(x.shape()[0]));
    }
}

// (y[lag:] - y[:-lag]) / (x[lag:] - x[:-lag])
ArrayView divided_difference(const ArrayView& x, const ArrayView& y, std::int64_t lag) {
    const ArrayView dy = elementwise_binary(BinaryOp::sub, slice_view(y, {Slice::from(lag)}),
                                            slice_view(y, {Slice::until(-lag)}));
    const ArrayView dx = elementwise_binary(BinaryOp::sub, slice_view(x, {Slice::from(lag)}),
                                            slice_view(x, {Slice::until(-lag)}));
    return elementwise_binary(BinaryOp::div, dy, dx);
}

}  // namespace

std::vector<ArrayView> mgrid(const std::vector<AxisRange>& ranges) {
    check_ranges(ranges);
    Shape shape;
    for (const AxisRange& r : ranges) shape.push_back(r.stop - r.start);

    std::vector<ArrayView> grids;
    for (std::size_t axis = 0; axis < ranges.size(); ++axis) {
        ArrayView grid = create(shape, DType::int64());
        std::int64_t inner = 1;
        for (std::size_t k = axis + 1; k < shape.size(); ++k) inner *= shape[k];
        const std::int64_t extent = shape[axis];
        auto* out = reinterpret_cast<std::byte*>(grid.data());
        const std::int64_t total = grid.size();
        for (std::int64_t linear = 0; linear < total; ++linear) {
            const std::int64_t coordinate = ranges[axis].start + (linear / inner) % extent;
            detail::store<std::int64_t>(out + linear * 8, coordinate);
        }
        grids.push_back(std::move(grid));
    }
    return grids;
}

std::vector<ArrayView> ogrid(const std::vector<AxisRange>& ranges) {
    check_ranges(ranges);
    std::vector<ArrayView> vectors;
    for (std::size_t axis = 0; axis < ranges.size(); ++axis) {
        const ArrayView line = arange(static_cast<double>(ranges[axis].start),
                                      static_cast<double>(ranges[axis].stop), 1.0, DType::int64());
        if (ranges.size() == 1) {
            vectors.push_back(line);
            continue;
        }
        Shape shape(ranges.size(), 1);
        shape[axis] = line.shape()[0];
        vectors.push_back(reshape(line, shape));
    }
    return vectors;
}

std::string_view to_string(GridMethod method) noexcept {
    return method == GridMethod::dense ? "dense" : "broadcast";
}

std::string_view to_string(EvalStrategy strategy) noexcept {
    switch (strategy) {
        case EvalStrategy::per_element: return "per_element";
        case EvalStrategy::vectorized: return "vectorized";
        case EvalStrategy::inplace: return "inplace";
    }
    return "?";
}

std::string to_text(const GridReport& report) {
    std::ostringstream out;
    out << "method=" << to_string(report.method) << '\n'
        << "n=" << report.n << '\n'
        << "scalar_ops=" << report.scalar_ops << '\n'
        << "buffers_allocated=" << report.buffers_allocated << '\n'
        << "bytes_allocated=" << report.bytes_allocated << '\n'
        << "checksum=" << to_string(Value(report.checksum)) << '\n';
    return out.str();
}

AxisRange centered_range(std::int64_t n) { return {-(n / 2), n - n / 2}; }

std::pair<ArrayView, GridReport> distance_grid(std::int64_t n, GridMethod method) {
    if (n < 1) fail(Errc::invalid_argument, "grid size must be at least 1");
    const AxisRange range = centered_range(n);
    const std::vector<AxisRange> ranges(3, range);

    CounterSession session;
    const std::vector<ArrayView> coords =
        method == GridMethod::dense ? mgrid(ranges) : ogrid(ranges);
    const ArrayView i2 = elementwise_unary(UnaryOp::square, coords[0]);
    const ArrayView j2 = elementwise_unary(UnaryOp::square, coords[1]);
    const ArrayView k2 = elementwise_unary(UnaryOp::square, coords[2]);
    const ArrayView sum = elementwise_binary(
        BinaryOp::add, elementwise_binary(BinaryOp::add, i2, j2), k2);
    ArrayView distances = elementwise_unary(UnaryOp::sqrt, sum);

    GridReport report;
    report.n = n;
    report.method = method;
    const CounterReport counts = session.report();
    report.scalar_ops = counts.scalar_ops;
    report.buffers_allocated = counts.buffers_allocated;
    report.bytes_allocated = counts.bytes_allocated;
    const std::byte* p = distances.data();
    for (std::int64_t e = 0; e < distances.size(); ++e, p += sizeof(double)) {
        report.checksum += detail::load<double>(p);
    }
    return {std::move(distances), report};
}

std::uint64_t estimate_grid_bytes(std::int64_t n, GridMethod method) {
    const auto u = static_cast<std::uint64_t>(n);
    const std::uint64_t cube = u * u * u * 8;
    if (method == GridMethod::dense) return 9 * cube;  // 3 grids, 3 squares, 2 sums, sqrt
    return 6 * u * 8 + u * u * 8 + 2 * cube;           // 3 vectors, 3 squares, n^2 sum, n^3 sum, sqrt
}

ArrayView evaluate_f(const ArrayView& x, EvalStrategy strategy) {
    if (x.rank() != 1) fail(Errc::shape, "evaluate_f needs a 1-D array");
    switch (strategy) {
        case EvalStrategy::per_element: {
            const DType result = arithmetic_result_type(x.dtype(), x.dtype());
            ArrayView fx = create(x.shape(), result);
            const bool floating = result.kind() == Kind::floating;
            Index idx{0};
            for (std::int64_t i = 0; i < x.shape()[0]; ++i) {
                idx[0] = i;
                const Value v = get_element(x, idx);
                if (floating) {
                    const double xv = v.as_double();
                    const double a = xv * xv;
                    const double b = 3.0 * xv;
                    set_element(fx, idx, Value((a - b) + 4.0));
                } else {
                    const std::uint64_t xv = v.as_uint();
                    set_element(fx, idx, Value(xv * xv - 3 * xv + 4));
                }
            }
            count_scalar_ops(static_cast<std::uint64_t>(4 * x.shape()[0]));
            return fx;
        }
        case EvalStrategy::vectorized: {
            const ArrayView a = elementwise_unary(UnaryOp::square, x);
            const ArrayView b = scalar_binary(BinaryOp::mul, x, 3, ScalarSide::left);
            const ArrayView c = elementwise_binary(BinaryOp::sub, a, b);
            return scalar_binary(BinaryOp::add, c, 4);
        }
        case EvalStrategy::inplace: {
            ArrayView fx = elementwise_unary(UnaryOp::square, x);
            elementwise_binary_inplace(BinaryOp::sub, fx,
                                       scalar_binary(BinaryOp::mul, x, 3, ScalarSide::left));
            elementwise_binary_inplace(BinaryOp::add, fx, 4);
            return fx;
        }
    }
    fail(Errc::invalid_argument, "unknown evaluation strategy");
}

ArrayView forward_diff(const ArrayView& x, const ArrayView& y) {
    check_pair(x, y, 2, "forward_diff");
    return divided_difference(x, y, 1);
}

ArrayView central_diff(const ArrayView& x, const ArrayView& y) {
    check_pair(x, y, 3, "central_diff");
    return divided_difference(x, y, 2);
}

ArrayView project_points(const ArrayView& points, const ArrayView& camera) {
    if (points.rank() != 2 || points.shape()[1] != 3) {
        fail(Errc::shape, "points must have shape (n, 3)");
    }
    if (camera.rank() != 2 || camera.shape()[0] != 3 || camera.shape()[1] != 3) {
        fail(Errc::shape, "camera must have shape (3, 3)");
    }
    const ArrayView vecs = transpose(dot(camera, transpose(points)));
    const ArrayView depth = newaxis_view(select(vecs, 1, 2), 1);
    const std::int64_t rows = vecs.shape()[0];
    for (std::int64_t i = 0; i < rows; ++i) {
        if (get_element(depth, {i, 0}).as_double() == 0.0) {
            fail(Errc::divide_by_zero,
                 "point at row " + std::to_string(i) + " has zero depth after projection");
        }
    }
    return elementwise_binary(BinaryOp::div, vecs, depth);
}

}  // namespace strided::pipelines

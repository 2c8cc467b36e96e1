#pragma once

#include <string>
#include <utility>
#include <vector>

#include "strided/array.hpp"
#include "strided/counters.hpp"

namespace strided::pipelines {

/// Half-open integer range [start, stop).
struct AxisRange {
    std::int64_t start;
    std::int64_t stop;
};

/// Dense coordinate grids: array k has the full grid shape and varies along
/// axis k. Every array is a separate int64 allocation.
std::vector<ArrayView> mgrid(const std::vector<AxisRange>& ranges);

/// Orientation-only coordinate vectors: vector k has extent n_k on axis k
/// and 1 elsewhere (a plain 1-D vector when there is a single range).
std::vector<ArrayView> ogrid(const std::vector<AxisRange>& ranges);

enum class GridMethod { dense, broadcast };

std::string_view to_string(GridMethod method) noexcept;

struct GridReport {
    std::int64_t n = 0;
    GridMethod method = GridMethod::dense;
    std::uint64_t scalar_ops = 0;
    std::uint64_t buffers_allocated = 0;
    std::uint64_t bytes_allocated = 0;
    double checksum = 0.0;  // sum of every R element in C order
};

/// Flat key=value block: method, n, scalar_ops, buffers_allocated,
/// bytes_allocated, checksum.
std::string to_text(const GridReport& report);

/// Coordinate range used for an n-point axis: -floor(n/2) .. n-floor(n/2).
AxisRange centered_range(std::int64_t n);

/// R[i,j,k] = sqrt(i^2 + j^2 + k^2) over an n^3 grid, either from three
/// dense coordinate grids or from three broadcast vectors. The report counts
/// everything the computation allocates, including the coordinates.
std::pair<ArrayView, GridReport> distance_grid(std::int64_t n, GridMethod method);

/// Heap bytes distance_grid allocates, computed without running it.
std::uint64_t estimate_grid_bytes(std::int64_t n, GridMethod method);

enum class EvalStrategy { per_element, vectorized, inplace };

std::string_view to_string(EvalStrategy strategy) noexcept;

/// f(x) = x^2 - 3x + 4 over a 1-D array.
///  - per_element: scalar get/set loop, one output allocation.
///  - vectorized: a = x^2, b = 3x, c = a - b, f = c + 4 (four allocations).
///  - inplace: f = x^2, f -= 3x, f += 4 (two allocations).
ArrayView evaluate_f(const ArrayView& x, EvalStrategy strategy);

/// (y[1:] - y[:-1]) / (x[1:] - x[:-1])
ArrayView forward_diff(const ArrayView& x, const ArrayView& y);

/// (y[2:] - y[:-2]) / (x[2:] - x[:-2])
ArrayView central_diff(const ArrayView& x, const ArrayView& y);

/// Pixel coordinates of n x 3 points under a 3 x 3 camera matrix:
/// vecs = (camera . points^T)^T, then each row divided by its third entry.
ArrayView project_points(const ArrayView& points, const ArrayView& camera);

}  // namespace strided::pipelines

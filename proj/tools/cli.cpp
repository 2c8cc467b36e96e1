#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "strided/strided.hpp"

namespace strided::cli {

namespace {

constexpr std::uint64_t kGridByteLimit = std::uint64_t{2} << 30;

struct Options {
    std::int64_t n = 50;
    std::string method = "both";
    std::string path;
    std::uint64_t seed = 0;
    std::int64_t size = 100000;
    std::string write_path;
    bool read = false;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    [[nodiscard]] double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string header_line(const std::string& name, const ArrayView& v) {
    std::ostringstream s;
    s << name << ": shape=" << format_tuple(v.shape()) << " strides=" << format_tuple(v.strides())
      << " dtype=" << v.dtype().name() << " view=" << (v.flags().is_view ? "True" : "False")
      << " c_contiguous=" << (v.flags().c_contiguous ? "True" : "False")
      << " f_contiguous=" << (v.flags().f_contiguous ? "True" : "False");
    return s.str();
}

// Unit-interval double from the top 53 bits, independent of the standard
// library's distribution implementation.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ArrayView camera_matrix() {
    const std::vector<double> values{500, 0, 320, 0, 500, 240, 0, 0, 1};
    return from_values(values, {3, 3});
}

ArrayView random_points(std::int64_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> values(static_cast<std::size_t>(count) * 3);
    for (double& v : values) v = 0.1 + 0.9 * unit_double(rng);
    return from_values(values, {count, 3});
}

void strides_demo(std::ostream& out) {
    ArrayView x = reshape(arange(0, 9), {3, 3});
    out << ">>> x = arange(9).reshape((3, 3))\n";
    out << "x = " << format_array(x) << '\n' << header_line("x", x) << '\n';

    const ArrayView y = slice_view(x, {Slice::every(2), Slice::every(2)});
    out << ">>> y = x[::2, ::2]\n";
    out << "y = " << format_array(y) << '\n' << header_line("y", y) << '\n';

    set_element(y, {0, 0}, 100);
    out << ">>> y[0, 0] = 100\n";
    out << "x = " << format_array(x) << '\n';

    const ArrayView xt = transpose(x);
    out << ">>> xT = x.T\n";
    out << "xT = " << format_array(xt) << '\n' << header_line("xT", xt) << '\n';

    const ArrayView z = reshape(x, {1, 9});
    out << ">>> z = x.reshape((1, 9))\n";
    out << "z = " << format_array(z) << '\n' << header_line("z", z) << '\n';

    const ArrayView bytes = reinterpret_dtype(z, DType::uint8());
    out << ">>> z.dtype = uint8\n";
    out << "z[0, :8] = " << format_array(slice_view(bytes, {Slice::all(), Slice::until(8)})) << '\n';
    out << header_line("z", bytes) << '\n';
    out << "shared_buffer=" << (bytes.buffer() == x.buffer() ? "True" : "False") << '\n';
}

void broadcast_demo(std::ostream& out) {
    const Shape x_shape{2, 4, 3};
    const Shape y_shape{4, 1};
    out << "broadcast_shapes(" << format_tuple(x_shape) << ", " << format_tuple(y_shape)
        << ") = " << format_tuple(broadcast_shapes(x_shape, y_shape)) << '\n';

    const ArrayView y = create(y_shape, DType::int64());
    const ArrayView expanded = broadcast_view(y, x_shape);
    out << header_line("broadcast_view(y, (2, 4, 3))", expanded) << '\n';

    const ArrayView a = from_values(std::vector<std::int64_t>{1, 3, 5});
    const ArrayView b = scalar_binary(BinaryOp::mul, a, 3, ScalarSide::left);
    out << "a = " << format_array(a) << '\n';
    out << "b = 3 * a = " << format_array(b) << '\n';
    out << "b - a = " << format_array(elementwise_binary(BinaryOp::sub, b, a)) << '\n';
    const ArrayView m = reshape(arange(0, 6), {2, 3});
    out << "m = " << format_array(m) << '\n';
    out << "b + m = " << format_array(elementwise_binary(BinaryOp::add, b, m)) << '\n';
}

void finite_diff(std::ostream& out) {
    // Five samples give four forward differences; the six-sample grid yields
    // five forward and four central differences.
    for (double stop : {10.0, 12.0}) {
        const ArrayView x = arange(0, stop, 2);
        const ArrayView y = elementwise_unary(UnaryOp::square, x);
        out << "x = arange(0, " << stop << ", 2) = " << format_array(x) << '\n';
        out << "y = x**2 = " << format_array(y) << '\n';
        out << "forward (y[1:]-y[:-1])/(x[1:]-x[:-1]) = "
            << format_array(pipelines::forward_diff(x, y)) << '\n';
        out << "central (y[2:]-y[:-2])/(x[2:]-x[:-2]) = "
            << format_array(pipelines::central_diff(x, y)) << '\n';
    }
}

int grid(const Options& opt, std::ostream& out, std::ostream& err) {
    std::vector<pipelines::GridMethod> methods;
    if (opt.method == "dense" || opt.method == "both") methods.push_back(pipelines::GridMethod::dense);
    if (opt.method == "broadcast" || opt.method == "both") {
        methods.push_back(pipelines::GridMethod::broadcast);
    }
    if (opt.n < 1) {
        err << "error: --n must be at least 1\n";
        return 1;
    }
    for (auto method : methods) {
        const std::uint64_t bytes = pipelines::estimate_grid_bytes(opt.n, method);
        if (bytes > kGridByteLimit) {
            err << "error: refusing grid n=" << opt.n << " method=" << to_string(method)
                << ": needs about " << bytes << " bytes (" << bytes / (1u << 20)
                << " MiB), limit is " << kGridByteLimit << '\n';
            return 1;
        }
    }
    std::vector<double> checksums;
    for (auto method : methods) {
        const Stopwatch watch;
        const auto [distances, report] = pipelines::distance_grid(opt.n, method);
        const double elapsed = watch.ms();
        out << pipelines::to_text(report);
        out << "time: method=" << to_string(method) << " ms=" << elapsed << '\n';
        checksums.push_back(report.checksum);
    }
    if (checksums.size() == 2) {
        const double scale = std::max(std::abs(checksums[0]), 1.0);
        const bool equal = std::abs(checksums[0] - checksums[1]) <= 1e-9 * scale;
        out << "checksums_equal=" << (equal ? "true" : "false") << '\n';
    }
    return 0;
}

void camera(const Options& opt, std::ostream& out) {
    const ArrayView cam = camera_matrix();
    const ArrayView points = random_points(opt.size, opt.seed);
    const Stopwatch watch;
    const ArrayView pixels = pipelines::project_points(points, cam);
    const double elapsed = watch.ms();

    bool unit_depth = true;
    for (std::int64_t i = 0; i < pixels.shape()[0]; ++i) {
        unit_depth = unit_depth && get_element(pixels, {i, 2}).as_double() == 1.0;
    }
    out << "camera = " << format_array(cam) << '\n';
    out << "points=" << opt.size << " seed=" << opt.seed << '\n';
    const std::int64_t shown = std::min<std::int64_t>(3, pixels.shape()[0]);
    out << "pixel_coords[:" << shown
        << "] = " << format_array(slice_view(pixels, {Slice::until(shown)})) << '\n';
    out << "third_column_all_one=" << (unit_depth ? "true" : "false") << '\n';
    out << "origin_on_axis -> "
        << format_array(pipelines::project_points(
               from_values(std::vector<double>{0, 0, 1}, {1, 3}), cam))
        << '\n';
    out << "time: project_points ms=" << elapsed << '\n';
}

std::filesystem::path default_path(const Options& opt, const char* name) {
    if (!opt.path.empty()) return opt.path;
    return std::filesystem::temp_directory_path() / name;
}

void memmap_demo(const Options& opt, std::ostream& out) {
    const std::filesystem::path path = default_path(opt, "myarray.memmap");
    const Shape shape{300, 300};
    {
        const ArrayView a = memmap_open(path, MemmapMode::write, shape, DType::int64());
        fill_flat(a, arange(0, 300 * 300));
        out << ">>> a = memmap(" << path.filename().string()
            << ", mode='write', shape=(300, 300), dtype=int64)\n";
        out << "a[0, :2] = " << format_array(slice_view(a, {Slice::range(0, 1), Slice::until(2)}))
            << " a[0, -2:] = " << format_array(slice_view(a, {Slice::range(0, 1), Slice::from(-2)}))
            << '\n';
        out << "a[1, :2] = " << format_array(slice_view(a, {Slice::range(1, 2), Slice::until(2)}))
            << " a[-1, -2:] = "
            << format_array(slice_view(a, {Slice::from(-1), Slice::from(-2)})) << '\n';
        flush(a);
        out << ">>> a.flush()\n";
    }
    {
        const ArrayView b = memmap_open(path, MemmapMode::read_write, shape, DType::int64());
        elementwise_binary_inplace(BinaryOp::mul, select(b, 0, 100), 2);
        flush(b);
        out << ">>> b[100, :] *= 2; b.flush()\n";
    }
    const ArrayView c = memmap_open(path, MemmapMode::read_only, shape, DType::int64());
    out << "reopen mode='r': row 99 head = "
        << format_array(slice_view(select(c, 0, 99), {Slice::until(3)})) << '\n';
    out << "reopen mode='r': row 100 head = "
        << format_array(slice_view(select(c, 0, 100), {Slice::until(3)})) << " tail = "
        << format_array(slice_view(select(c, 0, 100), {Slice::from(-2)})) << '\n';
    out << "file_bytes=" << std::filesystem::file_size(path) << '\n';
}

void interface_demo(std::ostream& out) {
    // Stand-in for a foreign object owning a mutable character buffer.
    std::string text = "abcde";
    ArrayInterfaceDescriptor desc;
    desc.shape = {static_cast<std::int64_t>(text.size())};
    desc.data = {text.data(), false};
    desc.typestr = "|u1";

    out << "m = MutableString('abcde') typestr=" << desc.typestr << " shape="
        << format_tuple(desc.shape) << " read_only=False\n";
    CounterSession session;
    const ArrayView am = from_interface(desc);
    out << "am = " << format_array(am) << '\n';
    elementwise_binary_inplace(BinaryOp::add, am, 2);
    out << "am += 2 -> " << format_array(am) << '\n';
    out << "print m -> " << text << '\n';
    out << "buffers_allocated=" << session.report().buffers_allocated << '\n';
}

DType record_dtype() {
    return make_struct_dtype({{"time", DType::uint64()},
                              {"pos", StructSpec{{"x", DType::float64()}, {"y", DType::float64()}}}});
}

ArrayView sample_records() {
    const DType dt = record_dtype();
    ArrayView x = create({3}, dt);
    const std::array<std::tuple<std::uint64_t, double, double>, 3> rows{
        {{1, 0.0, 0.5}, {2, 0.0, 10.3}, {3, 5.5, 1.1}}};
    for (std::int64_t i = 0; i < 3; ++i) {
        const auto& [t, px, py] = rows[static_cast<std::size_t>(i)];
        set_element(x, {i}, Record{{"time", t}, {"pos", Record{{"x", px}, {"y", py}}}});
    }
    return x;
}

void records_demo(const Options& opt, std::ostream& out) {
    ArrayView x = sample_records();
    out << "dt = " << record_dtype().name() << " itemsize=" << record_dtype().itemsize() << '\n';
    std::filesystem::path source = opt.write_path.empty() ? opt.path : opt.write_path;
    if (!opt.write_path.empty()) {
        tofile(x, opt.write_path);
        out << "wrote " << x.shape()[0] << " records ("
            << std::filesystem::file_size(opt.write_path) << " bytes) to " << opt.write_path
            << '\n';
    }
    if (opt.read) {
        if (source.empty()) {
            throw Error(Errc::invalid_argument, "--read needs --write <file> or --path <file>");
        }
        x = fromfile(source, record_dtype());
        out << "read " << x.shape()[0] << " records from " << source.string() << '\n';
    }
    out << "x = " << format_array(x) << '\n';
    const ArrayView times = field_view(x, "time");
    out << "x['time'] = " << format_array(times) << '\n';
    const ArrayView mask = compare(CompareOp::ge, times, 2);
    out << "times = (x['time'] >= 2) -> " << format_array(mask) << '\n';
    out << "x[times]['pos']['x'] = "
        << format_array(field_view(field_view(mask_select(x, mask), "pos"), "x")) << '\n';
}

void bench(const Options& opt, std::ostream& out) {
    const ArrayView x = arange(0, static_cast<double>(opt.size), 1, DType::float64());
    out << "evaluate_f size=" << opt.size << '\n';
    for (auto strategy : {pipelines::EvalStrategy::per_element, pipelines::EvalStrategy::vectorized,
                          pipelines::EvalStrategy::inplace}) {
        CounterSession session;
        const Stopwatch watch;
        const ArrayView fx = pipelines::evaluate_f(x, strategy);
        const double elapsed = watch.ms();
        const CounterReport r = session.report();
        out << "evaluate_f strategy=" << to_string(strategy)
            << " buffers_allocated=" << r.buffers_allocated << " bytes_allocated=" << r.bytes_allocated
            << " last=" << to_string(get_element(fx, {opt.size - 1})) << '\n';
        out << "time: evaluate_f strategy=" << to_string(strategy) << " ms=" << elapsed << '\n';
    }
    for (auto method : {pipelines::GridMethod::dense, pipelines::GridMethod::broadcast}) {
        const Stopwatch watch;
        const auto [r, report] = pipelines::distance_grid(opt.n, method);
        const double elapsed = watch.ms();
        out << "grid n=" << opt.n << " method=" << to_string(method)
            << " scalar_ops=" << report.scalar_ops << " bytes_allocated=" << report.bytes_allocated
            << '\n';
        out << "time: grid method=" << to_string(method) << " ms=" << elapsed << '\n';
    }
    const ArrayView cam = camera_matrix();
    const ArrayView points = random_points(opt.size, opt.seed);
    const Stopwatch vectorized;
    const ArrayView pixels = pipelines::project_points(points, cam);
    const double vectorized_ms = vectorized.ms();
    const Stopwatch looped;
    double sink = 0.0;
    for (std::int64_t i = 0; i < opt.size; ++i) {
        double v[3];
        for (std::int64_t r = 0; r < 3; ++r) {
            v[r] = 0.0;
            for (std::int64_t c = 0; c < 3; ++c) {
                v[r] += get_element(cam, {r, c}).as_double() * get_element(points, {i, c}).as_double();
            }
        }
        sink += v[0] / v[2] + v[1] / v[2];
    }
    const double looped_ms = looped.ms();
    out << "camera points=" << opt.size << " rows=" << pixels.shape()[0] << '\n';
    out << "time: camera vectorized ms=" << vectorized_ms << " per_point_loop ms=" << looped_ms
        << " checksum=" << sink << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Strided array demonstrations and accounting"};
    app.name("strided");
    app.require_subcommand(1);
    Options opt;

    auto* strides = app.add_subcommand("strides-demo", "shape/strides walk-through of zero-copy views");
    auto* broadcast = app.add_subcommand("broadcast-demo", "broadcasting rules and vectorized arithmetic");
    auto* fdiff = app.add_subcommand("finite-diff", "forward and central divided differences");
    auto* grid_cmd = app.add_subcommand("grid", "dense vs broadcast distance grid accounting");
    grid_cmd->add_option("--n", opt.n, "points per axis")->capture_default_str();
    grid_cmd->add_option("--method", opt.method, "dense, broadcast or both")
        ->check(CLI::IsMember({"dense", "broadcast", "both"}))
        ->capture_default_str();
    auto* camera_cmd = app.add_subcommand("camera", "project random points through a camera matrix");
    camera_cmd->add_option("--size", opt.size, "number of points")->capture_default_str();
    camera_cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    auto* memmap_cmd = app.add_subcommand("memmap-demo", "memory-mapped array create/flush/reopen");
    memmap_cmd->add_option("--path", opt.path, "backing file (default: temp dir)");
    auto* interface_cmd = app.add_subcommand("interface-demo", "view foreign memory via the array interface");
    auto* records_cmd = app.add_subcommand("records-demo", "structured records, masks and raw files");
    records_cmd->add_option("--write", opt.write_path, "write the sample records to this file");
    records_cmd->add_flag("--read", opt.read, "read records back from --write or --path");
    records_cmd->add_option("--path", opt.path, "record file to read");
    auto* bench_cmd = app.add_subcommand("bench", "time evaluation strategies, grids and projection");
    bench_cmd->add_option("--size", opt.size, "element count")->capture_default_str();
    bench_cmd->add_option("--n", opt.n, "grid points per axis")->capture_default_str();
    bench_cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return 2;
    }
    if ((camera_cmd->parsed() || bench_cmd->parsed()) && opt.size < 1) {
        err << "usage error: --size must be positive\n";
        return 2;
    }

    try {
        if (strides->parsed()) strides_demo(out);
        else if (broadcast->parsed()) broadcast_demo(out);
        else if (fdiff->parsed()) finite_diff(out);
        else if (grid_cmd->parsed()) return grid(opt, out, err);
        else if (camera_cmd->parsed()) camera(opt, out);
        else if (memmap_cmd->parsed()) memmap_demo(opt, out);
        else if (interface_cmd->parsed()) interface_demo(out);
        else if (records_cmd->parsed()) records_demo(opt, out);
        else if (bench_cmd->parsed()) bench(opt, out);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace strided::cli

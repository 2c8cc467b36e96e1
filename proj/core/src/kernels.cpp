#include "strided/kernels.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "element_codec.hpp"
#include "strided/broadcast.hpp"

namespace strided {

namespace {

template <class C>
using LoadFn = C (*)(const std::byte*) noexcept;

template <class C, class S>
C load_as(const std::byte* p) noexcept {
    return static_cast<C>(detail::load<S>(p));
}

template <class F>
decltype(auto) visit_scalar_type(const DType& dt, F&& f) {
    switch (dt.kind()) {
        case Kind::boolean:
            return f(std::type_identity<bool>{});
        case Kind::signed_int:
            switch (dt.itemsize()) {
                case 1: return f(std::type_identity<std::int8_t>{});
                case 2: return f(std::type_identity<std::int16_t>{});
                case 4: return f(std::type_identity<std::int32_t>{});
                default: return f(std::type_identity<std::int64_t>{});
            }
        case Kind::unsigned_int:
            switch (dt.itemsize()) {
                case 1: return f(std::type_identity<std::uint8_t>{});
                case 2: return f(std::type_identity<std::uint16_t>{});
                case 4: return f(std::type_identity<std::uint32_t>{});
                default: return f(std::type_identity<std::uint64_t>{});
            }
        case Kind::floating:
            if (dt.itemsize() == 4) return f(std::type_identity<float>{});
            return f(std::type_identity<double>{});
        case Kind::structured:
            break;
    }
    fail(Errc::unsupported_dtype, "kernel needs a numeric dtype, got " + dt.name());
}

template <class C>
LoadFn<C> loader_for(const DType& src) {
    return visit_scalar_type(src, [](auto tag) -> LoadFn<C> {
        return &load_as<C, typename decltype(tag)::type>;
    });
}

void require_numeric(const ArrayView& a, const char* what) {
    if (!a.dtype().is_numeric()) {
        fail(Errc::unsupported_dtype,
             std::string(what) + " needs a numeric dtype, got " + a.dtype().name());
    }
}

/// Walks `shape` in C order advancing N byte pointers by their own strides
/// and calls f(pointers) once per element.
template <std::size_t N, class F>
void walk(const Shape& shape, std::array<std::byte*, N> ptr,
          const std::array<const std::int64_t*, N>& strides, F&& f) {
    const std::size_t rank = shape.size();
    if (element_count(shape) == 0) return;
    if (rank == 0) {
        f(ptr);
        return;
    }
    std::vector<std::int64_t> idx(rank, 0);
    const std::int64_t inner = shape[rank - 1];
    std::array<std::int64_t, N> inner_stride;
    for (std::size_t n = 0; n < N; ++n) inner_stride[n] = strides[n][rank - 1];
    for (;;) {
        std::array<std::byte*, N> p = ptr;
        for (std::int64_t i = 0; i < inner; ++i) {
            f(p);
            for (std::size_t n = 0; n < N; ++n) p[n] += inner_stride[n];
        }
        std::size_t axis = rank - 1;
        for (;;) {
            if (axis == 0) return;
            --axis;
            if (++idx[axis] < shape[axis]) {
                for (std::size_t n = 0; n < N; ++n) ptr[n] += strides[n][axis];
                break;
            }
            for (std::size_t n = 0; n < N; ++n) ptr[n] -= strides[n][axis] * (shape[axis] - 1);
            idx[axis] = 0;
        }
    }
}

template <class C>
constexpr bool is_wrapping_int = std::is_integral_v<C> && !std::is_same_v<C, bool>;

template <class C>
C apply_arith(BinaryOp op, C a, C b) {
    if constexpr (is_wrapping_int<C>) {
        const auto ua = static_cast<std::uint64_t>(a);
        const auto ub = static_cast<std::uint64_t>(b);
        switch (op) {
            case BinaryOp::add: return static_cast<C>(ua + ub);
            case BinaryOp::sub: return static_cast<C>(ua - ub);
            case BinaryOp::mul: return static_cast<C>(ua * ub);
            case BinaryOp::div:
                if constexpr (std::is_signed_v<C>) {
                    if (a == std::numeric_limits<C>::min() && b == C(-1)) return a;
                }
                return static_cast<C>(a / b);  // divisor checked non-zero beforehand
        }
    } else {
        switch (op) {
            case BinaryOp::add: return a + b;
            case BinaryOp::sub: return a - b;
            case BinaryOp::mul: return a * b;
            case BinaryOp::div: return a / b;
        }
    }
    return C{};
}

template <class C>
bool apply_compare(CompareOp op, C a, C b) {
    switch (op) {
        case CompareOp::ge: return a >= b;
        case CompareOp::gt: return a > b;
        case CompareOp::le: return a <= b;
        case CompareOp::lt: return a < b;
        case CompareOp::eq: return a == b;
        case CompareOp::ne: return a != b;
    }
    return false;
}

struct Operand {
    std::byte* data;
    Strides strides;
    DType dtype;
};

template <class C>
void check_divisor(const Shape& shape, const Operand& b) {
    const LoadFn<C> load = loader_for<C>(b.dtype);
    walk<1>(shape, {b.data}, {b.strides.data()}, [&](const auto& p) {
        if (load(p[0]) == C{0}) fail(Errc::divide_by_zero, "integer division by zero");
    });
}

/// out = a op b over `shape`, computing in the C++ type of `compute`.
void run_arith(BinaryOp op, const Shape& shape, const Operand& out, const Operand& a,
               const Operand& b) {
    visit_scalar_type(out.dtype, [&](auto tag) {
        using C = typename decltype(tag)::type;
        if constexpr (std::is_same_v<C, bool>) {
            fail(Errc::unsupported_dtype, "arithmetic kernels do not produce bool");
        } else {
            if (op == BinaryOp::div && is_wrapping_int<C>) check_divisor<C>(shape, b);
            const LoadFn<C> la = loader_for<C>(a.dtype);
            const LoadFn<C> lb = loader_for<C>(b.dtype);
            auto body = [&](auto kind) {
                walk<3>(shape, {out.data, a.data, b.data},
                        {out.strides.data(), a.strides.data(), b.strides.data()},
                        [&](const auto& p) {
                            detail::store<C>(p[0], apply_arith<C>(kind, la(p[1]), lb(p[2])));
                        });
            };
            // Hoist the op switch out of the element loop.
            switch (op) {
                case BinaryOp::add: body(BinaryOp::add); break;
                case BinaryOp::sub: body(BinaryOp::sub); break;
                case BinaryOp::mul: body(BinaryOp::mul); break;
                case BinaryOp::div: body(BinaryOp::div); break;
            }
        }
    });
}

// Holds a scalar as a 0-d array over local storage so it can join a kernel
// like any other operand without a counted allocation.
class ScalarOperand {
public:
    ScalarOperand(const DType& dtype, Scalar s) {
        if (dtype.is_integer()) {
            detail::encode(storage_.data(), dtype, Value(s.as_int()));
        } else {
            detail::encode(storage_.data(), dtype, Value(s.as_double()));
        }
        view_.emplace(Buffer::wrap_foreign(storage_.data(), storage_.size(), true), 0, Shape{},
                      Strides{}, dtype, false, true);
    }
    ScalarOperand(const ScalarOperand&) = delete;
    ScalarOperand& operator=(const ScalarOperand&) = delete;

    [[nodiscard]] const ArrayView& view() const { return *view_; }

private:
    alignas(8) std::array<std::byte, 8> storage_{};
    std::optional<ArrayView> view_;
};

bool int_fits(std::int64_t v, const DType& dt) {
    const auto bits = static_cast<int>(dt.itemsize() * 8);
    if (dt.kind() == Kind::signed_int) {
        if (bits == 64) return true;
        const std::int64_t hi = (std::int64_t{1} << (bits - 1)) - 1;
        return v >= -hi - 1 && v <= hi;
    }
    if (v < 0) return false;
    return bits == 64 || v <= static_cast<std::int64_t>((std::uint64_t{1} << bits) - 1);
}

DType min_int_type(std::int64_t v) {
    if (v >= 0) {
        for (std::size_t size : {1, 2, 4, 8}) {
            const DType dt = DType::scalar(Kind::unsigned_int, size);
            if (int_fits(v, dt)) return dt;
        }
    }
    for (std::size_t size : {1, 2, 4, 8}) {
        const DType dt = DType::scalar(Kind::signed_int, size);
        if (int_fits(v, dt)) return dt;
    }
    return DType::int64();
}

Operand operand_for(const ArrayView& v, const BroadcastPlan& plan, std::size_t i) {
    return Operand{v.data(), plan.operand_strides[i], v.dtype()};
}

void check_inplace_target(const ArrayView& target) {
    if (!target.flags().writeable) fail(Errc::permission, "in-place target is not writeable");
    for (std::size_t k = 0; k < target.rank(); ++k) {
        if (target.shape()[k] > 1 && target.strides()[k] == 0) {
            fail(Errc::permission, "in-place target repeats elements through a zero stride on axis " +
                                       std::to_string(k));
        }
    }
}

}  // namespace

DType promote_types(const DType& a, const DType& b) {
    if (a.is_structured() || b.is_structured()) {
        fail(Errc::unsupported_dtype, "cannot promote " + a.name() + " with " + b.name());
    }
    if (a == b) return a;
    if (a.kind() == Kind::boolean) return b;
    if (b.kind() == Kind::boolean) return a;
    const bool af = a.kind() == Kind::floating;
    const bool bf = b.kind() == Kind::floating;
    if (af && bf) return a.itemsize() >= b.itemsize() ? a : b;
    if (af || bf) return DType::float64();
    if (a.kind() == b.kind()) return a.itemsize() >= b.itemsize() ? a : b;
    const DType& s = a.kind() == Kind::signed_int ? a : b;
    const DType& u = a.kind() == Kind::signed_int ? b : a;
    if (s.itemsize() > u.itemsize()) return s;
    if (u.itemsize() < 8) return DType::scalar(Kind::signed_int, u.itemsize() * 2);
    return DType::float64();
}

DType arithmetic_result_type(const DType& a, const DType& b) {
    DType out = promote_types(a, b);
    return out.kind() == Kind::boolean ? DType::int8() : out;
}

DType scalar_operand_type(const DType& array_dtype, Scalar s) {
    if (array_dtype.is_structured()) {
        fail(Errc::unsupported_dtype, "cannot combine a scalar with " + array_dtype.name());
    }
    if (s.is_integer()) {
        const std::int64_t v = s.as_int();
        if (array_dtype.is_integer()) {
            return int_fits(v, array_dtype) ? array_dtype : min_int_type(v);
        }
        if (array_dtype.kind() == Kind::floating) {
            const bool exact = array_dtype.itemsize() == 4
                                   ? static_cast<std::int64_t>(static_cast<float>(v)) == v
                                   : static_cast<std::int64_t>(static_cast<double>(v)) == v;
            return exact ? array_dtype : DType::float64();
        }
        return min_int_type(v);
    }
    const double v = s.as_double();
    if (array_dtype.kind() == Kind::floating && array_dtype.itemsize() == 4) {
        const bool exact = std::isnan(v) || static_cast<double>(static_cast<float>(v)) == v;
        return exact ? array_dtype : DType::float64();
    }
    return DType::float64();
}

ArrayView elementwise_binary(BinaryOp op, const ArrayView& a, const ArrayView& b) {
    require_numeric(a, "elementwise_binary");
    require_numeric(b, "elementwise_binary");
    const std::array<ArrayView, 2> operands{a, b};
    const BroadcastPlan plan = plan_broadcast(operands);
    const DType result = arithmetic_result_type(a.dtype(), b.dtype());
    ArrayView out = create(plan.output_shape, result);
    run_arith(op, plan.output_shape, Operand{out.data(), out.strides(), result},
              operand_for(a, plan, 0), operand_for(b, plan, 1));
    count_scalar_ops(static_cast<std::uint64_t>(out.size()));
    return out;
}

ArrayView scalar_binary(BinaryOp op, const ArrayView& a, Scalar s, ScalarSide side) {
    require_numeric(a, "scalar_binary");
    const ScalarOperand scalar(scalar_operand_type(a.dtype(), s), s);
    return side == ScalarSide::right ? elementwise_binary(op, a, scalar.view())
                                     : elementwise_binary(op, scalar.view(), a);
}

ArrayView elementwise_unary(UnaryOp op, const ArrayView& a) {
    require_numeric(a, "elementwise_unary");
    DType result = arithmetic_result_type(a.dtype(), a.dtype());
    if (op == UnaryOp::sqrt && result.kind() != Kind::floating) result = DType::float64();
    ArrayView out = create(a.shape(), result);
    visit_scalar_type(result, [&](auto tag) {
        using C = typename decltype(tag)::type;
        if constexpr (!std::is_same_v<C, bool>) {
            const LoadFn<C> load = loader_for<C>(a.dtype());
            const std::array<std::byte*, 2> ptrs{out.data(), a.data()};
            const std::array<const std::int64_t*, 2> strides{out.strides().data(),
                                                             a.strides().data()};
            switch (op) {
                case UnaryOp::square:
                    walk<2>(a.shape(), ptrs, strides, [&](const auto& p) {
                        const C x = load(p[1]);
                        detail::store<C>(p[0], apply_arith<C>(BinaryOp::mul, x, x));
                    });
                    break;
                case UnaryOp::neg:
                    walk<2>(a.shape(), ptrs, strides, [&](const auto& p) {
                        detail::store<C>(p[0], apply_arith<C>(BinaryOp::sub, C{0}, load(p[1])));
                    });
                    break;
                case UnaryOp::sqrt:
                    if constexpr (std::is_floating_point_v<C>) {
                        walk<2>(a.shape(), ptrs, strides, [&](const auto& p) {
                            detail::store<C>(p[0], std::sqrt(load(p[1])));
                        });
                    }
                    break;
            }
        }
    });
    count_scalar_ops(static_cast<std::uint64_t>(out.size()));
    return out;
}

void elementwise_binary_inplace(BinaryOp op, const ArrayView& target, const ArrayView& b) {
    require_numeric(target, "elementwise_binary_inplace");
    require_numeric(b, "elementwise_binary_inplace");
    check_inplace_target(target);
    const Shape combined = broadcast_shapes(target.shape(), b.shape());
    if (combined != target.shape()) {
        fail(Errc::inplace_shape, "in-place operand would expand the target to a larger shape");
    }
    const DType result = arithmetic_result_type(target.dtype(), b.dtype());
    if (!(result == target.dtype())) {
        fail(Errc::casting, "in-place result " + result.name() + " does not fit target dtype " +
                                target.dtype().name());
    }
    const BroadcastPlan plan = plan_broadcast(std::array<ArrayView, 2>{target, b});
    const Operand out{target.data(), target.strides(), target.dtype()};
    run_arith(op, target.shape(), out, out, operand_for(b, plan, 1));
    count_scalar_ops(static_cast<std::uint64_t>(target.size()));
}

void elementwise_binary_inplace(BinaryOp op, const ArrayView& target, Scalar s) {
    require_numeric(target, "elementwise_binary_inplace");
    const ScalarOperand scalar(scalar_operand_type(target.dtype(), s), s);
    elementwise_binary_inplace(op, target, scalar.view());
}

ArrayView compare(CompareOp op, const ArrayView& a, const ArrayView& b) {
    require_numeric(a, "compare");
    require_numeric(b, "compare");
    const std::array<ArrayView, 2> operands{a, b};
    const BroadcastPlan plan = plan_broadcast(operands);
    const DType common = promote_types(a.dtype(), b.dtype());
    ArrayView out = create(plan.output_shape, DType::boolean());
    visit_scalar_type(common, [&](auto tag) {
        using C = typename decltype(tag)::type;
        const LoadFn<C> la = loader_for<C>(a.dtype());
        const LoadFn<C> lb = loader_for<C>(b.dtype());
        walk<3>(plan.output_shape, {out.data(), a.data(), b.data()},
                {out.strides().data(), plan.operand_strides[0].data(),
                 plan.operand_strides[1].data()},
                [&](const auto& p) {
                    detail::store<std::uint8_t>(p[0], apply_compare<C>(op, la(p[1]), lb(p[2])) ? 1 : 0);
                });
    });
    count_scalar_ops(static_cast<std::uint64_t>(out.size()));
    return out;
}

ArrayView compare(CompareOp op, const ArrayView& a, Scalar s) {
    require_numeric(a, "compare");
    const ScalarOperand scalar(scalar_operand_type(a.dtype(), s), s);
    return compare(op, a, scalar.view());
}

ArrayView mask_select(const ArrayView& a, const ArrayView& mask) {
    if (mask.rank() != 1 || mask.dtype().kind() != Kind::boolean) {
        fail(Errc::invalid_argument, "mask must be a 1-D bool array");
    }
    if (a.rank() == 0 || mask.shape()[0] != a.shape()[0]) {
        fail(Errc::shape, "mask of length " + std::to_string(mask.shape()[0]) +
                              " does not match " +
                              (a.rank() == 0 ? std::string("a 0-d array")
                                             : "axis 0 of extent " + std::to_string(a.shape()[0])));
    }
    const std::vector<bool> keep = to_vector<bool>(mask);
    std::int64_t count = 0;
    for (bool k : keep) count += k ? 1 : 0;

    Shape shape = a.shape();
    shape[0] = count;
    ArrayView out = create(shape, a.dtype());
    std::byte* dst = out.data();
    const std::byte* src = a.buffer()->data();
    const std::size_t n = a.itemsize();
    for (std::int64_t i = 0; i < a.shape()[0]; ++i) {
        if (!keep[static_cast<std::size_t>(i)]) continue;
        for_each_offset(select(a, 0, i), [&](std::int64_t o) {
            std::memcpy(dst, src + o, n);
            dst += n;
        });
    }
    return out;
}

ArrayView dot(const ArrayView& a, const ArrayView& b) {
    require_numeric(a, "dot");
    require_numeric(b, "dot");
    if (a.rank() < 1 || a.rank() > 2 || b.rank() < 1 || b.rank() > 2) {
        fail(Errc::shape, "dot supports 1-D and 2-D operands only");
    }
    const ArrayView lhs = a.rank() == 1 ? newaxis_view(a, 0) : a;
    const ArrayView rhs = b.rank() == 1 ? newaxis_view(b, 1) : b;
    const std::int64_t m = lhs.shape()[0];
    const std::int64_t k = lhs.shape()[1];
    const std::int64_t n = rhs.shape()[1];
    if (rhs.shape()[0] != k) {
        fail(Errc::shape, "dot inner dimensions differ: " + std::to_string(k) + " vs " +
                              std::to_string(rhs.shape()[0]));
    }
    Shape shape;
    if (a.rank() == 2) shape.push_back(m);
    if (b.rank() == 2) shape.push_back(n);
    ArrayView out = create(shape, DType::float64());

    const LoadFn<double> la = loader_for<double>(a.dtype());
    const LoadFn<double> lb = loader_for<double>(b.dtype());
    const std::byte* pa = lhs.data();
    const std::byte* pb = rhs.data();
    const std::int64_t as0 = lhs.strides()[0], as1 = lhs.strides()[1];
    const std::int64_t bs0 = rhs.strides()[0], bs1 = rhs.strides()[1];
    auto* dst = out.data();
    for (std::int64_t i = 0; i < m; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::int64_t p = 0; p < k; ++p) {
                acc += la(pa + i * as0 + p * as1) * lb(pb + p * bs0 + j * bs1);
            }
            detail::store<double>(dst, acc);
            dst += sizeof(double);
        }
    }
    count_scalar_ops(static_cast<std::uint64_t>(2 * m * n * k));
    return out;
}

ArrayView field_view(const ArrayView& a, std::string_view name) {
    const auto [offset, dtype] = field_lookup(a.dtype(), name);
    return ArrayView(a.buffer(), a.base_offset() + static_cast<std::int64_t>(offset), a.shape(),
                     a.strides(), dtype, a.flags().writeable, true);
}

}  // namespace strided

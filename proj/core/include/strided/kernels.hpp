#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "strided/array.hpp"
#include "strided/counters.hpp"

namespace strided {

enum class BinaryOp { add, sub, mul, div };
enum class UnaryOp { square, sqrt, neg };
enum class CompareOp { ge, gt, le, lt, eq, ne };
enum class ScalarSide { left, right };

/// Number used as a 0-d operand. Integer literals stay integral so that
/// `x * 3` keeps an integer dtype.
class Scalar {
public:
    Scalar(int v) : value_(std::int64_t{v}) {}
    Scalar(long v) : value_(static_cast<std::int64_t>(v)) {}
    Scalar(long long v) : value_(static_cast<std::int64_t>(v)) {}
    Scalar(double v) : value_(v) {}

    [[nodiscard]] bool is_integer() const noexcept {
        return std::holds_alternative<std::int64_t>(value_);
    }
    [[nodiscard]] std::int64_t as_int() const { return std::get<std::int64_t>(value_); }
    [[nodiscard]] double as_double() const noexcept {
        return is_integer() ? static_cast<double>(std::get<std::int64_t>(value_))
                            : std::get<double>(value_);
    }

private:
    std::variant<std::int64_t, double> value_;
};

/// Join on the promotion ladder: bool < i1 < i2 < i4 < i8 and
/// u1 < u2 < u4 < u8, with uN below the next wider signed type, u8 mixed with
/// a signed type going to f8, and any integer mixed with a float going to f8.
/// f4 with f4 stays f4. Commutative and associative.
DType promote_types(const DType& a, const DType& b);

/// Dtype an arithmetic kernel produces for these operands (the promoted
/// type, with bool-only arithmetic widened to int8).
DType arithmetic_result_type(const DType& a, const DType& b);

/// Dtype a scalar takes when combined with an array of dtype `array_dtype`:
/// the array's own dtype when the scalar is exactly representable in it,
/// otherwise the smallest dtype that holds it (float64 for non-integral
/// values).
DType scalar_operand_type(const DType& array_dtype, Scalar s);

/// Fresh array of the broadcast shape. Integer division truncates toward zero
/// and throws Errc::divide_by_zero on a zero divisor; float division follows
/// IEEE. Integer arithmetic wraps.
ArrayView elementwise_binary(BinaryOp op, const ArrayView& a, const ArrayView& b);

ArrayView scalar_binary(BinaryOp op, const ArrayView& a, Scalar s,
                        ScalarSide side = ScalarSide::right);

/// sqrt promotes integer input to float64; sqrt of a negative is NaN.
ArrayView elementwise_unary(UnaryOp op, const ArrayView& a);

/// target = target op b, written in place. The result dtype must equal the
/// target dtype and b must broadcast to the target shape without expanding
/// it. Allocates nothing.
void elementwise_binary_inplace(BinaryOp op, const ArrayView& target, const ArrayView& b);
void elementwise_binary_inplace(BinaryOp op, const ArrayView& target, Scalar s);

ArrayView compare(CompareOp op, const ArrayView& a, const ArrayView& b);
ArrayView compare(CompareOp op, const ArrayView& a, Scalar s);

/// Rows of `a` (along axis 0) where the 1-D bool `mask` is true, copied in
/// order into a fresh array. Works for any dtype, including structured.
ArrayView mask_select(const ArrayView& a, const ArrayView& mask);

/// Matrix product by the plain triple loop, accumulated in float64 in
/// ascending inner index. 1-D operands are promoted to a row (left) or
/// column (right) and the promoted axis is dropped from the result.
ArrayView dot(const ArrayView& a, const ArrayView& b);

/// Zero-copy view of one field of a structured array. Strides still step
/// whole records.
ArrayView field_view(const ArrayView& a, std::string_view name);

}  // namespace strided

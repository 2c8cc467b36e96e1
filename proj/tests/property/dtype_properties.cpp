#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "strided/dtype.hpp"
#include "strided/kernels.hpp"
#include "support/oracles.hpp"

namespace strided {
namespace {

constexpr int kCases = 1000;

TEST(TypestrProperties, RoundTripOnRandomStrings) {
    std::mt19937_64 rng(31);
    const std::string alphabet = "<>|iufbxz0123456789";
    std::uniform_int_distribution<std::size_t> len(1, 4);
    std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
    std::set<std::string> accepted;
    int cases = 0;
    for (int trial = 0; trial < 20 * kCases; ++trial) {
        std::string s;
        for (std::size_t n = len(rng); n > 0; --n) s += alphabet[ch(rng)];
        ++cases;
        for (bool big : {false, true}) {
            try {
                const DType dt = parse_typestr(s, {.allow_big_endian = big});
                ASSERT_EQ(format_typestr(dt), s);
                ASSERT_EQ(parse_typestr(format_typestr(dt), {.allow_big_endian = big}), dt);
                if (s[0] == '>') { ASSERT_TRUE(big); }
                accepted.insert(s);
            } catch (const Error& e) {
                ASSERT_TRUE(e.code() == Errc::parse || e.code() == Errc::unsupported_dtype ||
                            e.code() == Errc::unsupported_byte_order)
                    << s;
            }
        }
    }
    EXPECT_GE(cases, kCases);
    EXPECT_FALSE(accepted.empty());
}

TEST(TypestrProperties, RoundTripOnEveryValidString) {
    const std::vector<std::string> valid{"|b1", "|i1", "|u1", "<i2", "<i4", "<i8", "<u2",
                                         "<u4", "<u8", "<f4", "<f8"};
    for (const auto& s : valid) EXPECT_EQ(format_typestr(parse_typestr(s)), s);
    for (const DType& d : testing::all_scalar_dtypes()) { EXPECT_EQ(parse_typestr(format_typestr(d)), d); }
}

StructSpec random_spec(std::mt19937_64& rng, int depth, int& counter) {
    const auto scalars = testing::all_scalar_dtypes();
    std::uniform_int_distribution<int> width(1, 4);
    std::uniform_int_distribution<std::size_t> pick(0, scalars.size() - 1);
    std::bernoulli_distribution nest(depth < 3 ? 0.25 : 0.0);
    StructSpec spec;
    for (int n = width(rng); n > 0; --n) {
        const std::string name = "f" + std::to_string(counter++);
        if (nest(rng)) spec.push_back({name, random_spec(rng, depth + 1, counter)});
        else spec.push_back({name, scalars[pick(rng)]});
    }
    return spec;
}

std::size_t leaf_bytes(const std::variant<DType, StructSpec>& t);

std::size_t leaf_bytes(const StructSpec& spec) {
    std::size_t total = 0;
    for (const auto& f : spec) total += leaf_bytes(f.type);
    return total;
}

std::size_t leaf_bytes(const std::variant<DType, StructSpec>& t) {
    if (const auto* d = std::get_if<DType>(&t)) return d->itemsize();
    return leaf_bytes(std::get<StructSpec>(t));
}

void check_offsets(const DType& dt) {
    std::size_t prev = 0;
    bool first = true;
    for (const Field& f : dt.fields()) {
        const auto [offset, type] = field_lookup(dt, f.name);
        ASSERT_EQ(offset, f.offset);
        if (!first) { ASSERT_GT(offset, prev); }
        prev = offset;
        first = false;
        if (type.is_structured()) check_offsets(type);
    }
}

TEST(StructProperties, PackedLayout) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < kCases; ++trial) {
        int counter = 0;
        const StructSpec spec = random_spec(rng, 0, counter);
        const DType dt = make_struct_dtype(spec);
        ASSERT_EQ(dt.itemsize(), leaf_bytes(spec));
        check_offsets(dt);
    }
}

TEST(PromotionProperties, MatchesLadderJoin) {
    const testing::LadderOracle ladder;
    const auto& types = ladder.types();
    int cases = 0;
    for (const DType& a : types) {
        for (const DType& b : types) {
            const auto want = ladder.join(a, b);
            ASSERT_TRUE(want.has_value());
            ASSERT_EQ(promote_types(a, b), *want) << a.name() << " " << b.name();
            ++cases;
        }
    }
    for (const DType& a : types) {
        for (const DType& b : types) {
            for (const DType& c : types) {
                const DType left = promote_types(promote_types(a, b), c);
                const DType right = promote_types(a, promote_types(b, c));
                ASSERT_EQ(left, right) << a.name() << " " << b.name() << " " << c.name();
                ASSERT_EQ(left, *ladder.join(*ladder.join(a, b), c));
                ++cases;
            }
        }
    }
    EXPECT_GE(cases, kCases);
}

TEST(PromotionProperties, DependsOnlyOnTheOperandSet) {
    std::mt19937_64 rng(33);
    const testing::LadderOracle ladder;
    const auto& types = ladder.types();
    std::uniform_int_distribution<std::size_t> pick(0, types.size() - 1);
    std::uniform_int_distribution<int> count(2, 6);
    for (int trial = 0; trial < kCases; ++trial) {
        std::vector<DType> operands;
        for (int n = count(rng); n > 0; --n) operands.push_back(types[pick(rng)]);
        auto fold = [](const std::vector<DType>& ops) {
            DType acc = ops.front();
            for (std::size_t i = 1; i < ops.size(); ++i) acc = promote_types(acc, ops[i]);
            return acc;
        };
        const DType expect = fold(operands);
        std::shuffle(operands.begin(), operands.end(), rng);
        ASSERT_EQ(fold(operands), expect);
        // duplicates do not change the result
        operands.push_back(operands.front());
        ASSERT_EQ(fold(operands), expect);
    }
}

}  // namespace
}  // namespace strided

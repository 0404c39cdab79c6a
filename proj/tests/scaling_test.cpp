#include <random>
#include <set>
#include <tuple>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "passfca/scaling.hpp"

using namespace passfca;

TEST(BinIndex, WorkedExample)
{
    ScalingConfig cfg;
    EXPECT_EQ(bin_index(2.9945, cfg), 0);
    EXPECT_EQ(bin_index(0.0, cfg), 0);
}

TEST(BinIndex, FormulaValues)
{
    ScalingConfig cfg;
    EXPECT_EQ(bin_index(1500, cfg), 4);  // 25 * 0.18 = 4.5
    EXPECT_EQ(bin_index(3000, cfg), 9);  // 50 * 0.18 = 9
    EXPECT_EQ(bin_index(3100, cfg), 9);  // 51:40 still falls inside bin 9
    EXPECT_EQ(raw_bin_index(3333.33, cfg), 9);
    EXPECT_EQ(raw_bin_index(3333.34, cfg), 10);
    EXPECT_EQ(bin_index(3400, cfg), 9);  // clamped
    EXPECT_EQ(bin_index(333.33, cfg), 0);
    EXPECT_EQ(bin_index(333.34, cfg), 1);  // first edge at 50/9 minutes
    EXPECT_DOUBLE_EQ(cfg.bin_factor(), 9.0 / 50.0);
}

TEST(BinIndex, RejectPolicyAndBadInput)
{
    ScalingConfig cfg;
    cfg.overflow = OverflowPolicy::reject;
    EXPECT_EQ(bin_index(3000, cfg), 9);
    EXPECT_EQ(bin_index(3100, cfg), 9);
    EXPECT_EQ(bin_index(3333.33, cfg), 9);
    EXPECT_THROW(bin_index(3333.34, cfg), BinOverflowError);
    EXPECT_THROW(bin_index(-1, cfg), std::invalid_argument);
    EXPECT_THROW(bin_index(std::nan(""), cfg), std::invalid_argument);
    EXPECT_THROW(bin_index(1, ScalingConfig{0, 50}), std::invalid_argument);
    EXPECT_THROW(bin_index(1, ScalingConfig{10, 0}), std::invalid_argument);
}

TEST(BinIndex, MonotoneAndInRange)
{
    ScalingConfig cfg;
    int prev = 0;
    for (double s = 0; s < 4000; s += 0.37) {
        int b = bin_index(s, cfg);
        EXPECT_GE(b, prev);
        EXPECT_LE(b, cfg.bins_per_half - 1);
        prev = b;
    }
}

TEST(ScaledAttribute, LabelRoundTrip)
{
    std::mt19937 rng(4);
    for (int i = 0; i < 500; ++i) {
        ScaledAttribute a{std::to_string(rng() % 1000000) + (i % 3 == 0 ? "_x" : ""), static_cast<int>(rng() % 40)};
        auto parsed = ScaledAttribute::parse(a.label());
        ASSERT_TRUE(parsed);
        EXPECT_EQ(*parsed, a);
    }
    EXPECT_EQ(ScaledAttribute({"3682", 5}).label(), "Bin5_3682");
    EXPECT_FALSE(ScaledAttribute::parse("Bin_3"));
    EXPECT_FALSE(ScaledAttribute::parse("Bin3_"));
    EXPECT_FALSE(ScaledAttribute::parse("Box3_7"));
    EXPECT_FALSE(ScaledAttribute::parse("Bin03_7"));
}

TEST(ScaleContext, ToyRowIntoTwoBins)
{
    // Sergio -> Messi at minutes 4 and 7 of the first half.
    std::vector<PassEvent> passes{fixtures::pass(1, 10, 20, 240), fixtures::pass(2, 10, 20, 420)};
    auto ctx = scale_context(passes, ScalingConfig{});
    EXPECT_EQ(ctx.objects(), (std::vector<std::string>{"10"}));
    EXPECT_EQ(ctx.attributes(), (std::vector<std::string>{"Bin0_20", "Bin1_20"}));
    EXPECT_TRUE(ctx.incident(0, 0));
    EXPECT_TRUE(ctx.incident(0, 1));
}

TEST(ScaleContext, SingletonAndEmpty)
{
    std::vector<PassEvent> one{fixtures::pass(1, 7, 8, 2.9945)};
    auto ctx = scale_context(one, ScalingConfig{});
    EXPECT_EQ(ctx.object_count(), 1u);
    EXPECT_EQ(ctx.attributes(), (std::vector<std::string>{"Bin0_8"}));
    EXPECT_TRUE(ctx.incident(0, 0));

    auto empty = scale_context(std::vector<PassEvent>{}, ScalingConfig{});
    EXPECT_EQ(empty.object_count(), 0u);
    EXPECT_EQ(empty.attribute_count(), 0u);
}

TEST(ScaleContext, PreconditionsAndOverflow)
{
    std::vector<PassEvent> mixed{fixtures::pass(1, 1, 2, 10), fixtures::pass(2, 1, 2, 10, 1, "2H")};
    EXPECT_THROW(scale_context(mixed, ScalingConfig{}), std::invalid_argument);

    auto unresolved = fixtures::pass(1, 1, 2, 10);
    unresolved.receiver_id.reset();
    EXPECT_THROW(scale_context(std::vector{unresolved}, ScalingConfig{}), std::invalid_argument);

    std::vector<PassEvent> late{fixtures::pass(1, 1, 2, 10), fixtures::pass(77, 1, 3, 3500)};
    auto clamped = scale_context_with_stats(late, ScalingConfig{});
    EXPECT_EQ(clamped.clamped_events, 1u);
    EXPECT_EQ(clamped.context.attribute(1), "Bin9_3");
    try {
        scale_context(late, ScalingConfig{10, 50, OverflowPolicy::reject});
        FAIL() << "expected overflow";
    } catch (const BinOverflowError& e) {
        EXPECT_EQ(e.event_id(), 77);
        EXPECT_NE(std::string(e.what()).find("pass 77"), std::string::npos);
    }
}

TEST(ScaleContext, OrderingFollowsTimeThenEventId)
{
    std::vector<PassEvent> passes{fixtures::pass(9, 3, 4, 100), fixtures::pass(5, 1, 2, 100),
                                  fixtures::pass(1, 5, 6, 50)};
    auto ctx = scale_context(passes, ScalingConfig{});
    EXPECT_EQ(ctx.objects(), (std::vector<std::string>{"5", "1", "3"}));
    EXPECT_EQ(ctx.attributes(), (std::vector<std::string>{"Bin0_6", "Bin0_2", "Bin0_4"}));
}

TEST(ScaleContext, IncidenceIsExactlyTheObservedTriples)
{
    std::mt19937 rng(21);
    ScalingConfig cfg;
    for (int round = 0; round < 100; ++round) {
        std::vector<PassEvent> passes;
        std::set<std::tuple<std::string, std::string, int>> triples;
        int n = static_cast<int>(rng() % 60);
        for (int i = 0; i < n; ++i) {
            PlayerId from = rng() % 6, to = 10 + rng() % 6;
            double sec = (rng() % 300000) / 100.0;
            passes.push_back(fixtures::pass(i, from, to, sec));
            triples.emplace(std::to_string(from), std::to_string(to), bin_index(sec, cfg));
        }
        auto ctx = scale_context(passes, cfg);
        std::size_t cells = 0;
        for (std::size_t g = 0; g < ctx.object_count(); ++g)
            for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
                if (!ctx.incident(g, m)) continue;
                ++cells;
                auto attr = ScaledAttribute::parse(ctx.attribute(m));
                ASSERT_TRUE(attr);
                EXPECT_TRUE(triples.contains({ctx.object(g), attr->receiver_id, attr->bin}));
            }
        EXPECT_EQ(cells, triples.size());

        if (!passes.empty()) {
            auto with_duplicate = passes;
            with_duplicate.push_back(passes[rng() % passes.size()]);
            EXPECT_EQ(scale_context(with_duplicate, cfg), ctx);
        }
    }
}

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "passfca/basis_io.hpp"
#include "passfca/canonical_basis.hpp"
#include "passfca/context_io.hpp"

using namespace passfca;

TEST(Cxt, WritesBurmeisterLayoutExactly)
{
    EXPECT_EQ(to_cxt(fixtures::two_objects()), "B\n\n2\n3\n\ng1\ng2\na\nb\nc\nX..\nXX.\n");
    EXPECT_EQ(to_cxt(FormalContext{}), "B\n\n0\n0\n\n");
}

TEST(Cxt, RoundTripsRandomContexts)
{
    std::mt19937 rng(1);
    for (int round = 0; round < 50; ++round) {
        auto ctx = oracle::to_context(oracle::random_context(rng, 10, 12));
        EXPECT_EQ(from_cxt(to_cxt(ctx)), ctx);
    }
    EXPECT_EQ(from_cxt(to_cxt(fixtures::table1())), fixtures::table1());
}

TEST(Cxt, AcceptsCrLf)
{
    auto ctx = from_cxt("B\r\n\r\n1\r\n2\r\n\r\ng\r\na\r\nb\r\nX.\r\n");
    EXPECT_EQ(ctx.object_count(), 1u);
    EXPECT_TRUE(ctx.incident(0, 0));
    EXPECT_FALSE(ctx.incident(0, 1));
}

TEST(Cxt, MalformedInputReportsLine)
{
    EXPECT_THROW(from_cxt("A\n\n0\n0\n\n"), ParseError);
    try {
        from_cxt("B\n\n1\n2\n\ng\na\nb\nX\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 9u);
    }
    EXPECT_THROW(from_cxt("B\n\n1\n1\n\ng\na\n?\n"), ParseError);
    EXPECT_THROW(from_cxt("B\n\n2\n1\n\ng\ng\na\nX\nX\n"), ParseError);
    EXPECT_THROW(from_cxt("B\n\n1\n"), ParseError);
}

TEST(Cxt, CsvMatrix)
{
    std::ostringstream out;
    write_context_csv(out, fixtures::two_objects());
    EXPECT_EQ(out.str(), ",a,b,c\ng1,1,0,0\ng2,1,1,0\n");
}

TEST(BasisText, FormatsSortedLabels)
{
    auto ctx = fixtures::two_objects();
    auto basis = canonical_basis(ctx);
    std::ostringstream out;
    write_basis_text(out, ctx, basis);
    EXPECT_EQ(out.str(), "-> a [support=2]\na c -> a b c [support=0]\n");

    auto reversed = FormalContext::from_matrix({"g"}, {"z", "y"}, {{true, true}});
    EXPECT_EQ(format_implication(label(reversed, Implication{reversed.attributes_of({"z"}),
                                                              reversed.all_attributes(), 1})),
              "z -> y z [support=1]");
}

TEST(BasisText, RoundTrips)
{
    std::mt19937 rng(12);
    for (int round = 0; round < 30; ++round) {
        auto ctx = oracle::to_context(oracle::random_context(rng, 8, 7));
        auto basis = canonical_basis(ctx);
        std::stringstream text;
        write_basis_text(text, ctx, basis);
        EXPECT_EQ(resolve(ctx, read_basis_text(text)), (ImplicationBasis{basis.implications, {}}));
        EXPECT_EQ(basis_from_json(basis_to_json(label(ctx, basis))), label(ctx, basis));
    }
}

TEST(BasisText, RejectsMalformedLines)
{
    EXPECT_THROW(parse_implication_line("a b c"), ParseError);
    EXPECT_THROW(parse_implication_line("a -> b [support=x]"), ParseError);
    EXPECT_THROW(basis_from_json(nlohmann::json::object()), ParseError);
    EXPECT_THROW(basis_from_json(nlohmann::json::parse(R"([{"premise": []}])")), ParseError);
}

TEST(BasisJson, Shape)
{
    auto ctx = fixtures::two_objects();
    auto j = basis_to_json(label(ctx, filter_support(canonical_basis(ctx), 1)));
    EXPECT_EQ(j.dump(), R"([{"conclusion":["a"],"premise":[],"support":2}])");
}

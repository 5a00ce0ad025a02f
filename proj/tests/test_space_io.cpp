#include <gtest/gtest.h>

#include <sstream>

#include "contractum/fixtures.hpp"
#include "contractum/space_io.hpp"

using namespace contractum;

namespace {
const std::string data_dir = CONTRACTUM_DATA_DIR;
}

TEST(SpaceJson, FullMatrixWithRationalLabels) {
    auto doc = nlohmann::json::parse(R"({"points": ["0", "1/2", 0.25], "distances": [[0, 1, 2], [1, 0, "3/2"], [2, 1.5, 0]]})");
    auto space = space_from_json(doc);
    EXPECT_EQ(space.size(), 3u);
    EXPECT_DOUBLE_EQ(space(1, 2), 1.5);
    EXPECT_DOUBLE_EQ(space.value(1), 0.5);
    EXPECT_DOUBLE_EQ(space.value(2), 0.25);
}

TEST(SpaceJson, NullCellsMirrored) {
    auto doc = nlohmann::json::parse(R"({"points": ["a", "b", "c"], "distances": [[0, 1, 2], [null, 0, 3], [null, null, 0]]})");
    auto space = space_from_json(doc);
    EXPECT_DOUBLE_EQ(space(2, 0), 2.0);
    EXPECT_DOUBLE_EQ(space(2, 1), 3.0);
}

TEST(SpaceJson, LowerTriangularRows) {
    auto doc = nlohmann::json::parse(R"({"points": ["a", "b", "c"], "distances": [[], [1], [2, 3]]})");
    auto space = space_from_json(doc);
    EXPECT_DOUBLE_EQ(space(0, 2), 2.0);
    EXPECT_DOUBLE_EQ(space(1, 2), 3.0);
}

TEST(SpaceJson, MissingKeysRejected) {
    EXPECT_THROW(space_from_json(nlohmann::json::parse(R"({"points": ["a"]})")), malformed_input);
    EXPECT_THROW(space_from_json(nlohmann::json::parse(R"({"points": ["a","b"], "distances": [[0, "x"], [1, 0]]})")),
                 malformed_input);
}

TEST(SpaceJson, RoundTrip) {
    auto original = fixtures::example_2_2_table();
    auto copy = space_from_json(space_to_json(original));
    ASSERT_EQ(copy.size(), original.size());
    for (std::size_t i = 0; i < copy.size(); ++i) {
        EXPECT_EQ(copy.label(i), original.label(i));
        for (std::size_t j = 0; j < copy.size(); ++j)
            EXPECT_EQ(copy(i, j), original(i, j));
    }
}

TEST(SpaceCsv, LabeledMatrix) {
    std::istringstream in(",a,b,c\na,0,1,2\nb,1,0,3\nc,2,3,0\n");
    auto space = space_from_csv(in);
    EXPECT_EQ(space.labels(), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_DOUBLE_EQ(space(0, 2), 2.0);
}

TEST(SpaceCsv, NumericLabelsWithoutLabelColumn) {
    std::istringstream in("0,1/2,1/3\n0,0.16,0.04\n0.16,0,0.16\n0.04,0.16,0\n");
    auto space = space_from_csv(in);
    EXPECT_DOUBLE_EQ(space(0, 1), 0.16);
    EXPECT_DOUBLE_EQ(space.value(2), 1.0 / 3.0);
}

TEST(SpaceCsv, TriangularFile) {
    auto space = load_space(data_dir + "/triangular.csv");
    EXPECT_EQ(space.size(), 4u);
    EXPECT_DOUBLE_EQ(space(0, 3), 2.0);
    EXPECT_DOUBLE_EQ(space(3, 2), 1.0);
}

TEST(SpaceCsv, AsymmetricFileNamesPair) {
    try {
        load_space(data_dir + "/bad-asymmetric.csv");
        FAIL();
    } catch (const malformed_input& e) {
        EXPECT_NE(std::string(e.what()).find("(b, c)"), std::string::npos) << e.what();
    }
}

TEST(SpaceFiles, ShippedFixturesMatchBuiltins) {
    auto file = load_space(data_dir + "/example-3.4-finite.json");
    auto builtin = fixtures::example_3_4_table();
    ASSERT_EQ(file.size(), builtin.size());
    for (std::size_t i = 0; i < file.size(); ++i)
        for (std::size_t j = 0; j < file.size(); ++j)
            EXPECT_EQ(file(i, j), builtin(i, j));
    EXPECT_EQ(load_space(data_dir + "/example-2.2-finite.json").size(), 6u);
    EXPECT_EQ(load_space(data_dir + "/example-2.2-grid64.json").size(), 70u);
}

TEST(SpaceFiles, MissingFile) { EXPECT_THROW(load_space(data_dir + "/absent.json"), malformed_input); }

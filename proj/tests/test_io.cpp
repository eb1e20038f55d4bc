#include <gtest/gtest.h>

#include "liaison.hpp"

using namespace liaison;

namespace {

const std::string kCorpus = LIAISON_CORPUS_DIR;

int parse_error_count(std::initializer_list<const char*> texts) {
    int n = 0;
    for (auto t : texts) {
        try {
            parse_curve_file(t);
        } catch (const ParseError&) {
            ++n;
        }
    }
    return n;
}

}  // namespace

TEST(CurveFile, RoundTrip) {
    for (const CorpusEntry& e : list_corpus(kCorpus)) {
        Ideal I = read_curve_file(e.path).ideal();
        std::string text = format_curve_file(I);
        Ideal J = parse_curve_file(text).ideal();
        EXPECT_EQ(I, J) << e.name;
        EXPECT_EQ(format_curve_file(J), text) << e.name;
    }
}

TEST(CurveFile, CommentsAndHeader) {
    CurveFile f = parse_curve_file("# twisted cubic\n\nring p=32003 base=field\ngens:\n  X*Z-Y^2 \nY*W-Z^2\nX*W-Y*Z\n");
    EXPECT_FALSE(f.ring.is_dual());
    EXPECT_EQ(f.gens.size(), 3u);
    CurveFile d = parse_curve_file("ring p=32003 base=dual\ngens:\nY\nZ+e*X\n");
    EXPECT_TRUE(d.ring.is_dual());
}

TEST(CurveFile, ParseErrors) {
    EXPECT_EQ(parse_error_count({
                  "",
                  "gens:\nX\n",
                  "ring p=32003 base=field\nX\n",
                  "ring p=32003 base=field\ngens:\n",
                  "ring p=32003 base=field\ngens:\nX*Y+Z\n",
                  "ring p=32003 base=field\ngens:\nX**Y\n",
                  "ring p=32003 base=field\ngens:\nX+(\n",
                  "ring p=32003 base=galois\ngens:\nX\n",
                  "ring p=abc base=field\ngens:\nX\n",
                  "ring q=7\ngens:\nX\n",
                  "ring p=32003 base=field\ngens:\ne*X\n",
              }),
              11);
}

TEST(Corpus, FixturesValidate) {
    auto entries = list_corpus(kCorpus);
    EXPECT_EQ(entries.size(), 19u);
    for (const CorpusEntry& e : entries) EXPECT_NO_THROW(validate_curve(read_curve_file(e.path).ideal())) << e.name;
    try {
        validate_curve(read_curve_file(kCorpus + "/line-union-point.bad").ideal());
        FAIL();
    } catch (const InvalidCurve& e) {
        EXPECT_EQ(e.reason, InvalidCurve::Reason::NotPureDimensionOrNotLCM);
    }
}

TEST(Corpus, DualFixturesAreConstantFamilies) {
    for (const CorpusEntry& e : list_corpus(kCorpus)) {
        if (e.name.size() < 5 || e.name.substr(e.name.size() - 5) != "-dual") continue;
        Ideal I = read_curve_file(e.path).ideal();
        Ideal base = read_curve_file(kCorpus + "/" + e.name.substr(0, e.name.size() - 5) + ".curve").ideal();
        EXPECT_EQ(I, base.over(I.ring())) << e.name;
    }
}

TEST(ChainFile, RoundTrip) {
    BaseRing F = BaseRing::prime_field();
    CurveFamily line = validate_curve(read_curve_file(kCorpus + "/line.curve").ideal());
    CurveFamily cubic = validate_curve(read_curve_file(kCorpus + "/twisted-cubic.curve").ideal());
    auto steps = connect_by_biliaisons(line, cubic, 4, 32, 1);
    auto [R, back] = chain_from_json(nlohmann::json::parse(chain_json(F, steps).dump()));
    EXPECT_EQ(R, F);
    ASSERT_EQ(back.size(), steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        EXPECT_EQ(back[i].Q, steps[i].Q);
        EXPECT_EQ(back[i].h, steps[i].h);
        EXPECT_EQ(back[i].to, steps[i].to);
    }
    EXPECT_EQ(replay_chain(line, back, 32, 1), cubic.ideal());
    EXPECT_THROW(chain_from_json(nlohmann::json{{"ring", "ring p=32003 base=field"}}), ParseError);
}

TEST(Digest, Fnv1a) {
    EXPECT_EQ(hex64(fnv1a("")), "cbf29ce484222325");
    EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <random>

#include "doctest.h"
#include "emosent/io.hpp"
#include "emosent/lexicon.hpp"
#include "test_paths.hpp"

using namespace emosent;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = test::scratch_dir() / name;
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

NormalizedKey key(std::u32string cps) { return NormalizedKey{std::move(cps)}; }

}  // namespace

TEST_CASE("lexicon load counts entries and rejects bad input") {
    SUBCASE("three valid lines") {
        const auto path = write_temp("lex3.tsv",
                                     "1F602\t😂\tpositive\tsrc\n"
                                     "1F62D\t😭\tnegative\tsrc\n"
                                     "1F610\t😐\tneutral\tsrc\n");
        CHECK(SentimentLexicon::load(path).size() == 3);
    }
    SUBCASE("empty file") {
        CHECK(SentimentLexicon::load(write_temp("lex0.tsv", "")).size() == 0);
    }
    SUBCASE("duplicate key names the key") {
        const auto path = write_temp("lexdup.tsv",
                                     "1F602\t😂\tpositive\tsrc\n"
                                     "1F602\t😂\tnegative\tsrc\n");
        CHECK_THROWS_WITH_AS(SentimentLexicon::load(path),
                             doctest::Contains("duplicate key 1F602"), std::runtime_error);
    }
    SUBCASE("malformed line reports line number") {
        const auto path = write_temp("lexbad.tsv",
                                     "1F602\t😂\tpositive\tsrc\n"
                                     "not a record\n");
        CHECK_THROWS_WITH_AS(SentimentLexicon::load(path), doctest::Contains(":2"),
                             std::runtime_error);
    }
    SUBCASE("unknown sentiment word") {
        const auto path = write_temp("lexword.tsv", "1F602\t😂\thappy\tsrc\n");
        CHECK_THROWS_WITH_AS(SentimentLexicon::load(path), doctest::Contains("happy"),
                             std::runtime_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(SentimentLexicon::load(test::scratch_dir() / "nope.tsv"),
                        std::runtime_error);
    }
}

TEST_CASE("write/load round-trip preserves every lexicon") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::map<NormalizedKey, LexiconValue> entries;
        const int n = static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) {
            std::u32string cps{static_cast<char32_t>(0x1F300 + rng() % 512)};
            if (rng() % 4 == 0) {
                cps.push_back(0x200D);
                cps.push_back(static_cast<char32_t>(0x1F300 + rng() % 512));
            }
            const auto sentiment = static_cast<Sentiment>(rng() % 3);
            entries[key(cps)] = LexiconValue{sentiment, "s" + std::to_string(rng() % 5)};
        }
        const SentimentLexicon lexicon{std::map<NormalizedKey, LexiconValue>(entries)};
        const auto path = test::scratch_dir() / ("roundtrip" + std::to_string(trial) + ".tsv");
        lexicon.write(path);
        CHECK(SentimentLexicon::load(path) == lexicon);
    }
}

TEST_CASE("lookup resolves through the fallback chain") {
    std::map<NormalizedKey, LexiconValue> entries;
    entries[key({0x1F44D})] = {Sentiment::Positive, "t"};                  // 👍
    entries[key({0x1F468, 0x200D, 0x1F680})] = {Sentiment::Neutral, "t"};  // astronaut
    entries[key({0x1F468})] = {Sentiment::Negative, "t"};                  // man
    const SentimentLexicon lexicon{std::move(entries)};

    SUBCASE("exact hit") {
        CHECK(lexicon.lookup(key({0x1F44D})) == Sentiment::Positive);
    }
    SUBCASE("skin tone falls back to the base emoji") {
        CHECK(lexicon.lookup(key({0x1F44D, 0x1F3FD})) == Sentiment::Positive);
    }
    SUBCASE("ZWJ sequence falls back to its first element") {
        // 👨‍👩‍👧 is absent; 👨 is present.
        CHECK(lexicon.lookup(key({0x1F468, 0x200D, 0x1F469, 0x200D, 0x1F467})) ==
              Sentiment::Negative);
        // Toned ZWJ element strips to the base first.
        CHECK(lexicon.lookup(key({0x1F468, 0x1F3FB, 0x200D, 0x2695})) == Sentiment::Negative);
    }
    SUBCASE("exact beats fallback stages") {
        CHECK(lexicon.lookup(key({0x1F468, 0x200D, 0x1F680})) == Sentiment::Neutral);
    }
    SUBCASE("exhausted chain yields unknown") {
        CHECK(lexicon.lookup(key({0x1F984})) == std::nullopt);
    }
    SUBCASE("adding an exact entry overrides a fallback resolution") {
        const NormalizedKey toned{{0x1F44D, 0x1F3FD}};
        REQUIRE(lexicon.lookup(toned) == Sentiment::Positive);
        auto entries2 = lexicon.entries();
        entries2[toned] = {Sentiment::Negative, "override"};
        const SentimentLexicon updated{std::move(entries2)};
        CHECK(updated.lookup(toned) == Sentiment::Negative);
    }
    SUBCASE("lookup never misses a literally present key") {
        for (const auto& [k, v] : lexicon.entries()) {
            CHECK(lexicon.lookup(k) == v.sentiment);
        }
    }
}

TEST_CASE("ESR argmax classification") {
    auto record = [](double neg, double neu, double pos) {
        EsrRecord r;
        r.score_negative = neg;
        r.score_neutral = neu;
        r.score_positive = pos;
        return r;
    };
    CHECK(esr_argmax(record(0.2, 0.3, 0.5)) == Sentiment::Positive);
    CHECK(esr_argmax(record(0.4, 0.4, 0.2)) == Sentiment::Neutral);  // tie -> neutral
    CHECK(esr_argmax(record(0.5, 0.4, 0.1)) == Sentiment::Negative);
    CHECK(esr_argmax(record(0.4, 0.2, 0.4)) == Sentiment::Neutral);  // pos/neg tie -> neutral
}

TEST_CASE("ESR CSV reader validates rows") {
    const std::string header = "Emoji,Unicode codepoint,Occurrences,Negative,Neutral,Positive\n";
    SUBCASE("score outside [0,1]") {
        const auto path = write_temp("esr_bad_score.csv",
                                     header + "😂,0x1f602,10,1.2,0.0,0.0\n");
        CHECK_THROWS_WITH_AS(read_esr_csv(path), doctest::Contains("outside [0,1]"),
                             std::runtime_error);
    }
    SUBCASE("malformed row reports its line") {
        const auto path = write_temp("esr_bad_row.csv", header + "😂,0x1f602,ten,0,0,1\n");
        CHECK_THROWS_WITH_AS(read_esr_csv(path), doctest::Contains(":2"), std::runtime_error);
    }
    SUBCASE("missing column") {
        const auto path = write_temp("esr_bad_header.csv", "A,B\n1,2\n");
        CHECK_THROWS_AS(read_esr_csv(path), std::runtime_error);
    }
    SUBCASE("configurable column names") {
        const auto path = write_temp("esr_cols.csv",
                                     "cp,n,lo,mid,hi\n0x1f602,10,0.1,0.2,0.7\n");
        EsrColumns cols;
        cols.codepoint = "cp";
        cols.occurrences = "n";
        cols.negative = "lo";
        cols.neutral = "mid";
        cols.positive = "hi";
        const auto records = read_esr_csv(path, cols);
        REQUIRE(records.size() == 1);
        CHECK(records[0].key == key({0x1F602}));
        CHECK(esr_argmax(records[0]) == Sentiment::Positive);
    }
}

TEST_CASE("import of the bundled ESR v1.0 table") {
    const auto lexicon = import_esr(test::esr_csv());
    CHECK(lexicon.size() == 751);

    // Every label must equal an independent per-row argmax recomputation.
    const auto records = read_esr_csv(test::esr_csv());
    REQUIRE(records.size() == 751);
    for (const auto& r : records) {
        Sentiment expected = Sentiment::Neutral;
        if (r.score_positive > r.score_neutral && r.score_positive > r.score_negative) {
            expected = Sentiment::Positive;
        } else if (r.score_negative > r.score_neutral && r.score_negative > r.score_positive) {
            expected = Sentiment::Negative;
        }
        CHECK(lexicon.exact(r.key) == expected);
    }
}

TEST_CASE("representation dataset builder") {
    const auto unicode_path = write_temp(
        "mini-emoji-test.txt",
        "# group: G\n# subgroup: s\n"
        "1F602 ; fully-qualified # 😂 face with tears of joy\n"
        "2764 FE0F ; fully-qualified # ❤️ red heart\n"
        "1F984 ; fully-qualified # 🦄 unicorn\n");
    const auto descriptions_path =
        write_temp("mini-descriptions.tsv", "1F602\tA face crying tears of joy.\n"
                                            "2764\tA classic red love heart.\n");
    const auto pixels = test::scratch_dir() / "pixels";
    std::filesystem::create_directories(pixels);
    // 1x1 transparent PNG
    static const unsigned char kPng[] = {
        0x89, 0x50, 0x4E, 0x47, 0x0D, 0x0A, 0x1A, 0x0A, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x48,
        0x44, 0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x06, 0x00, 0x00,
        0x00, 0x1F, 0x15, 0xC4, 0x89, 0x00, 0x00, 0x00, 0x0A, 0x49, 0x44, 0x41, 0x54, 0x78,
        0x9C, 0x63, 0x00, 0x01, 0x00, 0x00, 0x05, 0x00, 0x01, 0x0D, 0x0A, 0x2D, 0xB4, 0x00,
        0x00, 0x00, 0x00, 0x49, 0x45, 0x4E, 0x44, 0xAE, 0x42, 0x60, 0x82};
    {
        std::ofstream out(pixels / "1f602.png", std::ios::binary);
        out.write(reinterpret_cast<const char*>(kPng), sizeof kPng);
    }

    SUBCASE("entries, fallbacks and completeness") {
        const auto dataset = build_representation_dataset(unicode_path, descriptions_path, pixels);
        REQUIRE(dataset.entries.size() == 3);
        CHECK(dataset.completeness.total == 3);
        CHECK(dataset.completeness.with_description == 2);
        CHECK(dataset.completeness.with_pixel == 1);
        CHECK(dataset.entries[0].title == "face with tears of joy");
        CHECK(dataset.entries[0].pixel_ref != "");
        CHECK(dataset.entries[1].key == key({0x2764}));  // normalized, VS16 stripped
        CHECK(dataset.entries[2].description == "");     // missing stays empty
        CHECK(dataset.completeness.report().find("missing description: 1") != std::string::npos);
    }
    SUBCASE("empty unicode file yields empty dataset") {
        const auto empty = write_temp("empty-emoji-test.txt", "# nothing\n");
        CHECK(build_representation_dataset(empty).entries.empty());
    }
    SUBCASE("undecodable pixel file is an error") {
        const auto bad_pixels = test::scratch_dir() / "badpixels";
        std::filesystem::create_directories(bad_pixels);
        std::ofstream(bad_pixels / "1f602.png") << "not an image";
        CHECK_THROWS_WITH_AS(
            build_representation_dataset(unicode_path, descriptions_path, bad_pixels),
            doctest::Contains("undecodable"), std::runtime_error);
    }
}

TEST_CASE("lexicon file format example from the docs") {
    // hex \t icon \t word \t source
    std::map<NormalizedKey, LexiconValue> entries;
    entries[key({0x1F602})] = {Sentiment::Positive, "manual"};
    const SentimentLexicon lexicon{std::move(entries)};
    CHECK(lexicon.serialize() == "1F602\t😂\tpositive\tmanual\n");
}

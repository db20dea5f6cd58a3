#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "emosent/segmenter.hpp"
#include "test_paths.hpp"

using namespace emosent;

namespace {

const EmojiIndex& index() {
    static const EmojiIndex idx = EmojiIndex::load(test::emoji_data());
    return idx;
}

const Segmenter& segmenter() {
    static const Segmenter seg(index());
    return seg;
}

}  // namespace

TEST_CASE("plain text has no emoji tokens") {
    CHECK(segmenter().segment("hello world").empty());
    CHECK(segmenter().segment("").empty());
    CHECK(segmenter().segment("¡Hola! ¿Qué tal? 123 #hash *star").empty());
}

TEST_CASE("independent pictographs get consecutive ordinals") {
    const auto tokens = segmenter().segment("Great goal 😂👍");
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].ordinal == 0);
    CHECK(tokens[1].ordinal == 1);
    CHECK(tokens[0].codepoints == std::u32string{0x1F602});
    CHECK(tokens[1].codepoints == std::u32string{0x1F44D});
}

TEST_CASE("ZWJ family, flag pair and modifier sequence are one token each") {
    const auto tokens = segmenter().segment("👨‍👩‍👧 and 🇫🇷 and 👍🏽");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0].codepoints ==
          std::u32string{0x1F468, 0x200D, 0x1F469, 0x200D, 0x1F467});
    CHECK(tokens[1].codepoints == std::u32string{0x1F1EB, 0x1F1F7});
    CHECK(tokens[2].codepoints == std::u32string{0x1F44D, 0x1F3FD});
}

TEST_CASE("regional indicators are consumed in pairs left to right") {
    CHECK(segmenter().segment("🇫🇷🇩🇪").size() == 2);
    // Unpaired trailing half does not become a token.
    const auto tokens = segmenter().segment("🇫🇷🇩");
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0].codepoints == std::u32string{0x1F1EB, 0x1F1F7});
    CHECK(segmenter().segment("🇫").empty());
}

TEST_CASE("is_emoji recognizes sequences, not fragments") {
    CHECK(segmenter().is_emoji(std::u32string{0x1F602}));
    CHECK_FALSE(segmenter().is_emoji(std::u32string{U'a'}));
    CHECK_FALSE(segmenter().is_emoji(std::u32string{0x1F1EB}));  // lone regional indicator
    CHECK(segmenter().is_emoji(std::u32string{0x1F1EB, 0x1F1F7}));
    // Qualification-insensitive: with and without VS16.
    CHECK(segmenter().is_emoji(std::u32string{0x2764, 0xFE0F}));
    CHECK(segmenter().is_emoji(std::u32string{0x2764}));
}

TEST_CASE("normalize strips variation selectors and is idempotent") {
    EmojiToken heart{std::u32string{0x2764, 0xFE0F}, 0, 0};
    CHECK(normalize(heart).codepoints == std::u32string{0x2764});
    EmojiToken joy{std::u32string{0x1F602}, 0, 0};
    CHECK(normalize(joy).codepoints == std::u32string{0x1F602});

    for (const auto& row : index().rows()) {
        const auto once = normalize(row.codepoints);
        CHECK(normalize(once.codepoints).codepoints == once.codepoints);
    }
}

TEST_CASE("unqualified spellings segment and normalize like fully-qualified ones") {
    // Bare U+2764 (no VS16) and the keycap without VS16.
    const auto bare = segmenter().segment("x❤y");
    REQUIRE(bare.size() == 1);
    CHECK(normalize(bare[0]).codepoints == std::u32string{0x2764});

    const auto keycap = segmenter().segment("1️⃣");
    REQUIRE(keycap.size() == 1);
    CHECK(keycap[0].codepoints == std::u32string{U'1', 0xFE0F, 0x20E3});
    const auto unqualified_keycap = segmenter().segment("1⃣");
    REQUIRE(unqualified_keycap.size() == 1);
    CHECK(normalize(unqualified_keycap[0]) == normalize(keycap[0]));

    // A plain digit is not an emoji.
    CHECK(segmenter().segment("call 911").empty());
}

TEST_CASE("byte offsets and ordinals are strictly increasing, spans disjoint") {
    const auto text = std::string("a😂b👨‍👩‍👧c🇫🇷 1️⃣ ❤️ 👍🏽x😂");
    const auto tokens = segmenter().segment(text);
    REQUIRE(tokens.size() == 7);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        CHECK(tokens[i].ordinal == i);
        if (i > 0) {
            CHECK(tokens[i].byte_offset > tokens[i - 1].byte_offset);
            // Previous token's span ends at or before this token's start.
            const auto prev_span = encode_utf8(tokens[i - 1].codepoints).size();
            CHECK(tokens[i - 1].byte_offset + prev_span <= tokens[i].byte_offset);
        }
    }
}

TEST_CASE("token count is additive across non-emoji joins") {
    const std::string a = "bravo 😂👍";
    const std::string b = "🎉 yes";
    CHECK(segmenter().segment(a + " " + b).size() ==
          segmenter().segment(a).size() + segmenter().segment(b).size());
}

TEST_CASE("round-trip: sampled fully-qualified sequences segment as one token") {
    // The full inventory runs in the acceptance suite; sample here.
    const auto& rows = index().rows();
    for (std::size_t i = 0; i < rows.size(); i += 17) {
        const auto text = "x" + encode_utf8(rows[i].codepoints) + "y";
        const auto tokens = segmenter().segment(text);
        REQUIRE_MESSAGE(tokens.size() == 1, "sequence " << codepoints_to_hex(rows[i].codepoints));
        CHECK(tokens[0].codepoints == rows[i].codepoints);
        CHECK(tokens[0].byte_offset == 1);
    }
}

TEST_CASE("invalid UTF-8 raises an encoding error") {
    CHECK_THROWS_AS(segmenter().segment("ok\xFFnope"), Utf8Error);
    CHECK_THROWS_AS(segmenter().segment("\xC3"), Utf8Error);          // truncated
    CHECK_THROWS_AS(segmenter().segment("\xED\xA0\x80"), Utf8Error);  // surrogate
    CHECK_THROWS_AS(segmenter().segment("\xC0\xAF"), Utf8Error);      // overlong
}

TEST_CASE("emoji data snapshot loads the full inventory") {
    CHECK(index().rows().size() == 5042);
    CHECK(index().name_of(std::u32string{0x1F602}) == "face with tears of joy");
}

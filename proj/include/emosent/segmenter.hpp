#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "emosent/emoji_index.hpp"

namespace emosent {

// One emoji occurrence inside a text.
struct EmojiToken {
    std::u32string codepoints;  // source codepoints, variation selectors kept
    std::size_t byte_offset = 0;
    std::size_t ordinal = 0;

    bool operator==(const EmojiToken&) const = default;
};

// Lexicon key: an emoji sequence with variation selectors stripped.
struct NormalizedKey {
    std::u32string codepoints;

    auto operator<=>(const NormalizedKey&) const = default;

    std::string hex() const { return codepoints_to_hex(codepoints); }
    std::string icon() const { return encode_utf8(codepoints); }
};

NormalizedKey normalize(const EmojiToken& token);
NormalizedKey normalize(std::u32string_view codepoints);

class Segmenter {
public:
    explicit Segmenter(const EmojiIndex& index) : index_(&index) {}

    // Extracts every maximal emoji sequence in order of appearance.
    // Throws Utf8Error on malformed input bytes.
    std::vector<EmojiToken> segment(std::string_view text) const;

    bool is_emoji(std::u32string_view candidate) const { return index_->is_emoji(candidate); }

    const EmojiIndex& index() const { return *index_; }

private:
    const EmojiIndex* index_;
};

}  // namespace emosent

template <>
struct std::hash<emosent::NormalizedKey> {
    std::size_t operator()(const emosent::NormalizedKey& k) const noexcept {
        return std::hash<std::u32string>{}(k.codepoints);
    }
};

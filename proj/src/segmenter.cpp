#include "emosent/segmenter.hpp"

namespace emosent {

NormalizedKey normalize(std::u32string_view codepoints) {
    return NormalizedKey{strip_variation_selectors(codepoints)};
}

NormalizedKey normalize(const EmojiToken& token) { return normalize(token.codepoints); }

std::vector<EmojiToken> Segmenter::segment(std::string_view text) const {
    const auto codepoints = decode_utf8(text);
    std::vector<EmojiToken> tokens;
    std::size_t i = 0;
    while (i < codepoints.size()) {
        const std::size_t end = index_->match_longest(codepoints, i);
        if (end == i) {
            ++i;
            continue;
        }
        EmojiToken token;
        token.codepoints.reserve(end - i);
        for (std::size_t k = i; k < end; ++k) token.codepoints.push_back(codepoints[k].value);
        token.byte_offset = codepoints[i].byte_offset;
        token.ordinal = tokens.size();
        tokens.push_back(std::move(token));
        i = end;
    }
    return tokens;
}

}  // namespace emosent

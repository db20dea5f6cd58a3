#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "emosent/utf8.hpp"

namespace emosent {

// One fully-qualified row of the vendored emoji data snapshot, in file order.
struct EmojiDataRow {
    std::u32string codepoints;  // as listed, variation selectors included
    std::string name;
    std::string group;
    std::string subgroup;
};

// Recognition table built from the vendored `emoji-test.txt` snapshot.
//
// Sequences are stored with variation selectors (U+FE0E/U+FE0F) stripped, so
// fully-qualified, minimally-qualified and unqualified spellings of the same
// emoji all resolve to one normalized entry. Loaded once, then read-only.
class EmojiIndex {
public:
    static EmojiIndex load(const std::filesystem::path& emoji_test_path);
    static EmojiIndex from_rows(std::vector<EmojiDataRow> rows);

    // True iff the candidate, after stripping variation selectors, is a known
    // emoji sequence. A lone regional indicator is not one.
    bool is_emoji(std::u32string_view candidate) const;

    // Short name for a normalized sequence, or "" when unknown.
    const std::string& name_of(std::u32string_view normalized) const;

    const std::vector<EmojiDataRow>& rows() const { return rows_; }
    std::size_t sequence_count() const { return terminal_count_; }

    // Longest-match scan helper used by the segmenter: starting at `pos` in
    // `codepoints`, returns the end index (exclusive) of the longest known
    // emoji sequence, or `pos` when none starts here. Variation selectors
    // inside and directly after the match are absorbed.
    std::size_t match_longest(const std::vector<DecodedCodepoint>& codepoints,
                              std::size_t pos) const;

private:
    struct TrieNode {
        std::unordered_map<char32_t, std::unique_ptr<TrieNode>> children;
        bool terminal = false;
    };

    void insert(std::u32string_view normalized);

    TrieNode root_;
    std::size_t terminal_count_ = 0;
    std::vector<EmojiDataRow> rows_;
    std::unordered_map<std::u32string, std::string> names_;
};

inline bool is_variation_selector(char32_t cp) { return cp == 0xFE0E || cp == 0xFE0F; }

// Strips U+FE0E/U+FE0F, keeping everything else in order.
std::u32string strip_variation_selectors(std::u32string_view codepoints);

}  // namespace emosent

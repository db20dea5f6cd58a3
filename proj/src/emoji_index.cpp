#include "emosent/emoji_index.hpp"

#include <stdexcept>

#include "emosent/io.hpp"

namespace emosent {

std::u32string strip_variation_selectors(std::u32string_view codepoints) {
    std::u32string out;
    out.reserve(codepoints.size());
    for (char32_t cp : codepoints) {
        if (!is_variation_selector(cp)) out.push_back(cp);
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

// Comment format: "# <emoji> [E<version>] <name>".
std::string parse_name_comment(std::string_view comment) {
    auto rest = trim(comment);
    const auto sp = rest.find(' ');
    if (sp == std::string_view::npos) return {};
    rest = trim(rest.substr(sp + 1));  // drop the emoji glyph
    if (rest.size() > 1 && rest[0] == 'E' && (rest[1] >= '0' && rest[1] <= '9')) {
        const auto sp2 = rest.find(' ');
        if (sp2 != std::string_view::npos) rest = trim(rest.substr(sp2 + 1));
    }
    return std::string(rest);
}

}  // namespace

EmojiIndex EmojiIndex::load(const std::filesystem::path& emoji_test_path) {
    const std::string content = read_file(emoji_test_path);
    std::vector<EmojiDataRow> rows;
    std::string group, subgroup;
    for (auto line : split_lines(content)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.starts_with("# group:")) group = trim(line.substr(8));
            else if (line.starts_with("# subgroup:")) subgroup = trim(line.substr(11));
            continue;
        }
        const auto semi = line.find(';');
        if (semi == std::string_view::npos) {
            throw std::runtime_error("malformed emoji data line: " + std::string(line));
        }
        auto status_and_comment = line.substr(semi + 1);
        std::string_view comment;
        if (const auto hash = status_and_comment.find('#'); hash != std::string_view::npos) {
            comment = status_and_comment.substr(hash + 1);
            status_and_comment = status_and_comment.substr(0, hash);
        }
        const auto status = trim(status_and_comment);
        // Component rows (skin tones, hair) are building blocks, not emojis.
        if (status == "component") continue;
        EmojiDataRow row;
        row.codepoints = hex_to_codepoints(trim(line.substr(0, semi)));
        row.name = parse_name_comment(comment);
        row.group = group;
        row.subgroup = subgroup;
        rows.push_back(std::move(row));
    }
    return from_rows(std::move(rows));
}

EmojiIndex EmojiIndex::from_rows(std::vector<EmojiDataRow> rows) {
    EmojiIndex index;
    index.rows_ = std::move(rows);
    for (const auto& row : index.rows_) {
        const auto normalized = strip_variation_selectors(row.codepoints);
        if (normalized.empty()) continue;
        index.insert(normalized);
        index.names_.emplace(normalized, row.name);  // first occurrence wins
    }
    return index;
}

void EmojiIndex::insert(std::u32string_view normalized) {
    TrieNode* node = &root_;
    for (char32_t cp : normalized) {
        auto& child = node->children[cp];
        if (!child) child = std::make_unique<TrieNode>();
        node = child.get();
    }
    if (!node->terminal) {
        node->terminal = true;
        ++terminal_count_;
    }
}

bool EmojiIndex::is_emoji(std::u32string_view candidate) const {
    const auto normalized = strip_variation_selectors(candidate);
    if (normalized.empty()) return false;
    const TrieNode* node = &root_;
    for (char32_t cp : normalized) {
        const auto it = node->children.find(cp);
        if (it == node->children.end()) return false;
        node = it->second.get();
    }
    return node->terminal;
}

const std::string& EmojiIndex::name_of(std::u32string_view normalized) const {
    static const std::string kEmpty;
    const auto it = names_.find(std::u32string(normalized));
    return it == names_.end() ? kEmpty : it->second;
}

std::size_t EmojiIndex::match_longest(const std::vector<DecodedCodepoint>& codepoints,
                                      std::size_t pos) const {
    const TrieNode* node = &root_;
    std::size_t end = pos;       // end of the longest accepted sequence
    std::size_t j = pos;
    while (j < codepoints.size()) {
        const char32_t cp = codepoints[j].value;
        if (is_variation_selector(cp) && j > pos) {
            ++j;
            if (end == j - 1) end = j;  // selector belongs to the accepted char
            continue;
        }
        const auto it = node->children.find(cp);
        if (it == node->children.end()) break;
        node = it->second.get();
        ++j;
        if (node->terminal) end = j;
    }
    return end;
}

}  // namespace emosent

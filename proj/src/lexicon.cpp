#include "emosent/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "emosent/io.hpp"

namespace emosent {

std::optional<Sentiment> sentiment_from_word(std::string_view word) {
    if (word == "positive") return Sentiment::Positive;
    if (word == "neutral") return Sentiment::Neutral;
    if (word == "negative") return Sentiment::Negative;
    return std::nullopt;
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    std::map<NormalizedKey, LexiconValue> entries;
    std::size_t line_no = 0;
    for (auto line : split_lines(content)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_on(line, '\t');
        if (fields.size() != 4) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 4 tab-separated fields, got " +
                                     std::to_string(fields.size()));
        }
        NormalizedKey key;
        try {
            key.codepoints = hex_to_codepoints(fields[0]);
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " +
                                     e.what());
        }
        const auto sentiment = sentiment_from_word(fields[2]);
        if (!sentiment) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": unknown sentiment word '" + std::string(fields[2]) + "'");
        }
        const auto [it, inserted] =
            entries.emplace(std::move(key), LexiconValue{*sentiment, std::string(fields[3])});
        if (!inserted) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": duplicate key " + it->first.hex());
        }
    }
    return SentimentLexicon(std::move(entries), path.string());
}

std::string SentimentLexicon::serialize() const {
    std::string out;
    for (const auto& [key, value] : entries_) {
        out += key.hex();
        out += '\t';
        out += key.icon();
        out += '\t';
        out += to_string(value.sentiment);
        out += '\t';
        out += value.source;
        out += '\n';
    }
    return out;
}

void SentimentLexicon::write(const std::filesystem::path& path) const {
    atomic_write_file(path, serialize());
}

namespace {

bool is_skin_tone(char32_t cp) { return cp >= 0x1F3FB && cp <= 0x1F3FF; }

std::u32string strip_skin_tones(std::u32string_view cps) {
    std::u32string out;
    for (char32_t cp : cps) {
        if (!is_skin_tone(cp)) out.push_back(cp);
    }
    return out;
}

}  // namespace

std::optional<Sentiment> SentimentLexicon::exact(const NormalizedKey& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.sentiment;
}

std::optional<Sentiment> SentimentLexicon::lookup(const NormalizedKey& key) const {
    if (auto hit = exact(key)) return hit;
    const auto toneless = strip_skin_tones(key.codepoints);
    if (toneless != key.codepoints) {
        if (auto hit = exact(NormalizedKey{toneless})) return hit;
    }
    const auto zwj = toneless.find(char32_t{0x200D});
    if (zwj != std::u32string::npos) {
        if (auto hit = exact(NormalizedKey{toneless.substr(0, zwj)})) return hit;
    }
    return std::nullopt;
}

std::optional<Sentiment> SentimentLexicon::lookup(const EmojiToken& token) const {
    return lookup(normalize(token));
}

Sentiment esr_argmax(const EsrRecord& r) {
    if (r.score_positive > r.score_neutral && r.score_positive > r.score_negative)
        return Sentiment::Positive;
    if (r.score_negative > r.score_neutral && r.score_negative > r.score_positive)
        return Sentiment::Negative;
    return Sentiment::Neutral;
}

std::vector<EsrRecord> read_esr_csv(const std::filesystem::path& path, const EsrColumns& columns) {
    const std::string content = read_file(path);
    const auto lines = split_lines(content);
    if (lines.empty()) throw std::runtime_error(path.string() + ": empty ESR file");

    const auto header = split_csv_line(lines[0]);
    auto column_index = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw std::runtime_error(path.string() + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto cp_col = column_index(columns.codepoint);
    const auto occ_col = column_index(columns.occurrences);
    const auto neg_col = column_index(columns.negative);
    const auto neu_col = column_index(columns.neutral);
    const auto pos_col = column_index(columns.positive);

    std::vector<EsrRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        const auto where = path.string() + ":" + std::to_string(i + 1);
        const auto need = std::max({cp_col, occ_col, neg_col, neu_col, pos_col});
        if (fields.size() <= need)
            throw std::runtime_error(where + ": row has too few columns");
        EsrRecord record;
        try {
            record.key = normalize(hex_to_codepoints(fields[cp_col]));
            record.occurrences = std::stol(fields[occ_col]);
            record.score_negative = std::stod(fields[neg_col]);
            record.score_neutral = std::stod(fields[neu_col]);
            record.score_positive = std::stod(fields[pos_col]);
        } catch (const std::exception& e) {
            throw std::runtime_error(where + ": malformed row: " + e.what());
        }
        if (record.occurrences < 0) throw std::runtime_error(where + ": negative occurrences");
        for (double s : {record.score_negative, record.score_neutral, record.score_positive}) {
            if (s < 0.0 || s > 1.0)
                throw std::runtime_error(where + ": score outside [0,1]");
        }
        records.push_back(std::move(record));
    }
    return records;
}

SentimentLexicon import_esr(const std::filesystem::path& path, const EsrColumns& columns) {
    std::map<NormalizedKey, LexiconValue> entries;
    for (const auto& record : read_esr_csv(path, columns)) {
        const auto [it, inserted] =
            entries.emplace(record.key, LexiconValue{esr_argmax(record), "esr-v1.0"});
        if (!inserted) {
            throw std::runtime_error(path.string() + ": duplicate ESR key " + it->first.hex());
        }
    }
    return SentimentLexicon(std::move(entries), "ESR v1.0 import of " + path.string());
}

std::string CompletenessSummary::report() const {
    std::ostringstream out;
    out << "entries: " << total << "\n"
        << "with title: " << with_title << "\n"
        << "with description: " << with_description << "\n"
        << "with pixel: " << with_pixel << "\n"
        << "missing description: " << (total - with_description) << "\n"
        << "missing pixel: " << (total - with_pixel) << "\n";
    return out.str();
}

namespace {

bool looks_like_raster(const std::string& bytes) {
    if (bytes.size() >= 8 && bytes.compare(0, 8, "\x89PNG\r\n\x1a\n", 8) == 0) return true;
    if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xFF &&
        static_cast<unsigned char>(bytes[1]) == 0xD8)
        return true;  // JPEG
    if (bytes.size() >= 6 && bytes.compare(0, 4, "GIF8") == 0) return true;
    return false;
}

std::string pixel_file_stem(const NormalizedKey& key) {
    std::string stem;
    char buf[16];
    for (std::size_t i = 0; i < key.codepoints.size(); ++i) {
        if (i) stem.push_back('-');
        std::snprintf(buf, sizeof buf, "%x", static_cast<unsigned>(key.codepoints[i]));
        stem += buf;
    }
    return stem;
}

}  // namespace

RepresentationDataset build_representation_dataset(const std::filesystem::path& unicode_path,
                                                   const std::filesystem::path& descriptions_path,
                                                   const std::filesystem::path& pixels_dir) {
    const EmojiIndex index = EmojiIndex::load(unicode_path);

    std::unordered_map<std::string, std::string> descriptions;
    if (!descriptions_path.empty()) {
        const std::string content = read_file(descriptions_path);
        std::size_t line_no = 0;
        for (auto line : split_lines(content)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            const auto tab = line.find('\t');
            if (tab == std::string_view::npos) {
                throw std::runtime_error(descriptions_path.string() + ":" +
                                         std::to_string(line_no) + ": expected key<TAB>text");
            }
            const auto key = normalize(hex_to_codepoints(line.substr(0, tab)));
            descriptions[key.hex()] = std::string(line.substr(tab + 1));
        }
    }

    RepresentationDataset dataset;
    std::map<NormalizedKey, bool> seen;
    for (const auto& row : index.rows()) {
        const auto key = normalize(row.codepoints);
        if (!seen.emplace(key, true).second) continue;

        EmojiEntry entry;
        entry.key = key;
        entry.icon = encode_utf8(row.codepoints);
        entry.title = row.name;
        if (const auto it = descriptions.find(key.hex()); it != descriptions.end()) {
            entry.description = it->second;
        }
        if (!pixels_dir.empty()) {
            const auto pixel_path = pixels_dir / (pixel_file_stem(key) + ".png");
            if (std::filesystem::exists(pixel_path)) {
                if (!looks_like_raster(read_file(pixel_path))) {
                    throw std::runtime_error("undecodable pixel file: " + pixel_path.string());
                }
                entry.pixel_ref = pixel_path.string();
            }
        }

        ++dataset.completeness.total;
        if (!entry.title.empty()) ++dataset.completeness.with_title;
        if (!entry.description.empty()) ++dataset.completeness.with_description;
        if (!entry.pixel_ref.empty()) ++dataset.completeness.with_pixel;
        dataset.entries.push_back(std::move(entry));
    }
    return dataset;
}

}  // namespace emosent

#include "emosent/utf8.hpp"

#include <cstdio>

namespace emosent {

namespace {

[[noreturn]] void bad_utf8(std::size_t offset, const char* why) {
    throw Utf8Error("invalid UTF-8 at byte " + std::to_string(offset) + ": " + why);
}

}  // namespace

std::vector<DecodedCodepoint> decode_utf8(std::string_view text) {
    std::vector<DecodedCodepoint> out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const auto b0 = static_cast<unsigned char>(text[i]);
        std::size_t len;
        char32_t cp;
        if (b0 < 0x80) {
            len = 1;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            bad_utf8(i, "bad leading byte");
        }
        if (i + len > text.size()) bad_utf8(i, "truncated sequence");
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(text[i + k]);
            if ((b & 0xC0) != 0x80) bad_utf8(i + k, "bad continuation byte");
            cp = (cp << 6) | (b & 0x3F);
        }
        static constexpr char32_t kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (len > 1 && cp < kMinByLen[len]) bad_utf8(i, "overlong encoding");
        if (cp >= 0xD800 && cp <= 0xDFFF) bad_utf8(i, "surrogate codepoint");
        if (cp > 0x10FFFF) bad_utf8(i, "codepoint out of range");
        out.push_back({cp, i});
        i += len;
    }
    return out;
}

std::string encode_utf8(std::u32string_view codepoints) {
    std::string out;
    out.reserve(codepoints.size() * 4);
    for (char32_t cp : codepoints) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::string codepoints_to_hex(std::u32string_view codepoints) {
    std::string out;
    char buf[16];
    for (std::size_t i = 0; i < codepoints.size(); ++i) {
        if (i) out.push_back(' ');
        std::snprintf(buf, sizeof buf, "%X", static_cast<unsigned>(codepoints[i]));
        out += buf;
    }
    return out;
}

std::u32string hex_to_codepoints(std::string_view hex) {
    std::u32string out;
    std::size_t i = 0;
    while (i < hex.size()) {
        while (i < hex.size() && hex[i] == ' ') ++i;
        if (i >= hex.size()) break;
        if (hex.compare(i, 2, "0x") == 0 || hex.compare(i, 2, "0X") == 0 ||
            hex.compare(i, 2, "U+") == 0) {
            i += 2;
        }
        char32_t cp = 0;
        std::size_t start = i;
        while (i < hex.size() && hex[i] != ' ') {
            const char c = hex[i];
            unsigned d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = 10 + (c - 'a');
            else if (c >= 'A' && c <= 'F') d = 10 + (c - 'A');
            else throw std::invalid_argument("bad hex codepoint field: " + std::string(hex));
            cp = cp * 16 + d;
            ++i;
        }
        if (i == start) throw std::invalid_argument("empty hex codepoint field: " + std::string(hex));
        out.push_back(cp);
    }
    return out;
}

}  // namespace emosent

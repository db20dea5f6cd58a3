#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace emosent {

// Thrown when input bytes are not well-formed UTF-8.
class Utf8Error : public std::runtime_error {
public:
    explicit Utf8Error(const std::string& what) : std::runtime_error(what) {}
};

// One decoded scalar value together with the byte offset of its first byte.
struct DecodedCodepoint {
    char32_t value;
    std::size_t byte_offset;
};

// Decodes the whole string, rejecting overlong forms, surrogates and
// truncated sequences.
std::vector<DecodedCodepoint> decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view codepoints);

// Uppercase hex codepoints separated by single spaces, e.g. "1F602 200D".
std::string codepoints_to_hex(std::u32string_view codepoints);

// Inverse of codepoints_to_hex; accepts an optional 0x/U+ prefix per field.
std::u32string hex_to_codepoints(std::string_view hex);

}  // namespace emosent

#include "fsmr/utf8.hpp"

namespace fsmr::utf8 {

std::optional<std::u32string> decode(std::string_view bytes, DecodeFailure* failure) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    auto fail = [&]() -> std::optional<std::u32string> {
        if (failure != nullptr) *failure = {i, out.size()};
        return std::nullopt;
    };
    while (i < bytes.size()) {
        const auto lead = static_cast<unsigned char>(bytes[i]);
        std::size_t length = 0;
        char32_t value = 0;
        char32_t minimum = 0;
        if (lead < 0x80) {
            out.push_back(lead);
            ++i;
            continue;
        } else if ((lead & 0xE0) == 0xC0) {
            length = 2;
            value = lead & 0x1F;
            minimum = 0x80;
        } else if ((lead & 0xF0) == 0xE0) {
            length = 3;
            value = lead & 0x0F;
            minimum = 0x800;
        } else if ((lead & 0xF8) == 0xF0) {
            length = 4;
            value = lead & 0x07;
            minimum = 0x10000;
        } else {
            return fail();
        }
        if (i + length > bytes.size()) return fail();
        for (std::size_t k = 1; k < length; ++k) {
            const auto cont = static_cast<unsigned char>(bytes[i + k]);
            if ((cont & 0xC0) != 0x80) return fail();
            value = (value << 6) | (cont & 0x3F);
        }
        if (value < minimum || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) return fail();
        out.push_back(value);
        i += length;
    }
    return out;
}

std::string encode(Symbol c) {
    std::string out;
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
    return out;
}

std::string encode(std::u32string_view scalars) {
    std::string out;
    for (const Symbol c : scalars) out += encode(c);
    return out;
}

std::size_t scalar_count(std::string_view bytes) {
    std::size_t n = 0;
    for (const char ch : bytes) {
        if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
    }
    return n;
}

std::optional<Symbol> single_scalar(std::string_view bytes) {
    const auto decoded = decode(bytes);
    if (!decoded || decoded->size() != 1) return std::nullopt;
    return decoded->front();
}

}  // namespace fsmr::utf8

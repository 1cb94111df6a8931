#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace fsmr {

/// One alphabet symbol: a single Unicode scalar value.
using Symbol = char32_t;

namespace utf8 {

struct DecodeFailure {
    std::size_t byte_offset;   ///< offset of the offending byte
    std::size_t scalar_index;  ///< number of scalars decoded before it
};

/// Decodes strict UTF-8 (no overlongs, no surrogates). On failure the
/// location of the first bad sequence is reported through `failure`.
std::optional<std::u32string> decode(std::string_view bytes, DecodeFailure* failure = nullptr);

std::string encode(Symbol scalar);
std::string encode(std::u32string_view scalars);

/// Number of scalar values in a valid UTF-8 prefix.
std::size_t scalar_count(std::string_view bytes);

/// The single scalar in `bytes`, or nullopt when it holds zero or several.
std::optional<Symbol> single_scalar(std::string_view bytes);

}  // namespace utf8
}  // namespace fsmr

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace econet::text {

/// True for Unicode punctuation (and ASCII symbol characters, which the
/// token rules treat the same way).
bool is_punctuation(char32_t cp) noexcept;

/// True for Unicode whitespace and zero-width separators.
bool is_space(char32_t cp) noexcept;

/// Simple case folding for Latin, Greek and Cyrillic uppercase letters.
char32_t to_lower(char32_t cp) noexcept;

/// Lowercases, maps punctuation and whitespace to separators and splits on
/// separator runs. With `keep_hyphen`, ASCII '-' stays inside tokens.
/// Invalid UTF-8 bytes act as separators.
std::vector<std::string> split_tokens(std::string_view text, bool keep_hyphen = false);

std::string join(const std::vector<std::string>& tokens, char sep = ' ');

}  // namespace econet::text

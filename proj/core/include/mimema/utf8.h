#ifndef MIMEMA_UTF8_H_
#define MIMEMA_UTF8_H_

#include <string>
#include <string_view>

namespace mimema {

// Decodes UTF-8. Invalid sequences throw Error("invalid utf-8").
std::u32string Utf8ToU32(std::string_view text);
std::string U32ToUtf8(std::u32string_view text);
std::string U32ToUtf8(char32_t c);

// Lowercases ASCII and the Latin-1/Latin Extended-A letters used in French.
char32_t ToLower(char32_t c);
std::u32string ToLower(std::u32string_view text);

}  // namespace mimema

#endif  // MIMEMA_UTF8_H_

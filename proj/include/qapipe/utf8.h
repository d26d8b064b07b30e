// Copyright 2026 The qapipe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QAPIPE_UTF8_H_
#define QAPIPE_UTF8_H_

#include <string>
#include <string_view>

namespace qapipe {
namespace utf8 {

// Decodes UTF-8. Malformed sequences decode to U+FFFD, one per bad byte.
std::u32string Decode(std::string_view bytes);

std::string Encode(std::u32string_view chars);

void Append(std::string *out, char32_t ch);

// std::wstring holds UTF-32 on the platforms we build for; std::wregex runs
// over it so character classes see whole code points.
std::wstring ToWide(std::string_view bytes);
std::string FromWide(std::wstring_view wide);

}  // namespace utf8
}  // namespace qapipe

#endif  // QAPIPE_UTF8_H_

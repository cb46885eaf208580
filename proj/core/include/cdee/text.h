// Copyright 2026 The CDEE Authors.
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

#ifndef CDEE_TEXT_H_
#define CDEE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cdee {

// Number of Unicode code points in a UTF-8 string. Stray continuation bytes
// count as one character each so that malformed input never throws.
size_t CodePointLength(std::string_view utf8);

// Byte offset of the code point with index `cp` (cp == length gives size()).
size_t ByteOffset(std::string_view utf8, size_t cp);

// Code point index of the byte offset `byte` (must be on a boundary).
size_t CodePointOffset(std::string_view utf8, size_t byte);

// ASCII lowercasing; multi-byte sequences pass through untouched.
std::string AsciiLower(std::string_view s);

std::string_view Trim(std::string_view s);

// Lowercase, trim, and collapse internal whitespace runs to a single space.
// This is the key used for every table lookup.
std::string FoldKey(std::string_view s);

std::vector<std::string> Split(std::string_view s, char delim);

bool IsAsciiAlnum(char c);

}  // namespace cdee

#endif  // CDEE_TEXT_H_

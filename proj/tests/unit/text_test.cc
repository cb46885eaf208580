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

#include "cdee/text.h"

#include <gtest/gtest.h>

namespace cdee {
namespace {

TEST(TextTest, CodePointsCountMultibyteCharactersOnce) {
  EXPECT_EQ(CodePointLength(""), 0u);
  EXPECT_EQ(CodePointLength("Iraq"), 4u);
  EXPECT_EQ(CodePointLength("1991年1月17日"), 10u);
  EXPECT_EQ(CodePointLength("Zürich"), 6u);
}

TEST(TextTest, OffsetsConvertBothWays) {
  const std::string s = "a年b";
  EXPECT_EQ(ByteOffset(s, 0), 0u);
  EXPECT_EQ(ByteOffset(s, 1), 1u);
  EXPECT_EQ(ByteOffset(s, 2), 4u);
  EXPECT_EQ(ByteOffset(s, 3), s.size());
  for (size_t cp = 0; cp <= 3; ++cp) EXPECT_EQ(CodePointOffset(s, ByteOffset(s, cp)), cp);
}

TEST(TextTest, FoldKeyLowercasesTrimsAndCollapses) {
  EXPECT_EQ(FoldKey("  Coalition \t Forces \n"), "coalition forces");
  EXPECT_EQ(FoldKey("USA"), "usa");
  EXPECT_EQ(FoldKey(""), "");
  EXPECT_EQ(FoldKey("Zürich"), "zürich");
  EXPECT_EQ(FoldKey(FoldKey(" A  B ")), FoldKey(" A  B "));
}

TEST(TextTest, SplitKeepsEmptyFields) {
  EXPECT_EQ(Split("a\t\tb", '\t'), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(Split("", '\t'), (std::vector<std::string>{""}));
}

TEST(TextTest, TrimAndLower) {
  EXPECT_EQ(Trim("  x y \r\n"), "x y");
  EXPECT_EQ(AsciiLower("MiXeD"), "mixed");
  EXPECT_TRUE(IsAsciiAlnum('z'));
  EXPECT_FALSE(IsAsciiAlnum('-'));
}

}  // namespace
}  // namespace cdee

// Copyright 2026 The Dynbench Authors.
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


#include "dynbench/dsl.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"

namespace dynbench::dsl {
namespace {

// Counts the lines of a script that hold a call, skipping comments.
std::size_t countCallLines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.find('(') != std::string::npos) ++n;
  }
  return n;
}

void expectParseError(const std::string& text, int line, int column) {
  try {
    compile(text);
    ADD_FAILURE() << "no error for: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

TEST(DslParseTest, Initialize) {
  const auto decls = compile(R"([A,B,C,T] = INITIALIZE([5,8,20,8],["A","B","C","T"]))");
  ASSERT_EQ(decls.size(), 1u);
  ASSERT_EQ(decls[0].kind(), EventKind::kInitialize);
  const auto& p = std::get<InitializeParams>(decls[0].params);
  EXPECT_EQ(p.sizes, (std::vector<std::size_t>{5, 8, 20, 8}));
  ASSERT_EQ(p.labels.size(), 4u);
  EXPECT_EQ(p.labels[3].value, "T");
}

TEST(DslParseTest, TheseusRebindsTarget) {
  const auto decls = compile("[A, T] = INITIALIZE([2, 3], [\"A\", \"T\"])\n"
                             "(T,U)=THESEUS(T, delay=20)\n"
                             "DEATH(T)\n");
  ASSERT_EQ(decls.size(), 3u);
  EXPECT_EQ(decls[1].kind(), EventKind::kTheseus);
  EXPECT_EQ(decls[1].delay, 20u);
  EXPECT_EQ(decls[1].inputs, (std::vector<CommunityRef>{{0, 1}}));
  // T now names the first output of the THESEUS statement.
  EXPECT_EQ(decls[2].inputs, (std::vector<CommunityRef>{{1, 0}}));
}

TEST(DslParseTest, MergeOfOneIsAnArityError) {
  EXPECT_THROW(compile("[A] = INITIALIZE([2], [\"A\"])\nX = MERGE(A)\n"), ParseError);
  EXPECT_THROW(compile("[A] = INITIALIZE([2], [\"A\"])\nX = MERGE([A])\n"), ParseError);
}

TEST(DslParseTest, EmptyInput) {
  EXPECT_TRUE(compile("").empty());
  EXPECT_TRUE(compile("\n  # only a comment\n\n").empty());
}

TEST(DslParseTest, ListingHasOneDeclarationPerCall) {
  const std::string text = testing::listing1Text();
  const std::size_t calls = countCallLines(text);
  EXPECT_EQ(calls, 12u);
  EXPECT_EQ(compile(text).size(), calls);
}

TEST(DslParseTest, RebindingResolvesToLatestCommunity) {
  const auto decls = compile(testing::listing1Text());
  // Statement 2 is B = MERGE([A, B], ...); statement 5 merges [C2, B].
  ASSERT_EQ(decls[5].kind(), EventKind::kMerge);
  ASSERT_EQ(decls[5].inputs.size(), 2u);
  EXPECT_EQ(decls[5].inputs[0], (CommunityRef{4, 1}));
  EXPECT_EQ(decls[5].inputs[1], (CommunityRef{2, 0}));
  const auto& label = std::get<MergeParams>(decls[5].params).label;
  ASSERT_TRUE(label.has_value());
  EXPECT_EQ(label->value, "B");
}

TEST(DslParseTest, KeywordsAliasesAndTriggers) {
  const auto decls = compile("[A, B] = INITIALIZE([2, 3], [\"A\", \"B\"])\n"
                             "R = sc.BIRTH(5, name=\"R\", delay=25, triggers=[A, B])\n"
                             "C = CONTINUE(R, duration=4)\n");
  ASSERT_EQ(decls.size(), 3u);
  const auto& birth = std::get<BirthParams>(decls[1].params);
  EXPECT_EQ(birth.nbNodes, 5u);
  EXPECT_EQ(birth.label.value, "R");
  EXPECT_EQ(decls[1].delay, 25u);
  EXPECT_EQ(decls[1].triggers, (std::vector<CommunityRef>{{0, 0}, {0, 1}}));
  EXPECT_EQ(std::get<ContinueParams>(decls[2].params).duration, 4u);
}

TEST(DslParseTest, StringEscapesAndUnicode) {
  const auto decls = compile("X = BIRTH(1, \"a\\\"b\\\\c\u00e9\")\n");
  ASSERT_EQ(decls.size(), 1u);
  EXPECT_EQ(std::get<BirthParams>(decls[0].params).label.value, "a\"b\\c\u00e9");
  EXPECT_THROW(compile("X = BIRTH(1, \"\\q\")\n"), ParseError);
}

TEST(DslErrorTest, ErrorsCarryPosition) {
  expectParseError("X = FOO(1)", 1, 5);
  expectParseError("\nX = DEATH(Y)", 2, 11);
  expectParseError("X = BIRTH(1, \"R\"", 1, 17);
  expectParseError("X = BIRTH(1x, \"R\")", 1, 11);
  expectParseError("X = BIRTH(\"R\", 1)", 1, 11);
}

TEST(DslErrorTest, RejectsMalformedInput) {
  for (const char* text : {
           "X = BIRTH(1, \"R\", delay=-1)",
           "X = BIRTH(1, \"R\", delay=1, delay=2)",
           "X = BIRTH(1, \"R\", colour=2)",
           "X = BIRTH(nb_nodes=1, \"R\")",
           "X = BIRTH(1)",
           "X = BIRTH(1, \"R\") trailing",
           "X, Y = BIRTH(1, \"R\")",
           "X = BIRTH(1, \"unterminated)",
           "X = BIRTH(1, R.label())",
           "1X = BIRTH(1, \"R\")",
           "X = BIRTH(1, [\"R\")",
       }) {
    EXPECT_THROW(compile(text), ParseError) << text;
  }
}

TEST(DslRoundTripTest, PrintThenParseIsIdentity) {
  const std::vector<std::string> scripts = {
      testing::listing1Text(),
      "[A, B] = INITIALIZE([2, 3], [\"A\", \"B\"])\n"
      "R = BIRTH(nb_nodes=5, label=\"R \\\"quoted\\\"\", delay=2, triggers=[A])\n"
      "(A, B) = MIGRATE_ITERATIVE(A, B, 1)\n"
      "(X, Y) = ASSIGN([A, B], [[100, 101], [102]], [\"x\", \"y\"])\n",
  };
  for (const auto& text : scripts) {
    const ScenarioScript a = parse(text);
    const std::string printed = print(a);
    const ScenarioScript b = parse(printed);
    EXPECT_EQ(a, b) << printed;
    EXPECT_EQ(print(b), printed);
  }
}

TEST(DslRoundTripTest, DecimalsPrintAsDecimals) {
  ScenarioScript script = parse("X = BIRTH(1, \"R\")\n");
  script.statements[0].args.push_back({std::string("w"), Value{3.0, 0, 0}});
  script.statements[0].args.push_back({std::string("v"), Value{0.25, 0, 0}});
  const std::string printed = print(script);
  EXPECT_NE(printed.find("w=3.0"), std::string::npos) << printed;
  EXPECT_NE(printed.find("v=0.25"), std::string::npos) << printed;
}

}  // namespace
}  // namespace dynbench::dsl

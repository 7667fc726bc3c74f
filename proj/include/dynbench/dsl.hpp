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

// Textual scenario files (.dcs). One statement per line:
//
//   # comment
//   [A, B] = INITIALIZE([5, 8], ["A", "B"])
//   (T, U) = THESEUS(T, delay=20)
//   B = MERGE([A, B], B.label(), delay=30)
//   DEATH(B, delay=10, triggers=[T])
//
// Targets are optional and may be bare, parenthesized or bracketed. A call may
// carry a receiver prefix (`sc.MERGE(...)`), which is ignored. Values are
// integers, decimals, double-quoted strings, bracketed lists, bound
// identifiers, or `IDENT.label()`. Every event accepts the keywords `delay`
// and `triggers`.

#ifndef DYNBENCH_DSL_HPP_
#define DYNBENCH_DSL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dynbench/core.hpp"
#include "dynbench/scenario.hpp"

namespace dynbench::dsl {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Identifier {
  std::string name;
  friend bool operator==(const Identifier&, const Identifier&) = default;
};

// `name.label()`
struct LabelOf {
  std::string name;
  friend bool operator==(const LabelOf&, const LabelOf&) = default;
};

struct Value;
using List = std::vector<Value>;

struct Value {
  std::variant<std::int64_t, double, std::string, Identifier, LabelOf, List> data;
  int line = 0;
  int column = 0;

  // Structural equality; source positions are ignored.
  friend bool operator==(const Value& a, const Value& b) { return a.data == b.data; }
};

struct Argument {
  std::optional<std::string> key;
  Value value;
  friend bool operator==(const Argument&, const Argument&) = default;
};

struct Statement {
  std::vector<std::string> targets;
  std::string event;
  std::vector<Argument> args;
  int line = 0;
  int column = 0;

  friend bool operator==(const Statement& a, const Statement& b) {
    return a.targets == b.targets && a.event == b.event && a.args == b.args;
  }
};

struct ScenarioScript {
  std::vector<Statement> statements;
  friend bool operator==(const ScenarioScript&, const ScenarioScript&) = default;
};

// Throws ParseError (with line and column) on any syntax error, unknown event,
// unbound identifier or arity mismatch.
ScenarioScript parse(std::string_view text);

// Resolves identifiers (later statements see the latest binding) and converts
// statements to engine declarations.
std::vector<EventDecl> bindAndValidate(const ScenarioScript& script);

// Canonical text form; parse(print(s)) == s.
std::string print(const ScenarioScript& script);

// parse + bindAndValidate.
std::vector<EventDecl> compile(std::string_view text);

}  // namespace dynbench::dsl

#endif  // DYNBENCH_DSL_HPP_

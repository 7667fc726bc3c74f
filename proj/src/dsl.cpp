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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace dynbench::dsl {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { kIdent, kInt, kDecimal, kString, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;  // identifier, punctuation, or decoded string
  std::int64_t integer = 0;
  double decimal = 0.0;
  int column = 0;
};

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view line, int lineNo) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (isIdentStart(c)) {
      std::size_t j = i;
      while (j < line.size() && isIdentChar(line[j])) ++j;
      out.push_back({Tok::kIdent, std::string(line.substr(i, j - i)), 0, 0.0, col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::size_t j = i + 1;
      bool decimal = false;
      while (j < line.size() && (std::isdigit(static_cast<unsigned char>(line[j])) || line[j] == '.' ||
                                 line[j] == 'e' || line[j] == 'E' ||
                                 ((line[j] == '-' || line[j] == '+') && (line[j - 1] == 'e' || line[j - 1] == 'E')))) {
        if (line[j] == '.' || line[j] == 'e' || line[j] == 'E') decimal = true;
        ++j;
      }
      // Glued letters make the whole run one malformed literal.
      while (j < line.size() && isIdentChar(line[j])) ++j;
      const std::string_view lit = line.substr(i, j - i);
      Token t;
      t.column = col;
      t.text = std::string(lit);
      const char* first = lit.data();
      const char* last = lit.data() + lit.size();
      if (decimal) {
        t.kind = Tok::kDecimal;
        // from_chars for double is unavailable on older toolchains.
        std::istringstream in{std::string(lit)};
        in.imbue(std::locale::classic());
        in >> t.decimal;
        if (in.fail() || !in.eof() || !std::isfinite(t.decimal)) {
          throw ParseError(lineNo, col, "malformed number '" + t.text + "'");
        }
      } else {
        t.kind = Tok::kInt;
        auto [ptr, ec] = std::from_chars(first, last, t.integer);
        if (ec != std::errc() || ptr != last) throw ParseError(lineNo, col, "malformed integer '" + t.text + "'");
      }
      out.push_back(std::move(t));
      i = j;
    } else if (c == '"') {
      std::string s;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < line.size()) {
        if (line[j] == '\\') {
          if (j + 1 >= line.size()) break;
          const char e = line[j + 1];
          if (e == '"' || e == '\\') {
            s.push_back(e);
          } else if (e == 'n') {
            s.push_back('\n');
          } else if (e == 't') {
            s.push_back('\t');
          } else {
            throw ParseError(lineNo, static_cast<int>(j) + 1, std::string("unknown escape '\\") + e + "'");
          }
          j += 2;
        } else if (line[j] == '"') {
          closed = true;
          ++j;
          break;
        } else {
          s.push_back(line[j]);
          ++j;
        }
      }
      if (!closed) throw ParseError(lineNo, col, "unterminated string");
      out.push_back({Tok::kString, std::move(s), 0, 0.0, col});
      i = j;
    } else if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '=' || c == '.') {
      out.push_back({Tok::kPunct, std::string(1, c), 0, 0.0, col});
      ++i;
    } else {
      throw ParseError(lineNo, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, "", 0, 0.0, static_cast<int>(line.size()) + 1});
  return out;
}

// ---------------------------------------------------------------------------
// Statement parser

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line) : toks_(std::move(tokens)), line_(line) {}

  Statement parseStatement() {
    Statement st;
    st.line = line_;
    // Lookahead: a target list exists iff an '=' appears before the first '('.
    bool hasTargets = false;
    for (const auto& t : toks_) {
      if (t.kind == Tok::kPunct && t.text == "(" && !(&t == &toks_.front())) break;
      if (t.kind == Tok::kPunct && t.text == "=") {
        hasTargets = true;
        break;
      }
    }
    if (hasTargets) {
      st.targets = parseTargets();
      expectPunct("=");
    }
    const Token& first = expect(Tok::kIdent, "event name");
    st.column = first.column;
    st.event = first.text;
    if (peekPunct(".")) {
      // receiver.EVENT(...)
      ++pos_;
      const Token& name = expect(Tok::kIdent, "event name");
      st.column = name.column;
      st.event = name.text;
    }
    expectPunct("(");
    bool sawKeyword = false;
    if (!peekPunct(")")) {
      while (true) {
        Argument arg;
        if (cur().kind == Tok::kIdent && toks_[pos_ + 1].kind == Tok::kPunct && toks_[pos_ + 1].text == "=") {
          arg.key = cur().text;
          pos_ += 2;
          sawKeyword = true;
        } else if (sawKeyword) {
          throw ParseError(line_, cur().column, "positional argument after keyword argument");
        }
        arg.value = parseValue();
        st.args.push_back(std::move(arg));
        if (peekPunct(",")) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expectPunct(")");
    if (cur().kind != Tok::kEnd) throw ParseError(line_, cur().column, "unexpected '" + describe(cur()) + "' after statement");
    return st;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool peekPunct(const char* p) const { return cur().kind == Tok::kPunct && cur().text == p; }

  static std::string describe(const Token& t) {
    return t.kind == Tok::kEnd ? std::string("end of line") : t.text;
  }

  const Token& expect(Tok kind, const char* what) {
    if (cur().kind != kind) {
      throw ParseError(line_, cur().column, std::string("expected ") + what + ", found '" + describe(cur()) + "'");
    }
    return toks_[pos_++];
  }

  void expectPunct(const char* p) {
    if (!peekPunct(p)) {
      throw ParseError(line_, cur().column, std::string("expected '") + p + "', found '" + describe(cur()) + "'");
    }
    ++pos_;
  }

  std::vector<std::string> parseTargets() {
    const char* close = nullptr;
    if (peekPunct("(")) close = ")";
    if (peekPunct("[")) close = "]";
    if (close != nullptr) ++pos_;
    std::vector<std::string> names;
    while (true) {
      names.push_back(expect(Tok::kIdent, "target identifier").text);
      if (peekPunct(",")) {
        ++pos_;
        continue;
      }
      break;
    }
    if (close != nullptr) expectPunct(close);
    return names;
  }

  Value parseValue() {
    const Token& t = cur();
    Value v;
    v.line = line_;
    v.column = t.column;
    switch (t.kind) {
      case Tok::kInt:
        v.data = t.integer;
        ++pos_;
        return v;
      case Tok::kDecimal:
        v.data = t.decimal;
        ++pos_;
        return v;
      case Tok::kString:
        v.data = t.text;
        ++pos_;
        return v;
      case Tok::kIdent: {
        std::string name = t.text;
        ++pos_;
        if (peekPunct(".")) {
          ++pos_;
          const Token& method = expect(Tok::kIdent, "method name");
          if (method.text != "label") {
            throw ParseError(line_, method.column, "unknown method '" + method.text + "', only label() is supported");
          }
          expectPunct("(");
          expectPunct(")");
          v.data = LabelOf{std::move(name)};
        } else {
          v.data = Identifier{std::move(name)};
        }
        return v;
      }
      case Tok::kPunct:
        if (t.text == "[") {
          ++pos_;
          List items;
          if (!peekPunct("]")) {
            while (true) {
              items.push_back(parseValue());
              if (peekPunct(",")) {
                ++pos_;
                continue;
              }
              break;
            }
          }
          expectPunct("]");
          v.data = std::move(items);
          return v;
        }
        [[fallthrough]];
      default:
        throw ParseError(line_, t.column, "expected a value, found '" + describe(t) + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

// ---------------------------------------------------------------------------
// Binder

enum class ParamType { kCom, kComList, kInt, kIntList, kStr, kStrList, kNodeSetList };

struct ParamSpec {
  const char* name;
  ParamType type;
};

struct Signature {
  EventKind kind;
  std::vector<ParamSpec> params;
  std::size_t required;
  std::vector<std::pair<const char*, const char*>> aliases;  // alias -> parameter
};

const std::map<std::string, Signature, std::less<>>& signatures() {
  using P = ParamType;
  static const std::map<std::string, Signature, std::less<>> table = {
      {"ASSIGN",
       {EventKind::kAssign, {{"before", P::kComList}, {"nodes", P::kNodeSetList}, {"labels", P::kStrList}}, 3, {}}},
      {"INITIALIZE", {EventKind::kInitialize, {{"sizes", P::kIntList}, {"labels", P::kStrList}}, 2, {}}},
      {"BIRTH", {EventKind::kBirth, {{"nb_nodes", P::kInt}, {"label", P::kStr}}, 2, {{"name", "label"}}}},
      {"DEATH", {EventKind::kDeath, {{"com", P::kCom}}, 1, {}}},
      {"MERGE", {EventKind::kMerge, {{"coms", P::kComList}, {"label", P::kStr}}, 1, {{"name", "label"}}}},
      {"SPLIT", {EventKind::kSplit, {{"com", P::kCom}, {"labels", P::kStrList}, {"sizes", P::kIntList}}, 3, {}}},
      {"THESEUS", {EventKind::kTheseus, {{"com", P::kCom}, {"nb_nodes", P::kInt}, {"label", P::kStr}}, 1, {}}},
      {"RESURGENCE", {EventKind::kResurgence, {{"com", P::kCom}, {"gap", P::kInt}}, 1, {}}},
      {"CONTINUE", {EventKind::kContinue, {{"com", P::kCom}, {"duration", P::kInt}}, 2, {}}},
      {"GROW_ITERATIVE", {EventKind::kGrowIterative, {{"com", P::kCom}, {"nb_nodes", P::kInt}}, 2, {}}},
      {"SHRINK_ITERATIVE", {EventKind::kShrinkIterative, {{"com", P::kCom}, {"nb_nodes", P::kInt}}, 2, {}}},
      {"MIGRATE_ITERATIVE",
       {EventKind::kMigrateIterative, {{"src", P::kCom}, {"dst", P::kCom}, {"nb_nodes", P::kInt}}, 3, {}}},
  };
  return table;
}

struct Binding {
  CommunityRef ref;
  std::optional<Label> label;
};

class Binder {
 public:
  std::vector<EventDecl> run(const ScenarioScript& script) {
    std::vector<EventDecl> decls;
    for (const auto& st : script.statements) decls.push_back(bindStatement(st, decls.size()));
    return decls;
  }

 private:
  [[noreturn]] static void fail(const Value& v, const std::string& msg) { throw ParseError(v.line, v.column, msg); }
  [[noreturn]] static void fail(const Statement& st, const std::string& msg) {
    throw ParseError(st.line, st.column, msg);
  }

  const Binding& lookup(const Value& v, const std::string& name) const {
    auto it = env_.find(name);
    if (it == env_.end()) fail(v, "identifier '" + name + "' is used before being bound");
    return it->second;
  }

  CommunityRef toCom(const Value& v) const {
    if (const auto* id = std::get_if<Identifier>(&v.data)) return lookup(v, id->name).ref;
    fail(v, "expected a community identifier");
  }

  std::vector<CommunityRef> toComList(const Value& v) const {
    const auto* list = std::get_if<List>(&v.data);
    if (list == nullptr) fail(v, "expected a list of communities");
    std::vector<CommunityRef> out;
    for (const auto& item : *list) out.push_back(toCom(item));
    return out;
  }

  static std::int64_t toInt(const Value& v, std::int64_t min) {
    const auto* i = std::get_if<std::int64_t>(&v.data);
    if (i == nullptr) fail(v, "expected an integer");
    if (*i < min) fail(v, "expected an integer >= " + std::to_string(min));
    if (*i > std::int64_t{0xffffffff}) fail(v, "integer out of range");
    return *i;
  }

  static std::vector<std::size_t> toIntList(const Value& v, std::int64_t min) {
    const auto* list = std::get_if<List>(&v.data);
    if (list == nullptr) fail(v, "expected a list of integers");
    std::vector<std::size_t> out;
    for (const auto& item : *list) out.push_back(static_cast<std::size_t>(toInt(item, min)));
    return out;
  }

  Label toStr(const Value& v) const {
    if (const auto* s = std::get_if<std::string>(&v.data)) {
      if (s->empty()) fail(v, "labels must not be empty");
      return Label(*s);
    }
    if (const auto* l = std::get_if<LabelOf>(&v.data)) {
      const Binding& b = lookup(v, l->name);
      if (!b.label) fail(v, "the label of '" + l->name + "' is only known once the scenario runs");
      return *b.label;
    }
    fail(v, "expected a string");
  }

  std::vector<Label> toStrList(const Value& v) const {
    const auto* list = std::get_if<List>(&v.data);
    if (list == nullptr) fail(v, "expected a list of strings");
    std::vector<Label> out;
    for (const auto& item : *list) out.push_back(toStr(item));
    return out;
  }

  static std::vector<NodeSet> toNodeSets(const Value& v) {
    const auto* list = std::get_if<List>(&v.data);
    if (list == nullptr) fail(v, "expected a list of node lists");
    std::vector<NodeSet> out;
    for (const auto& item : *list) {
      std::vector<NodeId> nodes;
      for (std::size_t n : toIntList(item, 0)) nodes.push_back(static_cast<NodeId>(n));
      out.push_back(makeNodeSet(std::move(nodes)));
    }
    return out;
  }

  EventDecl bindStatement(const Statement& st, std::size_t index) {
    auto sigIt = signatures().find(st.event);
    if (sigIt == signatures().end()) fail(st, "unknown event '" + st.event + "'");
    const Signature& sig = sigIt->second;

    std::map<std::string, const Value*> given;
    const Value* delay = nullptr;
    const Value* triggers = nullptr;
    std::size_t positional = 0;
    for (const auto& arg : st.args) {
      if (!arg.key) {
        if (positional >= sig.params.size()) {
          fail(arg.value, st.event + " takes at most " + std::to_string(sig.params.size()) + " positional arguments");
        }
        given[sig.params[positional++].name] = &arg.value;
        continue;
      }
      std::string key = *arg.key;
      for (const auto& [alias, target] : sig.aliases) {
        if (key == alias) key = target;
      }
      const Value** slot = nullptr;
      if (key == "delay") {
        slot = &delay;
      } else if (key == "triggers") {
        slot = &triggers;
      } else {
        bool known = false;
        for (const auto& p : sig.params) known = known || key == p.name;
        if (!known) fail(arg.value, st.event + " has no parameter '" + *arg.key + "'");
        if (given.count(key) != 0) fail(arg.value, "parameter '" + key + "' given twice");
        given[key] = &arg.value;
        continue;
      }
      if (*slot != nullptr) fail(arg.value, "parameter '" + key + "' given twice");
      *slot = &arg.value;
    }
    for (std::size_t i = 0; i < sig.required; ++i) {
      if (given.count(sig.params[i].name) == 0) {
        fail(st, st.event + " requires " + std::to_string(sig.required) + " argument(s); missing '" +
                     sig.params[i].name + "'");
      }
    }
    const auto get = [&](const char* name) -> const Value* {
      auto it = given.find(name);
      return it == given.end() ? nullptr : it->second;
    };

    EventDecl decl;
    std::vector<std::optional<Label>> outLabels;
    switch (sig.kind) {
      case EventKind::kAssign: {
        decl.inputs = toComList(*get("before"));
        AssignParams p{toNodeSets(*get("nodes")), toStrList(*get("labels"))};
        if (p.afterNodes.size() != p.afterLabels.size()) {
          fail(*get("labels"), "ASSIGN needs as many labels as node sets");
        }
        outLabels.assign(p.afterLabels.begin(), p.afterLabels.end());
        decl.params = std::move(p);
        break;
      }
      case EventKind::kInitialize: {
        InitializeParams p{toIntList(*get("sizes"), 1), toStrList(*get("labels"))};
        if (p.sizes.size() != p.labels.size()) fail(*get("labels"), "INITIALIZE needs as many labels as sizes");
        outLabels.assign(p.labels.begin(), p.labels.end());
        decl.params = std::move(p);
        break;
      }
      case EventKind::kBirth: {
        BirthParams p{static_cast<std::size_t>(toInt(*get("nb_nodes"), 1)), toStr(*get("label"))};
        outLabels = {p.label};
        decl.params = std::move(p);
        break;
      }
      case EventKind::kDeath:
        decl.inputs = {toCom(*get("com"))};
        decl.params = DeathParams{};
        break;
      case EventKind::kMerge: {
        decl.inputs = toComList(*get("coms"));
        if (decl.inputs.size() < 2) fail(*get("coms"), "MERGE expects a list of at least 2 communities");
        MergeParams p;
        if (const Value* l = get("label")) p.label = toStr(*l);
        outLabels = {p.label};
        decl.params = std::move(p);
        break;
      }
      case EventKind::kSplit: {
        decl.inputs = {toCom(*get("com"))};
        SplitParams p{toStrList(*get("labels")), toIntList(*get("sizes"), 1)};
        if (p.sizes.size() != p.labels.size()) fail(*get("sizes"), "SPLIT needs as many sizes as labels");
        outLabels.assign(p.labels.begin(), p.labels.end());
        decl.params = std::move(p);
        break;
      }
      case EventKind::kTheseus: {
        const Value& com = *get("com");
        decl.inputs = {toCom(com)};
        TheseusParams p;
        if (const Value* n = get("nb_nodes")) p.nbNodes = static_cast<std::size_t>(toInt(*n, 1));
        if (const Value* l = get("label")) p.rebornLabel = toStr(*l);
        outLabels = {lookup(com, std::get<Identifier>(com.data).name).label, p.rebornLabel};
        decl.params = std::move(p);
        break;
      }
      case EventKind::kResurgence:
      case EventKind::kContinue:
      case EventKind::kGrowIterative:
      case EventKind::kShrinkIterative: {
        const Value& com = *get("com");
        decl.inputs = {toCom(com)};
        outLabels = {lookup(com, std::get<Identifier>(com.data).name).label};
        if (sig.kind == EventKind::kResurgence) {
          ResurgenceParams p;
          if (const Value* g = get("gap")) p.gap = static_cast<Step>(toInt(*g, 0));
          decl.params = p;
        } else if (sig.kind == EventKind::kContinue) {
          decl.params = ContinueParams{static_cast<Step>(toInt(*get("duration"), 0))};
        } else if (sig.kind == EventKind::kGrowIterative) {
          decl.params = GrowIterativeParams{static_cast<std::size_t>(toInt(*get("nb_nodes"), 1))};
        } else {
          decl.params = ShrinkIterativeParams{static_cast<std::size_t>(toInt(*get("nb_nodes"), 1))};
        }
        break;
      }
      case EventKind::kMigrateIterative: {
        const Value& src = *get("src");
        const Value& dst = *get("dst");
        decl.inputs = {toCom(src), toCom(dst)};
        decl.params = MigrateIterativeParams{static_cast<std::size_t>(toInt(*get("nb_nodes"), 1))};
        outLabels = {lookup(src, std::get<Identifier>(src.data).name).label,
                     lookup(dst, std::get<Identifier>(dst.data).name).label};
        break;
      }
    }
    if (delay != nullptr) decl.delay = static_cast<Step>(toInt(*delay, 0));
    if (triggers != nullptr) decl.triggers = toComList(*triggers);

    const std::size_t outputs = decl.outputCount();
    if (!st.targets.empty() && st.targets.size() != outputs) {
      fail(st, st.event + " yields " + std::to_string(outputs) + " communities but " +
                   std::to_string(st.targets.size()) + " targets are given");
    }
    for (std::size_t i = 0; i < st.targets.size(); ++i) {
      env_[st.targets[i]] = Binding{CommunityRef{index, i}, outLabels.at(i)};
    }
    return decl;
  }

  std::map<std::string, Binding> env_;
};

// ---------------------------------------------------------------------------
// Printer

void printString(std::ostream& out, const std::string& s) {
  out << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out << '\\' << c;
    } else if (c == '\n') {
      out << "\\n";
    } else if (c == '\t') {
      out << "\\t";
    } else {
      out << c;
    }
  }
  out << '"';
}

void printValue(std::ostream& out, const Value& v) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          out << x;
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.17g", x);
          std::string s = buf;
          if (s.find_first_of(".eE") == std::string::npos) s += ".0";
          out << s;
        } else if constexpr (std::is_same_v<T, std::string>) {
          printString(out, x);
        } else if constexpr (std::is_same_v<T, Identifier>) {
          out << x.name;
        } else if constexpr (std::is_same_v<T, LabelOf>) {
          out << x.name << ".label()";
        } else {
          out << '[';
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i > 0) out << ", ";
            printValue(out, x[i]);
          }
          out << ']';
        }
      },
      v.data);
}

}  // namespace

ScenarioScript parse(std::string_view text) {
  ScenarioScript script;
  int lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++lineNo;
    std::vector<Token> toks = tokenize(line, lineNo);
    if (toks.front().kind != Tok::kEnd) {
      LineParser parser(std::move(toks), lineNo);
      script.statements.push_back(parser.parseStatement());
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  // Semantic checks (unknown events, unbound identifiers, arity) report
  // through the same ParseError positions.
  bindAndValidate(script);
  return script;
}

std::vector<EventDecl> bindAndValidate(const ScenarioScript& script) { return Binder().run(script); }

std::string print(const ScenarioScript& script) {
  std::ostringstream out;
  for (const auto& st : script.statements) {
    if (!st.targets.empty()) {
      for (std::size_t i = 0; i < st.targets.size(); ++i) out << (i > 0 ? ", " : "") << st.targets[i];
      out << " = ";
    }
    out << st.event << '(';
    for (std::size_t i = 0; i < st.args.size(); ++i) {
      if (i > 0) out << ", ";
      if (st.args[i].key) out << *st.args[i].key << '=';
      printValue(out, st.args[i].value);
    }
    out << ")\n";
  }
  return out.str();
}

std::vector<EventDecl> compile(std::string_view text) { return bindAndValidate(parse(text)); }

}  // namespace dynbench::dsl
